//! Input resolution: edge-list files, distance-matrix CSV files, and
//! generator specs.

use std::fs;
use std::path::Path;

use negtype_core::graph::{self, Graph};
use negtype_core::MetricSpace;

/// A loaded metric space plus its provenance and the scale divided out of
/// the distances.
pub struct LoadedInput {
    pub space: MetricSpace,
    pub descriptor: String,
    pub scale: f64,
    pub normalized: bool,
}

pub fn load_graph_file(path: &Path) -> Result<LoadedInput, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let graph = Graph::parse_edge_list(&text).map_err(|e| e.to_string())?;
    let space = graph.path_metric().map_err(|e| e.to_string())?;
    let (space, scale) = normalize_if_possible(space);
    Ok(LoadedInput {
        space,
        descriptor: format!("graph:{}", path.display()),
        scale,
        normalized: true,
    })
}

pub fn load_matrix_file(path: &Path, normalize: bool) -> Result<LoadedInput, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let space = MetricSpace::parse_csv(&text).map_err(|e| e.to_string())?;
    let (space, scale) = if normalize {
        normalize_if_possible(space)
    } else {
        (space, 1.0)
    };
    Ok(LoadedInput {
        space,
        descriptor: format!("matrix:{}", path.display()),
        scale,
        normalized: normalize,
    })
}

/// Generator specs: `complete:N`, `path:N`, `cycle:N`, `kbipartite:N,M`,
/// `fixture:NAME`.
pub fn load_generator(spec: &str) -> Result<LoadedInput, String> {
    let graph = graph_from_spec(spec)?;
    let space = graph.path_metric().map_err(|e| e.to_string())?;
    let (space, scale) = normalize_if_possible(space);
    Ok(LoadedInput {
        space,
        descriptor: format!("gen:{spec}"),
        scale,
        normalized: true,
    })
}

fn normalize_if_possible(space: MetricSpace) -> (MetricSpace, f64) {
    if space.n() < 2 {
        return (space, 1.0);
    }
    space
        .normalize_scale()
        .expect("n >= 2 spaces always normalize")
}

fn graph_from_spec(spec: &str) -> Result<Graph, String> {
    let (name, args) = match spec.split_once(':') {
        Some((name, args)) => (name, args),
        None => return Err(format!("generator spec {spec:?} needs a `name:args` form")),
    };
    let parse_n = |s: &str| -> Result<usize, String> {
        s.trim()
            .parse()
            .map_err(|_| format!("invalid size {s:?} in generator spec"))
    };
    match name {
        "complete" => graph::complete(parse_n(args)?).map_err(|e| e.to_string()),
        "path" => graph::path_graph(parse_n(args)?).map_err(|e| e.to_string()),
        "cycle" => graph::cycle(parse_n(args)?).map_err(|e| e.to_string()),
        "kbipartite" => {
            let (a, b) = args
                .split_once(',')
                .ok_or_else(|| format!("kbipartite needs two sizes, got {args:?}"))?;
            graph::complete_bipartite(parse_n(a)?, parse_n(b)?).map_err(|e| e.to_string())
        }
        "fixture" => graph::fixture(args)
            .ok_or_else(|| format!("unknown fixture {args:?} (expected G1, G2, G3, H1, H2, H3)")),
        other => Err(format!("unknown generator {other:?}")),
    }
}
