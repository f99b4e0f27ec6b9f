//! Acceptance suite: every target value the project must reproduce, one
//! test per criterion, each printing a pass line (run with `--nocapture`
//! to see them).

use std::process::Command;

use negtype_core::formulas::{
    bipartite_pnt, gap_interval, tree_lower_bound, weston_lower_bound, FormulaError,
};
use negtype_core::graph::{
    complete, complete_bipartite, cycle, enumerate_connected_graphs, fixture_g1, fixture_g2,
    fixture_h1, fixture_h2, fixture_h3, path_graph, Graph,
};
use negtype_core::linalg::{pi0_basis, sym_eigen, RestrictedForm};
use negtype_core::{
    extremal_vector, has_negative_type, has_strict_negative_type, negative_type_oracle,
    supremal_pnt, trace_table, MetricSpace, PntConfig, PntResult, PntStatus, Trigger,
};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const LOG2_G1: f64 = 1.538969589459625; // log2((13 + sqrt(105)) / 8)
const LOG2_C5: f64 = 1.3884838272612345; // log2((3 + sqrt(5)) / 2)
const LOG2_3: f64 = 1.584962500721156;
const C5_INNER_LIMIT: f64 = 0.6909830056250525; // 5 / (5 + sqrt(5))

fn compute(graph: &Graph) -> (MetricSpace, PntResult) {
    let space = graph.path_metric().expect("fixtures are connected");
    let result = supremal_pnt(&space, &PntConfig::default());
    (space, result)
}

fn finite_p(result: &PntResult) -> f64 {
    result
        .p()
        .expect("fixture should have finite supremal type")
}

/// Every finite named fixture from the criteria, with its expected value
/// where one is pinned.
fn finite_fixtures() -> Vec<(String, Graph)> {
    let mut all: Vec<(String, Graph)> = vec![
        ("G1".into(), fixture_g1()),
        ("G2".into(), fixture_g2()),
        ("C5".into(), cycle(5).unwrap()),
        ("H1".into(), fixture_h1()),
        ("H2".into(), fixture_h2()),
        ("H3".into(), fixture_h3()),
        ("P3".into(), path_graph(3).unwrap()),
        ("P4".into(), path_graph(4).unwrap()),
        ("P5".into(), path_graph(5).unwrap()),
        ("P6".into(), path_graph(6).unwrap()),
        ("C4".into(), cycle(4).unwrap()),
        ("C6".into(), cycle(6).unwrap()),
    ];
    for n in 1..=5usize {
        for m in n..=5usize {
            if n == 1 && m == 1 {
                continue;
            }
            all.push((format!("K({n},{m})"), complete_bipartite(n, m).unwrap()));
        }
    }
    all
}

#[test]
fn a01_bipartite_family_closed_form() {
    for n in 1..=5usize {
        for m in n..=5usize {
            if n == 1 && m == 1 {
                continue;
            }
            let (_, result) = compute(&complete_bipartite(n, m).unwrap());
            let expected = bipartite_pnt(n, m).unwrap();
            let p = finite_p(&result);
            assert!(
                (p - expected).abs() <= 1e-8,
                "K({n},{m}): wp = {p:.12}, closed form {expected:.12}"
            );
            let want = if n == m {
                Trigger::DetZero
            } else {
                Trigger::InnerZero
            };
            assert_eq!(result.trigger, want, "K({n},{m}) trigger");
        }
    }
    println!("[acceptance] 01 bipartite family closed form: PASS");
}

#[test]
fn a02_star_with_leaf_edge() {
    let (space, result) = compute(&fixture_g1());
    let p = finite_p(&result);
    assert!((p - LOG2_G1).abs() <= 1e-8, "wp = {p:.12}");
    assert_eq!(result.trigger, Trigger::InnerZero);

    let cert = extremal_vector(&space, &result).unwrap();
    let s105 = 105.0_f64.sqrt();
    let reference = [
        -1.0,
        (s105 - 9.0) / 4.0,
        (s105 - 9.0) / 4.0,
        (11.0 - s105) / 4.0,
        (11.0 - s105) / 4.0,
    ];
    let dot: f64 = cert.alpha.iter().zip(&reference).map(|(a, b)| a * b).sum();
    let norm: f64 = cert.alpha.iter().map(|a| a * a).sum();
    let scale = dot / norm;
    for (i, (a, r)) in cert.alpha.iter().zip(&reference).enumerate() {
        assert!(
            (scale * a - r).abs() <= 1e-6,
            "alpha[{i}] = {:.9} vs {r:.9}",
            scale * a
        );
    }
    println!("[acceptance] 02 G1 value, trigger and extremal vector: PASS");
}

#[test]
fn a03_spider_tree() {
    let (space, result) = compute(&fixture_g2());
    let p = finite_p(&result);
    assert!(p > 1.575 && p < 1.578, "wp = {p:.9}");
    let residual = 4.0 * 12.0_f64.powf(p) - 4.0 * 9.0_f64.powf(p) - 7.0 * 8.0_f64.powf(p)
        + 8.0 * 4.0_f64.powf(p)
        + 8.0 * 3.0_f64.powf(p)
        - 4.0;
    assert!(residual.abs() <= 1e-6, "polynomial residual {residual:e}");

    // the determinant's own first root sits near 1.8268 and must appear as
    // a sign change in the trace
    let table = trace_table(&space, 1.7, 1.9, 0.01, 1e-9).unwrap();
    let crossing = table
        .rows
        .windows(2)
        .find(|w| w[0].det.signum() != w[1].det.signum())
        .expect("det sign change in [1.7, 1.9]");
    assert!(
        crossing[0].p <= 1.8268559653947796 && 1.8268559653947796 <= crossing[1].p,
        "det crossing at ({}, {})",
        crossing[0].p,
        crossing[1].p
    );

    let cert = extremal_vector(&space, &result).unwrap();
    let reference = [-1.000, 0.351, 0.351, 0.204, 0.094];
    for (i, (a, r)) in cert.alpha.iter().zip(&reference).enumerate() {
        assert!((a - r).abs() <= 5e-3, "alpha[{i}] = {a:.6} vs {r:.3}");
    }
    println!("[acceptance] 03 G2 polynomial root and extremal vector: PASS");
}

#[test]
fn a04_five_cycle() {
    let (space, result) = compute(&cycle(5).unwrap());
    let p = finite_p(&result);
    assert!((p - LOG2_C5).abs() <= 1e-8, "wp = {p:.12}");
    assert_eq!(result.trigger, Trigger::DetZero);

    let dp = space.p_distance_matrix(p).unwrap();
    let eigs = RestrictedForm::new(&dp.to_matrix())
        .unwrap()
        .eigenvalues()
        .unwrap();
    let near_zero = eigs
        .iter()
        .filter(|v| v.abs() <= 1e-7 * dp.max_entry())
        .count();
    assert_eq!(near_zero, 2, "restricted eigenvalues {eigs:?}");

    // removable discontinuity: at wp the solve is blanked, while the
    // two-sided values straddle the limit 5 / (5 + sqrt(5))
    let table = trace_table(&space, p - 1e-4, p + 1e-4, 1e-4, 1e-9).unwrap();
    assert_eq!(table.rows.len(), 3);
    assert!(table.rows[1].inner.is_none(), "inner defined at the root");
    let below = table.rows[0].inner.expect("inner below the root");
    let above = table.rows[2].inner.expect("inner above the root");
    assert!((below - C5_INNER_LIMIT).abs() <= 1e-3);
    assert!((above - C5_INNER_LIMIT).abs() <= 1e-3);
    let two_sided = 0.5 * (below + above);
    assert!(
        (two_sided - C5_INNER_LIMIT).abs() <= 1e-6,
        "two-sided inner estimate {two_sided:.9} vs {C5_INNER_LIMIT:.9}"
    );
    println!("[acceptance] 04 C5 root, kernel dimension and inner limit: PASS");
}

fn assert_gap_holds(n_max: usize) {
    let (gap_lo, gap_hi) = gap_interval();
    let cfg = PntConfig::default();
    for n in 2..=n_max {
        for graph in enumerate_connected_graphs(n).unwrap() {
            let space = graph.path_metric().unwrap();
            let result = supremal_pnt(&space, &cfg);
            if let PntStatus::Finite(p) = result.status {
                assert!(
                    p <= gap_lo + 1e-6 || p >= gap_hi - 1e-6,
                    "gap violation: n = {n}, edges {:?}, wp = {p:.10}",
                    graph.edges()
                );
            }
        }
    }
}

#[test]
fn a05_gap_theorem_scan() {
    assert_gap_holds(5);
    let (gap_lo, gap_hi) = gap_interval();
    let (_, h2) = compute(&fixture_h2());
    assert!(
        (finite_p(&h2) - gap_lo).abs() <= 1e-8,
        "H2 should attain the left endpoint"
    );
    let (_, p4) = compute(&path_graph(4).unwrap());
    assert!(
        (finite_p(&p4) - gap_hi).abs() <= 1e-8,
        "P4 should attain the right endpoint"
    );
    println!("[acceptance] 05 gap interval scan through 5 vertices: PASS");
}

/// Slow variant over all 26704 six-vertex graphs; run with
/// `cargo test -p negtype-cli --test acceptance -- --ignored`.
#[test]
#[ignore]
fn a05_gap_theorem_scan_six_vertices() {
    assert_gap_holds(6);
    println!("[acceptance] 05b gap interval scan through 6 vertices: PASS");
}

#[test]
fn a06_known_special_families() {
    let (_, p2) = compute(&path_graph(2).unwrap());
    assert!(matches!(p2.status, PntStatus::InfiniteBeyond(_)), "P2");
    for n in 3..=6usize {
        let (_, result) = compute(&path_graph(n).unwrap());
        let p = finite_p(&result);
        assert!((p - 2.0).abs() <= 1e-8, "P{n}: wp = {p:.12}");
    }
    for n in [4usize, 6] {
        let (_, result) = compute(&cycle(n).unwrap());
        let p = finite_p(&result);
        assert!((p - 1.0).abs() <= 1e-8, "C{n}: wp = {p:.12}");
    }
    for n in 2..=5usize {
        let (_, result) = compute(&complete(n).unwrap());
        assert_eq!(
            result.status,
            PntStatus::InfiniteBeyond(20.0),
            "K{n} should scan out at p_max"
        );
    }
    let (_, h3) = compute(&fixture_h3());
    let p = finite_p(&h3);
    assert!((p - LOG2_3).abs() <= 1e-8, "H3: wp = {p:.12}");
    println!("[acceptance] 06 paths, even cycles, complete graphs, H3: PASS");
}

#[test]
fn a07_certificate_suite() {
    for (name, graph) in finite_fixtures() {
        let (space, result) = compute(&graph);
        let p = finite_p(&result);
        let cert = extremal_vector(&space, &result).unwrap();

        let dp = space.p_distance_matrix(p).unwrap();
        let norm_sq: f64 = cert.alpha.iter().map(|a| a * a).sum();
        assert!(
            cert.form_value.abs() <= 1e-7 * dp.max_entry() * norm_sq,
            "{name}: form value {:e}",
            cert.form_value
        );
        assert!(
            cert.roundness_gap.abs() <= 1e-7,
            "{name}: roundness gap {:e}",
            cert.roundness_gap
        );
        assert!(
            result.lambda_max_at_p.abs() <= 1e-9 * dp.max_entry(),
            "{name}: lambda_max at wp is {:e}",
            result.lambda_max_at_p
        );
        // the quadratic form and the roundness gap measure the same
        // degeneracy: form = -2 * S_a * S_b * gap with S the per-side sums
        let s_a: f64 = cert.alpha.iter().filter(|v| **v > 0.0).sum();
        let s_b: f64 = -cert.alpha.iter().filter(|v| **v < 0.0).sum::<f64>();
        assert!(
            (cert.form_value + 2.0 * s_a * s_b * cert.roundness_gap).abs()
                <= 1e-7 * dp.max_entry() * norm_sq,
            "{name}: form/gap identity violated"
        );
        assert_eq!(
            has_strict_negative_type(&space, p - 1e-4),
            Ok(true),
            "{name}: should be strict just below wp"
        );
        assert!(
            !has_negative_type(&space, p + 1e-4),
            "{name}: negative type should fail just above wp"
        );
    }
    println!("[acceptance] 07 certificates and bracketing at wp -/+ 1e-4: PASS");
}

#[test]
fn a08_oracle_equivalence() {
    let seed = std::env::var("NEGTYPE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(20260810u64);
    let mut fixtures = finite_fixtures();
    fixtures.retain(|(_, g)| g.n() <= 6);
    fixtures.push(("P2".into(), path_graph(2).unwrap()));
    fixtures.push(("K4".into(), complete(4).unwrap()));
    fixtures.push(("K6".into(), complete(6).unwrap()));
    for (name, graph) in fixtures {
        let space = graph.path_metric().unwrap();
        for p in [0.0, 0.5, 1.0, 1.3, 1.6, 2.0, 3.0] {
            let eig_says = has_negative_type(&space, p);
            let oracle_says = negative_type_oracle(&space, p, 1000, seed);
            if !oracle_says {
                assert!(
                    !eig_says,
                    "{name} at p = {p}: oracle found a violator but eigentest passed"
                );
            }
            if !eig_says && oracle_says {
                // the random search may miss the positive direction; the top
                // restricted eigenvector must then witness the failure
                let dp = space.p_distance_matrix(p).unwrap();
                let q = pi0_basis(space.n()).unwrap();
                let rf = RestrictedForm::with_basis(&q, &dp.to_matrix());
                let (vals, vecs) = sym_eigen(rf.form()).unwrap();
                let top = q.mul_vec(&vecs.column(vals.len() - 1));
                let d_top = dp.to_matrix().mul_vec(&top);
                let form: f64 = d_top.iter().zip(&top).map(|(a, b)| a * b).sum();
                assert!(
                    form > 0.0,
                    "{name} at p = {p}: eigentest failed but no witness validates"
                );
            }
        }
    }
    println!("[acceptance] 08 randomized oracle agrees with the eigentest: PASS");
}

#[test]
fn a09_lower_bound_compliance() {
    let mut fixtures = finite_fixtures();
    fixtures.push(("P2".into(), path_graph(2).unwrap()));
    for n in 2..=5usize {
        fixtures.push((format!("K{n}"), complete(n).unwrap()));
    }
    for (name, graph) in fixtures {
        let (space, result) = compute(&graph);
        let wp = match result.status {
            PntStatus::Finite(p) => p,
            PntStatus::InfiniteBeyond(pm) => pm,
        };
        match weston_lower_bound(space.n(), space.scaled_diameter().unwrap()) {
            Ok(bound) => assert!(
                wp >= bound - 1e-9,
                "{name}: wp {wp:.10} below the general bound {bound:.10}"
            ),
            Err(FormulaError::BadDiameter) => assert!(
                result.p().is_none(),
                "{name}: equilateral space must not have finite wp"
            ),
            Err(e) => panic!("{name}: {e}"),
        }
        if graph.is_tree() && graph.n() >= 3 {
            let bound = tree_lower_bound(graph.n()).unwrap();
            assert!(
                wp >= bound - 1e-9,
                "{name}: wp {wp:.10} below the tree bound {bound:.10}"
            );
        }
    }
    println!("[acceptance] 09 lower bounds respected on all fixtures: PASS");
}

#[test]
fn a10_invariance_suite() {
    let fixtures: Vec<(&str, Graph)> = vec![
        ("G1", fixture_g1()),
        ("G2", fixture_g2()),
        ("C5", cycle(5).unwrap()),
        ("H2", fixture_h2()),
        ("K23", complete_bipartite(2, 3).unwrap()),
        ("P4", path_graph(4).unwrap()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for (name, graph) in &fixtures {
        let (space, base) = compute(graph);
        let p = finite_p(&base);
        for trial in 0..5 {
            let mut perm: Vec<usize> = (0..space.n()).collect();
            perm.shuffle(&mut rng);
            let relabeled = space.permuted(&perm);
            let result = supremal_pnt(&relabeled, &PntConfig::default());
            let q = finite_p(&result);
            assert!(
                (p - q).abs() <= 1e-9,
                "{name} permutation {trial}: {p:.12} vs {q:.12}"
            );
        }
        for c in [0.5, 3.0, 10.0] {
            let result = supremal_pnt(&space.scaled(c), &PntConfig::default());
            let q = finite_p(&result);
            assert!(
                (p - q).abs() <= 1e-9,
                "{name} scaled by {c}: {p:.12} vs {q:.12}"
            );
        }
    }

    // thread count must not leak into the report
    let json_for = |threads: &str| -> serde_json::Value {
        let output = Command::new(env!("CARGO_BIN_EXE_negtype"))
            .args([
                "compute",
                "--gen",
                "fixture:G1",
                "--quiet",
                "--threads",
                threads,
            ])
            .output()
            .expect("binary runs");
        assert!(output.status.success());
        let mut value: serde_json::Value =
            serde_json::from_slice(&output.stdout).expect("valid JSON");
        value.as_object_mut().unwrap().remove("wall_ms");
        value
    };
    assert_eq!(
        json_for("1"),
        json_for("8"),
        "thread count changed the report"
    );
    println!("[acceptance] 10 relabeling, rescaling and thread invariance: PASS");
}
