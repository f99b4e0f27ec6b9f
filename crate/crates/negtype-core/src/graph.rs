//! Simple undirected graphs, shortest-path metrics, generators for the
//! standard families, and exhaustive enumeration of small connected graphs.

use std::collections::VecDeque;

use thiserror::Error;

use crate::metric::MetricSpace;

/// Hard cap for labeled enumeration; 7 vertices already means 2^21 edge sets.
pub const MAX_ENUMERATION_VERTICES: usize = 7;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("self loop at line {line}")]
    SelfLoop { line: usize },
    #[error("duplicate edge at line {line}")]
    DuplicateEdge { line: usize },
    #[error("nonpositive weight at line {line}")]
    NonpositiveWeight { line: usize },
    #[error("bad size: {reason}")]
    BadSize { reason: String },
    #[error("graph is disconnected: no path from vertex {u} to vertex {v}")]
    Disconnected { u: usize, v: usize },
    #[error("enumeration capped at {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// Simple undirected graph with optional positive edge weights (default 1).
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a unit-weight graph; the error positions refer to the 1-based
    /// index of the offending pair in `edges`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let weighted: Vec<(usize, usize, f64)> = edges.iter().map(|&(u, v)| (u, v, 1.0)).collect();
        Self::from_weighted_edges(n, &weighted)
    }

    pub fn from_weighted_edges(
        n: usize,
        edges: &[(usize, usize, f64)],
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::BadSize {
                reason: "graph needs at least one vertex".to_string(),
            });
        }
        let mut out: Vec<Edge> = Vec::with_capacity(edges.len());
        for (idx, &(u, v, w)) in edges.iter().enumerate() {
            let line = idx + 1;
            if u >= n || v >= n {
                return Err(GraphError::Parse {
                    line,
                    reason: format!("vertex id out of range (n = {n})"),
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop { line });
            }
            if !(w > 0.0) || !w.is_finite() {
                return Err(GraphError::NonpositiveWeight { line });
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            if out.iter().any(|e| e.u == a && e.v == b) {
                return Err(GraphError::DuplicateEdge { line });
            }
            out.push(Edge {
                u: a,
                v: b,
                weight: w,
            });
        }
        out.sort_by_key(|e| (e.u, e.v));
        Ok(Graph { n, edges: out })
    }

    /// Parses the edge-list format: UTF-8 lines, `#` starts a comment, an
    /// optional first line `n <count>` declares the vertex count, data lines
    /// are `u v` or `u v w` with 0-based vertex ids and positive weight `w`.
    /// Without a header the vertex count is one past the largest id seen.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut declared_n: Option<usize> = None;
        let mut seen_data = false;
        let mut raw: Vec<(usize, usize, usize, f64)> = Vec::new(); // line, u, v, w
        for (idx, full_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match full_line.find('#') {
                Some(pos) => &full_line[..pos],
                None => full_line,
            };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.is_empty() {
                continue;
            }
            if !seen_data && declared_n.is_none() && tokens[0] == "n" {
                if tokens.len() != 2 {
                    return Err(GraphError::Parse {
                        line: line_no,
                        reason: "header must be `n <count>`".to_string(),
                    });
                }
                let count: usize = tokens[1].parse().map_err(|_| GraphError::Parse {
                    line: line_no,
                    reason: format!("invalid vertex count {:?}", tokens[1]),
                })?;
                if count == 0 {
                    return Err(GraphError::Parse {
                        line: line_no,
                        reason: "vertex count must be positive".to_string(),
                    });
                }
                declared_n = Some(count);
                continue;
            }
            seen_data = true;
            if tokens.len() != 2 && tokens.len() != 3 {
                return Err(GraphError::Parse {
                    line: line_no,
                    reason: "expected `u v` or `u v w`".to_string(),
                });
            }
            let parse_id = |tok: &str| -> Result<usize, GraphError> {
                tok.parse().map_err(|_| GraphError::Parse {
                    line: line_no,
                    reason: format!("invalid vertex id {tok:?}"),
                })
            };
            let u = parse_id(tokens[0])?;
            let v = parse_id(tokens[1])?;
            let w = if tokens.len() == 3 {
                let w: f64 = tokens[2].parse().map_err(|_| GraphError::Parse {
                    line: line_no,
                    reason: format!("invalid weight {:?}", tokens[2]),
                })?;
                if !(w > 0.0) || !w.is_finite() {
                    return Err(GraphError::NonpositiveWeight { line: line_no });
                }
                w
            } else {
                1.0
            };
            if u == v {
                return Err(GraphError::SelfLoop { line: line_no });
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            if raw.iter().any(|&(_, x, y, _)| x == a && y == b) {
                return Err(GraphError::DuplicateEdge { line: line_no });
            }
            raw.push((line_no, a, b, w));
        }
        let max_id = raw.iter().map(|&(_, _, v, _)| v).max();
        let n = match (declared_n, max_id) {
            (Some(n), Some(max)) => {
                if max >= n {
                    let line = raw.iter().find(|&&(_, _, v, _)| v == max).unwrap().0;
                    return Err(GraphError::Parse {
                        line,
                        reason: format!("vertex id {max} outside declared count {n}"),
                    });
                }
                n
            }
            (Some(n), None) => n,
            (None, Some(max)) => max + 1,
            (None, None) => {
                return Err(GraphError::Parse {
                    line: 0,
                    reason: "empty edge list".to_string(),
                })
            }
        };
        let mut edges: Vec<Edge> = raw
            .into_iter()
            .map(|(_, u, v, w)| Edge { u, v, weight: w })
            .collect();
        edges.sort_by_key(|e| (e.u, e.v));
        Ok(Graph { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_unit_weight(&self) -> bool {
        self.edges.iter().all(|e| e.weight == 1.0)
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() == self.n - 1 && self.is_connected()
    }

    fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push((e.v, e.weight));
            adj[e.v].push((e.u, e.weight));
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        self.first_unreachable().is_none()
    }

    fn first_unreachable(&self) -> Option<usize> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.iter().position(|&s| !s)
    }

    /// All-pairs shortest-path distances as a metric space: BFS per source
    /// for unit weights, Dijkstra per source otherwise. The lower triangle
    /// is mirrored from the upper so the stored matrix is exactly symmetric.
    pub fn path_metric(&self) -> Result<MetricSpace, GraphError> {
        if let Some(v) = self.first_unreachable() {
            return Err(GraphError::Disconnected { u: 0, v });
        }
        let n = self.n;
        let adj = self.adjacency();
        let mut dist = vec![0.0_f64; n * n];
        let unit = self.is_unit_weight();
        for s in 0..n {
            if unit {
                let mut d = vec![usize::MAX; n];
                d[s] = 0;
                let mut queue = VecDeque::from([s]);
                while let Some(u) = queue.pop_front() {
                    for &(v, _) in &adj[u] {
                        if d[v] == usize::MAX {
                            d[v] = d[u] + 1;
                            queue.push_back(v);
                        }
                    }
                }
                for v in 0..n {
                    dist[s * n + v] = d[v] as f64;
                }
            } else {
                let mut d = vec![f64::INFINITY; n];
                let mut done = vec![false; n];
                d[s] = 0.0;
                for _ in 0..n {
                    let mut u = usize::MAX;
                    let mut best = f64::INFINITY;
                    for i in 0..n {
                        if !done[i] && d[i] < best {
                            best = d[i];
                            u = i;
                        }
                    }
                    if u == usize::MAX {
                        break;
                    }
                    done[u] = true;
                    for &(v, w) in &adj[u] {
                        if d[u] + w < d[v] {
                            d[v] = d[u] + w;
                        }
                    }
                }
                for v in 0..n {
                    dist[s * n + v] = d[v];
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                dist[j * n + i] = dist[i * n + j];
            }
        }
        MetricSpace::from_flat(n, dist).map_err(|e| GraphError::BadSize {
            reason: format!("path metric failed validation: {e}"),
        })
    }

    /// Encodes the edge set as a bitmask over vertex pairs `(i, j)` with
    /// `i < j`, ordered `(0,1), (0,2), (1,2), (0,3), ...`. Available for
    /// graphs small enough that all pairs fit in 64 bits.
    pub fn edge_bitmask(&self) -> Option<u64> {
        if self.n * (self.n - 1) / 2 > 64 {
            return None;
        }
        let mut mask = 0u64;
        for e in &self.edges {
            mask |= 1 << pair_index(e.u, e.v);
        }
        Some(mask)
    }
}

fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(GraphError::BadSize {
            reason: "complete graph needs n >= 1".to_string(),
        });
    }
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            edges.push((i, j));
        }
    }
    Graph::from_edges(n, &edges)
}

pub fn path_graph(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(GraphError::BadSize {
            reason: "path graph needs n >= 1".to_string(),
        });
    }
    let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Graph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::BadSize {
            reason: "cycle needs n >= 3".to_string(),
        });
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// Complete bipartite graph with sides `{0, ..., n-1}` and
/// `{n, ..., n+m-1}`.
pub fn complete_bipartite(n: usize, m: usize) -> Result<Graph, GraphError> {
    if n < 1 || m < 1 {
        return Err(GraphError::BadSize {
            reason: "complete bipartite graph needs n, m >= 1".to_string(),
        });
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..m {
            edges.push((i, n + j));
        }
    }
    Graph::from_edges(n + m, &edges)
}

/// Star on vertex 0 with leaves 1..4 plus the extra edge {3, 4}.
pub fn fixture_g1() -> Graph {
    Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (3, 4)]).unwrap()
}

/// Star 0-{1,2,3} with the pendant edge {3, 4}; a 5-vertex tree.
pub fn fixture_g2() -> Graph {
    Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap()
}

/// The 3-leaf star (isomorphic to the complete bipartite graph K_{1,3}).
pub fn fixture_h1() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
}

/// H1 plus the edge {1, 2}.
pub fn fixture_h2() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2)]).unwrap()
}

/// H1 plus the edges {1, 2} and {2, 3}.
pub fn fixture_h3() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]).unwrap()
}

/// Looks up a named fixture (case-insensitive). `G3` is the 5-cycle.
pub fn fixture(name: &str) -> Option<Graph> {
    match name.to_ascii_uppercase().as_str() {
        "G1" => Some(fixture_g1()),
        "G2" => Some(fixture_g2()),
        "G3" => Some(cycle(5).unwrap()),
        "H1" => Some(fixture_h1()),
        "H2" => Some(fixture_h2()),
        "H3" => Some(fixture_h3()),
        _ => None,
    }
}

/// Iterator over every labeled simple connected graph on `n` vertices,
/// in ascending edge-bitmask order. Each graph appears exactly once; no
/// isomorphism reduction is applied.
pub struct ConnectedGraphs {
    n: usize,
    mask: u64,
    end: u64,
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.mask < self.end {
            let mask = self.mask;
            self.mask += 1;
            if mask_connected(self.n, mask) {
                return Some(graph_from_mask(self.n, mask));
            }
        }
        None
    }
}

fn mask_connected(n: usize, mask: u64) -> bool {
    if n == 1 {
        return true;
    }
    let mut adj = vec![0u32; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> k & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            k += 1;
        }
    }
    let mut seen: u32 = 1;
    let mut frontier: u32 = 1;
    while frontier != 0 {
        let mut next = 0u32;
        let mut f = frontier;
        while f != 0 {
            let u = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[u] & !seen;
        }
        seen |= next;
        frontier = next;
    }
    seen == (1u32 << n) - 1
}

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> k & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges).expect("mask encodes a simple graph")
}

/// Streams every labeled simple connected graph on `n <= 7` vertices.
pub fn enumerate_connected_graphs(n: usize) -> Result<ConnectedGraphs, GraphError> {
    if !(1..=MAX_ENUMERATION_VERTICES).contains(&n) {
        return Err(GraphError::TooLarge {
            n,
            max: MAX_ENUMERATION_VERTICES,
        });
    }
    let pairs = n * (n - 1) / 2;
    Ok(ConnectedGraphs {
        n,
        mask: 0,
        end: 1u64 << pairs,
    })
}
