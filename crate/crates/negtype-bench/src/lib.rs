//! Shared fixtures for the benchmark targets.

use negtype_core::graph::{complete, complete_bipartite, cycle, fixture_g2, Graph};

/// Representative inputs: a det-zero root, an inner-zero root on a tree, a
/// bipartite family member, and a scan that runs to p_max without a root.
pub fn fixtures() -> Vec<(&'static str, Graph)> {
    vec![
        ("cycle5", cycle(5).unwrap()),
        ("spider_tree", fixture_g2()),
        ("k33", complete_bipartite(3, 3).unwrap()),
        ("complete5", complete(5).unwrap()),
    ]
}

/// Deterministic dense symmetric test matrix.
pub fn wavy_symmetric(n: usize) -> negtype_core::Matrix {
    let mut m = negtype_core::Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v = ((i * n + j + 1) as f64).sin();
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    m
}
