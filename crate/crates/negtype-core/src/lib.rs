//! Supremal p-negative type of finite metric spaces.
//!
//! A finite metric space `(X, d)` has *p-negative type* when the quadratic
//! form `sum d(x_i, x_j)^p a_i a_j` is nonpositive over all weight vectors
//! with `sum a_i = 0`. The supremum of such `p` is written `wp(X, d)` and,
//! when finite, equals the first `p >= 0` at which the p-distance matrix
//! `D_p = [d(x_i, x_j)^p]` becomes singular or satisfies
//! `<D_p^-1 1, 1> = 0`.
//!
//! This crate locates that first failure by scanning the largest eigenvalue
//! of the quadratic form restricted to the mean-zero hyperplane, bisecting
//! the sign change, and classifying which of the two determinant conditions
//! triggered it. It also extracts the extremal weight vector and its
//! normalized two-sided simplex, and provides the closed-form values known
//! for complete bipartite graphs, odd cycles, paths and small star-like
//! graphs, which serve as regression oracles in the test suite.

// Matrix code reads better with explicit indices, and `!(x > 0.0)`-style
// guards are deliberate: they reject NaN along with the wrong sign.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod formulas;
pub mod graph;
pub mod linalg;
pub mod metric;
pub mod negative_type;
pub mod trace;

pub use graph::{
    complete, complete_bipartite, cycle, enumerate_connected_graphs, path_graph, Graph, GraphError,
};
pub use linalg::{LinalgError, Matrix, RestrictedForm};
pub use metric::{MetricError, MetricSpace, PDistanceMatrix};
pub use negative_type::{
    extremal_vector, has_negative_type, has_strict_negative_type, negative_type_oracle,
    roundness_gap, supremal_pnt, Diagnostics, ExtremalCertificate, PntConfig, PntError, PntResult,
    PntStatus, Simplex, SimplexVertex, Trigger,
};
pub use trace::{trace_table, TraceError, TraceRow, TraceTable};
