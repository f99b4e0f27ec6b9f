//! Sampled curves of the determinant quantities against the exponent, for
//! plotting and diagnosis.

use thiserror::Error;

use crate::linalg::{bordered_det, lu_det, pi0_basis, solve, RestrictedForm};
use crate::metric::MetricSpace;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TraceError {
    #[error("bad range: need 0 <= from < to and step > 0")]
    BadRange,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub p: f64,
    pub det: f64,
    pub bordered_det: f64,
    /// `<D_p^-1 1, 1>`; absent where `|det|` is below the singularity
    /// threshold, since the solve is meaningless there.
    pub inner: Option<f64>,
    pub lambda_max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceTable {
    pub rows: Vec<TraceRow>,
}

/// Samples `p -> (det, bordered det, inner product, lambda_max)` on the grid
/// `from, from + step, ...` up to and including `to`. `tol_det` sets the
/// relative determinant threshold below which the inner-product cell is
/// left empty.
pub fn trace_table(
    space: &MetricSpace,
    p_from: f64,
    p_to: f64,
    step: f64,
    tol_det: f64,
) -> Result<TraceTable, TraceError> {
    if !(p_from >= 0.0) || !(p_from < p_to) || !(step > 0.0) || !p_to.is_finite() {
        return Err(TraceError::BadRange);
    }
    let n = space.n();
    let basis = (n >= 2).then(|| pi0_basis(n).unwrap());
    let ones = vec![1.0; n];
    let mut rows = Vec::new();
    let mut i = 0usize;
    loop {
        let p = p_from + i as f64 * step;
        if p > p_to + 1e-9 * step {
            break;
        }
        let dp = space.p_distance_matrix(p).expect("grid p >= 0");
        let d = dp.to_matrix();
        let det = lu_det(&d);
        let bordered = bordered_det(&d);
        let lambda_max = match &basis {
            Some(q) => *RestrictedForm::with_basis(q, &d)
                .eigenvalues()
                .expect("restricted form is symmetric")
                .last()
                .unwrap(),
            None => f64::NEG_INFINITY,
        };
        let inner = if det.abs() > tol_det * dp.max_entry().powi(n as i32) {
            solve(&d, &ones).ok().map(|x| x.iter().sum::<f64>())
        } else {
            None
        };
        rows.push(TraceRow {
            p,
            det,
            bordered_det: bordered,
            inner,
            lambda_max,
        });
        i += 1;
    }
    Ok(TraceTable { rows })
}

impl TraceTable {
    /// CSV with a header row and 17 significant digits per value; the inner
    /// column is empty where the determinant is below threshold.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,det,bordered_det,inner,lambda_max\n");
        for row in &self.rows {
            let inner = match row.inner {
                Some(v) => format!("{v:.16e}"),
                None => String::new(),
            };
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{},{:.16e}\n",
                row.p, row.det, row.bordered_det, inner, row.lambda_max
            ));
        }
        out
    }
}
