//! Closed-form values used as oracles: complete bipartite graphs, the odd
//! cycle simplex function, the two general lower bounds, and the gap
//! interval for path metric graphs.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormulaError {
    #[error("n and m may not both be 1")]
    BothOne,
    #[error("denominator (n-1)(m-1)4^p - nm vanishes at this exponent")]
    SingularDenominator,
    #[error("scaled diameter must exceed 1")]
    BadDiameter,
    #[error("bad size {n}")]
    BadSize { n: usize },
}

/// Supremal p-negative type of the complete bipartite graph `K_{n,m}` under
/// the path metric: `log2(2nm / (2nm - n - m))`. For `n = m` this reduces
/// to `log2(n / (n - 1))`.
pub fn bipartite_pnt(n: usize, m: usize) -> Result<f64, FormulaError> {
    if n == 0 || m == 0 {
        return Err(FormulaError::BadSize { n: n.min(m) });
    }
    if n == 1 && m == 1 {
        return Err(FormulaError::BothOne);
    }
    let (n, m) = (n as f64, m as f64);
    Ok((2.0 * n * m / (2.0 * n * m - n - m)).log2())
}

/// The five distinct entries of `D_p^-1` for `K_{n,m}`: `a` on the first
/// diagonal block, `b` off-diagonal within it, `c` across the bipartition,
/// `d` and `e` likewise for the second block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BipartiteInverseEntries {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
}

fn bipartite_denominator(n: f64, m: f64, u: f64) -> Result<f64, FormulaError> {
    let den = (n - 1.0) * (m - 1.0) * u * u - n * m;
    if den.abs() <= 1e-12 * n * m {
        return Err(FormulaError::SingularDenominator);
    }
    Ok(den)
}

/// Closed-form inverse entries of the p-distance matrix of `K_{n,m}`,
/// valid while `(n-1)(m-1)(2^p)^2 != nm`.
pub fn bipartite_inverse_entries(
    n: usize,
    m: usize,
    p: f64,
) -> Result<BipartiteInverseEntries, FormulaError> {
    if n == 0 || m == 0 {
        return Err(FormulaError::BadSize { n: n.min(m) });
    }
    let (nf, mf) = (n as f64, m as f64);
    let u = 2.0_f64.powf(p);
    let den = u * bipartite_denominator(nf, mf, u)?;
    Ok(BipartiteInverseEntries {
        a: ((1.0 - mf) * (nf - 2.0) * u * u + mf * (nf - 1.0)) / den,
        b: ((mf - 1.0) * u * u - mf) / den,
        c: -u / den,
        d: ((1.0 - nf) * (mf - 2.0) * u * u + nf * (mf - 1.0)) / den,
        e: ((nf - 1.0) * u * u - nf) / den,
    })
}

/// `<D_p^-1 1, 1>` for `K_{n,m}` in closed form:
/// `((2nm - n - m) 2^p - 2nm) / ((n-1)(m-1)(2^p)^2 - nm)`.
pub fn bipartite_inner(n: usize, m: usize, p: f64) -> Result<f64, FormulaError> {
    if n == 0 || m == 0 {
        return Err(FormulaError::BadSize { n: n.min(m) });
    }
    let (nf, mf) = (n as f64, m as f64);
    let u = 2.0_f64.powf(p);
    let den = bipartite_denominator(nf, mf, u)?;
    Ok(((2.0 * nf * mf - nf - mf) * u - 2.0 * nf * mf) / den)
}

/// `f_n(p) = (n-1)^p - n^p + 2`, the roundness gap (times 4) of the
/// standard (2,2)-simplex on the cycle with `2n + 1` vertices. Negative
/// values certify that the cycle fails p-negative type at `p`.
pub fn odd_cycle_simplex_fn(n: usize, p: f64) -> f64 {
    assert!(n >= 2, "simplex function needs n >= 2");
    let nf = n as f64;
    (nf - 1.0).powf(p) - nf.powf(p) + 2.0
}

/// Lower bound on the supremal p-negative type of any `n`-point metric
/// space with scaled diameter `D > 1`:
/// `ln(1 / (1 - Gamma)) / ln(D)` with
/// `Gamma = (1/ceil(n/2) + 1/floor(n/2)) / 2`.
pub fn weston_lower_bound(n: usize, scaled_diameter: f64) -> Result<f64, FormulaError> {
    if n < 2 {
        return Err(FormulaError::BadSize { n });
    }
    if !(scaled_diameter > 1.0) {
        // An all-equal space: the bound degenerates and the supremal
        // p-negative type is infinite, which the caller must handle.
        return Err(FormulaError::BadDiameter);
    }
    let gamma = 0.5 * (1.0 / (n as f64 / 2.0).ceil() + 1.0 / (n as f64 / 2.0).floor());
    Ok((1.0 / (1.0 - gamma)).ln() / scaled_diameter.ln())
}

/// Lower bound on the supremal p-negative type of any metric tree with
/// `n >= 3` vertices: `1 + ln(1 + 1/((n-1)^3 (n-2))) / ln(n-1)`.
pub fn tree_lower_bound(n: usize) -> Result<f64, FormulaError> {
    if n < 3 {
        return Err(FormulaError::BadSize { n });
    }
    let nf = n as f64;
    Ok(1.0 + (1.0 + 1.0 / ((nf - 1.0).powi(3) * (nf - 2.0))).ln() / (nf - 1.0).ln())
}

/// The open interval `(log2(2 + sqrt(3)), 2)` that contains no supremal
/// p-negative type of any connected path metric graph. Both endpoints are
/// attained: the left one by the 3-star with one leaf edge added, the
/// right one by paths.
pub fn gap_interval() -> (f64, f64) {
    ((2.0 + 3.0_f64.sqrt()).log2(), 2.0)
}
