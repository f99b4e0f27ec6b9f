//! Deciding p-negative type, locating the supremal exponent, and extracting
//! the extremal weight vector.
//!
//! For a valid metric space the restricted quadratic form `Q^T D_p Q` is
//! negative definite at `p = 0` and its largest eigenvalue is strictly
//! negative exactly on `[0, wp)`: below the supremum the space has strict
//! p-negative type, above it p-negative type fails outright. The scan
//! therefore bisects the single sign change of that eigenvalue. The
//! determinant conditions (`det(D_p) = 0` versus `<D_p^-1 1, 1> = 0`) are
//! evaluated at the located root to classify which one triggered it:
//! `det(D_p)` can vanish to even order (the 5-cycle has a two-dimensional
//! kernel), and the inner product has poles and removable discontinuities,
//! so neither is usable for the sign scan itself.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{
    bordered_matrix, lu_det, pi0_basis, solve, sym_eigen, sym_eigs, Matrix, RestrictedForm,
};
use crate::metric::MetricSpace;

/// Entries of the extremal vector below this fraction of its largest entry
/// are treated as zeros and dropped from the simplex.
const ZERO_ENTRY_REL: f64 = 1e-9;

/// Simplex weight sums may deviate from 1 by at most this much.
const WEIGHT_SUM_TOL: f64 = 1e-10;

/// Violation margin for the randomized oracle, relative to
/// `max(D_p) * |alpha|^2`.
const ORACLE_REL_TOL: f64 = 1e-10;

/// Grid points evaluated per parallel batch during the scan.
const SCAN_CHUNK: usize = 64;

/// How many times the scan is retried with a halved grid step when the
/// bisected root disagrees with a sign check one grid step to either side.
const MAX_RESCANS: usize = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PntError {
    #[error("space does not have negative type at p = {p}")]
    NotNegativeType { p: f64 },
    #[error("no extremal vector: supremal p-negative type is not finite")]
    InfiniteType,
    #[error("extremal vector has entries of only one sign")]
    DegenerateVector,
    #[error("simplex sides overlap at index {index}")]
    OverlappingSimplex { index: usize },
    #[error("simplex weights are not normalized on side {side}")]
    UnnormalizedWeights { side: char },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PntConfig {
    /// Upper end of the scan; beyond it the result is reported as
    /// `InfiniteBeyond` rather than infinite.
    pub p_max: f64,
    pub grid_step: f64,
    /// Width to which the sign-change bracket is bisected.
    pub tol_p: f64,
    /// Relative tolerance on restricted eigenvalues.
    pub tol_eig: f64,
    /// Relative tolerance on determinant magnitudes.
    pub tol_det: f64,
}

impl Default for PntConfig {
    fn default() -> Self {
        PntConfig {
            p_max: 20.0,
            grid_step: 0.01,
            tol_p: 1e-12,
            tol_eig: 1e-9,
            tol_det: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PntStatus {
    /// The supremal p-negative type, attained non-strictly.
    Finite(f64),
    /// Negative type held on the whole scanned range `[0, p_max]`.
    InfiniteBeyond(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trigger {
    /// `det(D_p)` vanishes at the root.
    DetZero,
    /// `det(D_p)` stays away from zero; `<D_p^-1 1, 1>` vanishes.
    InnerZero,
    /// No finite root was found.
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub det: f64,
    pub bordered_det: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PntResult {
    pub status: PntStatus,
    pub trigger: Trigger,
    /// Final bisection interval (degenerate for `InfiniteBeyond`).
    pub bracket: (f64, f64),
    /// Largest restricted eigenvalue at the reported point.
    pub lambda_max_at_p: f64,
    /// `det` and bordered determinant at the reported point.
    pub diagnostics: Diagnostics,
}

impl PntResult {
    pub fn p(&self) -> Option<f64> {
        match self.status {
            PntStatus::Finite(p) => Some(p),
            PntStatus::InfiniteBeyond(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexVertex {
    pub index: usize,
    pub weight: f64,
}

/// A normalized two-sided weighting: positive weights summing to 1 on each
/// side, over disjoint index sets.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    pub a_side: Vec<SimplexVertex>,
    pub b_side: Vec<SimplexVertex>,
}

/// Weight vector `alpha` with `<alpha, 1> = 0` and `<D_p alpha, alpha> = 0`
/// at the supremal exponent, together with its simplex form.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalCertificate {
    /// Scaled so the most negative entry is -1.
    pub alpha: Vec<f64>,
    pub simplex: Simplex,
    /// `<D_p alpha, alpha>` at the supremal exponent.
    pub form_value: f64,
    /// Right-hand side minus left-hand side of the roundness inequality for
    /// the simplex at the supremal exponent.
    pub roundness_gap: f64,
}

fn restricted_lambda_max(space: &MetricSpace, q: &Matrix, p: f64) -> f64 {
    let dp = space
        .p_distance_matrix(p)
        .expect("scan exponents are nonnegative");
    let rf = RestrictedForm::with_basis(q, &dp.to_matrix());
    let eigs = rf.eigenvalues().expect("restricted form is symmetric");
    *eigs.last().expect("n >= 2 gives a nonempty spectrum")
}

/// Whether the space has p-negative type: the restricted form is negative
/// semidefinite within the default eigenvalue tolerance.
pub fn has_negative_type(space: &MetricSpace, p: f64) -> bool {
    assert!(
        p >= 0.0 && p.is_finite(),
        "exponent must be finite and >= 0"
    );
    if space.n() < 2 {
        return true;
    }
    let cfg = PntConfig::default();
    let dp = space.p_distance_matrix(p).unwrap();
    let q = pi0_basis(space.n()).unwrap();
    let rf = RestrictedForm::with_basis(&q, &dp.to_matrix());
    let lam = *rf.eigenvalues().unwrap().last().unwrap();
    lam <= cfg.tol_eig * dp.max_entry()
}

/// Whether the space has *strict* p-negative type. Under p-negative type
/// this is equivalent to `D_p` being nonsingular with
/// `<D_p^-1 1, 1> != 0`; both conditions are tested through the smallest
/// eigenvalue magnitude of the respective symmetric matrix (`D_p` and its
/// bordered extension), which stays meaningful where the raw determinant
/// underflows its own rounding noise near high-multiplicity roots.
pub fn has_strict_negative_type(space: &MetricSpace, p: f64) -> Result<bool, PntError> {
    if !has_negative_type(space, p) {
        return Err(PntError::NotNegativeType { p });
    }
    if space.n() < 2 {
        return Ok(true);
    }
    let cfg = PntConfig::default();
    let dp = space.p_distance_matrix(p).unwrap();
    let d = dp.to_matrix();
    let dmax = dp.max_entry();
    let min_abs = |eigs: Vec<f64>| eigs.into_iter().map(f64::abs).fold(f64::INFINITY, f64::min);
    let d_min = min_abs(sym_eigs(&d).expect("D_p is symmetric"));
    if d_min <= cfg.tol_det * dmax {
        return Ok(false);
    }
    let b = bordered_matrix(&d);
    let b_min = min_abs(sym_eigs(&b).expect("bordered matrix is symmetric"));
    Ok(b_min > cfg.tol_det * dmax.max(1.0))
}

fn point_diagnostics(space: &MetricSpace, p: f64) -> (Diagnostics, f64) {
    let dp = space.p_distance_matrix(p).unwrap();
    let d = dp.to_matrix();
    (
        Diagnostics {
            det: lu_det(&d),
            bordered_det: crate::linalg::bordered_det(&d),
        },
        dp.max_entry(),
    )
}

/// Locates the supremal p-negative type: scans the largest restricted
/// eigenvalue on a grid from 0 to `cfg.p_max`, bisects its first sign
/// change to width `cfg.tol_p`, and classifies the trigger by the
/// determinant magnitude at the root. Returns `InfiniteBeyond(p_max)` when
/// the eigenvalue stays nonpositive on the whole range.
///
/// Grid points within a batch are evaluated in parallel; the first sign
/// change is selected by index, so the result does not depend on thread
/// count.
pub fn supremal_pnt(space: &MetricSpace, cfg: &PntConfig) -> PntResult {
    let n = space.n();
    if n < 2 {
        // One point: every roundness inequality is vacuous.
        return PntResult {
            status: PntStatus::InfiniteBeyond(cfg.p_max),
            trigger: Trigger::NotApplicable,
            bracket: (cfg.p_max, cfg.p_max),
            lambda_max_at_p: f64::NEG_INFINITY,
            diagnostics: point_diagnostics(space, cfg.p_max).0,
        };
    }
    let q = pi0_basis(n).unwrap();
    let eval = |p: f64| restricted_lambda_max(space, &q, p);

    let mut step = cfg.grid_step;
    for attempt in 0..=MAX_RESCANS {
        let Some((lo0, hi0)) = scan_first_positive(&eval, step, cfg.p_max) else {
            let (diagnostics, _) = point_diagnostics(space, cfg.p_max);
            return PntResult {
                status: PntStatus::InfiniteBeyond(cfg.p_max),
                trigger: Trigger::NotApplicable,
                bracket: (cfg.p_max, cfg.p_max),
                lambda_max_at_p: eval(cfg.p_max),
                diagnostics,
            };
        };
        let (mut lo, mut hi) = (lo0, hi0);
        while hi - lo > cfg.tol_p {
            let mid = 0.5 * (lo + hi);
            if eval(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let root = 0.5 * (lo + hi);

        let left_ok = eval((root - step).max(0.0)) <= 0.0;
        let right = root + step;
        let right_ok = right > cfg.p_max || eval(right) > 0.0;
        if (left_ok && right_ok) || attempt == MAX_RESCANS {
            let (diagnostics, dmax) = point_diagnostics(space, root);
            let trigger = if diagnostics.det.abs() <= cfg.tol_det * dmax.powi(n as i32) {
                Trigger::DetZero
            } else {
                Trigger::InnerZero
            };
            return PntResult {
                status: PntStatus::Finite(root),
                trigger,
                bracket: (lo, hi),
                lambda_max_at_p: eval(root),
                diagnostics,
            };
        }
        step *= 0.5;
    }
    unreachable!("scan loop returns on the final attempt");
}

/// First grid index with a positive value, returned as the bracketing
/// interval. The grid is `p_i = i * step` capped at `p_max`; `p_0 = 0`
/// is skipped because every valid metric space is strictly negative
/// definite there.
fn scan_first_positive<F>(eval: &F, step: f64, p_max: f64) -> Option<(f64, f64)>
where
    F: Fn(f64) -> f64 + Sync,
{
    let count = (p_max / step).ceil() as usize;
    let grid_p = |i: usize| (i as f64 * step).min(p_max);
    let mut base = 1usize;
    while base <= count {
        let hi = (base + SCAN_CHUNK - 1).min(count);
        let values: Vec<f64> = (base..=hi)
            .into_par_iter()
            .map(|i| eval(grid_p(i)))
            .collect();
        for (offset, value) in values.iter().enumerate() {
            if *value > 0.0 {
                let i = base + offset;
                return Some((grid_p(i - 1), grid_p(i)));
            }
        }
        base = hi + 1;
    }
    None
}

/// Extracts a weight vector achieving `<D_p alpha, alpha> = 0` at a finite
/// supremal exponent: the near-kernel eigenvector for a `DetZero` trigger,
/// or `D_p^-1 1` projected back onto the mean-zero hyperplane for an
/// `InnerZero` trigger. The vector is scaled so its most negative entry is
/// -1 and split by sign into the normalized simplex.
pub fn extremal_vector(
    space: &MetricSpace,
    result: &PntResult,
) -> Result<ExtremalCertificate, PntError> {
    let p = match result.status {
        PntStatus::Finite(p) => p,
        PntStatus::InfiniteBeyond(_) => return Err(PntError::InfiniteType),
    };
    let n = space.n();
    let dp = space.p_distance_matrix(p).unwrap();
    let d = dp.to_matrix();

    let mut alpha: Vec<f64> = match result.trigger {
        Trigger::DetZero => {
            let q = pi0_basis(n).expect("finite result implies n >= 2");
            let rf = RestrictedForm::with_basis(&q, &d);
            let (vals, vecs) = sym_eigen(rf.form()).expect("restricted form is symmetric");
            let nearest = (0..vals.len())
                .min_by(|&i, &j| vals[i].abs().partial_cmp(&vals[j].abs()).unwrap())
                .expect("n >= 2");
            q.mul_vec(&vecs.column(nearest))
        }
        Trigger::InnerZero => {
            let x = solve(&d, &vec![1.0; n]).map_err(|_| PntError::DegenerateVector)?;
            // The exact root has D_p^-1 1 mean-free; the bisection error
            // leaves a small all-ones component to scrub.
            let mean = x.iter().sum::<f64>() / n as f64;
            x.into_iter().map(|v| v - mean).collect()
        }
        Trigger::NotApplicable => return Err(PntError::InfiniteType),
    };

    let min = alpha.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(min < 0.0) {
        return Err(PntError::DegenerateVector);
    }
    let scale = -1.0 / min;
    for v in alpha.iter_mut() {
        *v *= scale;
    }

    let amax = alpha.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    let zero_tol = ZERO_ENTRY_REL * amax;
    let mut a_side = Vec::new();
    let mut b_side = Vec::new();
    let mut a_sum = 0.0;
    let mut b_sum = 0.0;
    for (index, &v) in alpha.iter().enumerate() {
        if v > zero_tol {
            a_side.push((index, v));
            a_sum += v;
        } else if v < -zero_tol {
            b_side.push((index, -v));
            b_sum += -v;
        }
    }
    if a_side.is_empty() || b_side.is_empty() {
        return Err(PntError::DegenerateVector);
    }
    let simplex = Simplex {
        a_side: a_side
            .into_iter()
            .map(|(index, v)| SimplexVertex {
                index,
                weight: v / a_sum,
            })
            .collect(),
        b_side: b_side
            .into_iter()
            .map(|(index, v)| SimplexVertex {
                index,
                weight: v / b_sum,
            })
            .collect(),
    };

    let d_alpha = d.mul_vec(&alpha);
    let form_value: f64 = d_alpha.iter().zip(&alpha).map(|(a, b)| a * b).sum();
    let gap = roundness_gap(space, &simplex, p)?;

    Ok(ExtremalCertificate {
        alpha,
        simplex,
        form_value,
        roundness_gap: gap,
    })
}

/// Right-hand side minus left-hand side of the roundness inequality at
/// exponent `p`: the weighted cross-side p-distances minus both weighted
/// within-side sums. Nonnegative for all simplices exactly when the space
/// has p-negative type.
pub fn roundness_gap(space: &MetricSpace, simplex: &Simplex, p: f64) -> Result<f64, PntError> {
    for a in &simplex.a_side {
        if simplex.b_side.iter().any(|b| b.index == a.index) {
            return Err(PntError::OverlappingSimplex { index: a.index });
        }
    }
    let check_side = |side: &[SimplexVertex], name: char| -> Result<(), PntError> {
        if side.iter().any(|v| !(v.weight > 0.0)) {
            return Err(PntError::UnnormalizedWeights { side: name });
        }
        let sum: f64 = side.iter().map(|v| v.weight).sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(PntError::UnnormalizedWeights { side: name });
        }
        Ok(())
    };
    check_side(&simplex.a_side, 'a')?;
    check_side(&simplex.b_side, 'b')?;

    let dist_p = |i: usize, j: usize| space.dist(i, j).powf(p);
    let mut cross = 0.0;
    for a in &simplex.a_side {
        for b in &simplex.b_side {
            cross += a.weight * b.weight * dist_p(a.index, b.index);
        }
    }
    let within = |side: &[SimplexVertex]| {
        let mut acc = 0.0;
        for (k, x) in side.iter().enumerate() {
            for y in &side[k + 1..] {
                acc += x.weight * y.weight * dist_p(x.index, y.index);
            }
        }
        acc
    };
    Ok(cross - within(&simplex.a_side) - within(&simplex.b_side))
}

/// Randomized brute-force check of p-negative type: samples mean-free
/// vectors over random point subsets and reports `false` if any gives a
/// positive quadratic form beyond rounding. Deterministic for a fixed
/// seed; intended as a test-side oracle, not a runtime dependency.
pub fn negative_type_oracle(space: &MetricSpace, p: f64, trials: usize, seed: u64) -> bool {
    let n = space.n();
    if n < 2 {
        return true;
    }
    let dp = space.p_distance_matrix(p).unwrap();
    let dmax = dp.max_entry();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut indices: Vec<usize> = (0..n).collect();
    for _ in 0..trials {
        let k = rng.random_range(2..=n);
        for i in 0..k {
            let j = rng.random_range(i..n);
            indices.swap(i, j);
        }
        let mut entries: Vec<f64> = (0..k).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
        let mean = entries.iter().sum::<f64>() / k as f64;
        for e in entries.iter_mut() {
            *e -= mean;
        }
        let norm_sq: f64 = entries.iter().map(|e| e * e).sum();
        if norm_sq < 1e-20 {
            continue;
        }
        let mut form = 0.0;
        for a in 0..k {
            for b in (a + 1)..k {
                form += 2.0 * dp.entry(indices[a], indices[b]) * entries[a] * entries[b];
            }
        }
        if form > ORACLE_REL_TOL * dmax * norm_sq {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, fixture_g1, path_graph};

    const LOG2_3_PLUS_SQRT5_HALF: f64 = 1.3884838272612345; // log2((3+sqrt5)/2)
    const LOG2_13_SQRT105: f64 = 1.538969589459625; // log2((13+sqrt105)/8)

    fn metric(g: &crate::graph::Graph) -> MetricSpace {
        g.path_metric().unwrap()
    }

    #[test]
    fn negative_type_at_zero_and_near_known_roots() {
        let c5 = metric(&cycle(5).unwrap());
        assert!(has_negative_type(&c5, 0.0));
        assert!(has_negative_type(&c5, 1.0));
        assert!(!has_negative_type(&c5, 1.5));
        let p4 = metric(&path_graph(4).unwrap());
        assert!(has_negative_type(&p4, 2.0));
    }

    #[test]
    fn strictness_decisions() {
        let k33 = metric(&complete_bipartite(3, 3).unwrap());
        assert_eq!(has_strict_negative_type(&k33, 0.3), Ok(true));

        let c5 = metric(&cycle(5).unwrap());
        assert_eq!(
            has_strict_negative_type(&c5, LOG2_3_PLUS_SQRT5_HALF),
            Ok(false)
        );

        let g1 = metric(&fixture_g1());
        assert_eq!(has_strict_negative_type(&g1, LOG2_13_SQRT105), Ok(false));

        assert_eq!(
            has_strict_negative_type(&c5, 1.6),
            Err(PntError::NotNegativeType { p: 1.6 })
        );
    }

    #[test]
    fn five_cycle_root_is_det_zero() {
        let c5 = metric(&cycle(5).unwrap());
        let result = supremal_pnt(&c5, &PntConfig::default());
        let p = result.p().unwrap();
        assert!((p - LOG2_3_PLUS_SQRT5_HALF).abs() < 1e-8, "p = {p}");
        assert_eq!(result.trigger, Trigger::DetZero);
        assert!(result.bracket.0 <= p && p <= result.bracket.1);
        assert!(result.bracket.1 - result.bracket.0 <= PntConfig::default().tol_p);
        // both determinant quantities vanish at this root: det directly,
        // the bordered one because its det factor does
        let dmax = c5.p_distance_matrix(p).unwrap().max_entry();
        assert!(result.diagnostics.det.abs() <= 1e-8 * dmax);
        assert!(result.diagnostics.bordered_det.abs() <= 1e-8 * dmax);
    }

    #[test]
    fn star_with_edge_root_is_inner_zero() {
        let g1 = metric(&fixture_g1());
        let result = supremal_pnt(&g1, &PntConfig::default());
        assert!((result.p().unwrap() - LOG2_13_SQRT105).abs() < 1e-8);
        assert_eq!(result.trigger, Trigger::InnerZero);
        // the determinant never vanishes on [0, wp] for this graph
        assert!(result.diagnostics.det.abs() > 1.0);
    }

    #[test]
    fn complete_graph_is_infinite_beyond() {
        let k4 = metric(&complete(4).unwrap());
        let result = supremal_pnt(&k4, &PntConfig::default());
        assert_eq!(result.status, PntStatus::InfiniteBeyond(20.0));
        assert_eq!(result.trigger, Trigger::NotApplicable);
        assert!(result.p().is_none());
    }

    #[test]
    fn single_point_is_infinite_immediately() {
        let space = MetricSpace::from_rows(&[vec![0.0]]).unwrap();
        let result = supremal_pnt(&space, &PntConfig::default());
        assert_eq!(result.status, PntStatus::InfiniteBeyond(20.0));
        assert_eq!(result.diagnostics.det, 0.0);
        assert_eq!(result.diagnostics.bordered_det, -1.0);
    }

    #[test]
    fn extremal_certificate_for_bipartite() {
        let k23 = metric(&complete_bipartite(2, 3).unwrap());
        let result = supremal_pnt(&k23, &PntConfig::default());
        let cert = extremal_vector(&k23, &result).unwrap();
        // proportional to (1/2, 1/2, -1/3, -1/3, -1/3) up to sign and scale
        let reference = [0.5, 0.5, -1.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0];
        let dot: f64 = cert.alpha.iter().zip(&reference).map(|(a, b)| a * b).sum();
        let norm: f64 = cert.alpha.iter().map(|a| a * a).sum();
        let c = dot / norm;
        for (a, r) in cert.alpha.iter().zip(&reference) {
            assert!((c * a - r).abs() < 1e-8, "alpha {a} vs {r}");
        }
        assert_eq!(cert.simplex.a_side.len() + cert.simplex.b_side.len(), 5);
        assert!(cert.form_value.abs() < 1e-9);
        assert!(cert.roundness_gap.abs() < 1e-9);
    }

    #[test]
    fn extremal_vector_requires_finite_type() {
        let k3 = metric(&complete(3).unwrap());
        let result = supremal_pnt(&k3, &PntConfig::default());
        assert_eq!(
            extremal_vector(&k3, &result).unwrap_err(),
            PntError::InfiniteType
        );
    }

    #[test]
    fn roundness_gap_two_points() {
        let space = MetricSpace::from_rows(&[vec![0.0, 3.0], vec![3.0, 0.0]]).unwrap();
        let simplex = Simplex {
            a_side: vec![SimplexVertex {
                index: 0,
                weight: 1.0,
            }],
            b_side: vec![SimplexVertex {
                index: 1,
                weight: 1.0,
            }],
        };
        let gap = roundness_gap(&space, &simplex, 2.0).unwrap();
        assert_eq!(gap, 9.0);
    }

    #[test]
    fn roundness_gap_validates_input() {
        let space = metric(&cycle(4).unwrap());
        let overlapping = Simplex {
            a_side: vec![SimplexVertex {
                index: 0,
                weight: 1.0,
            }],
            b_side: vec![SimplexVertex {
                index: 0,
                weight: 1.0,
            }],
        };
        assert_eq!(
            roundness_gap(&space, &overlapping, 1.0).unwrap_err(),
            PntError::OverlappingSimplex { index: 0 }
        );
        let unnormalized = Simplex {
            a_side: vec![SimplexVertex {
                index: 0,
                weight: 0.7,
            }],
            b_side: vec![SimplexVertex {
                index: 1,
                weight: 1.0,
            }],
        };
        assert_eq!(
            roundness_gap(&space, &unnormalized, 1.0).unwrap_err(),
            PntError::UnnormalizedWeights { side: 'a' }
        );
    }

    #[test]
    fn odd_cycle_simplex_gap_matches_closed_form() {
        // (2,2)-simplex on the 7-cycle whose gap is ((n-1)^p - n^p + 2)/4
        // for n = 3.
        let c7 = metric(&cycle(7).unwrap());
        let simplex = Simplex {
            a_side: vec![
                SimplexVertex {
                    index: 0,
                    weight: 0.5,
                },
                SimplexVertex {
                    index: 3,
                    weight: 0.5,
                },
            ],
            b_side: vec![
                SimplexVertex {
                    index: 1,
                    weight: 0.5,
                },
                SimplexVertex {
                    index: 4,
                    weight: 0.5,
                },
            ],
        };
        for p in [1.0, 2.0, 1.3] {
            let gap = roundness_gap(&c7, &simplex, p).unwrap();
            let expect = (2.0_f64.powf(p) - 3.0_f64.powf(p) + 2.0) / 4.0;
            assert!((gap - expect).abs() < 1e-12, "p = {p}");
        }
        let gap2 = roundness_gap(&c7, &simplex, 2.0).unwrap();
        assert!((gap2 + 0.75).abs() < 1e-12);
    }

    #[test]
    fn oracle_agrees_on_five_cycle() {
        let c5 = metric(&cycle(5).unwrap());
        assert!(negative_type_oracle(&c5, 1.0, 1000, 7));
        assert!(!negative_type_oracle(&c5, 1.6, 1000, 7));
    }

    #[test]
    fn oracle_trivial_on_two_points() {
        let space = MetricSpace::from_rows(&[vec![0.0, 2.0], vec![2.0, 0.0]]).unwrap();
        for p in [0.0, 1.0, 5.0, 20.0] {
            assert!(negative_type_oracle(&space, p, 500, 3));
        }
    }
}
