//! Self-contained dense linear algebra for small symmetric systems.
//!
//! Everything here operates on matrices of at most a few dozen rows, so the
//! implementations favour determinism and simplicity: LU with partial
//! pivoting for determinants and solves, cyclic Jacobi rotations for
//! symmetric eigenvalues, and a fixed (Helmert) orthonormal basis of the
//! mean-zero hyperplane so that results are byte-reproducible on a platform.

use thiserror::Error;

/// Pivot magnitudes below this fraction of the largest entry are treated as
/// exact zeros by the LU factorization.
const PIVOT_REL_TOL: f64 = 1e-14;

/// Target off-diagonal reduction for the Jacobi sweep, relative to the
/// Frobenius norm of the input.
const JACOBI_REL_TOL: f64 = 1e-13;

const JACOBI_MAX_SWEEPS: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symmetric (max asymmetry {max_asym:e})")]
    NotSymmetric { max_asym: f64 },
    #[error("bad size {n} for this operation")]
    BadSize { n: usize },
}

/// Minimal row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend_from_slice(row);
        }
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += aik * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![0.0; self.rows];
        for i in 0..self.rows {
            let mut acc = 0.0;
            for j in 0..self.cols {
                acc += self.get(i, j) * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }
}

struct LuFactors {
    lu: Matrix,
    perm: Vec<usize>,
    sign: f64,
    /// Column index at which pivoting broke down, if any.
    singular_at: Option<usize>,
}

fn lu_factor(m: &Matrix) -> LuFactors {
    let n = m.rows();
    assert_eq!(n, m.cols(), "lu_factor requires a square matrix");
    let mut lu = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    let tol = PIVOT_REL_TOL * m.max_abs();
    for k in 0..n {
        let mut pivot_row = k;
        let mut pivot_val = lu.get(k, k).abs();
        for r in (k + 1)..n {
            let v = lu.get(r, k).abs();
            if v > pivot_val {
                pivot_val = v;
                pivot_row = r;
            }
        }
        if pivot_val <= tol {
            return LuFactors {
                lu,
                perm,
                sign,
                singular_at: Some(k),
            };
        }
        if pivot_row != k {
            for j in 0..n {
                let a = lu.get(k, j);
                let b = lu.get(pivot_row, j);
                lu.set(k, j, b);
                lu.set(pivot_row, j, a);
            }
            perm.swap(k, pivot_row);
            sign = -sign;
        }
        let pivot = lu.get(k, k);
        for r in (k + 1)..n {
            let factor = lu.get(r, k) / pivot;
            lu.set(r, k, factor);
            for j in (k + 1)..n {
                let v = lu.get(r, j) - factor * lu.get(k, j);
                lu.set(r, j, v);
            }
        }
    }
    LuFactors {
        lu,
        perm,
        sign,
        singular_at: None,
    }
}

fn lu_solve_factored(f: &LuFactors, b: &[f64]) -> Vec<f64> {
    let n = f.lu.rows();
    let mut x: Vec<f64> = f.perm.iter().map(|&pi| b[pi]).collect();
    for i in 1..n {
        let mut acc = x[i];
        for j in 0..i {
            acc -= f.lu.get(i, j) * x[j];
        }
        x[i] = acc;
    }
    for i in (0..n).rev() {
        let mut acc = x[i];
        for j in (i + 1)..n {
            acc -= f.lu.get(i, j) * x[j];
        }
        x[i] = acc / f.lu.get(i, i);
    }
    x
}

/// Determinant via LU with partial pivoting. A pivot column with no entry
/// above `1e-14 * max|entry|` makes the result exactly 0.
pub fn lu_det(m: &Matrix) -> f64 {
    let f = lu_factor(m);
    if f.singular_at.is_some() {
        return 0.0;
    }
    let mut det = f.sign;
    for i in 0..m.rows() {
        det *= f.lu.get(i, i);
    }
    det
}

/// Solves `M x = b`, with one step of iterative refinement.
pub fn solve(m: &Matrix, b: &[f64]) -> Result<Vec<f64>, LinalgError> {
    assert_eq!(m.rows(), b.len());
    let f = lu_factor(m);
    if f.singular_at.is_some() {
        return Err(LinalgError::Singular);
    }
    let mut x = lu_solve_factored(&f, b);
    let n = b.len();
    let mut residual = vec![0.0; n];
    for i in 0..n {
        let mut acc = b[i];
        for j in 0..n {
            acc -= m.get(i, j) * x[j];
        }
        residual[i] = acc;
    }
    let dx = lu_solve_factored(&f, &residual);
    for i in 0..n {
        x[i] += dx[i];
    }
    Ok(x)
}

/// The matrix `D` bordered by an all-ones row and column:
/// `[[D, 1], [1^T, 0]]`.
pub fn bordered_matrix(d: &Matrix) -> Matrix {
    let n = d.rows();
    assert_eq!(n, d.cols());
    let mut b = Matrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            b.set(i, j, d.get(i, j));
        }
        b.set(i, n, 1.0);
        b.set(n, i, 1.0);
    }
    b
}

/// Determinant of the bordered matrix. For invertible `D` this equals
/// `-det(D) * <D^-1 1, 1>`, but unlike that product it stays continuous in
/// the entries of `D`, which makes it a usable surrogate for the inner
/// product across points where `det(D)` vanishes.
pub fn bordered_det(d: &Matrix) -> f64 {
    lu_det(&bordered_matrix(d))
}

/// Deterministic orthonormal basis of the hyperplane `{a : <a, 1> = 0}`,
/// as the columns of an `n x (n-1)` matrix. Column `k` (1-based) is
/// proportional to `(1, ..., 1, -k, 0, ..., 0)` with `k` leading ones.
pub fn pi0_basis(n: usize) -> Result<Matrix, LinalgError> {
    if n < 2 {
        return Err(LinalgError::BadSize { n });
    }
    let mut q = Matrix::zeros(n, n - 1);
    for k in 1..n {
        let norm = (k as f64 * (k as f64 + 1.0)).sqrt();
        for i in 0..k {
            q.set(i, k - 1, 1.0 / norm);
        }
        q.set(k, k - 1, -(k as f64) / norm);
    }
    Ok(q)
}

/// All eigenvalues of a symmetric matrix, sorted ascending.
pub fn sym_eigs(s: &Matrix) -> Result<Vec<f64>, LinalgError> {
    Ok(jacobi(s, false)?.0)
}

/// Eigenvalues (ascending) and matching eigenvector columns of a symmetric
/// matrix.
pub fn sym_eigen(s: &Matrix) -> Result<(Vec<f64>, Matrix), LinalgError> {
    let (vals, vecs) = jacobi(s, true)?;
    Ok((vals, vecs.expect("vectors requested")))
}

fn jacobi(s: &Matrix, want_vectors: bool) -> Result<(Vec<f64>, Option<Matrix>), LinalgError> {
    let n = s.rows();
    assert_eq!(n, s.cols(), "jacobi requires a square matrix");
    let max_asym = s.max_asymmetry();
    if max_asym > 1e-10 * s.max_abs().max(1.0) {
        return Err(LinalgError::NotSymmetric { max_asym });
    }
    if n == 0 {
        return Ok((Vec::new(), want_vectors.then(|| Matrix::zeros(0, 0))));
    }
    let mut a = s.clone();
    // Scrub tiny asymmetries so both triangles agree during the sweeps.
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (a.get(i, j) + a.get(j, i));
            a.set(i, j, v);
            a.set(j, i, v);
        }
    }
    let mut v = Matrix::identity(n);
    let fro: f64 = a.data.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = JACOBI_REL_TOL * fro;

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0_f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off += 2.0 * a.get(i, j) * a.get(i, j);
            }
        }
        if off.sqrt() <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * c;
                let tau = sn / (1.0 + c);

                a.set(p, p, app - t * apq);
                a.set(q, q, aqq + t * apq);
                a.set(p, q, 0.0);
                a.set(q, p, 0.0);
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a.get(r, p);
                    let arq = a.get(r, q);
                    let new_rp = arp - sn * (arq + tau * arp);
                    let new_rq = arq + sn * (arp - tau * arq);
                    a.set(r, p, new_rp);
                    a.set(p, r, new_rp);
                    a.set(r, q, new_rq);
                    a.set(q, r, new_rq);
                }
                if want_vectors {
                    for r in 0..n {
                        let vrp = v.get(r, p);
                        let vrq = v.get(r, q);
                        v.set(r, p, vrp - sn * (vrq + tau * vrp));
                        v.set(r, q, vrq + sn * (vrp - tau * vrq));
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).partial_cmp(&a.get(j, j)).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| a.get(i, i)).collect();
    let vecs = want_vectors.then(|| {
        let mut out = Matrix::zeros(n, n);
        for (col, &src) in order.iter().enumerate() {
            for r in 0..n {
                out.set(r, col, v.get(r, src));
            }
        }
        out
    });
    Ok((vals, vecs))
}

/// The quadratic form of a symmetric matrix restricted to the mean-zero
/// hyperplane: holds the basis `Q` and the `(n-1) x (n-1)` matrix
/// `Q^T S Q`.
#[derive(Debug, Clone)]
pub struct RestrictedForm {
    basis: Matrix,
    form: Matrix,
}

impl RestrictedForm {
    pub fn new(sym: &Matrix) -> Result<Self, LinalgError> {
        let q = pi0_basis(sym.rows())?;
        Ok(Self::with_basis(&q, sym))
    }

    /// Builds `Q^T S Q` reusing a precomputed basis.
    pub fn with_basis(q: &Matrix, sym: &Matrix) -> Self {
        let form = q.transpose().mul(&sym.mul(q));
        RestrictedForm {
            basis: q.clone(),
            form,
        }
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn form(&self) -> &Matrix {
        &self.form
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>, LinalgError> {
        sym_eigs(&self.form)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones_minus_identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    m.set(i, j, 1.0);
                }
            }
        }
        m
    }

    #[test]
    fn det_of_identity() {
        assert_eq!(lu_det(&Matrix::identity(4)), 1.0);
    }

    #[test]
    fn det_of_ones_minus_identity() {
        // Eigenvalues of J - I are n-1 once and -1 with multiplicity n-1,
        // so for n = 5 the determinant is 4.
        let d = lu_det(&ones_minus_identity(5));
        assert!((d - 4.0).abs() < 1e-12, "det = {d}");
    }

    #[test]
    fn det_of_singular_matrix_is_exact_zero() {
        let m = Matrix::from_rows(&[
            vec![1.0, 2.0, 3.0],
            vec![2.0, 4.0, 6.0],
            vec![1.0, 1.0, 1.0],
        ]);
        assert_eq!(lu_det(&m), 0.0);
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let b = vec![3.0, -1.0, 2.0];
        let x = solve(&Matrix::identity(3), &b).unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn solve_ones_minus_identity() {
        // (J - I)^-1 = J/(n-1) - I, so the solution for b = 1 is 1/(n-1)
        // in every coordinate and the inner product is n/(n-1).
        let m = ones_minus_identity(3);
        let x = solve(&m, &[1.0, 1.0, 1.0]).unwrap();
        for v in &x {
            assert!((v - 0.5).abs() < 1e-14);
        }
        assert!((x.iter().sum::<f64>() - 1.5).abs() < 1e-14);
    }

    #[test]
    fn solve_singular_errors() {
        let m = Matrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]);
        assert_eq!(solve(&m, &[1.0, 2.0]).unwrap_err(), LinalgError::Singular);
    }

    #[test]
    fn solve_residual_is_small() {
        let m = Matrix::from_rows(&[
            vec![0.0, 1.0, 4.0],
            vec![1.0, 0.0, 1.0],
            vec![4.0, 1.0, 0.0],
        ]);
        let b = vec![1.0, 1.0, 1.0];
        let x = solve(&m, &b).unwrap();
        let xmax = x.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        for i in 0..3 {
            let mut acc = -b[i];
            for j in 0..3 {
                acc += m.get(i, j) * x[j];
            }
            assert!(acc.abs() <= 1e-9 * m.max_abs() * xmax);
        }
    }

    #[test]
    fn bordered_det_of_single_zero() {
        let d = Matrix::zeros(1, 1);
        assert_eq!(bordered_det(&d), -1.0);
    }

    #[test]
    fn bordered_det_matches_product_identity() {
        // bordered_det(D) = -det(D) * <D^-1 1, 1> when D is invertible;
        // for J - I with n = 3 this is -2 * 3/2 = -3.
        let d = ones_minus_identity(3);
        assert!((bordered_det(&d) + 3.0).abs() < 1e-12);
    }

    #[test]
    fn helmert_basis_small_cases() {
        let q = pi0_basis(2).unwrap();
        let r = 1.0 / 2.0_f64.sqrt();
        assert!((q.get(0, 0) - r).abs() < 1e-15);
        assert!((q.get(1, 0) + r).abs() < 1e-15);

        let q = pi0_basis(3).unwrap();
        let s2 = 1.0 / 2.0_f64.sqrt();
        let s6 = 1.0 / 6.0_f64.sqrt();
        let expect = [[s2, s6], [-s2, s6], [0.0, -2.0 * s6]];
        for i in 0..3 {
            for j in 0..2 {
                assert!((q.get(i, j) - expect[i][j]).abs() < 1e-15);
            }
        }
        assert!(pi0_basis(1).is_err());
    }

    #[test]
    fn helmert_basis_is_orthonormal_and_mean_free() {
        for n in 2..12 {
            let q = pi0_basis(n).unwrap();
            let qtq = q.transpose().mul(&q);
            for i in 0..n - 1 {
                for j in 0..n - 1 {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((qtq.get(i, j) - expect).abs() < 1e-12);
                }
            }
            for j in 0..n - 1 {
                let col_sum: f64 = q.column(j).iter().sum();
                assert!(col_sum.abs() < 1e-14);
            }
        }
    }

    #[test]
    fn jacobi_diagonal_matrix() {
        let mut m = Matrix::zeros(3, 3);
        m.set(0, 0, 3.0);
        m.set(1, 1, 1.0);
        m.set(2, 2, 2.0);
        let eigs = sym_eigs(&m).unwrap();
        assert_eq!(eigs, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn restricted_ones_minus_identity_is_negative_identity() {
        // J annihilates the mean-zero hyperplane, so Q^T (J - I) Q = -I.
        let rf = RestrictedForm::new(&ones_minus_identity(4)).unwrap();
        let eigs = rf.eigenvalues().unwrap();
        assert_eq!(eigs.len(), 3);
        for v in eigs {
            assert!((v + 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn jacobi_rejects_asymmetric_input() {
        let m = Matrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]);
        assert!(matches!(
            sym_eigs(&m),
            Err(LinalgError::NotSymmetric { .. })
        ));
    }

    #[test]
    fn jacobi_eigenvectors_reconstruct() {
        let s = Matrix::from_rows(&[
            vec![4.0, 1.0, -2.0, 0.5],
            vec![1.0, 3.0, 0.0, 1.5],
            vec![-2.0, 0.0, 1.0, -1.0],
            vec![0.5, 1.5, -1.0, 2.0],
        ]);
        let (vals, vecs) = sym_eigen(&s).unwrap();
        for k in 0..4 {
            let v = vecs.column(k);
            let sv = s.mul_vec(&v);
            for i in 0..4 {
                assert!(
                    (sv[i] - vals[k] * v[i]).abs() < 1e-10,
                    "eigenpair {k} fails at row {i}"
                );
            }
        }
        // trace and determinant agree with eigenvalue sum and product
        let trace: f64 = (0..4).map(|i| s.get(i, i)).sum();
        assert!((vals.iter().sum::<f64>() - trace).abs() < 1e-10);
        assert!((vals.iter().product::<f64>() - lu_det(&s)).abs() < 1e-9);
    }

    #[test]
    fn det_times_inverse_det_is_one() {
        let m = Matrix::from_rows(&[
            vec![2.0, 0.5, 0.0],
            vec![0.5, 3.0, 1.0],
            vec![0.0, 1.0, 4.0],
        ]);
        let n = 3;
        let mut inv = Matrix::zeros(n, n);
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            let col = solve(&m, &e).unwrap();
            for i in 0..n {
                inv.set(i, j, col[i]);
            }
        }
        assert!((lu_det(&m) * lu_det(&inv) - 1.0).abs() < 1e-7);
    }
}
