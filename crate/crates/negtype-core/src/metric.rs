//! Finite metric spaces and their entrywise-power distance matrices.

use thiserror::Error;

use crate::linalg::Matrix;

/// Relative tolerance for the triangle-inequality check. File input is
/// floating point, so only violations beyond rounding noise are rejected.
const TRIANGLE_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("matrix is not square: {rows} rows but row {bad_row} has {cols} columns")]
    NotSquare {
        rows: usize,
        bad_row: usize,
        cols: usize,
    },
    #[error("asymmetric entry at ({i}, {j})")]
    AsymmetricEntry { i: usize, j: usize },
    #[error("nonzero diagonal entry at ({i}, {i})")]
    NonzeroDiagonal { i: usize },
    #[error("off-diagonal entry at ({i}, {j}) is not positive")]
    NonpositiveOffDiagonal { i: usize, j: usize },
    #[error("triangle inequality violated: d({i},{j}) > d({i},{k}) + d({k},{j})")]
    TriangleViolation { i: usize, j: usize, k: usize },
    #[error("exponent {p} is negative or not finite")]
    NegativeExponent { p: f64 },
    #[error("operation requires at least two points")]
    SinglePoint,
    #[error("csv parse error at line {line}: {reason}")]
    Csv { line: usize, reason: String },
}

/// A validated finite metric space: symmetric nonnegative distances, zero
/// diagonal, distinct points, triangle inequality within rounding tolerance.
///
/// Distances are stored exactly as given; see [`MetricSpace::normalize_scale`]
/// for the opt-in rescaling to minimum distance 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSpace {
    n: usize,
    dist: Vec<f64>,
    labels: Option<Vec<String>>,
}

impl MetricSpace {
    /// Validates a square matrix of distances.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, MetricError> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MetricError::NotSquare {
                    rows: n,
                    bad_row: i,
                    cols: row.len(),
                });
            }
        }
        let mut dist = Vec::with_capacity(n * n);
        for row in rows {
            dist.extend_from_slice(row);
        }
        Self::from_flat(n, dist)
    }

    /// Validates an `n*n` row-major distance matrix.
    pub fn from_flat(n: usize, dist: Vec<f64>) -> Result<Self, MetricError> {
        if dist.len() != n * n {
            return Err(MetricError::NotSquare {
                rows: n,
                bad_row: 0,
                cols: dist.len().checked_div(n).unwrap_or(0),
            });
        }
        let at = |i: usize, j: usize| dist[i * n + j];
        for i in 0..n {
            if at(i, i) != 0.0 {
                return Err(MetricError::NonzeroDiagonal { i });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                // Exact equality: the matrix is stored as given, so any
                // asymmetry is an input defect rather than rounding.
                if at(i, j) != at(j, i) {
                    return Err(MetricError::AsymmetricEntry { i, j });
                }
                if !(at(i, j) > 0.0) || !at(i, j).is_finite() {
                    return Err(MetricError::NonpositiveOffDiagonal { i, j });
                }
            }
        }
        let max = dist.iter().cloned().fold(0.0_f64, f64::max);
        let slack = TRIANGLE_REL_TOL * max;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    if k == i || k == j {
                        continue;
                    }
                    if at(i, j) > at(i, k) + at(k, j) + slack {
                        return Err(MetricError::TriangleViolation { i, j, k });
                    }
                }
            }
        }
        Ok(MetricSpace {
            n,
            dist,
            labels: None,
        })
    }

    /// Parses the distance-matrix CSV format: `n` rows of `n` comma-separated
    /// decimals, no header row. Validation (including strict symmetry) runs
    /// after the parse.
    pub fn parse_csv(text: &str) -> Result<Self, MetricError> {
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut row = Vec::new();
            for field in line.split(',') {
                let field = field.trim();
                let value: f64 = field.parse().map_err(|_| MetricError::Csv {
                    line: idx + 1,
                    reason: format!("invalid number {field:?}"),
                })?;
                row.push(value);
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(MetricError::Csv {
                line: 0,
                reason: "empty matrix".to_string(),
            });
        }
        Self::from_rows(&rows)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.dist
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().cloned().fold(0.0, f64::max)
    }

    /// Smallest positive distance.
    pub fn min_distance(&self) -> Result<f64, MetricError> {
        if self.n < 2 {
            return Err(MetricError::SinglePoint);
        }
        let mut min = f64::INFINITY;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                min = min.min(self.dist(i, j));
            }
        }
        Ok(min)
    }

    /// Diameter divided by the minimum positive distance.
    pub fn scaled_diameter(&self) -> Result<f64, MetricError> {
        Ok(self.diameter() / self.min_distance()?)
    }

    /// Entrywise p-th power of the distance matrix, with `0^p = 0` on the
    /// diagonal for every `p >= 0` (so `D_0` is the all-ones matrix minus
    /// the identity, never the all-ones matrix).
    pub fn p_distance_matrix(&self, p: f64) -> Result<PDistanceMatrix, MetricError> {
        if !(p >= 0.0) || !p.is_finite() {
            return Err(MetricError::NegativeExponent { p });
        }
        let mut entries = vec![0.0; self.n * self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    entries[i * self.n + j] = self.dist(i, j).powf(p);
                }
            }
        }
        Ok(PDistanceMatrix {
            p,
            n: self.n,
            entries,
        })
    }

    /// Divides every distance by the minimum positive distance, returning the
    /// rescaled space and the scale factor. The minimum distance of the
    /// result is exactly 1.
    pub fn normalize_scale(&self) -> Result<(MetricSpace, f64), MetricError> {
        let scale = self.min_distance()?;
        let dist = self.dist.iter().map(|d| d / scale).collect();
        let space = MetricSpace {
            n: self.n,
            dist,
            labels: self.labels.clone(),
        };
        Ok((space, scale))
    }

    /// Multiplies every distance by `c > 0`.
    pub fn scaled(&self, c: f64) -> MetricSpace {
        assert!(c > 0.0 && c.is_finite(), "scale factor must be positive");
        MetricSpace {
            n: self.n,
            dist: self.dist.iter().map(|d| d * c).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Relabels the points: point `i` of the result is point `perm[i]` of
    /// `self`.
    pub fn permuted(&self, perm: &[usize]) -> MetricSpace {
        assert_eq!(perm.len(), self.n);
        let mut seen = vec![false; self.n];
        for &p in perm {
            assert!(p < self.n && !seen[p], "not a permutation");
            seen[p] = true;
        }
        let mut dist = vec![0.0; self.n * self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                dist[i * self.n + j] = self.dist(perm[i], perm[j]);
            }
        }
        MetricSpace {
            n: self.n,
            dist,
            labels: None,
        }
    }
}

/// The p-distance matrix `D_p = [d(x_i, x_j)^p]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PDistanceMatrix {
    p: f64,
    n: usize,
    entries: Vec<f64>,
}

impl PDistanceMatrix {
    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Largest entry, used as the scale for relative tolerances.
    pub fn max_entry(&self) -> f64 {
        self.entries.iter().cloned().fold(0.0, f64::max)
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_flat(self.n, self.n, self.entries.clone())
    }
}
