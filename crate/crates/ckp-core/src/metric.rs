//! Finite metric spaces and anchored norms.
//!
//! A [`FiniteMetricSpace`] is a list of labelled points together with a
//! validated distance matrix: zero diagonal, symmetric, positive off the
//! diagonal, triangle inequality within a tolerance. An [`AnchoredSpace`]
//! additionally fixes one point as the "zero" of the space; the norm of a
//! point is its distance to that anchor.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::MetricError;

/// One metric-axiom violation found by [`validate_metric`].
///
/// `magnitude` is the amount by which the axiom is missed: the absolute
/// entry for `negative` and `diag`, the absolute difference for `asym`,
/// the excess `d(i,j) - d(i,k) - d(k,j)` for `triangle`, and the offending
/// near-zero distance for `coincident`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Negative {
        i: usize,
        j: usize,
        magnitude: f64,
    },
    Asym {
        i: usize,
        j: usize,
        magnitude: f64,
    },
    Diag {
        i: usize,
        magnitude: f64,
    },
    Triangle {
        i: usize,
        j: usize,
        k: usize,
        magnitude: f64,
    },
    Coincident {
        i: usize,
        j: usize,
        magnitude: f64,
    },
}

/// Every axiom violation exceeding the validation tolerance.
///
/// Violations are listed kind by kind (negative, asym, diag, triangle,
/// coincident), each kind in lexicographic index order, so reports are
/// deterministic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    /// True iff the matrix is a metric within the tolerance used.
    pub fn is_metric(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_square(dist: &[Vec<f64>]) -> Result<usize, MetricError> {
    let n = dist.len();
    if n == 0 {
        return Err(MetricError::Empty);
    }
    for (row, entries) in dist.iter().enumerate() {
        if entries.len() != n {
            return Err(MetricError::NotSquare {
                row,
                len: entries.len(),
                n,
            });
        }
        for (col, &value) in entries.iter().enumerate() {
            if !value.is_finite() {
                return Err(MetricError::NonFinite { i: row, j: col });
            }
        }
    }
    Ok(n)
}

/// Largest absolute entry of a matrix; 0 for a single point.
fn max_abs_entry(dist: &[Vec<f64>]) -> f64 {
    let mut max = 0.0_f64;
    for row in dist {
        for &value in row {
            let a = libm::fabs(value);
            if a > max {
                max = a;
            }
        }
    }
    max
}

/// Scale-relative default tolerance for metric validation: `1e-9 · max |entry|`.
pub fn default_metric_tau(dist: &[Vec<f64>]) -> f64 {
    1e-9 * max_abs_entry(dist)
}

/// Checks the metric axioms on a square matrix and reports every violation
/// exceeding `tau`.
///
/// Checked, in report order: non-negativity, symmetry, zero diagonal, the
/// triangle inequality over all ordered triples `(i, j, k)` with `k` distinct
/// from `i` and `j`, and distinctness of points (off-diagonal entries must
/// exceed `tau`).
///
/// Structural problems (non-square matrix, NaN or infinite entries) are
/// errors, not violations.
#[allow(clippy::needless_range_loop)]
pub fn validate_metric(dist: &[Vec<f64>], tau: f64) -> Result<ValidationReport, MetricError> {
    let n = check_square(dist)?;
    let mut violations = Vec::new();

    for i in 0..n {
        for j in 0..n {
            if dist[i][j] < -tau {
                violations.push(Violation::Negative {
                    i,
                    j,
                    magnitude: libm::fabs(dist[i][j]),
                });
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let gap = libm::fabs(dist[i][j] - dist[j][i]);
            if gap > tau {
                violations.push(Violation::Asym {
                    i,
                    j,
                    magnitude: gap,
                });
            }
        }
    }
    for i in 0..n {
        if libm::fabs(dist[i][i]) > tau {
            violations.push(Violation::Diag {
                i,
                magnitude: libm::fabs(dist[i][i]),
            });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                let excess = dist[i][j] - (dist[i][k] + dist[k][j]);
                if excess > tau {
                    violations.push(Violation::Triangle {
                        i,
                        j,
                        k,
                        magnitude: excess,
                    });
                }
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if dist[i][j] <= tau {
                violations.push(Violation::Coincident {
                    i,
                    j,
                    magnitude: dist[i][j],
                });
            }
        }
    }

    Ok(ValidationReport { violations })
}

/// Relaxes a symmetric non-negative matrix to its metric closure via
/// all-pairs shortest paths.
///
/// Floyd-Warshall passes repeat until a full pass changes nothing, so the
/// output satisfies `d[i][j] <= d[i][k] + d[k][j]` exactly in floating-point
/// arithmetic and the operation is exactly idempotent. Entries never
/// increase.
///
/// The input must be symmetric with a zero diagonal and positive
/// off-diagonal entries.
#[allow(clippy::needless_range_loop)]
pub fn shortest_path_repair(dist: &[Vec<f64>]) -> Result<Vec<Vec<f64>>, MetricError> {
    let n = check_square(dist)?;
    for i in 0..n {
        if dist[i][i] != 0.0 {
            return Err(MetricError::RepairNegative { i, j: i });
        }
        for j in 0..n {
            if dist[i][j] < 0.0 {
                return Err(MetricError::RepairNegative { i, j });
            }
            if dist[i][j] != dist[j][i] {
                return Err(MetricError::RepairAsymmetric { i, j });
            }
            if i != j && dist[i][j] == 0.0 {
                return Err(MetricError::RepairCoincident { i, j });
            }
        }
    }

    let mut out: Vec<Vec<f64>> = dist.to_vec();
    loop {
        let mut changed = false;
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = out[i][k] + out[k][j];
                    if via < out[i][j] {
                        out[i][j] = via;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return Ok(out);
        }
    }
}

/// A finite metric space: labelled points plus a validated distance matrix.
///
/// Construction runs [`validate_metric`] and refuses any violating matrix,
/// so a value of this type always satisfies the metric axioms within its
/// validation tolerance. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<Vec<f64>>,
}

impl FiniteMetricSpace {
    /// Builds a space using the scale-relative default tolerance.
    pub fn new(labels: Vec<String>, dist: Vec<Vec<f64>>) -> Result<Self, MetricError> {
        let tau = default_metric_tau(&dist);
        Self::with_tolerance(labels, dist, tau)
    }

    /// Builds a space validating with an explicit tolerance.
    pub fn with_tolerance(
        labels: Vec<String>,
        dist: Vec<Vec<f64>>,
        tau: f64,
    ) -> Result<Self, MetricError> {
        let n = check_square(&dist)?;
        if labels.len() != n {
            return Err(MetricError::LabelCount {
                labels: labels.len(),
                n,
            });
        }
        let report = validate_metric(&dist, tau)?;
        if !report.is_metric() {
            return Err(MetricError::NotAMetric(report));
        }
        Ok(Self { labels, dist })
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least one point
    }

    /// Distance between two points. Panics on out-of-range indices.
    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.dist[i][j]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dist_matrix(&self) -> &[Vec<f64>] {
        &self.dist
    }

    /// Largest pairwise distance; 0 for a single point.
    pub fn max_distance(&self) -> f64 {
        max_abs_entry(&self.dist)
    }
}

/// A metric space with a chosen anchor point, the "zero" defining the norm
/// `‖x‖ = d(x, anchor)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnchoredSpace {
    space: FiniteMetricSpace,
    anchor: usize,
}

impl AnchoredSpace {
    pub fn new(space: FiniteMetricSpace, anchor: usize) -> Result<Self, MetricError> {
        if anchor >= space.len() {
            return Err(MetricError::IndexOutOfRange {
                index: anchor,
                n: space.len(),
            });
        }
        Ok(Self { space, anchor })
    }

    /// `‖x‖ = d(x, anchor)`; `‖anchor‖ = 0`. Panics on out-of-range indices.
    #[inline]
    pub fn norm(&self, x: usize) -> f64 {
        self.space.distance(x, self.anchor)
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn space(&self) -> &FiniteMetricSpace {
        &self.space
    }

    /// Same space, different anchor.
    pub fn re_anchor(&self, anchor: usize) -> Result<Self, MetricError> {
        Self::new(self.space.clone(), anchor)
    }
}
