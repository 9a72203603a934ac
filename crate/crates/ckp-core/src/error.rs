//! Structural error types.
//!
//! These cover malformed inputs only (wrong shapes, out-of-range indices,
//! invalid parameters). Failed *checks* — metric-axiom violations, broken
//! cyclic inclusions, inequalities that do not hold — are reported through
//! the corresponding report types, not through errors.

use core::fmt;

/// Structural problems with a distance matrix or an anchored space.
#[derive(Debug, Clone, PartialEq)]
pub enum MetricError {
    /// The matrix has no rows.
    Empty,
    /// Row `row` has `len` entries in an `n`-row matrix.
    NotSquare { row: usize, len: usize, n: usize },
    /// Entry `(i, j)` is NaN or infinite.
    NonFinite { i: usize, j: usize },
    /// The label list length does not match the matrix size.
    LabelCount { labels: usize, n: usize },
    /// The matrix violates a metric axiom (construction refuses it).
    NotAMetric(crate::metric::ValidationReport),
    /// Repair requires a symmetric input.
    RepairAsymmetric { i: usize, j: usize },
    /// Repair requires non-negative entries and a zero diagonal.
    RepairNegative { i: usize, j: usize },
    /// Repair requires positive off-diagonal entries.
    RepairCoincident { i: usize, j: usize },
    /// An anchor or point index is out of range.
    IndexOutOfRange { index: usize, n: usize },
}

impl fmt::Display for MetricError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Empty => write!(f, "distance matrix has no rows"),
            Self::NotSquare { row, len, n } => {
                write!(f, "row {row} has {len} entries, expected {n}")
            }
            Self::NonFinite { i, j } => write!(f, "entry ({i}, {j}) is not finite"),
            Self::LabelCount { labels, n } => {
                write!(f, "{labels} labels for {n} points")
            }
            Self::NotAMetric(report) => {
                write!(
                    f,
                    "matrix is not a metric ({} violations)",
                    report.violations.len()
                )
            }
            Self::RepairAsymmetric { i, j } => {
                write!(f, "repair input is asymmetric at ({i}, {j})")
            }
            Self::RepairNegative { i, j } => {
                write!(
                    f,
                    "repair input has a negative or non-zero-diagonal entry at ({i}, {j})"
                )
            }
            Self::RepairCoincident { i, j } => {
                write!(
                    f,
                    "repair input has a zero off-diagonal entry at ({i}, {j})"
                )
            }
            Self::IndexOutOfRange { index, n } => {
                write!(f, "point index {index} out of range for {n} points")
            }
        }
    }
}

impl core::error::Error for MetricError {}

/// Structural problems with self-maps or cyclic representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CyclicError {
    /// A map image entry points outside the point set.
    ImageOutOfRange {
        point: usize,
        image: usize,
        n: usize,
    },
    /// The map and the representation index different point sets.
    SizeMismatch { map_len: usize, n_points: usize },
    /// A representation needs at least one set.
    NoSets,
    /// Set `set` is empty.
    EmptySet { set: usize },
    /// Set `set` contains an out-of-range point index.
    PointOutOfRange { set: usize, point: usize, n: usize },
}

impl fmt::Display for CyclicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ImageOutOfRange { point, image, n } => {
                write!(
                    f,
                    "image of point {point} is {image}, out of range for {n} points"
                )
            }
            Self::SizeMismatch { map_len, n_points } => {
                write!(
                    f,
                    "map over {map_len} points, representation over {n_points}"
                )
            }
            Self::NoSets => write!(f, "cyclic representation needs at least one set"),
            Self::EmptySet { set } => write!(f, "set {set} is empty"),
            Self::PointOutOfRange { set, point, n } => {
                write!(
                    f,
                    "set {set} contains point {point}, out of range for {n} points"
                )
            }
        }
    }
}

impl core::error::Error for CyclicError {}

/// Invalid certification inputs.
#[derive(Debug, Clone, PartialEq)]
pub enum CertifyError {
    /// ψ exponents and scales must be positive and finite.
    InvalidPsi { p: f64, c: f64 },
    /// Λ ≥ 0, α ≥ 1, β ≥ 0, all finite.
    InvalidParams { lambda: f64, alpha: f64, beta: f64 },
    /// The Pata-Banach condition additionally requires β ≤ α.
    BetaExceedsAlpha { beta: f64, alpha: f64 },
    /// ε-grids live in [0, 1], contain both endpoints and are strictly increasing.
    InvalidGrid,
    /// ε outside [0, 1].
    EpsOutOfRange { eps: f64 },
    /// The Kannan-to-Pata reduction needs λ ∈ (0, 1).
    LambdaOutOfRange { lambda: f64 },
    /// The map does not act on the space's point set.
    MapSizeMismatch { map_len: usize, n_points: usize },
    /// The representation does not describe the space's point set.
    RepSizeMismatch { rep_points: usize, n_points: usize },
    /// The representation is not cyclic for the map.
    InvalidRep(crate::cyclic::CyclicValidation),
    /// Index mismatch between map and representation.
    Cyclic(CyclicError),
}

impl fmt::Display for CertifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidPsi { p, c } => write!(f, "invalid psi parameters p={p}, c={c}"),
            Self::InvalidParams {
                lambda,
                alpha,
                beta,
            } => {
                write!(
                    f,
                    "invalid parameters Lambda={lambda}, alpha={alpha}, beta={beta}"
                )
            }
            Self::BetaExceedsAlpha { beta, alpha } => {
                write!(
                    f,
                    "Pata-Banach condition requires beta <= alpha, got beta={beta}, alpha={alpha}"
                )
            }
            Self::InvalidGrid => write!(
                f,
                "epsilon grid must be strictly increasing in [0, 1] with both endpoints"
            ),
            Self::EpsOutOfRange { eps } => write!(f, "epsilon {eps} outside [0, 1]"),
            Self::LambdaOutOfRange { lambda } => {
                write!(f, "reduction requires lambda in (0, 1), got {lambda}")
            }
            Self::MapSizeMismatch { map_len, n_points } => {
                write!(f, "map over {map_len} points, space has {n_points}")
            }
            Self::RepSizeMismatch {
                rep_points,
                n_points,
            } => {
                write!(
                    f,
                    "representation over {rep_points} points, space has {n_points}"
                )
            }
            Self::InvalidRep(v) => write!(
                f,
                "representation is not cyclic for the map ({} uncovered, {} broken inclusions)",
                v.uncovered.len(),
                v.broken.len()
            ),
            Self::Cyclic(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CertifyError {}

impl From<CyclicError> for CertifyError {
    fn from(e: CyclicError) -> Self {
        Self::Cyclic(e)
    }
}

/// Invalid solver inputs.
#[derive(Debug, Clone, PartialEq)]
pub enum SolveError {
    /// Start index out of range.
    StartOutOfRange { start: usize, n: usize },
    /// max_iter must be at least 1.
    ZeroMaxIter,
    /// Anything the certifier rejects.
    Certify(CertifyError),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::StartOutOfRange { start, n } => {
                write!(f, "start index {start} out of range for {n} points")
            }
            Self::ZeroMaxIter => write!(f, "max_iter must be at least 1"),
            Self::Certify(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SolveError {}

impl From<CertifyError> for SolveError {
    fn from(e: CertifyError) -> Self {
        Self::Certify(e)
    }
}

impl From<CyclicError> for SolveError {
    fn from(e: CyclicError) -> Self {
        Self::Certify(CertifyError::Cyclic(e))
    }
}

/// Invalid generator configuration or degenerate sampling.
#[derive(Debug, Clone, PartialEq)]
pub enum GenError {
    /// n_points ≥ m_sets ≥ 1 and embed_dim ≥ 1 are required.
    InvalidConfig { reason: &'static str },
    /// Sampling kept producing coincident points.
    DegenerateSampling { retries: usize },
    /// Search budget must be at least 1.
    ZeroBudget,
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidConfig { reason } => write!(f, "invalid generator config: {reason}"),
            Self::DegenerateSampling { retries } => {
                write!(
                    f,
                    "sampling produced coincident points after {retries} retries"
                )
            }
            Self::ZeroBudget => write!(f, "search budget must be at least 1"),
        }
    }
}

impl core::error::Error for GenError {}
