//! Core library for certifying cyclic Kannan-Pata contractive conditions on
//! finite metric spaces and solving for fixed points by Picard iteration.
//!
//! The crate is organized around one workflow:
//!
//! 1. build a validated [`metric::FiniteMetricSpace`] and pick an anchor point
//!    (the "zero" defining the norm `‖x‖ = d(x, anchor)`),
//! 2. describe a self-map and a cyclic representation of the point set
//!    ([`cyclic`]),
//! 3. exhaustively certify a contractive inequality over the required point
//!    pairs and an ε-grid ([`certify`]),
//! 4. run Picard iteration from every start and check the conclusions a
//!    holding certificate entails ([`picard`]),
//! 5. optionally generate seeded random instances and search for maps
//!    separating the Kannan and Banach conditions ([`gen`]).
//!
//! Everything is `no_std`-compatible (`alloc` is required). All types are
//! immutable after construction and all operations are pure, so values can be
//! shared freely across threads.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod certify;
pub mod cyclic;
pub mod error;
pub mod gen;
pub mod metric;
pub mod picard;

pub use certify::{Certificate, Condition, EpsilonGrid, PataParams, PsiSpec, Witness};
pub use cyclic::{ConsecutivePair, CyclicRepresentation, CyclicValidation, SelfMap};
pub use error::{CertifyError, CyclicError, GenError, MetricError, SolveError};
pub use gen::{GenConfig, GenMethod, GeneratedInstance};
pub use metric::{AnchoredSpace, FiniteMetricSpace, ValidationReport, Violation};
pub use picard::{FixedPointReport, PicardTrace, Termination, TraceDiagnostics};
