//! Spectral statistics toolkit.
//!
//! Nearest-neighbor spacing measures and their distance to the Poisson law,
//! Monte-Carlo estimates over maximal tori, exact type-A representation data,
//! diagonal operator polynomials, correlation sums, and expectation-value
//! classical limits on symmetric powers.

pub mod classical;
pub mod clump;
pub mod error;
pub mod numeric;
pub mod operator;
pub mod rep;
pub mod spacing;
pub mod torus;

pub use error::{Error, Result};
pub use classical::{LoweringPoint, Observable, RepState};
pub use clump::SpacingFunction;
pub use operator::{ExactComplex, Generator, OperatorPoly, RescalingMap, SymbolicValue};
pub use rep::{HighestWeight, SymPowerBasis, TypeARootSystem};
pub use spacing::{
    ks_distance, AtomicMeasure, Law, MGrid, Normalization, OrderedTuple, ReferenceMeasure,
};
pub use torus::{FlowDirection, McConfig, TorusPoint};
