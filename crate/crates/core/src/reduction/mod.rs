//! Lowering the degree of a loxodromic element by conjugation, with the accompanying bounds
//! and the realizability test for Jonquières base points.

mod bounds;
mod conjugation;
mod noetherci;
mod realizable;

pub use bounds::{
    bounds, conjugator_degree_bound, cosh_bound_log10, decrease_quantum, degree_threshold, loxodromy_constant,
    mcdeg_bound, mcdeg_bound_exact, BoundReport,
};
pub use conjugation::{
    axis_positivity, decreasing_step, inflated_instance, reduce, InflatedInstance, ReductionTrace, Step,
    StepCriterion, Terminal,
};
pub use noetherci::{noetherci_check, AveragedNoetherReport};
pub use realizable::{
    realizable_jonquieres, PointConfiguration, RealizabilityReport, RealizabilityVerdict, DEFAULT_K_MAX,
};

use crate::spectral::{IsometryKind, SpectralError};
use crate::weyl::WeylError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReductionError {
    #[error("element is not loxodromic ({0})")]
    NotLoxodromic(IsometryKind),
    #[error("dynamical degree must exceed 1, got {0}")]
    InvalidLambda(f64),
    #[error("degrees must be at least 2")]
    InvalidDegree,
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    #[error("inconsistent facts: {0}")]
    InconsistentFacts(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}
