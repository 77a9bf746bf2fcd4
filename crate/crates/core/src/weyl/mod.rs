//! Words in the generators of the infinite Weyl group and their realization as integer isometries.

mod element;
mod generator;
mod normal;
mod random;
mod structure;

pub use element::WeylElement;
pub use generator::{WeylGenerator, WeylWord};
pub use normal::{normalize_increasing, partial_degrees, StartShape};
pub use random::random_word;
pub use structure::{
    coxeter_element, coxeter_generators, halphen_test, jonquieres_center, multiplicity_profile,
    noether_report, quadratic_decompose, sigma_omega, sigma_omega_word, HalphenCertificate,
    MultiplicityProfile, NoetherReport,
};

use crate::lattice::PointId;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("a point is repeated where distinct points are required")]
    RepeatedPoint,
    #[error("map is not a permutation")]
    NotAPermutation,
    #[error("matrix has size {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix does not preserve the intersection form")]
    NotAnIsometry,
    #[error("matrix does not preserve the canonical form")]
    CanonicalFormNotPreserved,
    #[error("image of e0 has non-positive degree")]
    NonPositiveDegree,
    #[error("point {0} is not in the basis")]
    PointOutsideBasis(PointId),
    #[error("the set of paired points has odd size {0}")]
    OddOmega(usize),
    #[error("the base point also occurs among the paired points")]
    BasePointInOmega,
    #[error("expected degree {expected}, found {found}")]
    WrongDegree { expected: String, found: String },
    #[error("unsupported start class: {0}")]
    UnsupportedShape(String),
    #[error("degree descent stalled at degree {0}")]
    DescentStuck(String),
    #[error("need at least {0} points")]
    TooFewPoints(usize),
}
