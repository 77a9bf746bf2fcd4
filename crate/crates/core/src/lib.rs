//! Exact lattice-level dynamics of plane birational maps.
//!
//! The Picard–Manin lattice `Z e0 ⊕ ⨁ Z e(p)` carries the form `diag(1,-1,-1,…)`;
//! the group generated by the quadratic involution `σ0` and permutations of
//! points acts on it by isometries. This crate realizes words in that group as
//! integer matrices and studies their spectra, their degree growth, and how
//! conjugation can bring the degree down.
//!
//! Modules:
//! - [`lattice`]: bubble points, class vectors, intersection and canonical forms.
//! - [`weyl`]: generators, words, realized elements, multiplicity machinery.
//! - [`spectral`]: isometry type, dynamical degree, axis data.
//! - [`reduction`]: the conjugation loop that lowers the degree, bounds, realizability.
//! - [`numbers`]: integer polynomials, Salem and Pisot classification, enumeration.
//! - [`orbits`]: orbit-truncation matrices and the quadratic family.
//! - [`birmap`]: explicit homogeneous triples and monomial maps.

pub mod birmap;
pub mod error;
pub mod lattice;
pub mod matrix;
pub mod numbers;
pub mod orbits;
pub mod reduction;
pub mod report;
pub mod spectral;
pub mod weyl;

pub use error::ParseError;
pub use lattice::{BubbleSpace, ClassVector, PointId};
pub use matrix::IntMatrix;
pub use numbers::IntPolynomial;
pub use weyl::{WeylElement, WeylGenerator, WeylWord};

/// Default numerical tolerance used across the crate.
pub const DEFAULT_TOL: f64 = 1e-9;
