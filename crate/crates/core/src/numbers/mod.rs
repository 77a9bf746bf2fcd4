//! Monic integer polynomials and the classification of their dominant roots.

mod classify;
mod cyclotomic;
mod poly;
mod qpoly;
mod roots;
mod salem;

pub use classify::{
    classify_number, from_trace_polynomial, is_salem_squarefree, trace_polynomial, vieta_residuals,
    NumberClass, NumberKind,
};
pub use cyclotomic::{cyclotomic, euler_phi, strip_cyclotomic, strip_cyclotomic_detailed, Stripped};
pub use poly::IntPolynomial;
pub use qpoly::{squarefree_decomposition, squarefree_part, Sturm};
pub use roots::{aberth, largest_real_root, refine_real_root, roots, Root};
pub use salem::{enumerate_salem, enumerate_salem_with_limit, raw_search_size, SalemEntry, DEFAULT_NODE_LIMIT};

use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumbersError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not monic (leading coefficient {0})")]
    NotMonic(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("search exceeded the node limit of {0}")]
    SearchTooLarge(u64),
}

/// A named constant with its defining polynomial.
#[derive(Clone, Debug)]
pub struct NamedConstant {
    pub name: &'static str,
    pub symbol: &'static str,
    pub poly: IntPolynomial,
    pub value: f64,
}

#[derive(Clone, Debug)]
pub struct NamedConstants {
    /// Lehmer's number, root of `x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1`.
    pub lehmer: NamedConstant,
    /// The plastic number, root of `x^3 - x - 1`.
    pub plastic: NamedConstant,
    /// The golden mean, root of `x^2 - x - 1`.
    pub golden: NamedConstant,
}

fn constant(name: &'static str, symbol: &'static str, coeffs: &[i64]) -> NamedConstant {
    let poly = IntPolynomial::from_i64(coeffs).expect("monic");
    let value = largest_real_root(&poly).expect("real root");
    NamedConstant {
        name,
        symbol,
        poly,
        value,
    }
}

/// Constants computed once from their polynomials.
pub fn named_constants() -> &'static NamedConstants {
    static CELL: OnceLock<NamedConstants> = OnceLock::new();
    CELL.get_or_init(|| NamedConstants {
        lehmer: constant("lehmer", "lambda_L", &[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]),
        plastic: constant("plastic", "lambda_P", &[-1, -1, 0, 1]),
        golden: constant("golden", "lambda_G", &[-1, -1, 1]),
    })
}

/// Lehmer's number.
pub fn lehmer_number() -> f64 {
    named_constants().lehmer.value
}

/// True iff `lambda` avoids the gap `(1, λ_L)`, up to `tol`.
pub fn spectral_gap_assert(lambda: f64, tol: f64) -> bool {
    lambda <= 1.0 + tol || lambda >= lehmer_number() - tol
}
