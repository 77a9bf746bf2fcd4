//! Plane birational maps as homogeneous triples `[P : Q : R]`, over the rationals or a prime
//! field, with common factors removed after every composition; and monomial maps `f_A`.

mod field;
mod gcd;
mod monomial;
mod parse;
mod poly;

pub use field::{Field, Fp, DEFAULT_PRIME, PROBE_PRIMES};
pub use monomial::MonomialMap;
pub use poly::HPoly;

use crate::error::ParseError;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BirmapError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("components are not homogeneous of a common degree: {0}")]
    NotHomogeneous(String),
    #[error("not dominant: all three components vanish identically")]
    NotDominant,
    #[error("singular linear map")]
    Singular,
    #[error("matrix is not unimodular: {0}")]
    NotUnimodular(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("common factor could not be certified over the probing primes")]
    GcdNotCertified,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Limits for explicit composition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_degree: u32,
    pub max_terms: usize,
    /// Bound on coefficient multiplications for one substitution.
    pub max_work: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_degree: 512,
            max_terms: 200_000,
            max_work: 2_000_000_000,
        }
    }
}

/// `[P : Q : R]` with no common factor of positive degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Triple<F> {
    comps: [HPoly<F>; 3],
}

pub type RationalTriple = Triple<BigRational>;

/// Result of a composition before and after cancellation.
#[derive(Clone, Debug, PartialEq)]
pub struct Composition<F> {
    pub triple: Triple<F>,
    /// `deg f · deg g`
    pub raw_degree: u32,
    /// Degree of the removed common factor.
    pub cancelled: u32,
}

fn reduce<F: Field>(mut comps: [HPoly<F>; 3]) -> Result<([HPoly<F>; 3], u32), BirmapError> {
    if comps.iter().all(|c| c.is_zero()) {
        return Err(BirmapError::NotDominant);
    }
    let d0 = comps[0].degree();
    let mut m: Option<(u32, u32, u32)> = None;
    for c in &comps {
        if let Some(k) = c.monomial_content() {
            m = Some(match m {
                None => k,
                Some(a) => (a.0.min(k.0), a.1.min(k.1), a.2.min(k.2)),
            });
        }
    }
    let (a, b, c) = m.expect("some component is nonzero");
    if a + b + c > 0 {
        comps = comps.map(|p| {
            if p.is_zero() {
                HPoly::zero(p.degree() - a - b - c)
            } else {
                p.divide_monomial(a, b, c)
            }
        });
    }
    let g = F::common_factor(&comps)?;
    let e = g.degree();
    if e > 0 {
        let divided: Option<Vec<HPoly<F>>> = comps
            .iter()
            .map(|p| {
                if p.is_zero() {
                    Some(HPoly::zero(p.degree() - e))
                } else {
                    p.div_exact(&g)
                }
            })
            .collect();
        let divided = divided.ok_or(BirmapError::GcdNotCertified)?;
        comps = divided.try_into().expect("three components");
    }
    let cancelled = d0 - comps[0].degree();
    Ok((comps, cancelled))
}

impl<F: Field> Triple<F> {
    /// Validates homogeneity and removes the common factor.
    pub fn new(comps: [HPoly<F>; 3]) -> Result<Self, BirmapError> {
        let degs: Vec<u32> = comps.iter().filter(|c| !c.is_zero()).map(|c| c.degree()).collect();
        let Some(&d) = degs.first() else {
            return Err(BirmapError::NotDominant);
        };
        if degs.iter().any(|&x| x != d) {
            return Err(BirmapError::NotHomogeneous(format!("component degrees {degs:?}")));
        }
        let comps = comps.map(|c| if c.is_zero() { HPoly::zero(d) } else { c });
        let (comps, _) = reduce(comps)?;
        Ok(Triple { comps })
    }

    pub fn identity() -> Self {
        Triple {
            comps: [HPoly::x(), HPoly::y(), HPoly::z()],
        }
    }

    pub fn degree(&self) -> u32 {
        self.comps[0].degree()
    }

    pub fn components(&self) -> &[HPoly<F>; 3] {
        &self.comps
    }

    pub fn term_count(&self) -> usize {
        self.comps.iter().map(|c| c.len()).sum()
    }

    /// `self ∘ g` under the default budget.
    pub fn compose(&self, g: &Self) -> Result<Self, BirmapError> {
        Ok(self.compose_with(g, &Budget::default())?.triple)
    }

    /// `self ∘ g`: substitute `g` into `self` and cancel the common factor.
    pub fn compose_with(&self, g: &Self, budget: &Budget) -> Result<Composition<F>, BirmapError> {
        let raw_degree = self.degree() * g.degree();
        if raw_degree > budget.max_degree {
            return Err(BirmapError::BudgetExceeded(format!(
                "degree {raw_degree} > {}",
                budget.max_degree
            )));
        }
        let work: u64 = self.comps.iter().map(|c| c.substitution_work(&g.comps)).sum();
        if work > budget.max_work {
            return Err(BirmapError::BudgetExceeded(format!("work estimate {work} > {}", budget.max_work)));
        }
        let raw = self.comps.clone().map(|c| {
            let mut s = c.substitute(&g.comps);
            if s.is_zero() {
                s = HPoly::zero(raw_degree);
            }
            s
        });
        let terms: usize = raw.iter().map(|c| c.len()).sum();
        if terms > budget.max_terms {
            return Err(BirmapError::BudgetExceeded(format!("{terms} terms > {}", budget.max_terms)));
        }
        let (comps, cancelled) = reduce(raw)?;
        Ok(Composition {
            triple: Triple { comps },
            raw_degree,
            cancelled,
        })
    }

    pub fn eval(&self, pt: &[F; 3]) -> [F; 3] {
        [self.comps[0].eval(pt), self.comps[1].eval(pt), self.comps[2].eval(pt)]
    }

    /// Equal up to a nonzero scalar.
    pub fn projectively_equal(&self, o: &Self) -> bool {
        if self.degree() != o.degree() {
            return false;
        }
        let lead = |t: &Self| {
            t.comps
                .iter()
                .find_map(|c| c.leading().map(|(_, v)| v.clone()))
                .expect("nonzero triple")
        };
        let (a, b) = (lead(self), lead(o));
        self.comps
            .iter()
            .zip(&o.comps)
            .all(|(p, q)| p.scale(&b) == q.scale(&a))
    }
}

impl RationalTriple {
    pub fn parse(text: &str) -> Result<Self, BirmapError> {
        let comps = parse::parse_triple(text)?;
        Triple::new(comps)
    }

    /// Reduction modulo `P`; `None` if a denominator vanishes or a component degenerates.
    pub fn reduce_mod<const P: u64>(&self) -> Option<Triple<Fp<P>>> {
        let comps: Vec<HPoly<Fp<P>>> = self
            .comps
            .iter()
            .map(|c| c.map(Fp::<P>::from_rational))
            .collect::<Option<_>>()?;
        if comps.iter().zip(&self.comps).any(|(r, c)| r.len() != c.len()) {
            return None;
        }
        Triple::new(comps.try_into().ok()?).ok()
    }
}

impl<F: Field> fmt::Display for Triple<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {} : {}]", self.comps[0], self.comps[1], self.comps[2])
    }
}

/// A single homogeneous polynomial in the triple text syntax.
pub fn parse_polynomial(text: &str) -> Result<HPoly<BigRational>, BirmapError> {
    parse::parse_poly(text)
}

/// The standard quadratic involution `σ = [yz : zx : xy]`.
pub fn sigma<F: Field>() -> Triple<F> {
    let m = |i, j, k| HPoly::monomial(F::one(), i, j, k);
    Triple {
        comps: [m(0, 1, 1), m(1, 0, 1), m(1, 1, 0)],
    }
}

/// Homogenized Hénon map `(X, Y) ↦ (Y, X + Y^d)`, i.e. `[y z^(d−1) : x z^(d−1) + y^d : z^d]`.
pub fn henon<F: Field>(d: u32) -> Result<Triple<F>, BirmapError> {
    if d < 1 {
        return Err(BirmapError::InvalidArgument("Hénon degree must be at least 1".into()));
    }
    let m = |i, j, k| HPoly::monomial(F::one(), i, j, k);
    Triple::new([m(0, 1, d - 1), m(1, 0, d - 1).add(&m(0, d, 0)), m(0, 0, d)])
}

/// `[a00 x + a01 y + a02 z : …]` for an invertible matrix.
pub fn linear<F: Field>(a: &[[F; 3]; 3]) -> Result<Triple<F>, BirmapError> {
    let det = a[0][0].clone() * (a[1][1].clone() * a[2][2].clone() - a[1][2].clone() * a[2][1].clone())
        - a[0][1].clone() * (a[1][0].clone() * a[2][2].clone() - a[1][2].clone() * a[2][0].clone())
        + a[0][2].clone() * (a[1][0].clone() * a[2][1].clone() - a[1][1].clone() * a[2][0].clone());
    if det.is_zero() {
        return Err(BirmapError::Singular);
    }
    let row = |r: &[F; 3]| {
        HPoly::from_terms(1, [((1, 0), r[0].clone()), ((0, 1), r[1].clone()), ((0, 0), r[2].clone())])
    };
    Ok(Triple {
        comps: [row(&a[0]), row(&a[1]), row(&a[2])],
    })
}

/// Named built-in maps: `sigma`, `identity`, `henon(d)`.
pub fn builtin(name: &str) -> Result<RationalTriple, BirmapError> {
    let name = name.trim();
    if name == "sigma" {
        return Ok(sigma());
    }
    if name == "identity" {
        return Ok(Triple::identity());
    }
    if let Some(arg) = name.strip_prefix("henon(").and_then(|r| r.strip_suffix(')')) {
        let d: u32 = arg
            .trim()
            .parse()
            .map_err(|_| BirmapError::InvalidArgument(format!("bad Hénon degree '{arg}'")))?;
        return henon(d);
    }
    Err(BirmapError::InvalidArgument(format!("unknown built-in map '{name}'")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSequence {
    /// `deg f^n` for `n = 1, 2, …`
    pub degrees: Vec<u64>,
    /// Degree dropped by cancellation at each step, starting at `n = 2`.
    pub cancelled: Vec<u64>,
    pub truncated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// `deg f^n` for `n = 1..=count` by repeated composition `f^{n+1} = f ∘ f^n`.
pub fn iterate_degrees<F: Field>(f: &Triple<F>, count: usize, budget: &Budget) -> DegreeSequence {
    let mut out = DegreeSequence {
        degrees: Vec::new(),
        cancelled: Vec::new(),
        truncated: false,
        reason: None,
    };
    if count == 0 {
        return out;
    }
    out.degrees.push(u64::from(f.degree()));
    let mut cur = f.clone();
    while out.degrees.len() < count {
        match f.compose_with(&cur, budget) {
            Ok(c) => {
                out.degrees.push(u64::from(c.triple.degree()));
                out.cancelled.push(u64::from(c.cancelled));
                cur = c.triple;
            }
            Err(e) => {
                out.truncated = true;
                out.reason = Some(e.to_string());
                break;
            }
        }
    }
    out
}

/// A rational 3×3 matrix from integers.
pub fn int_matrix3(a: [[i64; 3]; 3]) -> [[BigRational; 3]; 3] {
    a.map(|r| r.map(|x| BigRational::from_integer(BigInt::from(x))))
}
