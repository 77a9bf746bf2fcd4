//! The Picard–Manin lattice: bubble points, sparse class vectors, the intersection
//! form `diag(1, -1, -1, …)`, the canonical form `Ω(v) = 3a0 + Σ a_p`, and the
//! hyperboloid metric `cosh dist(u, v) = u·v`.

use crate::error::{Cursor, ParseError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("vector is not on the hyperboloid (self-intersection {0})")]
    NotOnHyperboloid(String),
    #[error("vector lies on the negative sheet (e0 coefficient {0})")]
    WrongSheet(String),
    #[error("unknown point id {0}")]
    UnknownPoint(u32),
    #[error("point {0} already annotated")]
    AlreadyAnnotated(String),
    #[error("proper coordinates must not all vanish")]
    ZeroCoordinates,
    #[error("parent chain through {0} is cyclic")]
    CyclicParents(String),
    #[error("a point cannot be infinitely near itself")]
    SelfParent,
}

/// Opaque bubble-point identifier; ids are handed out in creation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct PointId(pub u32);

/// Optional geometric data attached to a bubble point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Annotation {
    /// A point of the plane with homogeneous coordinates.
    Proper([BigRational; 3]),
    /// A point on the exceptional divisor of `parent`.
    InfinitelyNear(PointId),
}

#[derive(Clone, Debug, Default)]
struct PointInfo {
    label: Option<String>,
    annotation: Option<Annotation>,
}

/// Registry of bubble points for a session: labels, annotations, and name lookup.
#[derive(Clone, Debug, Default)]
pub struct BubbleSpace {
    points: Vec<PointInfo>,
    by_name: HashMap<String, PointId>,
    fresh_counter: usize,
}

impl BubbleSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Interned point with this label; created if new.
    pub fn point(&mut self, name: &str) -> PointId {
        if let Some(&id) = self.by_name.get(name) {
            return id;
        }
        let id = PointId(self.points.len() as u32);
        self.points.push(PointInfo {
            label: Some(name.to_string()),
            annotation: None,
        });
        self.by_name.insert(name.to_string(), id);
        id
    }

    /// `p1, …, pn` interned in order.
    pub fn points(&mut self, prefix: &str, n: usize) -> Vec<PointId> {
        (1..=n).map(|i| self.point(&format!("{prefix}{i}"))).collect()
    }

    /// A new unlabeled-looking point whose label does not clash with existing names.
    pub fn fresh(&mut self) -> PointId {
        loop {
            self.fresh_counter += 1;
            let name = format!("_f{}", self.fresh_counter);
            if !self.by_name.contains_key(&name) {
                return self.point(&name);
            }
        }
    }

    pub fn lookup(&self, name: &str) -> Option<PointId> {
        self.by_name.get(name).copied()
    }

    pub fn contains(&self, id: PointId) -> bool {
        (id.0 as usize) < self.points.len()
    }

    pub fn label(&self, id: PointId) -> String {
        self.points
            .get(id.0 as usize)
            .and_then(|p| p.label.clone())
            .unwrap_or_else(|| format!("#{}", id.0))
    }

    pub fn annotation(&self, id: PointId) -> Option<&Annotation> {
        self.points.get(id.0 as usize).and_then(|p| p.annotation.as_ref())
    }

    pub fn annotate_proper(&mut self, id: PointId, coords: [BigRational; 3]) -> Result<(), LatticeError> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(LatticeError::ZeroCoordinates);
        }
        self.set_annotation(id, Annotation::Proper(coords))
    }

    pub fn annotate_infinitely_near(&mut self, id: PointId, parent: PointId) -> Result<(), LatticeError> {
        if id == parent {
            return Err(LatticeError::SelfParent);
        }
        if !self.contains(parent) {
            return Err(LatticeError::UnknownPoint(parent.0));
        }
        // walking up from the parent must not reach id
        let mut cur = parent;
        let mut steps = 0;
        while let Some(Annotation::InfinitelyNear(up)) = self.annotation(cur) {
            if *up == id || steps > self.points.len() {
                return Err(LatticeError::CyclicParents(self.label(id)));
            }
            cur = *up;
            steps += 1;
        }
        self.set_annotation(id, Annotation::InfinitelyNear(parent))
    }

    fn set_annotation(&mut self, id: PointId, a: Annotation) -> Result<(), LatticeError> {
        let label = self.label(id);
        let info = self
            .points
            .get_mut(id.0 as usize)
            .ok_or(LatticeError::UnknownPoint(id.0))?;
        if info.annotation.is_some() {
            return Err(LatticeError::AlreadyAnnotated(label));
        }
        info.annotation = Some(a);
        Ok(())
    }

    pub fn parent(&self, id: PointId) -> Option<PointId> {
        match self.annotation(id) {
            Some(Annotation::InfinitelyNear(p)) => Some(*p),
            _ => None,
        }
    }

    pub fn is_proper(&self, id: PointId) -> Option<bool> {
        match self.annotation(id) {
            Some(Annotation::Proper(_)) => Some(true),
            Some(Annotation::InfinitelyNear(_)) => Some(false),
            None => None,
        }
    }

    /// The proper point at the bottom of the parent chain, if annotations reach one.
    pub fn root_of(&self, id: PointId) -> Option<PointId> {
        let mut cur = id;
        for _ in 0..=self.points.len() {
            match self.annotation(cur) {
                Some(Annotation::Proper(_)) => return Some(cur),
                Some(Annotation::InfinitelyNear(p)) => cur = *p,
                None => return None,
            }
        }
        None
    }
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Sparse element `a0 e0 + Σ a_p e(p)` with exact rational coefficients; zeros are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ClassVector {
    e0: BigRational,
    coeffs: BTreeMap<PointId, BigRational>,
}

impl ClassVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn e0() -> Self {
        ClassVector {
            e0: BigRational::one(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn e(p: PointId) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(p, BigRational::one());
        ClassVector {
            e0: BigRational::zero(),
            coeffs,
        }
    }

    pub fn new(e0: BigRational, coeffs: impl IntoIterator<Item = (PointId, BigRational)>) -> Self {
        let mut v = ClassVector {
            e0,
            coeffs: BTreeMap::new(),
        };
        for (p, c) in coeffs {
            v.add_coeff(p, &c);
        }
        v
    }

    pub fn from_ints(e0: i64, coeffs: &[(PointId, i64)]) -> Self {
        Self::new(rational(e0), coeffs.iter().map(|&(p, c)| (p, rational(c))))
    }

    /// `d e0 - Σ m_i e(p_i)`
    pub fn with_multiplicities(d: i64, pts: &[PointId], mult: &[i64]) -> Self {
        Self::new(
            rational(d),
            pts.iter().zip(mult).map(|(&p, &m)| (p, rational(-m))),
        )
    }

    /// `3e0 - Σ_{p} e(p)` over the given points.
    pub fn anticanonical(pts: &[PointId]) -> Self {
        Self::new(rational(3), pts.iter().map(|&p| (p, rational(-1))))
    }

    pub fn e0_coeff(&self) -> &BigRational {
        &self.e0
    }

    pub fn coeff(&self, p: PointId) -> BigRational {
        self.coeffs.get(&p).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn point_coeffs(&self) -> &BTreeMap<PointId, BigRational> {
        &self.coeffs
    }

    pub fn support(&self) -> impl Iterator<Item = PointId> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.e0.is_zero() && self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.e0.is_integer() && self.coeffs.values().all(|c| c.is_integer())
    }

    pub(crate) fn add_coeff(&mut self, p: PointId, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(p).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&p);
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        ClassVector {
            e0: &self.e0 * s,
            coeffs: self.coeffs.iter().map(|(&p, c)| (p, c * s)).collect(),
        }
    }

    /// `u·v = a0 b0 - Σ a_p b_p`
    pub fn intersect(&self, other: &Self) -> BigRational {
        let mut acc = &self.e0 * &other.e0;
        let (small, big) = if self.coeffs.len() <= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (p, c) in &small.coeffs {
            if let Some(d) = big.coeffs.get(p) {
                acc -= c * d;
            }
        }
        acc
    }

    pub fn self_intersection(&self) -> BigRational {
        self.intersect(self)
    }

    /// `Ω(v) = 3a0 + Σ a_p`, normalized so that `Ω(e0) = 3`.
    pub fn canonical_form(&self) -> BigRational {
        let mut acc = &self.e0 * rational(3);
        for c in self.coeffs.values() {
            acc += c;
        }
        acc
    }

    /// Sum of squares of all coefficients.
    pub fn norm_sq(&self) -> BigRational {
        let mut acc = &self.e0 * &self.e0;
        for c in self.coeffs.values() {
            acc += c * c;
        }
        acc
    }

    fn check_hyperboloid(&self) -> Result<(), LatticeError> {
        let s = self.self_intersection();
        if !s.is_one() {
            return Err(LatticeError::NotOnHyperboloid(format_rational(&s)));
        }
        if !self.e0.is_positive() {
            return Err(LatticeError::WrongSheet(format_rational(&self.e0)));
        }
        Ok(())
    }

    /// `cosh dist(u, v) = u·v` for points of the positive sheet of the hyperboloid.
    pub fn cosh_distance(&self, other: &Self) -> Result<BigRational, LatticeError> {
        self.check_hyperboloid()?;
        other.check_hyperboloid()?;
        Ok(self.intersect(other))
    }

    pub fn to_real(&self) -> RealClassVector {
        RealClassVector {
            e0: self.e0.to_f64().unwrap_or(f64::NAN),
            coeffs: self
                .coeffs
                .iter()
                .map(|(&p, c)| (p, c.to_f64().unwrap_or(f64::NAN)))
                .collect(),
        }
    }

    /// `d*e0 - a1*e(p1) - …`
    pub fn render(&self, space: &BubbleSpace) -> String {
        let mut out = String::new();
        let mut push = |c: &BigRational, basis: String| {
            if c.is_zero() {
                return;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if a.is_one() {
                out.push_str(&basis);
            } else {
                out.push_str(&format!("{}*{}", format_rational(&a), basis));
            }
        };
        push(&self.e0, "e0".to_string());
        for (p, c) in &self.coeffs {
            push(c, format!("e({})", space.label(*p)));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// `{ "e0": "d", "points": { "<label>": "<coeff>" } }`
    pub fn to_json(&self, space: &BubbleSpace) -> Value {
        let points: serde_json::Map<String, Value> = self
            .coeffs
            .iter()
            .map(|(p, c)| (space.label(*p), Value::String(format_rational(c))))
            .collect();
        json!({ "e0": format_rational(&self.e0), "points": points })
    }

    /// Parse `3*e0 - e(p1) - 1/2*e(p2)`; point labels are interned into `space`.
    pub fn parse(text: &str, space: &mut BubbleSpace) -> Result<Self, ParseError> {
        let mut cur = Cursor::new(text);
        let mut v = ClassVector::zero();
        let mut first = true;
        loop {
            cur.skip_ws();
            let neg = if cur.eat('-') {
                true
            } else if cur.eat('+') || first {
                false
            } else {
                return Err(cur.error("expected '+' or '-'"));
            };
            first = false;
            cur.skip_ws();
            let mut coef = BigRational::one();
            let start = cur.pos();
            if let Some(num) = cur.digits() {
                let n: BigInt = num.parse().map_err(|_| ParseError::new(start, "bad integer"))?;
                let mut d = BigInt::one();
                if cur.eat('/') {
                    let p = cur.pos();
                    let den = cur.digits().ok_or_else(|| cur.error("expected denominator"))?;
                    d = den.parse().map_err(|_| ParseError::new(p, "bad integer"))?;
                    if d.is_zero() {
                        return Err(ParseError::new(p, "zero denominator"));
                    }
                }
                coef = BigRational::new(n, d);
                if !cur.eat('*') {
                    // bare constant is not a class
                    return Err(cur.error("expected '*' after coefficient"));
                }
            }
            if neg {
                coef = -coef;
            }
            cur.skip_ws();
            let at = cur.pos();
            match cur.ident() {
                Some("e0") => v.e0 += coef,
                Some("e") => {
                    cur.expect('(')?;
                    let name = cur.ident().ok_or_else(|| cur.error("expected point name"))?;
                    cur.expect(')')?;
                    let p = space.point(name);
                    v.add_coeff(p, &coef);
                }
                _ => return Err(ParseError::new(at, "expected 'e0' or 'e(<point>)'")),
            }
            if cur.at_end() {
                break;
            }
        }
        Ok(v)
    }
}

impl Add for &ClassVector {
    type Output = ClassVector;
    fn add(self, rhs: &ClassVector) -> ClassVector {
        let mut out = self.clone();
        out.e0 += &rhs.e0;
        for (p, c) in &rhs.coeffs {
            out.add_coeff(*p, c);
        }
        out
    }
}

impl Sub for &ClassVector {
    type Output = ClassVector;
    fn sub(self, rhs: &ClassVector) -> ClassVector {
        self + &(-rhs)
    }
}

impl Neg for &ClassVector {
    type Output = ClassVector;
    fn neg(self) -> ClassVector {
        ClassVector {
            e0: -self.e0.clone(),
            coeffs: self.coeffs.iter().map(|(&p, c)| (p, -c.clone())).collect(),
        }
    }
}

impl Mul<&ClassVector> for &BigRational {
    type Output = ClassVector;
    fn mul(self, rhs: &ClassVector) -> ClassVector {
        rhs.scale(self)
    }
}

/// Class vector with floating-point coefficients (eigenvectors, axis points).
#[derive(Clone, Debug, PartialEq, Default)]
pub struct RealClassVector {
    pub e0: f64,
    pub coeffs: BTreeMap<PointId, f64>,
}

impl RealClassVector {
    pub fn intersect(&self, other: &Self) -> f64 {
        let mut acc = self.e0 * other.e0;
        for (p, c) in &self.coeffs {
            if let Some(d) = other.coeffs.get(p) {
                acc -= c * d;
            }
        }
        acc
    }

    pub fn intersect_exact(&self, other: &ClassVector) -> f64 {
        self.intersect(&other.to_real())
    }

    pub fn coeff(&self, p: PointId) -> f64 {
        self.coeffs.get(&p).copied().unwrap_or(0.0)
    }

    pub fn scale(&self, s: f64) -> Self {
        RealClassVector {
            e0: self.e0 * s,
            coeffs: self.coeffs.iter().map(|(&p, c)| (p, c * s)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.e0 += other.e0;
        for (p, c) in &other.coeffs {
            *out.coeffs.entry(*p).or_insert(0.0) += c;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    /// Euclidean length `sqrt(a0² + Σ a_p²)`.
    pub fn euclidean_norm(&self) -> f64 {
        (self.e0 * self.e0 + self.coeffs.values().map(|c| c * c).sum::<f64>()).sqrt()
    }

    pub fn to_json(&self, space: &BubbleSpace) -> Value {
        let points: serde_json::Map<String, Value> = self
            .coeffs
            .iter()
            .map(|(p, c)| (space.label(*p), json!(c)))
            .collect();
        json!({ "e0": self.e0, "points": points })
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_render_roundtrip() {
        let mut s = BubbleSpace::new();
        let v = ClassVector::parse("2*e0 - e(p1) - e(p2) - 1/2*e(p3)", &mut s).unwrap();
        assert_eq!(v.render(&s), "2*e0 - e(p1) - e(p2) - 1/2*e(p3)");
        assert_eq!(ClassVector::parse(&v.render(&s), &mut s).unwrap(), v);
        let j = v.to_json(&s);
        assert_eq!(j["e0"], "2");
        assert_eq!(j["points"]["p3"], "-1/2");
    }

    #[test]
    fn zero_pruning() {
        let mut s = BubbleSpace::new();
        let p = s.point("p");
        let v = &ClassVector::e(p) - &ClassVector::e(p);
        assert!(v.is_zero());
        assert_eq!(v, ClassVector::zero());
    }

    #[test]
    fn parent_cycles_rejected() {
        let mut s = BubbleSpace::new();
        let a = s.point("a");
        let b = s.point("b");
        s.annotate_infinitely_near(b, a).unwrap();
        assert!(s.annotate_infinitely_near(a, b).is_err());
    }
}
