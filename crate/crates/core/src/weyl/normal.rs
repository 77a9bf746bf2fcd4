//! Rewriting a word so that the successive images of a class have increasing degree.
//!
//! The image `t = h(v)` is pushed back down by σ0-reflections on its three largest
//! multiplicities, each strictly lowering the degree, until it reaches the bottom of the orbit
//! of `v` (`e0`, some `e(c)`, some `e0 - e(c)` or an anticanonical class on other points). A
//! permutation then matches that bottom with `v`. Read backwards this is a word whose partial
//! images have strictly increasing degree.

use super::element::WeylElement;
use super::generator::{WeylGenerator, WeylWord};
use super::WeylError;
use crate::lattice::{BubbleSpace, ClassVector, PointId};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeSet, HashMap};

/// The start classes accepted by [`normalize_increasing`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StartShape {
    E0,
    Point(PointId),
    Pencil(PointId),
    Anticanonical(BTreeSet<PointId>),
}

impl StartShape {
    pub fn of(v: &ClassVector) -> Result<Self, WeylError> {
        let bad = || WeylError::UnsupportedShape("expected e0, e(q), e0 - e(q) or 3e0 - Σ e(q_i)".into());
        if !v.is_integral() {
            return Err(bad());
        }
        let d = v.e0_coeff().to_integer();
        let pc = v.point_coeffs();
        let one = BigInt::one();
        let all = |c: i64| pc.values().all(|x| x.to_integer() == BigInt::from(c));
        let first = pc.keys().next().copied();
        match (d.clone(), pc.len()) {
            (d, 0) if d == one => Ok(StartShape::E0),
            (d, 1) if d.is_zero() && all(1) => Ok(StartShape::Point(first.unwrap())),
            (d, 1) if d == one && all(-1) => Ok(StartShape::Pencil(first.unwrap())),
            (d, k) if d == BigInt::from(3) && k > 0 && all(-1) => {
                Ok(StartShape::Anticanonical(pc.keys().copied().collect()))
            }
            _ => Err(bad()),
        }
    }

    fn bottom_degree(&self) -> BigInt {
        BigInt::from(match self {
            StartShape::E0 | StartShape::Pencil(_) => 1,
            StartShape::Point(_) => 0,
            StartShape::Anticanonical(_) => 3,
        })
    }

    fn own_points(&self) -> Vec<PointId> {
        match self {
            StartShape::E0 => Vec::new(),
            StartShape::Point(q) | StartShape::Pencil(q) => vec![*q],
            StartShape::Anticanonical(s) => s.iter().copied().collect(),
        }
    }
}

fn reflect(t: &[PointId; 3], v: &ClassVector) -> ClassVector {
    // x + (x·α)α with α = e0 - e(a) - e(b) - e(c)
    let s = v.e0_coeff() + t.iter().map(|p| v.coeff(*p)).sum::<BigRational>();
    if s.is_zero() {
        return v.clone();
    }
    let mut coeffs: Vec<(PointId, BigRational)> = v.point_coeffs().iter().map(|(p, c)| (*p, c.clone())).collect();
    coeffs.extend(t.iter().map(|p| (*p, -s.clone())));
    ClassVector::new(v.e0_coeff() + &s, coeffs)
}

/// Permutation taking `v` to `bottom`, if `bottom` has the same shape on other points.
fn matching_permutation(shape: &StartShape, bottom: &ClassVector) -> Option<WeylGenerator> {
    let got = StartShape::of(bottom).ok()?;
    let pairs: Vec<(PointId, PointId)> = match (shape, &got) {
        (StartShape::E0, StartShape::E0) => Vec::new(),
        (StartShape::Point(q), StartShape::Point(c)) | (StartShape::Pencil(q), StartShape::Pencil(c)) => {
            if q == c {
                Vec::new()
            } else {
                vec![(*q, *c)]
            }
        }
        (StartShape::Anticanonical(s), StartShape::Anticanonical(t)) if s.len() == t.len() => {
            s.difference(t).copied().zip(t.difference(s).copied()).collect()
        }
        _ => return None,
    };
    let mut map = HashMap::new();
    for (x, y) in pairs {
        map.insert(x, y);
        map.insert(y, x);
    }
    WeylGenerator::permutation_from_map(&map).ok()
}

/// A word `w` with `w(v) = word(v)` whose σ0-letters strictly raise the degree of the running image.
///
/// Fresh points are taken from `space` when a reflection needs a third point.
pub fn normalize_increasing(
    word: &WeylWord,
    v: &ClassVector,
    space: &mut BubbleSpace,
) -> Result<WeylWord, WeylError> {
    let shape = StartShape::of(v)?;
    let mut t = WeylElement::realize(word).apply(v);
    let floor = shape.bottom_degree();
    let own = shape.own_points();
    let mut steps: Vec<[PointId; 3]> = Vec::new();
    let mut spare: Vec<PointId> = Vec::new();
    loop {
        let d = t.e0_coeff().to_integer();
        if d <= floor {
            break;
        }
        // multiplicities m_p = -coefficient
        let mut cands: Vec<(BigInt, PointId)> = t
            .point_coeffs()
            .iter()
            .filter(|(_, c)| c.is_negative())
            .map(|(p, c)| (-c.to_integer(), *p))
            .collect();
        cands.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        cands.truncate(3);
        let mut pad = own.iter().copied().chain(spare.iter().copied()).filter(|p| t.coeff(*p).is_zero());
        while cands.len() < 3 {
            let p = match pad.next() {
                Some(p) if !cands.iter().any(|(_, q)| *q == p) => p,
                Some(_) => continue,
                None => break,
            };
            cands.push((BigInt::zero(), p));
        }
        drop(pad);
        while cands.len() < 3 {
            let p = space.fresh();
            spare.push(p);
            cands.push((BigInt::zero(), p));
        }
        let sum: BigInt = cands.iter().map(|(m, _)| m).sum();
        if sum <= d {
            return Err(WeylError::DescentStuck(d.to_string()));
        }
        let mut tri = [cands[0].1, cands[1].1, cands[2].1];
        tri.sort();
        t = reflect(&tri, &t);
        steps.push(tri);
    }
    let rho = matching_permutation(&shape, &t)
        .ok_or_else(|| WeylError::DescentStuck(t.e0_coeff().to_integer().to_string()))?;
    let mut letters: Vec<WeylGenerator> = steps
        .iter()
        .map(|[a, b, c]| WeylGenerator::Sigma0([*a, *b, *c]))
        .collect();
    if rho != WeylGenerator::identity() || letters.is_empty() {
        letters.push(rho);
    }
    Ok(WeylWord::new(letters))
}

/// Degrees of `v` and of its successive images under the letters of `word`, rightmost first.
pub fn partial_degrees(word: &WeylWord, v: &ClassVector) -> Vec<BigRational> {
    let mut cur = v.clone();
    let mut out = vec![cur.e0_coeff().clone()];
    for g in word.letters.iter().rev() {
        cur = WeylElement::from_generator(g).apply(&cur);
        out.push(cur.e0_coeff().clone());
    }
    out
}
