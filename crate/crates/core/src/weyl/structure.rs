use super::element::WeylElement;
use super::generator::{WeylGenerator, WeylWord};
use super::WeylError;
use crate::lattice::{BubbleSpace, ClassVector, PointId};
use crate::report::Check;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeSet;

/// Degree and multiplicities: `a_i = e(p_i)·h(e0)`, `b_i = e(p_i)·h⁻¹(e0)`, `c_i = (a_i+b_i)/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityProfile {
    pub degree: BigInt,
    pub points: Vec<PointId>,
    pub a: Vec<BigInt>,
    pub b: Vec<BigInt>,
    pub c: Vec<BigRational>,
}

impl MultiplicityProfile {
    pub fn a_of(&self, p: PointId) -> BigInt {
        self.points.iter().position(|&q| q == p).map_or_else(BigInt::zero, |i| self.a[i].clone())
    }

    pub fn b_of(&self, p: PointId) -> BigInt {
        self.points.iter().position(|&q| q == p).map_or_else(BigInt::zero, |i| self.b[i].clone())
    }

    pub fn c_of(&self, p: PointId) -> BigRational {
        self.points.iter().position(|&q| q == p).map_or_else(BigRational::zero, |i| self.c[i].clone())
    }

    /// Nonzero `a` values sorted decreasingly.
    pub fn sorted_a(&self) -> Vec<BigInt> {
        sorted_desc(&self.a)
    }

    pub fn sorted_b(&self) -> Vec<BigInt> {
        sorted_desc(&self.b)
    }

    /// Point indices ordered by decreasing `c`, ties by id.
    pub fn by_decreasing_c(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.points.len()).collect();
        idx.sort_by(|&i, &j| self.c[j].cmp(&self.c[i]).then(self.points[i].cmp(&self.points[j])));
        idx
    }
}

fn sorted_desc(v: &[BigInt]) -> Vec<BigInt> {
    let mut s: Vec<BigInt> = v.iter().filter(|x| !x.is_zero()).cloned().collect();
    s.sort_by(|x, y| y.cmp(x));
    s
}

pub fn multiplicity_profile(h: &WeylElement) -> MultiplicityProfile {
    let m = h.matrix();
    let mut points = Vec::new();
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut c = Vec::new();
    for (i, p) in h.support().iter().enumerate() {
        // h(e0) has coefficient -a_i; h⁻¹(e0) = J Mᵀ J e0 has coefficient -M[0][i]
        let ai = -m[(i + 1, 0)].clone();
        let bi = m[(0, i + 1)].clone();
        if ai.is_zero() && bi.is_zero() {
            continue;
        }
        c.push(BigRational::new(&ai + &bi, BigInt::from(2)));
        points.push(*p);
        a.push(ai);
        b.push(bi);
    }
    MultiplicityProfile {
        degree: h.degree(),
        points,
        a,
        b,
        c,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoetherReport {
    pub applicable: bool,
    pub degree: String,
    pub checks: Vec<Check>,
}

impl NoetherReport {
    pub fn passed(&self) -> bool {
        self.applicable && self.checks.iter().all(|c| c.holds)
    }
}

fn noether_checks(tag: &str, d: &BigInt, a: &[BigInt], out: &mut Vec<Check>) {
    let sq: BigInt = a.iter().map(|x| x * x).sum();
    let sum: BigInt = a.iter().sum();
    let d2m1 = d * d - 1;
    let d3m3 = d * 3 - 3;
    out.push(Check::new(&format!("{tag}: sum of squares = d^2 - 1"), sq == d2m1, || {
        format!("{sq} != {d2m1}")
    }));
    out.push(Check::new(&format!("{tag}: sum = 3d - 3"), sum == d3m3, || format!("{sum} != {d3m3}")));
    let neg: Vec<String> = a.iter().filter(|x| x.is_negative()).map(|x| x.to_string()).collect();
    out.push(Check::new(&format!("{tag}: non-negative"), neg.is_empty(), || neg.join(",")));
    let mut s = sorted_desc(a);
    while s.len() < 3 {
        s.push(BigInt::zero());
    }
    let one = BigInt::one();
    let lhs = (d - &one) * (&s[0] + &s[1] + &s[2] - (d + &one));
    let mut rhs = (&s[0] - &s[2]) * (d - &one - &s[0]) + (&s[1] - &s[2]) * (d - &one - &s[1]);
    for ai in &s[3..] {
        rhs += ai * (&s[2] - ai);
    }
    out.push(Check::new(&format!("{tag}: top-three identity"), lhs == rhs, || {
        format!("{lhs} != {rhs}")
    }));
    let pair = &s[0] + &s[1];
    out.push(Check::new(&format!("{tag}: a_i + a_j <= d"), &pair <= d, || {
        format!("{} + {} > {d}", s[0], s[1])
    }));
    let triple = &s[0] + &s[1] + &s[2];
    out.push(Check::new(&format!("{tag}: a_1 + a_2 + a_3 >= d + 1"), triple > *d, || {
        format!("{} + {} + {} <= {d}", s[0], s[1], s[2])
    }));
}

/// Noether equalities and the top-three inequalities, for `a` and for `b`.
pub fn noether_report(h: &WeylElement) -> NoetherReport {
    let prof = multiplicity_profile(h);
    let d = prof.degree.clone();
    if d < BigInt::from(2) {
        return NoetherReport {
            applicable: false,
            degree: d.to_string(),
            checks: Vec::new(),
        };
    }
    let mut checks = Vec::new();
    noether_checks("a", &d, &prof.a, &mut checks);
    noether_checks("b", &d, &prof.b, &mut checks);
    NoetherReport {
        applicable: true,
        degree: d.to_string(),
        checks,
    }
}

/// Smallest-id support point `p` with `h(e0 - e(p)) = e0 - e(p)`.
pub fn jonquieres_center(h: &WeylElement) -> Option<PointId> {
    let m = h.matrix();
    let n = h.dim();
    h.support().iter().enumerate().find_map(|(i, &p)| {
        let j = i + 1;
        let fixed = (0..n).all(|r| {
            let v = &m[(r, 0)] - &m[(r, j)];
            let want = if r == 0 {
                1
            } else if r == j {
                -1
            } else {
                0
            };
            v == BigInt::from(want)
        });
        fixed.then_some(p)
    })
}

/// Result of a successful Halphen search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalphenCertificate {
    /// `3e0 - Σ e(p_i)` over nine points, fixed by `h`.
    pub class: ClassVector,
    pub points: Vec<PointId>,
    /// Whether the sufficient numeric criterion held for this choice of nine points.
    pub numeric_criterion: bool,
}

/// `d/3 ≥ 3 + (3 + Σ_{j∉S} b_j)(max_{i∈S} |3a_i − d| + Σ_{j∉S} a_j)` for a nine-point set `S`.
fn halphen_numeric(prof: &MultiplicityProfile, chosen: &[PointId]) -> bool {
    let d = BigRational::from_integer(prof.degree.clone());
    let three = BigRational::from_integer(BigInt::from(3));
    let mut max_dev = BigInt::zero();
    for &p in chosen {
        let dev: BigInt = (prof.a_of(p) * BigInt::from(3) - &prof.degree).abs();
        if dev > max_dev {
            max_dev = dev;
        }
    }
    let mut sum_a = BigInt::zero();
    let mut sum_b = BigInt::zero();
    for (i, p) in prof.points.iter().enumerate() {
        if !chosen.contains(p) {
            sum_a += &prof.a[i];
            sum_b += &prof.b[i];
        }
    }
    let rhs = BigInt::from(3) + (BigInt::from(3) + sum_b) * (max_dev + sum_a);
    d / three >= BigRational::from_integer(rhs)
}

const HALPHEN_POOL: usize = 12;

/// Looks for a nine-point class `K = 3e0 - Σ e(p_i)` fixed by `h`.
///
/// With a candidate the test is a single exact evaluation. Otherwise the nine-subsets of the
/// (at most twelve) support points of largest `c` are tried, padded by points outside the support.
pub fn halphen_test(
    h: &WeylElement,
    candidate: Option<&[PointId]>,
    space: &mut BubbleSpace,
) -> Result<Option<HalphenCertificate>, WeylError> {
    let prof = multiplicity_profile(h);
    let certify = |pts: Vec<PointId>| {
        let k = ClassVector::anticanonical(&pts);
        if h.apply(&k) == k {
            Some(HalphenCertificate {
                numeric_criterion: halphen_numeric(&prof, &pts),
                class: k,
                points: pts,
            })
        } else {
            None
        }
    };
    if let Some(c) = candidate {
        let set: BTreeSet<PointId> = c.iter().copied().collect();
        if c.len() != 9 {
            return Err(WeylError::TooFewPoints(9));
        }
        if set.len() != 9 {
            return Err(WeylError::RepeatedPoint);
        }
        return Ok(certify(c.to_vec()));
    }
    let order = prof.by_decreasing_c();
    // support points of zero multiplicity come last; they can still be permuted
    let mut pool: Vec<PointId> = order.iter().map(|&i| prof.points[i]).collect();
    pool.extend(h.support().iter().copied().filter(|p| !prof.points.contains(p)));
    pool.truncate(HALPHEN_POOL);
    let take = pool.len().min(9);
    let mut padding = Vec::new();
    if take < 9 {
        // points outside the support are fixed by h; reuse known ones before minting fresh ones
        let used: BTreeSet<PointId> = h.support().iter().copied().collect();
        let mut id = 0u32;
        while padding.len() < 9 - take && (id as usize) < space.len() {
            let p = PointId(id);
            if !used.contains(&p) {
                padding.push(p);
            }
            id += 1;
        }
        while padding.len() < 9 - take {
            padding.push(space.fresh());
        }
    }
    let mut found = None;
    for_each_subset(pool.len(), take, &mut |sel| {
        if found.is_some() {
            return;
        }
        let mut pts: Vec<PointId> = sel.iter().map(|&i| pool[i]).collect();
        pts.extend(padding.iter().copied());
        pts.sort();
        found = certify(pts);
    });
    Ok(found)
}

fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f);
}

/// `h = s ∘ σ0 ∘ s′` for a quadratic element; `s′` is always the identity here.
pub fn quadratic_decompose(
    h: &WeylElement,
) -> Result<(WeylGenerator, WeylGenerator, WeylGenerator), WeylError> {
    let d = h.degree();
    if d != BigInt::from(2) {
        return Err(WeylError::WrongDegree {
            expected: "2".into(),
            found: d.to_string(),
        });
    }
    let prof = multiplicity_profile(h);
    let base: Vec<PointId> = prof
        .points
        .iter()
        .zip(&prof.b)
        .filter(|(_, b)| !b.is_zero())
        .map(|(p, _)| *p)
        .collect();
    if base.len() != 3 {
        return Err(WeylError::UnsupportedShape(format!("{} base points", base.len())));
    }
    let sigma = WeylGenerator::sigma0(base[0], base[1], base[2])?;
    let s = h.compose(&WeylElement::from_generator(&sigma));
    let perm = s.as_permutation().ok_or(WeylError::NotAPermutation)?;
    Ok((perm, sigma, WeylGenerator::identity()))
}

/// `s0 = σ0(p1,p2,p3)` and `s_i = τ(p_i, p_{i+1})` over the points `p1..pn` of `space`.
pub fn coxeter_generators(n: usize, space: &mut BubbleSpace) -> Result<Vec<WeylWord>, WeylError> {
    if n < 3 {
        return Err(WeylError::TooFewPoints(3));
    }
    let p = space.points("p", n);
    let mut out = vec![WeylWord::new(vec![WeylGenerator::sigma0(p[0], p[1], p[2])?])];
    for i in 0..n - 1 {
        out.push(WeylWord::new(vec![WeylGenerator::tau(p[i], p[i + 1])?]));
    }
    Ok(out)
}

/// The Coxeter element `s0 s1 ⋯ s_{n-1}`.
pub fn coxeter_element(n: usize, space: &mut BubbleSpace) -> Result<WeylWord, WeylError> {
    let gens = coxeter_generators(n, space)?;
    Ok(WeylWord::new(gens.into_iter().flat_map(|w| w.letters).collect()))
}

/// `Π τ(q,q′) σ0(p1,q,q′)` over consecutive pairs of `omega` sorted by id.
pub fn sigma_omega_word(p1: PointId, omega: &[PointId]) -> Result<WeylWord, WeylError> {
    if omega.len() % 2 == 1 {
        return Err(WeylError::OddOmega(omega.len()));
    }
    if omega.contains(&p1) {
        return Err(WeylError::BasePointInOmega);
    }
    let set: BTreeSet<PointId> = omega.iter().copied().collect();
    if set.len() != omega.len() {
        return Err(WeylError::RepeatedPoint);
    }
    let sorted: Vec<PointId> = set.into_iter().collect();
    let mut letters = Vec::new();
    for pair in sorted.chunks(2) {
        letters.push(WeylGenerator::tau(pair[0], pair[1])?);
        letters.push(WeylGenerator::sigma0(p1, pair[0], pair[1])?);
    }
    if letters.is_empty() {
        letters.push(WeylGenerator::identity());
    }
    Ok(WeylWord::new(letters))
}

/// The involution with `σ_Ω(e0) = m e0 - (m-1) e(p1) - Σ_{q∈Ω} e(q)`, `m = |Ω|/2 + 1`.
pub fn sigma_omega(p1: PointId, omega: &[PointId]) -> Result<WeylElement, WeylError> {
    Ok(WeylElement::realize(&sigma_omega_word(p1, omega)?))
}
