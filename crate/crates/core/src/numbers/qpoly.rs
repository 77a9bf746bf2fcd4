//! Polynomial helpers over Q and Z: gcd, square-free decomposition, Sturm sequences.

use super::poly::{sign_at, IntPolynomial};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

pub(crate) type QPoly = Vec<BigRational>;

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn from_int(c: &[BigInt]) -> QPoly {
    let mut p: QPoly = c.iter().cloned().map(BigRational::from_integer).collect();
    trim(&mut p);
    p
}

fn derivative(p: &QPoly) -> QPoly {
    let mut d: QPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut d);
    d
}

fn div_rem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let lb = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lb;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

fn monic(mut p: QPoly) -> QPoly {
    if let Some(l) = p.last().cloned() {
        for c in p.iter_mut() {
            *c /= &l;
        }
    }
    p
}

fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    monic(x)
}

fn to_int_monic(p: &QPoly) -> IntPolynomial {
    let m = monic(p.clone());
    IntPolynomial::from_monic_unchecked(
        m.iter()
            .map(|c| {
                debug_assert!(c.is_integer(), "monic factor of a monic integer polynomial");
                c.to_integer()
            })
            .collect(),
    )
}

/// Yun's algorithm; returns `(factor, multiplicity)` with square-free, pairwise coprime, monic factors.
pub fn squarefree_decomposition(p: &IntPolynomial) -> Vec<(IntPolynomial, usize)> {
    let f = from_int(p.coeffs());
    if f.len() <= 1 {
        return Vec::new();
    }
    if coprime_to_derivative_mod(p.coeffs(), 1_000_000_007) || coprime_to_derivative_mod(p.coeffs(), 998_244_353) {
        return vec![(p.clone(), 1)];
    }
    let fp = derivative(&f);
    let a0 = gcd(&f, &fp);
    let mut b = div_rem(&f, &a0).0;
    let mut c = div_rem(&fp, &a0).0;
    let mut d = sub(&c, &derivative(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while b.len() > 1 {
        let a = gcd(&b, &d);
        b = div_rem(&b, &a).0;
        c = div_rem(&d, &a).0;
        d = sub(&c, &derivative(&b));
        if a.len() > 1 {
            out.push((to_int_monic(&a), i));
        }
        i += 1;
    }
    out
}

fn mod_poly(c: &[BigInt], m: u64) -> Vec<u64> {
    let mb = BigInt::from(m);
    let mut out: Vec<u64> = c
        .iter()
        .map(|x| {
            let r = x.mod_floor(&mb);
            r.iter_u64_digits().next().unwrap_or(0)
        })
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// `gcd(f, f') = 1` over `F_m` with no degree drop, which implies `f` is square-free over `Q`.
fn coprime_to_derivative_mod(c: &[BigInt], m: u64) -> bool {
    let f = mod_poly(c, m);
    if f.len() != c.len() || f.len() < 2 || (f.len() as u64) >= m {
        return false;
    }
    let mut a = f.clone();
    let mut b: Vec<u64> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, x)| ((*x as u128 * i as u128) % m as u128) as u64)
        .collect();
    while b.last() == Some(&0) {
        b.pop();
    }
    if b.len() + 1 != f.len() {
        return false;
    }
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % m as u128) as u64;
    while !b.is_empty() {
        // a := a mod b
        let inv = pow_mod(b[b.len() - 1], m - 2, m);
        while a.len() >= b.len() {
            let coef = mulm(a[a.len() - 1], inv);
            let shift = a.len() - b.len();
            for (j, bj) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + m - mulm(coef, *bj)) % m;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() == 1
}

/// Product of the distinct irreducible factors.
pub fn squarefree_part(p: &IntPolynomial) -> IntPolynomial {
    squarefree_decomposition(p)
        .into_iter()
        .fold(IntPolynomial::one(), |acc, (f, _)| acc.mul(&f))
}

fn sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

fn trim_int(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn primitive(mut p: Vec<BigInt>) -> Vec<BigInt> {
    let g = p.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in p.iter_mut() {
            *c /= &g;
        }
    }
    p
}

/// `lc(b)^(δ+1) a mod b` over Z, sign-corrected so the multiplier is positive.
fn positive_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim_int(&mut r);
    let db = b.len() - 1;
    let lb = b[db].clone();
    if r.len() <= db {
        return r;
    }
    let delta = r.len() - 1 - db;
    // each reduction multiplies r by lb
    for i in (0..=delta).rev() {
        let top = r[i + db].clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &top * bj;
        }
    }
    r.truncate(db);
    trim_int(&mut r);
    if lb.is_negative() && (delta + 1) % 2 == 1 {
        for c in r.iter_mut() {
            *c = -c.clone();
        }
    }
    r
}

/// Sturm sequence with integer members (positive rescalings of the classical sequence).
#[derive(Clone, Debug)]
pub struct Sturm {
    seq: Vec<Vec<BigInt>>,
}

impl Sturm {
    pub fn new(p: &[BigInt]) -> Self {
        let mut p0 = p.to_vec();
        trim_int(&mut p0);
        let mut seq = vec![primitive(p0.clone())];
        let mut p1: Vec<BigInt> = p0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        trim_int(&mut p1);
        if p1.is_empty() {
            return Sturm { seq };
        }
        seq.push(primitive(p1));
        loop {
            let n = seq.len();
            let r = positive_prem(&seq[n - 2], &seq[n - 1]);
            if r.is_empty() {
                break;
            }
            seq.push(primitive(r.into_iter().map(|c| -c).collect()));
        }
        Sturm { seq }
    }

    fn count_changes(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut last = Ordering::Equal;
        let mut n = 0;
        for s in signs {
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                n += 1;
            }
            last = s;
        }
        n
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::count_changes(self.seq.iter().map(|p| sign_at(p, x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::count_changes(self.seq.iter().map(|p| p.last().map_or(Ordering::Equal, |c| c.sign_cmp())))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::count_changes(self.seq.iter().map(|p| {
            let s = p.last().map_or(Ordering::Equal, |c| c.sign_cmp());
            if p.len() % 2 == 0 {
                s.reverse()
            } else {
                s
            }
        }))
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Distinct real roots in `(a, ∞)`.
    pub fn count_above(&self, a: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at_pos_inf())
    }

    /// Distinct real roots in total.
    pub fn count_real(&self) -> usize {
        self.variations_at_neg_inf()
            .saturating_sub(self.variations_at_pos_inf())
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn yun_separates_multiplicities() {
        // (x-1)^2 (x+2)^3 (x^2+1)
        let a = IntPolynomial::from_i64(&[-1, 1]).unwrap().pow(2);
        let b = IntPolynomial::from_i64(&[2, 1]).unwrap().pow(3);
        let c = IntPolynomial::from_i64(&[1, 0, 1]).unwrap();
        let p = a.mul(&b).mul(&c);
        let dec = squarefree_decomposition(&p);
        assert_eq!(dec.len(), 3);
        assert_eq!(dec[0], (c, 1));
        assert_eq!(dec[1].1, 2);
        assert_eq!(dec[2].1, 3);
    }

    #[test]
    fn sturm_counts() {
        // (x-1)(x-2)(x+3)
        let p = IntPolynomial::from_i64(&[6, -7, 0, 1]).unwrap();
        let s = Sturm::new(p.coeffs());
        assert_eq!(s.count_real(), 3);
        assert_eq!(s.count_in(&q(0, 1), &q(5, 2)), 2);
        assert_eq!(s.count_above(&q(3, 2)), 1);
        assert_eq!(s.count_in(&q(-4, 1), &q(1, 1)), 2);
    }
}
