//! Common factors of homogeneous triples: line-restriction probing, a bivariate
//! primitive-remainder gcd over prime fields, and CRT lifting to the rationals.

use super::field::{Field, Fp, PROBE_PRIMES};
use super::poly::HPoly;
use super::BirmapError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

type UPoly<F> = Vec<F>;

fn trim<F: Field>(p: &mut UPoly<F>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn u_mul<F: Field>(a: &UPoly<F>, b: &UPoly<F>) -> UPoly<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![F::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    trim(&mut out);
    out
}

fn u_sub<F: Field>(a: &UPoly<F>, b: &UPoly<F>) -> UPoly<F> {
    let n = a.len().max(b.len());
    let mut out: UPoly<F> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(F::zero);
            let y = b.get(i).cloned().unwrap_or_else(F::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

fn u_divrem<F: Field>(a: &UPoly<F>, b: &UPoly<F>) -> (UPoly<F>, UPoly<F>) {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv = b[db].inv();
    let mut q = vec![F::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].clone() * inv.clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] = r[i + j].clone() - c.clone() * bj.clone();
        }
        q[i] = c;
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

fn u_monic<F: Field>(mut p: UPoly<F>) -> UPoly<F> {
    if let Some(l) = p.last().cloned() {
        let inv = l.inv();
        for c in p.iter_mut() {
            *c = c.clone() * inv.clone();
        }
    }
    p
}

fn u_gcd<F: Field>(a: &UPoly<F>, b: &UPoly<F>) -> UPoly<F> {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = u_divrem(&x, &y);
        x = y;
        y = r;
    }
    u_monic(x)
}

/// Coefficients in `t` of `p(u + t v)`, by evaluation at `t = 0..=d` and Newton interpolation.
fn restrict_to_line<F: Field>(p: &HPoly<F>, u: &[F; 3], v: &[F; 3]) -> UPoly<F> {
    let d = p.degree() as usize;
    let ts: Vec<F> = (0..=d).map(|i| F::from_bigint(&BigInt::from(i))).collect();
    let ys: Vec<F> = ts
        .iter()
        .map(|t| {
            let pt = [
                u[0].clone() + t.clone() * v[0].clone(),
                u[1].clone() + t.clone() * v[1].clone(),
                u[2].clone() + t.clone() * v[2].clone(),
            ];
            p.eval(&pt)
        })
        .collect();
    // divided differences
    let mut coef = ys;
    for j in 1..=d {
        for i in (j..=d).rev() {
            let num = coef[i].clone() - coef[i - 1].clone();
            let den = ts[i].clone() - ts[i - j].clone();
            coef[i] = num * den.inv();
        }
    }
    let mut out: UPoly<F> = vec![F::zero(); d + 1];
    for i in (0..=d).rev() {
        // out = out * (t - ts[i]) + coef[i]
        let mut next = vec![F::zero(); d + 1];
        for k in 0..d {
            next[k + 1] = next[k + 1].clone() + out[k].clone();
        }
        for k in 0..=d {
            next[k] = next[k].clone() - ts[i].clone() * out[k].clone();
        }
        next[0] = next[0].clone() + coef[i].clone();
        out = next;
    }
    trim(&mut out);
    out
}

fn random_elem<F: Field>(rng: &mut ChaCha8Rng) -> F {
    F::from_bigint(&BigInt::from(rng.gen::<u64>() >> 2))
}

/// Smallest degree of the gcd of the restrictions to `lines` random lines; an upper bound on
/// the degree of the common factor when no line passes through a common zero.
pub(crate) fn line_gcd_degree<F: Field>(comps: &[HPoly<F>; 3], lines: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = usize::MAX;
    for _ in 0..lines {
        let u: [F; 3] = std::array::from_fn(|_| random_elem(&mut rng));
        let v: [F; 3] = std::array::from_fn(|_| random_elem(&mut rng));
        let mut g: UPoly<F> = Vec::new();
        for c in comps {
            g = u_gcd(&g, &restrict_to_line(c, &u, &v));
        }
        best = best.min(g.len().saturating_sub(1));
    }
    best
}

/// Bivariate polynomial: index `i` holds the coefficient of `x^i`, a polynomial in `y`.
type BPoly<F> = Vec<UPoly<F>>;

fn b_trim<F: Field>(p: &mut BPoly<F>) {
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
}

fn dehomogenize<F: Field>(p: &HPoly<F>) -> BPoly<F> {
    let mut out: BPoly<F> = Vec::new();
    for (&(i, j), c) in p.terms() {
        let (i, j) = (i as usize, j as usize);
        if out.len() <= i {
            out.resize(i + 1, Vec::new());
        }
        if out[i].len() <= j {
            out[i].resize(j + 1, F::zero());
        }
        out[i][j] = c.clone();
    }
    for c in out.iter_mut() {
        trim(c);
    }
    b_trim(&mut out);
    out
}

fn homogenize<F: Field>(p: &BPoly<F>) -> HPoly<F> {
    let mut deg = 0;
    for (i, c) in p.iter().enumerate() {
        if !c.is_empty() {
            deg = deg.max(i + c.len() - 1);
        }
    }
    let terms = p.iter().enumerate().flat_map(|(i, c)| {
        c.iter()
            .enumerate()
            .map(move |(j, v)| ((i as u32, j as u32), v.clone()))
    });
    HPoly::from_terms(deg as u32, terms)
}

fn content<F: Field>(p: &BPoly<F>) -> UPoly<F> {
    p.iter().fold(Vec::new(), |g, c| u_gcd(&g, c))
}

fn primitive<F: Field>(p: &BPoly<F>) -> BPoly<F> {
    let c = content(p);
    if c.len() <= 1 {
        return p.iter().map(|x| u_monic_by(x, &c)).collect();
    }
    p.iter().map(|x| u_divrem(x, &c).0).collect()
}

fn u_monic_by<F: Field>(x: &UPoly<F>, c: &UPoly<F>) -> UPoly<F> {
    match c.first() {
        Some(c0) => x.iter().map(|v| v.clone() * c0.inv()).collect(),
        None => x.clone(),
    }
}

/// Pseudo-remainder of `a` by `b` in `F[y][x]`.
fn prem<F: Field>(a: &BPoly<F>, b: &BPoly<F>) -> BPoly<F> {
    let mut r = a.clone();
    b_trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let la = r[dr].clone();
        let shift = dr - db;
        let mut next: BPoly<F> = r.iter().map(|c| u_mul(c, lb)).collect();
        for (j, bj) in b.iter().enumerate() {
            next[shift + j] = u_sub(&next[shift + j], &u_mul(&la, bj));
        }
        b_trim(&mut next);
        r = next;
    }
    r
}

/// Gcd in `F[x, y]` by the primitive remainder sequence.
fn b_gcd<F: Field>(a: &BPoly<F>, b: &BPoly<F>) -> BPoly<F> {
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    let c = u_gcd(&content(a), &content(b));
    let mut x = primitive(a);
    let mut y = primitive(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        if y.len() == 1 {
            // y is a unit in F(y)[x]
            return vec![c];
        }
        let r = prem(&x, &y);
        if r.is_empty() {
            return y.iter().map(|v| u_mul(v, &c)).collect();
        }
        x = y;
        y = primitive(&r);
    }
}

/// Gcd of the three components over `F`, monic for the lex order.
pub(crate) fn field_gcd<F: Field>(comps: &[HPoly<F>; 3]) -> HPoly<F> {
    // callers remove monomial content first, so no power of z is lost at z = 1
    let mut g: BPoly<F> = Vec::new();
    for c in comps.iter().filter(|c| !c.is_zero()) {
        g = b_gcd(&g, &dehomogenize(c));
    }
    homogenize(&g).monic()
}

/// Common factor over a prime field: probe two lines, then run the bivariate gcd.
pub(crate) fn common_factor_field<F: Field>(comps: &[HPoly<F>; 3]) -> HPoly<F> {
    if line_gcd_degree(comps, 2, 0x9e37) == 0 {
        return HPoly::constant(F::one());
    }
    field_gcd(comps)
}

/// Monic gcd image modulo `P` as raw residues, with its degree; `None` for a bad prime.
fn image<const P: u64>(comps: &[HPoly<BigRational>; 3]) -> Option<(BTreeMap<(u32, u32), u64>, usize)> {
    let red: Vec<HPoly<Fp<P>>> = comps
        .iter()
        .map(|c| c.map(Fp::<P>::from_rational))
        .collect::<Option<_>>()?;
    if red.iter().zip(comps).any(|(r, c)| r.len() != c.len()) {
        return None;
    }
    let red: [HPoly<Fp<P>>; 3] = red.try_into().ok()?;
    if line_gcd_degree(&red, 1, 0x5eed ^ P) == 0 {
        return Some((BTreeMap::new(), 0));
    }
    let g = field_gcd(&red);
    let d = g.degree() as usize;
    Some((g.terms().iter().map(|(k, v)| (*k, v.value())).collect(), d))
}

type ImageFn = fn(&[HPoly<BigRational>; 3]) -> Option<(BTreeMap<(u32, u32), u64>, usize)>;

const IMAGES: [ImageFn; 12] = [
    image::<{ PROBE_PRIMES[0] }>,
    image::<{ PROBE_PRIMES[1] }>,
    image::<{ PROBE_PRIMES[2] }>,
    image::<{ PROBE_PRIMES[3] }>,
    image::<{ PROBE_PRIMES[4] }>,
    image::<{ PROBE_PRIMES[5] }>,
    image::<{ PROBE_PRIMES[6] }>,
    image::<{ PROBE_PRIMES[7] }>,
    image::<{ PROBE_PRIMES[8] }>,
    image::<{ PROBE_PRIMES[9] }>,
    image::<{ PROBE_PRIMES[10] }>,
    image::<{ PROBE_PRIMES[11] }>,
];

fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    // find r/s ≡ a (mod m) with |r|, s ≤ sqrt(m/2)
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound {
        return None;
    }
    let q = BigRational::new(r1, s1);
    let back = (q.numer() - a * q.denom()).mod_floor(m);
    back.is_zero().then_some(q)
}

/// Scale a rational polynomial to a primitive integer one.
fn primitive_integer(p: &HPoly<BigRational>) -> HPoly<BigRational> {
    let mut l = BigInt::one();
    for c in p.terms().values() {
        l = l.lcm(c.denom());
    }
    let mut g = BigInt::zero();
    for c in p.terms().values() {
        g = g.gcd(&(c * BigRational::from_integer(l.clone())).to_integer());
    }
    if g.is_zero() {
        return p.clone();
    }
    if p.leading().is_some_and(|(_, c)| c.is_negative()) {
        g = -g;
    }
    p.scale(&BigRational::new(l, g))
}

/// Common factor over the rationals: degree probed modulo two primes, candidate lifted by CRT
/// from at least two primes of minimal image degree, accepted only after exact division.
pub(crate) fn common_factor_rational(comps: &[HPoly<BigRational>; 3]) -> Result<HPoly<BigRational>, BirmapError> {
    let ints: [HPoly<BigRational>; 3] = std::array::from_fn(|i| primitive_integer(&comps[i]));
    let one = || HPoly::constant(BigRational::one());
    // (degree, residues, modulus, primes used)
    let mut acc: Option<(usize, BTreeMap<(u32, u32), BigInt>, BigInt, usize)> = None;
    let mut zero_votes = 0;
    for (idx, f) in IMAGES.iter().enumerate() {
        let Some((g, d)) = f(&ints) else { continue };
        if d == 0 {
            zero_votes += 1;
            if zero_votes >= 2 {
                return Ok(one());
            }
            continue;
        }
        let p = BigInt::from(PROBE_PRIMES[idx]);
        let residues: BTreeMap<(u32, u32), BigInt> = g.into_iter().map(|(k, v)| (k, BigInt::from(v))).collect();
        match acc.as_mut() {
            Some((ad, vals, m, count)) if *ad == d && vals.keys().eq(residues.keys()) => {
                let inv = mod_inverse(&m.mod_floor(&p), &p).expect("distinct primes");
                for (k, r) in vals.iter_mut() {
                    // x ≡ r (mod m), x ≡ residues[k] (mod p)
                    let t = ((&residues[k] - &*r).mod_floor(&p) * &inv).mod_floor(&p);
                    *r += &*m * t;
                }
                *m *= &p;
                *count += 1;
            }
            // images of larger degree come from unlucky primes
            Some((ad, _, _, _)) if *ad < d => continue,
            _ => acc = Some((d, residues, p, 1)),
        }
        let (d, vals, m, count) = acc.as_ref().expect("set above");
        if *count < 2 {
            continue;
        }
        let lifted: Option<Vec<((u32, u32), BigRational)>> = vals
            .iter()
            .map(|(k, r)| rational_reconstruct(r, m).map(|q| (*k, q)))
            .collect();
        let Some(terms) = lifted else { continue };
        let cand = HPoly::from_terms(*d as u32, terms);
        if comps.iter().all(|c| c.is_zero() || c.div_exact(&cand).is_some()) {
            return Ok(cand);
        }
    }
    Err(BirmapError::GcdNotCertified)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}
