use super::poly::HPoly;
use super::BirmapError;
use crate::error::{Cursor, ParseError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Polynomial in `x, y, z`, not necessarily homogeneous.
type Poly = BTreeMap<(u32, u32, u32), BigRational>;

fn constant(c: BigRational) -> Poly {
    let mut p = Poly::new();
    if !c.is_zero() {
        p.insert((0, 0, 0), c);
    }
    p
}

fn add(a: &Poly, b: &Poly, sign: i64) -> Poly {
    let mut r = a.clone();
    for (k, c) in b {
        let v = r.remove(k).unwrap_or_else(BigRational::zero) + c * BigRational::from_integer(sign.into());
        if !v.is_zero() {
            r.insert(*k, v);
        }
    }
    r
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut r = Poly::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let k = (ka.0 + kb.0, ka.1 + kb.1, ka.2 + kb.2);
            let v = r.remove(&k).unwrap_or_else(BigRational::zero) + ca * cb;
            if !v.is_zero() {
                r.insert(k, v);
            }
        }
    }
    r
}

const MAX_EXPONENT: u32 = 1024;

fn sum(c: &mut Cursor) -> Result<Poly, ParseError> {
    let mut sign = 1;
    if c.eat('-') {
        sign = -1;
    } else {
        c.eat('+');
    }
    let mut acc = add(&Poly::new(), &product(c)?, sign);
    loop {
        if c.eat('+') {
            acc = add(&acc, &product(c)?, 1);
        } else if c.eat('-') {
            acc = add(&acc, &product(c)?, -1);
        } else {
            return Ok(acc);
        }
    }
}

fn product(c: &mut Cursor) -> Result<Poly, ParseError> {
    let mut acc = power(c)?;
    while c.eat('*') {
        acc = mul(&acc, &power(c)?);
    }
    Ok(acc)
}

fn power(c: &mut Cursor) -> Result<Poly, ParseError> {
    let base = atom(c)?;
    if c.eat('^') {
        let pos = c.pos();
        let e: u32 = c
            .digits()
            .and_then(|d| d.parse().ok())
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| ParseError::new(pos, "expected an exponent"))?;
        let mut r = constant(BigRational::one());
        for _ in 0..e {
            r = mul(&r, &base);
        }
        return Ok(r);
    }
    Ok(base)
}

fn atom(c: &mut Cursor) -> Result<Poly, ParseError> {
    c.skip_ws();
    if c.eat('(') {
        let p = sum(c)?;
        c.expect(')')?;
        return Ok(p);
    }
    if let Some(d) = c.digits() {
        let num: BigInt = d.parse().expect("digits");
        let mut q = BigRational::from_integer(num);
        if c.eat('/') {
            let pos = c.pos();
            let den: BigInt = c
                .digits()
                .ok_or_else(|| ParseError::new(pos, "expected a denominator"))?
                .parse()
                .expect("digits");
            if den.is_zero() {
                return Err(ParseError::new(pos, "zero denominator"));
            }
            q /= BigRational::from_integer(den);
        }
        return Ok(constant(q));
    }
    let pos = c.pos();
    let var = match c.bump() {
        Some('x') => (1, 0, 0),
        Some('y') => (0, 1, 0),
        Some('z') => (0, 0, 1),
        _ => return Err(ParseError::new(pos, "expected a number, x, y, z or '('")),
    };
    let mut p = Poly::new();
    p.insert(var, BigRational::one());
    Ok(p)
}

pub(crate) fn parse_poly(text: &str) -> Result<HPoly<BigRational>, BirmapError> {
    let mut c = Cursor::new(text);
    let p = sum(&mut c)?;
    if !c.at_end() {
        return Err(c.error("unexpected trailing input").into());
    }
    to_homogeneous(&p, None)
}

fn to_homogeneous(p: &Poly, degree: Option<u32>) -> Result<HPoly<BigRational>, BirmapError> {
    let degs: Vec<u32> = p.keys().map(|k| k.0 + k.1 + k.2).collect();
    let d = degree.or(degs.first().copied()).unwrap_or(0);
    if degs.iter().any(|&x| x != d) {
        return Err(BirmapError::NotHomogeneous(format!("term degrees {degs:?}")));
    }
    Ok(HPoly::from_terms(d, p.iter().map(|(k, v)| ((k.0, k.1), v.clone()))))
}

/// `[P : Q : R]`.
pub(crate) fn parse_triple(text: &str) -> Result<[HPoly<BigRational>; 3], BirmapError> {
    let mut c = Cursor::new(text);
    c.expect('[')?;
    let a = sum(&mut c)?;
    c.expect(':')?;
    let b = sum(&mut c)?;
    c.expect(':')?;
    let r = sum(&mut c)?;
    c.expect(']')?;
    if !c.at_end() {
        return Err(c.error("unexpected trailing input").into());
    }
    let d = [&a, &b, &r]
        .iter()
        .find_map(|p| p.keys().next().map(|k| k.0 + k.1 + k.2));
    Ok([to_homogeneous(&a, d)?, to_homogeneous(&b, d)?, to_homogeneous(&r, d)?])
}
