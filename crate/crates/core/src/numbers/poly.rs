use super::NumbersError;
use crate::error::{Cursor, ParseError};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Monic polynomial with integer coefficients, stored lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self, NumbersError> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        match coeffs.last() {
            None => Err(NumbersError::ZeroPolynomial),
            Some(c) if !c.is_one() => Err(NumbersError::NotMonic(c.to_string())),
            _ => Ok(IntPolynomial { coeffs }),
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self, NumbersError> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Caller guarantees the leading coefficient is 1 after trimming.
    pub(crate) fn from_monic_unchecked(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        debug_assert!(coeffs.last().is_some_and(|c| c.is_one()));
        IntPolynomial { coeffs }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn x() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        }
    }

    /// `x^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::from(-1);
        c[n] = BigInt::one();
        IntPolynomial { coeffs: c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn coeffs_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    /// Palindromic coefficient list.
    pub fn is_reciprocal(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    pub fn mul(&self, other: &Self) -> Self {
        IntPolynomial {
            coeffs: mul_coeffs(&self.coeffs, &other.coeffs),
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Vec<BigInt>) {
        let (q, r) = div_rem_monic(&self.coeffs, &d.coeffs);
        (IntPolynomial::from_monic_unchecked(q), r)
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = div_rem_monic(&self.coeffs, &d.coeffs);
        if r.iter().all(|c| c.is_zero()) {
            Some(IntPolynomial::from_monic_unchecked(q))
        } else {
            None
        }
    }

    pub fn derivative(&self) -> Vec<BigInt> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| {
            acc * z + c.to_f64().unwrap_or(f64::NAN)
        })
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        eval_rational(&self.coeffs, x)
    }

    /// Sign of the value at a rational point, computed exactly.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        sign_at(&self.coeffs, x)
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let coeffs = parse_int_poly(text)?;
        let lead = coeffs.last().cloned().unwrap_or_default();
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(ParseError::new(0, "zero polynomial"));
        }
        if !lead.is_one() {
            return Err(ParseError::new(0, format!("polynomial is not monic (leading coefficient {lead})")));
        }
        Ok(IntPolynomial::from_monic_unchecked(coeffs))
    }

    /// Coefficient list rendered as JSON-friendly strings.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_poly(&self.coeffs, "x"))
    }
}

/// Render `c_n x^n + ... + c_0`.
pub(crate) fn format_poly(coeffs: &[BigInt], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
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
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{a}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parse `x^10 + x^9 - 3*x^2 + 2x - 1` (single variable `x`, integer coefficients).
pub(crate) fn parse_int_poly(text: &str) -> Result<Vec<BigInt>, ParseError> {
    let mut cur = Cursor::new(text);
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut first = true;
    loop {
        cur.skip_ws();
        let mut sign = 1;
        if cur.eat('-') {
            sign = -1;
        } else if cur.eat('+') {
        } else if !first {
            return Err(cur.error("expected '+' or '-'"));
        }
        first = false;
        cur.skip_ws();
        let start = cur.pos();
        let mut coef = BigInt::one();
        let mut have_coef = false;
        if let Some(d) = cur.digits() {
            coef = d.parse().map_err(|_| ParseError::new(start, "bad integer"))?;
            have_coef = true;
            cur.eat('*');
        }
        cur.skip_ws();
        let mut exp = 0usize;
        if cur.peek() == Some('x') {
            cur.bump();
            exp = 1;
            if cur.eat('^') {
                let p = cur.pos();
                let d = cur.digits().ok_or_else(|| cur.error("expected exponent"))?;
                exp = d.parse().map_err(|_| ParseError::new(p, "bad exponent"))?;
            }
        } else if !have_coef {
            return Err(cur.error("expected a term"));
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        coeffs[exp] += coef * sign;
        if cur.at_end() {
            break;
        }
    }
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(coeffs)
}

pub(crate) fn mul_coeffs(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Division by a monic polynomial; remainder has length `deg d`.
pub(crate) fn div_rem_monic(num: &[BigInt], d: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let dd = d.len() - 1;
    if num.len() <= dd {
        let mut r = num.to_vec();
        r.resize(dd, BigInt::zero());
        return (vec![BigInt::zero()], r);
    }
    let mut r = num.to_vec();
    let qlen = num.len() - dd;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = r[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in d.iter().enumerate() {
            if !dj.is_zero() {
                r[i + j] -= &c * dj;
            }
        }
        q[i] = c;
    }
    r.truncate(dd);
    (q, r)
}

pub(crate) fn eval_rational(coeffs: &[BigInt], x: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
        acc * x + BigRational::from_integer(c.clone())
    })
}

/// Exact sign of `p(n/d)` by clearing denominators.
pub(crate) fn sign_at(coeffs: &[BigInt], x: &BigRational) -> Ordering {
    let n = x.numer();
    let d = x.denom();
    let deg = coeffs.len().saturating_sub(1);
    let mut acc = BigInt::zero();
    let mut dpow = BigInt::one();
    // Σ c_i n^i d^(deg-i), Horner-style in n with d-powers from the top
    let mut npow = vec![BigInt::one(); deg + 1];
    for i in 1..=deg {
        npow[i] = &npow[i - 1] * n;
    }
    for i in (0..=deg).rev() {
        if !coeffs[i].is_zero() {
            acc += &coeffs[i] * &npow[i] * &dpow;
        }
        dpow *= d;
    }
    acc.sign().cmp_zero()
}

trait CmpZero {
    fn cmp_zero(self) -> Ordering;
}

impl CmpZero for num_bigint::Sign {
    fn cmp_zero(self) -> Ordering {
        match self {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_roundtrip() {
        let p = IntPolynomial::parse("x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1").unwrap();
        assert_eq!(p.degree(), 10);
        assert_eq!(p.to_string(), "x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1");
        let q = IntPolynomial::parse("x^2 - 3x + 1").unwrap();
        assert_eq!(q.to_string(), "x^2 - 3*x + 1");
        assert_eq!(IntPolynomial::parse(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn parse_errors_have_positions() {
        let e = IntPolynomial::parse("x^2 + + 1").unwrap_err();
        assert_eq!(e.pos, 6);
        assert!(IntPolynomial::parse("2x^2 + 1").is_err());
    }

    #[test]
    fn exact_sign() {
        let p = IntPolynomial::parse("x^2 - 2").unwrap();
        let a = BigRational::new(BigInt::from(141), BigInt::from(100));
        let b = BigRational::new(BigInt::from(142), BigInt::from(100));
        assert_eq!(p.sign_at(&a), Ordering::Less);
        assert_eq!(p.sign_at(&b), Ordering::Greater);
    }
}
