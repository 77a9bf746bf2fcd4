use super::cyclotomic::strip_cyclotomic_detailed;
use super::poly::IntPolynomial;
use super::qpoly::{squarefree_part, Sturm};
use super::roots::{largest_real_root, roots};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NumberKind {
    CyclotomicProduct,
    ReciprocalQuadratic,
    Pisot,
    Salem,
    OtherPerron,
    NoRootGtOne,
}

impl NumberKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            NumberKind::CyclotomicProduct => "cyclotomic_product",
            NumberKind::ReciprocalQuadratic => "reciprocal_quadratic",
            NumberKind::Pisot => "pisot",
            NumberKind::Salem => "salem",
            NumberKind::OtherPerron => "other_perron",
            NumberKind::NoRootGtOne => "no_root_gt_one",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumberClass {
    pub kind: NumberKind,
    /// Largest real root when it exceeds 1; 1 for cyclotomic products, 0 for `x^j`.
    pub dominant_root: f64,
    /// The input after removing cyclotomic factors and powers of x.
    pub stripped: IntPolynomial,
    pub cyclotomic_factors: Vec<(u64, usize)>,
    pub x_power: usize,
    /// `stripped` is not square-free; the class is that of its square-free part.
    pub repeated_factor: bool,
    pub notes: Vec<String>,
}

/// Trace polynomial `Q` with `p(x) = x^n Q(x + 1/x)` for a palindromic `p` of degree `2n`.
pub fn trace_polynomial(p: &IntPolynomial) -> Option<Vec<BigInt>> {
    if !p.is_reciprocal() || p.degree() % 2 == 1 {
        return None;
    }
    let n = p.degree() / 2;
    let c = p.coeffs();
    // T_0 = 2, T_1 = y, T_{j+1} = y T_j - T_{j-1}
    let mut t_prev = vec![BigInt::from(2)];
    let mut t_cur = vec![BigInt::zero(), BigInt::from(1)];
    let mut q = vec![BigInt::zero(); n + 1];
    q[0] += &c[n];
    for j in 1..=n {
        for (i, tc) in t_cur.iter().enumerate() {
            q[i] += &c[n + j] * tc;
        }
        let mut next = vec![BigInt::zero(); t_cur.len() + 1];
        for (i, tc) in t_cur.iter().enumerate() {
            next[i + 1] += tc;
        }
        for (i, tp) in t_prev.iter().enumerate() {
            next[i] -= tp;
        }
        t_prev = std::mem::replace(&mut t_cur, next);
    }
    Some(q)
}

/// Inverse of [`trace_polynomial`]: `x^n Q(x + 1/x)`.
pub fn from_trace_polynomial(q: &[BigInt]) -> IntPolynomial {
    let n = q.len() - 1;
    let mut out = vec![BigInt::zero(); 2 * n + 1];
    // (x^2 + 1)^i, shifted by n - i
    let mut pow = vec![BigInt::from(1)];
    for (i, qi) in q.iter().enumerate() {
        if !qi.is_zero() {
            for (k, pk) in pow.iter().enumerate() {
                if !pk.is_zero() {
                    out[n - i + k] += qi * pk;
                }
            }
        }
        let mut next = vec![BigInt::zero(); pow.len() + 2];
        for (k, pk) in pow.iter().enumerate() {
            next[k] += pk;
            next[k + 2] += pk;
        }
        pow = next;
    }
    IntPolynomial::from_monic_unchecked(out)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact Salem test for a square-free palindromic polynomial of degree ≥ 4 with no root ±1.
pub fn is_salem_squarefree(p: &IntPolynomial) -> bool {
    if p.degree() < 4 {
        return false;
    }
    let Some(q) = trace_polynomial(p) else {
        return false;
    };
    let n = q.len() - 1;
    let s = Sturm::new(&q);
    let two = rat(2);
    let m_two = rat(-2);
    let q_at = |x: &BigRational| super::poly::eval_rational(&q, x);
    if q_at(&two).is_zero() || q_at(&m_two).is_zero() {
        return false;
    }
    s.count_above(&two) == 1 && s.count_in(&m_two, &two) == n - 1 && s.count_real() == n
}

/// Classify the dominant root of a monic integer polynomial.
pub fn classify_number(p: &IntPolynomial, tol: f64) -> NumberClass {
    let st = strip_cyclotomic_detailed(p);
    let stripped = st.remainder.clone();
    let mut notes = Vec::new();
    if stripped.is_one() {
        let kind = if st.cyclotomic.is_empty() {
            NumberKind::NoRootGtOne
        } else {
            NumberKind::CyclotomicProduct
        };
        return NumberClass {
            kind,
            dominant_root: if st.cyclotomic.is_empty() { 0.0 } else { 1.0 },
            stripped,
            cyclotomic_factors: st.cyclotomic,
            x_power: st.x_power,
            repeated_factor: false,
            notes,
        };
    }
    let sq = squarefree_part(&stripped);
    let repeated = sq != stripped;
    if repeated {
        notes.push("stripped polynomial has a repeated factor; classified its square-free part".into());
    }
    let rs = roots(&sq);
    let max_mod = rs.iter().map(|r| r.value.norm()).fold(0.0, f64::max);
    let real_dom = largest_real_root(&sq).filter(|&r| r > 1.0);
    let dominant_is_real_positive = real_dom.is_some_and(|r| (r - max_mod).abs() <= 1e-9 * max_mod.max(1.0));
    let dominant_root = real_dom.unwrap_or(max_mod);
    let mut kind = NumberKind::OtherPerron;
    if sq.is_reciprocal() {
        if sq.degree() == 2 {
            let t = -sq.coeffs()[1].clone();
            if t > BigInt::from(2) {
                kind = NumberKind::ReciprocalQuadratic;
                notes.push("reciprocal quadratic integer, counted as Pisot by convention".into());
            } else {
                notes.push("dominant root is negative".into());
            }
        } else if is_salem_squarefree(&sq) {
            kind = NumberKind::Salem;
        }
    } else if dominant_is_real_positive {
        let outside = rs.iter().filter(|r| r.value.norm() >= 1.0 - tol).count();
        if outside == 1 {
            kind = NumberKind::Pisot;
        }
    }
    if kind == NumberKind::OtherPerron && !dominant_is_real_positive {
        notes.push("largest-modulus root is not real positive".into());
    }
    if !repeated && kind != NumberKind::OtherPerron && sq.degree() > 2 {
        notes.push("irreducibility not certified; class refers to the stripped polynomial".into());
    }
    NumberClass {
        kind,
        dominant_root,
        stripped,
        cyclotomic_factors: st.cyclotomic,
        x_power: st.x_power,
        repeated_factor: repeated,
        notes,
    }
}

/// Root-coefficient consistency: `|Σ roots + c_{n-1}|` and `|Π roots - (-1)^n c_0|`, relative.
pub fn vieta_residuals(p: &IntPolynomial) -> (f64, f64) {
    let rs = roots(p);
    let n = p.degree();
    let mut sum = num_complex::Complex64::new(0.0, 0.0);
    let mut prod = num_complex::Complex64::new(1.0, 0.0);
    for r in &rs {
        for _ in 0..r.multiplicity {
            sum += r.value;
            prod *= r.value;
        }
    }
    let c = p.coeffs();
    let cn1 = c[n - 1].to_f64().unwrap_or(f64::NAN);
    let c0 = c[0].to_f64().unwrap_or(f64::NAN);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let scale = c.iter().map(|x| x.abs().to_f64().unwrap_or(0.0)).fold(1.0, f64::max);
    ((sum.re + cn1).abs().max(sum.im.abs()) / scale, (prod - sign * c0).norm() / scale.max(c0.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_roundtrip() {
        let lehmer = IntPolynomial::from_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]).unwrap();
        let q = trace_polynomial(&lehmer).unwrap();
        let qi: Vec<i64> = q.iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(qi, vec![3, 4, -5, -5, 1, 1]);
        assert_eq!(from_trace_polynomial(&q), lehmer);
    }
}
