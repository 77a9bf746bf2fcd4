use super::poly::IntPolynomial;
use super::qpoly::{squarefree_decomposition, Sturm};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive};
use std::cmp::Ordering;

/// A root approximation with its multiplicity in the input polynomial.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
}

fn eval_with_derivative(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Aberth–Ehrlich simultaneous iteration on a monic polynomial (coefficients low-to-high).
pub fn aberth(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![Complex64::new(-coeffs[0] / coeffs[1], 0.0)];
    }
    let lead = coeffs[n];
    let c: Vec<f64> = coeffs.iter().map(|a| a / lead).collect();
    // Fujiwara bound
    let radius = (0..n)
        .map(|i| {
            let k = (n - i) as f64;
            let mut v = c[i].abs();
            if i == 0 {
                v /= 2.0;
            }
            v.powf(1.0 / k)
        })
        .fold(0.0, f64::max)
        * 2.0;
    let radius = radius.max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(radius * (0.5 + 0.5 * (k as f64 + 1.0) / n as f64), theta)
        })
        .collect();
    let mut converged = vec![false; n];
    for _ in 0..2000 {
        let mut all = true;
        for k in 0..n {
            if converged[k] {
                continue;
            }
            let (p, dp) = eval_with_derivative(&c, z[k]);
            if p.norm() == 0.0 {
                converged[k] = true;
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            let w = if w.is_finite() { w } else { ratio };
            z[k] -= w;
            if w.norm() <= 1e-15 * z[k].norm().max(1.0) {
                converged[k] = true;
            } else {
                all = false;
            }
        }
        if all {
            break;
        }
    }
    // Newton polish
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval_with_derivative(&c, *zk);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            *zk -= step;
            if step.norm() <= 1e-17 * zk.norm().max(1.0) {
                break;
            }
        }
    }
    z
}

fn to_f64_coeffs(p: &IntPolynomial) -> Vec<f64> {
    p.coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect()
}

/// All complex roots with multiplicities, from Aberth iteration on each square-free factor.
pub fn roots(p: &IntPolynomial) -> Vec<Root> {
    let mut out = Vec::new();
    for (f, m) in squarefree_decomposition(p) {
        for z in aberth(&to_f64_coeffs(&f)) {
            let z = if z.im.abs() <= 1e-12 * z.norm().max(1.0) {
                Complex64::new(z.re, 0.0)
            } else {
                z
            };
            out.push(Root {
                value: z,
                multiplicity: m,
            });
        }
    }
    out.sort_by(|a, b| {
        b.value
            .norm()
            .partial_cmp(&a.value.norm())
            .unwrap_or(Ordering::Equal)
            .then(b.value.re.partial_cmp(&a.value.re).unwrap_or(Ordering::Equal))
    });
    out
}

fn rat(x: f64) -> BigRational {
    BigRational::from_f64(x).expect("finite")
}

/// Certified bracket `[lo, hi]` of width ≤ `width` around a simple real root of a square-free `f`.
/// `None` if no sign change is found near `approx`.
pub fn refine_real_root(f: &IntPolynomial, approx: f64, width: f64) -> Option<(BigRational, BigRational)> {
    let mut eps = 1e-12 * approx.abs().max(1.0);
    let (mut lo, mut hi) = loop {
        let lo = rat(approx - eps);
        let hi = rat(approx + eps);
        let sl = f.sign_at(&lo);
        let sh = f.sign_at(&hi);
        if sl == Ordering::Equal {
            return Some((lo.clone(), lo));
        }
        if sh == Ordering::Equal {
            return Some((hi.clone(), hi));
        }
        if sl != sh {
            break (lo, hi);
        }
        eps *= 16.0;
        if eps > 1e-2 * approx.abs().max(1.0) {
            return None;
        }
    };
    let two = BigRational::from_integer(BigInt::from(2));
    let target = rat(width);
    let s_lo = f.sign_at(&lo);
    while &hi - &lo > target {
        let mid = (&lo + &hi) / &two;
        let sm = f.sign_at(&mid);
        if sm == Ordering::Equal {
            return Some((mid.clone(), mid));
        }
        if sm == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some((lo, hi))
}

/// Largest real root, refined by exact bisection and certified by a Sturm count.
pub fn largest_real_root(p: &IntPolynomial) -> Option<f64> {
    let mut best: Option<f64> = None;
    for (f, _) in squarefree_decomposition(p) {
        let rs = aberth(&to_f64_coeffs(&f));
        let cand = rs
            .iter()
            .filter(|z| z.im.abs() <= 1e-7 * z.norm().max(1.0))
            .map(|z| z.re)
            .fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.max(x))));
        let Some(r) = cand else { continue };
        let bracket = refine_real_root(&f, r, 1e-15 * r.abs().max(1.0));
        let value = match bracket {
            Some((lo, hi)) => {
                let sturm = Sturm::new(f.coeffs());
                if sturm.count_above(&hi) != 0 {
                    // numeric iteration missed a larger real root; fall back to Sturm bisection
                    sturm_largest(&f)
                } else {
                    ((&lo + &hi) / BigRational::from_integer(BigInt::from(2))).to_f64()
                }
            }
            None => sturm_largest(&f),
        };
        if let Some(v) = value {
            best = Some(best.map_or(v, |b: f64| b.max(v)));
        }
    }
    best
}

/// Bisection on Sturm counts; used only as a fallback.
fn sturm_largest(f: &IntPolynomial) -> Option<f64> {
    let sturm = Sturm::new(f.coeffs());
    if sturm.count_real() == 0 {
        return None;
    }
    let bound: BigInt = f.coeffs().iter().map(|c| num_traits::Signed::abs(c)).max().unwrap_or_default() + 1;
    let mut hi = BigRational::from_integer(bound.clone());
    let mut lo = BigRational::from_integer(-bound);
    let two = BigRational::from_integer(BigInt::from(2));
    let tiny = rat(1e-15);
    let one = BigRational::from_integer(BigInt::from(1));
    while &hi - &lo > &tiny * num_traits::Signed::abs(&hi).max(one.clone()) {
        let mid = (&lo + &hi) / &two;
        if sturm.count_above(&mid) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    ((&lo + &hi) / two).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_roots() {
        let p = IntPolynomial::from_i64(&[1, -3, 1]).unwrap();
        let r = roots(&p);
        assert!((r[0].value.re - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-14);
        assert!((r[1].value.re - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn multiplicities_reported() {
        let p = IntPolynomial::from_i64(&[-1, 1]).unwrap().pow(3).mul(&IntPolynomial::from_i64(&[2, 1]).unwrap());
        let r = roots(&p);
        assert_eq!(r.len(), 2);
        assert_eq!(r.iter().find(|x| (x.value.re - 1.0).abs() < 1e-12).unwrap().multiplicity, 3);
    }

    #[test]
    fn plastic_number() {
        let p = IntPolynomial::from_i64(&[-1, -1, 0, 1]).unwrap();
        let r = largest_real_root(&p).unwrap();
        assert!((r * r * r - r - 1.0).abs() < 1e-14);
        assert!((r - 1.324717957244746).abs() < 1e-14);
    }
}
