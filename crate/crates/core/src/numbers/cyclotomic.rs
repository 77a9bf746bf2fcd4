use super::poly::IntPolynomial;
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mobius(mut n: u64) -> i32 {
    let mut k = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            k += 1;
        }
        p += 1;
    }
    if n > 1 {
        k += 1;
    }
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The n-th cyclotomic polynomial.
///
/// For n > 1, `Φ_n = Π_{d|n} (1 - x^d)^{μ(n/d)}` as a power series truncated at degree φ(n).
pub fn cyclotomic(n: u64) -> IntPolynomial {
    assert!(n >= 1);
    if n == 1 {
        return IntPolynomial::from_i64(&[-1, 1]).expect("monic");
    }
    let deg = euler_phi(n) as usize;
    let mut s = vec![BigInt::zero(); deg + 1];
    s[0] = BigInt::one();
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    for &d in &divisors {
        let mu = mobius(n / d);
        let d = d as usize;
        if mu == 1 {
            // multiply by (1 - x^d)
            for i in (d..=deg).rev() {
                let v = s[i - d].clone();
                s[i] -= v;
            }
        } else if mu == -1 {
            // divide by (1 - x^d): prefix sums with stride d
            for i in d..=deg {
                let v = s[i - d].clone();
                s[i] += v;
            }
        }
    }
    IntPolynomial::from_monic_unchecked(s)
}

/// All n with φ(n) ≤ bound, ascending.
pub fn orders_with_phi_at_most(bound: usize) -> Vec<u64> {
    // φ(n) ≥ sqrt(n/2), so n ≤ 2·bound²
    let limit = (2 * bound * bound).max(2) as u64;
    (1..=limit)
        .filter(|&n| euler_phi(n) as usize <= bound)
        .collect()
}

/// Result of removing cyclotomic factors and powers of x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stripped {
    pub remainder: IntPolynomial,
    /// `(n, multiplicity)` for each Φ_n removed.
    pub cyclotomic: Vec<(u64, usize)>,
    /// Power of x removed.
    pub x_power: usize,
}

/// Divide out every Φ_n (φ(n) ≤ deg p) as often as it divides, and every factor x.
pub fn strip_cyclotomic_detailed(p: &IntPolynomial) -> Stripped {
    let lead_zero = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let mut rem = IntPolynomial::from_monic_unchecked(p.coeffs()[lead_zero..].to_vec());
    let mut found = Vec::new();
    if rem.degree() > 0 {
        for n in orders_with_phi_at_most(rem.degree()) {
            if euler_phi(n) as usize > rem.degree() {
                continue;
            }
            let phi = cyclotomic(n);
            let mut mult = 0;
            while phi.degree() <= rem.degree() {
                match rem.div_exact(&phi) {
                    Some(q) => {
                        rem = q;
                        mult += 1;
                    }
                    None => break,
                }
            }
            if mult > 0 {
                found.push((n, mult));
            }
            if rem.degree() == 0 {
                break;
            }
        }
    }
    Stripped {
        remainder: rem,
        cyclotomic: found,
        x_power: lead_zero,
    }
}

pub fn strip_cyclotomic(p: &IntPolynomial) -> IntPolynomial {
    strip_cyclotomic_detailed(p).remainder
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1).coeffs_i64().unwrap(), vec![-1, 1]);
        assert_eq!(cyclotomic(2).coeffs_i64().unwrap(), vec![1, 1]);
        assert_eq!(cyclotomic(4).coeffs_i64().unwrap(), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6).coeffs_i64().unwrap(), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12).coeffs_i64().unwrap(), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient -2
        assert!(cyclotomic(105).coeffs().iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn product_over_divisors_is_x_n_minus_1() {
        for n in 1..40u64 {
            let prod = (1..=n)
                .filter(|d| n % d == 0)
                .fold(IntPolynomial::one(), |acc, d| acc.mul(&cyclotomic(d)));
            assert_eq!(prod, IntPolynomial::x_pow_minus_one(n as usize), "n = {n}");
        }
    }
}
