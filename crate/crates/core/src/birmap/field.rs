use super::poly::HPoly;
use super::BirmapError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficient field of a triple: exact rationals or a prime field.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self) -> Self;
    fn from_bigint(n: &BigInt) -> Self;
    fn from_rational(q: &BigRational) -> Option<Self>;
    /// Characteristic, 0 for the rationals.
    fn characteristic() -> u64;
    /// Greatest common factor of three components without monomial content, monic.
    fn common_factor(comps: &[HPoly<Self>; 3]) -> Result<HPoly<Self>, BirmapError>;
}

impl Field for BigRational {
    fn inv(&self) -> Self {
        self.recip()
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }

    fn characteristic() -> u64 {
        0
    }

    fn common_factor(comps: &[HPoly<Self>; 3]) -> Result<HPoly<Self>, BirmapError> {
        super::gcd::common_factor_rational(comps)
    }
}

/// `2^62 − 57`.
pub const DEFAULT_PRIME: u64 = 4_611_686_018_427_387_847;

/// Element of `Z/P` for a prime `P < 2^63`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp<const P: u64>(pub u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(&self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut b = self;
        let mut r = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b;
            }
            b = b * b;
            e >>= 1;
        }
        r
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let s = self.0 as u128 + o.0 as u128;
        Fp((s % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Fp(P - self.0)
        }
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(P - 2)
    }

    fn from_bigint(n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(P));
        Fp(r.iter_u64_digits().next().unwrap_or(0))
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        let d = Self::from_bigint(q.denom());
        if d.is_zero() {
            return None;
        }
        Some(Self::from_bigint(q.numer()) * d.inv())
    }

    fn characteristic() -> u64 {
        P
    }

    fn common_factor(comps: &[HPoly<Self>; 3]) -> Result<HPoly<Self>, BirmapError> {
        Ok(super::gcd::common_factor_field(comps))
    }
}

/// Primes used for modular gcd probing, all just below `2^62`.
pub const PROBE_PRIMES: [u64; 12] = [
    4_611_686_018_427_387_847,
    4_611_686_018_427_387_817,
    4_611_686_018_427_387_787,
    4_611_686_018_427_387_761,
    4_611_686_018_427_387_751,
    4_611_686_018_427_387_737,
    4_611_686_018_427_387_733,
    4_611_686_018_427_387_709,
    4_611_686_018_427_387_701,
    4_611_686_018_427_387_631,
    4_611_686_018_427_387_617,
    4_611_686_018_427_387_587,
];
