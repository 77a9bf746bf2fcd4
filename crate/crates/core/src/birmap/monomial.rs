use super::poly::HPoly;
use super::{BirmapError, RationalTriple, Triple};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `f_A(X, Y) = (X^a Y^b, X^c Y^d)` for `A = [[a, b], [c, d]]` with `det A = ±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    a: [[BigInt; 2]; 2],
}

fn det(a: &[[BigInt; 2]; 2]) -> BigInt {
    &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0]
}

impl MonomialMap {
    pub fn new(a: [[BigInt; 2]; 2]) -> Result<Self, BirmapError> {
        let d = det(&a);
        if d.abs() != BigInt::one() {
            return Err(BirmapError::NotUnimodular(format!("det = {d}")));
        }
        Ok(MonomialMap { a })
    }

    pub fn from_i64(a: [[i64; 2]; 2]) -> Result<Self, BirmapError> {
        Self::new(a.map(|r| r.map(BigInt::from)))
    }

    pub fn matrix(&self) -> &[[BigInt; 2]; 2] {
        &self.a
    }

    /// Component exponents in `x, y, z` after homogenizing and removing the common monomial.
    pub fn homogeneous_exponents(&self) -> [[BigInt; 3]; 3] {
        let [[a, b], [c, d]] = &self.a;
        let z = BigInt::zero();
        let rows = [[a.clone(), b.clone(), -(a + b)], [c.clone(), d.clone(), -(c + d)], [z.clone(), z.clone(), z]];
        let mins: [BigInt; 3] = std::array::from_fn(|j| rows.iter().map(|r| r[j].clone()).min().expect("three rows"));
        rows.map(|r| std::array::from_fn(|j| &r[j] - &mins[j]))
    }

    /// Degree of the homogenized triple.
    pub fn degree(&self) -> BigInt {
        let e = self.homogeneous_exponents();
        e[2].iter().sum()
    }

    pub fn compose(&self, o: &Self) -> Self {
        // f_A ∘ f_B = f_{AB}
        let a = &self.a;
        let b = &o.a;
        MonomialMap {
            a: std::array::from_fn(|i| std::array::from_fn(|j| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j])),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = MonomialMap {
            a: [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]],
        };
        for _ in 0..n {
            r = r.compose(self);
        }
        r
    }

    /// `deg f_A^n` for `n = 1..=count`.
    pub fn iterates(&self, count: u32) -> Vec<BigInt> {
        let mut cur = self.clone();
        let mut out = Vec::with_capacity(count as usize);
        for n in 1..=count {
            if n > 1 {
                cur = cur.compose(self);
            }
            out.push(cur.degree());
        }
        out
    }

    /// Spectral radius of `A`.
    pub fn lambda(&self) -> f64 {
        let t = (&self.a[0][0] + &self.a[1][1]).to_f64().unwrap_or(f64::NAN);
        let d = det(&self.a).to_f64().unwrap_or(f64::NAN);
        let disc = t * t - 4.0 * d;
        if disc >= 0.0 {
            (t.abs() + disc.sqrt()) / 2.0
        } else {
            d.abs().sqrt()
        }
    }

    /// The homogenized map as a triple of monomials; needs exponents below `u32::MAX`.
    pub fn to_triple(&self) -> Result<RationalTriple, BirmapError> {
        let e = self.homogeneous_exponents();
        let comps: Vec<HPoly<BigRational>> = e
            .iter()
            .map(|r| {
                let ex: Option<Vec<u32>> = r.iter().map(|x| x.to_u32()).collect();
                ex.map(|v| HPoly::monomial(BigRational::one(), v[0], v[1], v[2]))
                    .ok_or_else(|| BirmapError::BudgetExceeded("exponent too large".into()))
            })
            .collect::<Result<_, _>>()?;
        Triple::new(comps.try_into().expect("three components"))
    }
}
