use super::ReductionError;
use crate::report::Check;
use crate::spectral::{classify, IsometryKind};
use crate::weyl::{multiplicity_profile, WeylElement};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AveragedNoetherReport {
    pub degree: String,
    pub lambda: f64,
    pub checks: Vec<Check>,
}

impl AveragedNoetherReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Noether-type relations for the averages `c_i = (a_i + b_i)/2` of a loxodromic element.
///
/// The exact rational parts are compared with the `λ`-dependent slack `(d/2)(1/λ + λ + 2)`.
pub fn noetherci_check(h: &WeylElement) -> Result<AveragedNoetherReport, ReductionError> {
    let cls = classify(h);
    if cls.kind != IsometryKind::Loxodromic {
        return Err(ReductionError::NotLoxodromic(cls.kind));
    }
    let lambda = crate::numbers::largest_real_root(&cls.remainder).unwrap_or(f64::NAN);
    let prof = multiplicity_profile(h);
    let d = BigRational::from_integer(prof.degree.clone());
    let one = BigRational::from_integer(BigInt::from(1));
    let three = BigRational::from_integer(BigInt::from(3));
    let df = d.to_f64().unwrap_or(f64::INFINITY);
    let slack = df / 2.0 * (1.0 / lambda + lambda + 2.0);
    let mut checks = Vec::new();

    let sum: BigRational = prof.c.iter().sum();
    let want = &three * &d - &three;
    checks.push(Check::new("sum c = 3d - 3", sum == want, || format!("{sum} != {want}")));

    let sq: BigRational = prof.c.iter().map(|c| c * c).sum();
    let base = &d * &d - &one;
    // Σc² - (d² - 1) > -slack
    let lhs = (&sq - &base).to_f64().unwrap_or(f64::NAN);
    checks.push(Check::new("sum c^2 > d^2 - 1 - (d/2)(1/lambda + lambda + 2)", lhs > -slack, || {
        format!("sum c^2 - (d^2 - 1) = {lhs} <= -{slack}")
    }));

    let mut c: Vec<BigRational> = prof.c.iter().filter(|x| !x.is_zero()).cloned().collect();
    c.sort_by(|x, y| y.cmp(x));
    while c.len() < 3 {
        c.push(BigRational::zero());
    }
    let dm1 = &d - &one;
    let left = &dm1 * (&c[0] + &c[1] + &c[2] - (&d + &one));
    let mut right = (&c[0] - &c[2]) * (&dm1 - &c[0]) + (&c[1] - &c[2]) * (&dm1 - &c[1]);
    for ci in &c[3..] {
        right += ci * (&c[2] - ci);
    }
    let gap = (&left - &right).to_f64().unwrap_or(f64::NAN);
    checks.push(Check::new("top-three inequality for c with slack", gap > -slack, || {
        format!("left - right = {gap} <= -{slack}")
    }));

    Ok(AveragedNoetherReport {
        degree: prof.degree.to_string(),
        lambda,
        checks,
    })
}
