use super::ReductionError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

fn check_lambda(lambda: f64) -> Result<(), ReductionError> {
    if lambda > 1.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(ReductionError::InvalidLambda(lambda))
    }
}

/// `δ(λ) = (5 − 2√6) / (√2 (λ + 1))`.
pub fn decrease_quantum(lambda: f64) -> Result<f64, ReductionError> {
    check_lambda(lambda)?;
    // 5 − 2√6 = 1/(5 + 2√6), without the cancellation
    Ok(1.0 / ((5.0 + 2.0 * 6f64.sqrt()) * 2f64.sqrt() * (lambda + 1.0)))
}

/// `24 λ³`.
pub fn degree_threshold(lambda: f64) -> Result<f64, ReductionError> {
    check_lambda(lambda)?;
    Ok(24.0 * lambda.powi(3))
}

/// `4700 λ⁵`, stated for `λ ≥ 10⁶`, rounded once from the exact value.
pub fn mcdeg_bound(lambda: f64) -> Result<f64, ReductionError> {
    let exact = mcdeg_bound_exact(lambda)?;
    Ok(exact.to_f64().unwrap_or(f64::INFINITY))
}

/// `4700 λ⁵` evaluated exactly at the binary value of `lambda`.
pub fn mcdeg_bound_exact(lambda: f64) -> Result<BigRational, ReductionError> {
    check_lambda(lambda)?;
    let l = BigRational::from_float(lambda).ok_or(ReductionError::InvalidLambda(lambda))?;
    Ok(BigRational::from_integer(BigInt::from(4700)) * num_traits::pow(l, 5))
}

/// `log10 cosh(18 + 345 ln λ)`, finite even when the bound itself overflows.
pub fn cosh_bound_log10(lambda: f64) -> Result<f64, ReductionError> {
    check_lambda(lambda)?;
    let t = 18.0 + 345.0 * lambda.ln();
    // cosh t = e^t (1 + e^{-2t}) / 2
    Ok((t + (-2.0 * t).exp().ln_1p() - std::f64::consts::LN_2) / std::f64::consts::LN_10)
}

/// `2^57 (d_f d_g)^29`.
pub fn conjugator_degree_bound(df: u64, dg: u64) -> Result<BigInt, ReductionError> {
    if df < 1 || dg < 1 {
        return Err(ReductionError::InvalidDegree);
    }
    Ok(BigInt::from(2u32).pow(57) * (BigInt::from(df) * BigInt::from(dg)).pow(29))
}

/// Constant of the degree-growth loxodromy test, `3^19`.
pub fn loxodromy_constant() -> BigInt {
    BigInt::from(3u32).pow(19)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mcdeg_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mcdeg_bound_exact: Option<String>,
    /// Whether `λ ≥ 10⁶`, where the `4700 λ⁵` bound is asserted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mcdeg_regime: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cosh_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cosh_bound_log10: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjugator_degree_bound: Option<String>,
    pub loxodromy_constant: String,
}

/// All bounds for a dynamical degree and/or a pair of degrees.
pub fn bounds(lambda: Option<f64>, degrees: Option<(u64, u64)>) -> Result<BoundReport, ReductionError> {
    let mut r = BoundReport {
        lambda,
        mcdeg_bound: None,
        mcdeg_bound_exact: None,
        mcdeg_regime: None,
        cosh_bound: None,
        cosh_bound_log10: None,
        degree_threshold: None,
        delta: None,
        conjugator_degree_bound: None,
        loxodromy_constant: loxodromy_constant().to_string(),
    };
    if let Some(l) = lambda {
        r.mcdeg_bound = Some(mcdeg_bound(l)?);
        r.mcdeg_bound_exact = Some(crate::lattice::format_rational(&mcdeg_bound_exact(l)?));
        r.mcdeg_regime = Some(l >= 1e6);
        let lg = cosh_bound_log10(l)?;
        r.cosh_bound_log10 = Some(lg);
        let c = (18.0 + 345.0 * l.ln()).cosh();
        r.cosh_bound = c.is_finite().then_some(c);
        r.degree_threshold = Some(degree_threshold(l)?);
        r.delta = Some(decrease_quantum(l)?);
    }
    if let Some((df, dg)) = degrees {
        if df < 2 || dg < 2 {
            return Err(ReductionError::InvalidDegree);
        }
        r.conjugator_degree_bound = Some(conjugator_degree_bound(df, dg)?.to_string());
    }
    if lambda.is_none() && degrees.is_none() {
        return Err(ReductionError::InvalidLambda(f64::NAN));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_two_is_two_pow_115() {
        assert_eq!(conjugator_degree_bound(2, 2).unwrap(), BigInt::from(2u32).pow(115));
    }

    #[test]
    fn delta_at_million() {
        let d = decrease_quantum(1e6).unwrap();
        assert!((d - 7.14e-8).abs() < 1e-10);
    }
}
