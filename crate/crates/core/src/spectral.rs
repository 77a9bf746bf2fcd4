//! Isometry type, dynamical degree and axis of realized Weyl elements.

use crate::lattice::{ClassVector, PointId, RealClassVector};
use crate::numbers::{largest_real_root, lehmer_number, strip_cyclotomic_detailed, IntPolynomial};
use crate::report::Check;
use crate::weyl::WeylElement;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("element is not loxodromic ({0})")]
    NotLoxodromic(IsometryKind),
    #[error("class is not on the upper hyperboloid")]
    NotOnHyperboloid,
    #[error("eigenvector computation failed")]
    EigenvectorFailed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsometryKind {
    Elliptic,
    ParabolicLinear,
    ParabolicQuadratic,
    Loxodromic,
}

impl IsometryKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            IsometryKind::Elliptic => "elliptic",
            IsometryKind::ParabolicLinear => "parabolic_linear",
            IsometryKind::ParabolicQuadratic => "parabolic_quadratic",
            IsometryKind::Loxodromic => "loxodromic",
        }
    }
}

impl std::fmt::Display for IsometryKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsometryClassification {
    pub kind: IsometryKind,
    pub evidence: String,
    /// Order of the element when elliptic.
    pub order: Option<u64>,
    /// Characteristic polynomial, low-to-high.
    #[serde(skip)]
    pub charpoly: IntPolynomial,
    /// Non-cyclotomic factor of the characteristic polynomial (1 if none).
    #[serde(skip)]
    pub remainder: IntPolynomial,
    /// `(n, multiplicity)` for each cyclotomic factor `Φ_n`.
    pub cyclotomic: Vec<(u64, usize)>,
}

/// Classification from the characteristic polynomial and the unipotent part of `M^k`.
pub fn classify(h: &WeylElement) -> IsometryClassification {
    let cp = IntPolynomial::new(h.matrix().charpoly()).expect("characteristic polynomial is monic");
    let st = strip_cyclotomic_detailed(&cp);
    if !st.remainder.is_one() {
        let lambda = largest_real_root(&st.remainder).unwrap_or(f64::NAN);
        return IsometryClassification {
            kind: IsometryKind::Loxodromic,
            evidence: format!("non-cyclotomic factor {} with root {lambda}", st.remainder),
            order: None,
            charpoly: cp,
            remainder: st.remainder,
            cyclotomic: st.cyclotomic,
        };
    }
    let k = st.cyclotomic.iter().fold(1u64, |acc, (n, _)| acc.lcm(n));
    let n = h.matrix().pow(k).minus_identity();
    let (kind, evidence, order) = if n.is_zero() {
        (IsometryKind::Elliptic, format!("finite order {k}"), Some(k))
    } else if (&n * &n).is_zero() {
        (
            IsometryKind::ParabolicLinear,
            format!("M^{k} - I has rank {} and square zero", n.rank()),
            None,
        )
    } else {
        (
            IsometryKind::ParabolicQuadratic,
            format!("(M^{k} - I)^2 != 0, rank of M^{k} - I is {}", n.rank()),
            None,
        )
    };
    IsometryClassification {
        kind,
        evidence,
        order,
        charpoly: cp,
        remainder: st.remainder,
        cyclotomic: st.cyclotomic,
    }
}

/// Spectral radius; exactly 1 unless loxodromic.
pub fn dynamical_degree(h: &WeylElement, _tol: f64) -> f64 {
    let c = classify(h);
    if c.kind == IsometryKind::Loxodromic {
        largest_real_root(&c.remainder).unwrap_or(f64::NAN)
    } else {
        1.0
    }
}

pub fn degree_sequence(h: &WeylElement, n: usize) -> Vec<BigInt> {
    h.degree_sequence(n)
}

/// `deg(h^400) ≥ 3^19 deg(h^200)`, by exact matrix powers.
pub fn loxodromy_criterion(h: &WeylElement) -> bool {
    let (d200, d400) = degrees_200_400(h);
    d400 >= BigInt::from(3u32).pow(19) * d200
}

pub fn degrees_200_400(h: &WeylElement) -> (BigInt, BigInt) {
    let m200 = h.matrix().pow(200);
    let m400 = &m200 * &m200;
    (m200[(0, 0)].clone(), m400[(0, 0)].clone())
}

#[derive(Clone, Debug, PartialEq)]
pub struct LoxodromicData {
    pub lambda: f64,
    pub v_plus: RealClassVector,
    pub v_minus: RealClassVector,
    pub vplus_dot_vminus: f64,
    pub cosh_axis_distance: f64,
    /// Projection of `e0` on the axis.
    pub e: RealClassVector,
    /// `‖M v₊ − λ v₊‖ / ‖v₊‖`
    pub residual_plus: f64,
    /// `‖M v₋ − λ⁻¹ v₋‖ / ‖v₋‖`
    pub residual_minus: f64,
}

fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    let scale = a.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        a.swap(col, piv);
        b.swap(col, piv);
        if a[col][col].abs() < 1e-300 {
            a[col][col] = 1e-18 * scale;
        }
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    x
}

fn mat_vec(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Inverse iteration for a simple real eigenvalue `mu`.
fn eigenvector(m: &[Vec<f64>], mu: f64) -> Option<(Vec<f64>, f64)> {
    let n = m.len();
    let shift = mu * (1.0 + 1e-13);
    let a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| m[i][j] - if i == j { shift } else { 0.0 }).collect())
        .collect();
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * i as f64).collect();
    for _ in 0..8 {
        let w = solve(a.clone(), v.clone());
        let s = norm(&w);
        if !s.is_finite() || s == 0.0 {
            return None;
        }
        v = w.into_iter().map(|x| x / s).collect();
    }
    if v[0].abs() < 1e-300 {
        return None;
    }
    let v0 = v[0];
    let v: Vec<f64> = v.into_iter().map(|x| x / v0).collect();
    let mv = mat_vec(m, &v);
    let res: Vec<f64> = mv.iter().zip(&v).map(|(a, b)| a - mu * b).collect();
    let r = norm(&res) / norm(&v);
    Some((v, r))
}

fn to_real(support: &[PointId], v: &[f64]) -> RealClassVector {
    RealClassVector {
        e0: v[0],
        coeffs: support.iter().zip(&v[1..]).map(|(p, c)| (*p, *c)).collect(),
    }
}

/// Eigenvectors for `λ` and `λ⁻¹`, normalized by `v·e0 = 1`, and the derived axis data.
pub fn axis_data(h: &WeylElement, _tol: f64) -> Result<LoxodromicData, SpectralError> {
    let c = classify(h);
    if c.kind != IsometryKind::Loxodromic {
        return Err(SpectralError::NotLoxodromic(c.kind));
    }
    let lambda = largest_real_root(&c.remainder).ok_or(SpectralError::EigenvectorFailed)?;
    let m = h.matrix().to_f64();
    let mi = h.inverse().matrix().to_f64();
    let (vp, rp) = eigenvector(&m, lambda).ok_or(SpectralError::EigenvectorFailed)?;
    // v₋ is the dominant eigenvector of h⁻¹
    let (vm, _) = eigenvector(&mi, lambda).ok_or(SpectralError::EigenvectorFailed)?;
    let mvm = mat_vec(&m, &vm);
    let rm = norm(&mvm.iter().zip(&vm).map(|(a, b)| a - b / lambda).collect::<Vec<_>>()) / norm(&vm);
    let v_plus = to_real(h.support(), &vp);
    let v_minus = to_real(h.support(), &vm);
    let dot = v_plus.intersect(&v_minus);
    let cosh = (2.0 / dot).sqrt();
    let e = v_plus.add(&v_minus).scale(cosh / 2.0);
    Ok(LoxodromicData {
        lambda,
        v_plus,
        v_minus,
        vplus_dot_vminus: dot,
        cosh_axis_distance: cosh,
        e,
        residual_plus: rp,
        residual_minus: rm,
    })
}

/// `cosh dist(x, Ax(h)) = √(2 (x·v₊)(x·v₋) / (v₊·v₋))`.
pub fn cosh_distance_to_axis(data: &LoxodromicData, x: &RealClassVector) -> f64 {
    (2.0 * x.intersect(&data.v_plus) * x.intersect(&data.v_minus) / data.vplus_dot_vminus).sqrt()
}

/// Action on a real vector; identity off the support.
pub fn apply_real(h: &WeylElement, x: &RealClassVector) -> RealClassVector {
    let sup = h.support();
    let mut coords = vec![x.e0];
    coords.extend(sup.iter().map(|p| x.coeff(*p)));
    let y = mat_vec(&h.matrix().to_f64(), &coords);
    let mut out = x.clone();
    out.e0 = y[0];
    for (p, c) in sup.iter().zip(&y[1..]) {
        out.coeffs.insert(*p, *c);
    }
    out
}

/// The estimates relating `e0`, `h^{±1}(e0)` and the axis: the `√(2/(λd))` approximation of the
/// eigenvectors, the two-sided bound on `v₊·v₋`, and the sandwich on `cosh dist(e0, Ax)`.
pub fn axis_estimates(h: &WeylElement, data: &LoxodromicData) -> Vec<Check> {
    let d = h.degree().to_f64().unwrap_or(f64::INFINITY);
    let l = data.lambda;
    let approx = (2.0 / (l * d)).sqrt();
    let hm = h.inverse().image_of_e0().to_real().scale(1.0 / d);
    let hp = h.image_of_e0().to_real().scale(1.0 / d);
    let dm = hm.sub(&data.v_minus).euclidean_norm();
    let dp = hp.sub(&data.v_plus).euclidean_norm();
    let dot = data.vplus_dot_vminus;
    let lower = (l - 1.0 / l).powi(2) / (2.0 * d * d);
    let upper = (1.0 / l + l + 2.0) / d;
    let ch = data.cosh_axis_distance;
    let ch_lo = (2.0 * d / (1.0 / l + l + 2.0)).sqrt();
    let ch_hi = 2.0 * d / (l - 1.0 / l);
    vec![
        Check::new("|h^-1(e0)/d - v_minus| < sqrt(2/(lambda d))", dm < approx, || format!("{dm} >= {approx}")),
        Check::new("|h(e0)/d - v_plus| < sqrt(2/(lambda d))", dp < approx, || format!("{dp} >= {approx}")),
        Check::new("(lambda - 1/lambda)^2/(2d^2) < v_plus.v_minus", lower < dot, || format!("{lower} >= {dot}")),
        Check::new("v_plus.v_minus < (1/lambda + lambda + 2)/d", dot < upper, || format!("{dot} >= {upper}")),
        Check::new("sqrt(2d/(1/lambda + lambda + 2)) < cosh dist(e0, axis)", ch_lo < ch, || {
            format!("{ch_lo} >= {ch}")
        }),
        Check::new("cosh dist(e0, axis) < 2d/(lambda - 1/lambda)", ch < ch_hi, || format!("{ch} >= {ch_hi}")),
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxisDisplacementReport {
    pub dist_to_axis: f64,
    pub displacement: f64,
    /// `dist(x, Ax) ≤ 28 dist(x, h x)`
    pub holds: bool,
    /// `dist(x, h x) ≥ log λ_L`
    pub translation_bound: bool,
}

fn displacement_report(data: &LoxodromicData, x: &RealClassVector, cosh_move: f64, tol: f64) -> AxisDisplacementReport {
    let ca = cosh_distance_to_axis(data, x).max(1.0);
    let dist_to_axis = ca.acosh();
    let displacement = cosh_move.max(1.0).acosh();
    AxisDisplacementReport {
        dist_to_axis,
        displacement,
        holds: dist_to_axis <= 28.0 * displacement + tol,
        translation_bound: displacement >= lehmer_number().ln() - tol,
    }
}

/// Compares the distance from `x` to the axis with the displacement of `x`; `x` is exact.
pub fn axis_displacement_check(
    h: &WeylElement,
    x: &ClassVector,
    tol: f64,
) -> Result<AxisDisplacementReport, SpectralError> {
    let one = num_rational::BigRational::one();
    if x.self_intersection() != one || !x.e0_coeff().is_positive() {
        return Err(SpectralError::NotOnHyperboloid);
    }
    let data = axis_data(h, tol)?;
    let cosh_move = x.intersect(&h.apply(x)).to_f64().unwrap_or(f64::INFINITY);
    Ok(displacement_report(&data, &x.to_real(), cosh_move, tol))
}

/// Same check for a real point such as the axis point `E`.
pub fn axis_displacement_check_real(
    h: &WeylElement,
    x: &RealClassVector,
    tol: f64,
) -> Result<AxisDisplacementReport, SpectralError> {
    if (x.intersect(x) - 1.0).abs() > 1e-6 || x.e0 <= 0.0 {
        return Err(SpectralError::NotOnHyperboloid);
    }
    let data = axis_data(h, tol)?;
    let cosh_move = x.intersect(&apply_real(h, x));
    Ok(displacement_report(&data, x, cosh_move, tol))
}

/// JSON-ready summary of an element's spectrum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub degree: String,
    pub kind: IsometryKind,
    pub evidence: String,
    pub lambda: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
    pub charpoly: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cosh_axis_distance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_plus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_minus: Option<f64>,
    pub loxodromy_criterion: bool,
    pub spectral_gap: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub axis_estimates: Vec<Check>,
}

pub fn spectrum_report(h: &WeylElement, tol: f64) -> SpectrumReport {
    let c = classify(h);
    let lambda = if c.kind == IsometryKind::Loxodromic {
        largest_real_root(&c.remainder).unwrap_or(f64::NAN)
    } else {
        1.0
    };
    let data = if c.kind == IsometryKind::Loxodromic {
        axis_data(h, tol).ok()
    } else {
        None
    };
    SpectrumReport {
        degree: h.degree().to_string(),
        kind: c.kind,
        evidence: c.evidence.clone(),
        lambda,
        order: c.order,
        charpoly: c.charpoly.to_string(),
        cosh_axis_distance: data.as_ref().map(|d| d.cosh_axis_distance),
        residual_plus: data.as_ref().map(|d| d.residual_plus),
        residual_minus: data.as_ref().map(|d| d.residual_minus),
        loxodromy_criterion: loxodromy_criterion(h),
        spectral_gap: crate::numbers::spectral_gap_assert(lambda, tol),
        axis_estimates: data.as_ref().map(|d| axis_estimates(h, d)).unwrap_or_default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::BubbleSpace;
    use crate::weyl::coxeter_element;

    #[test]
    fn sigma0_is_elliptic() {
        let mut sp = BubbleSpace::new();
        let h = WeylElement::parse("q(p1,p2,p3)", &mut sp).unwrap();
        let c = classify(&h);
        assert_eq!(c.kind, IsometryKind::Elliptic);
        assert_eq!(c.order, Some(2));
        assert!(!loxodromy_criterion(&h));
    }

    #[test]
    fn coxeter_ten_is_lehmer() {
        let mut sp = BubbleSpace::new();
        let h = WeylElement::realize(&coxeter_element(10, &mut sp).unwrap());
        let l = dynamical_degree(&h, 1e-9);
        assert!((l - lehmer_number()).abs() < 1e-12);
        let data = axis_data(&h, 1e-9).unwrap();
        assert!(data.residual_plus < 1e-9 && data.residual_minus < 1e-9);
        assert!((data.e.intersect(&data.e) - 1.0).abs() < 1e-9);
        assert!(loxodromy_criterion(&h));
    }
}
