//! Orbit-truncation matrices `F_k` and the explicit quadratic family `M_h`.
//!
//! A model stores the four blocks of `f•` on `V_C ⊕ V_A ⊕ V_B0 ⊕ V_B1 ⊕ …`:
//! `M: V_C → V_A`, `N: V_A → V_A`, `P: V_C → V_B0`, `Q: V_A → V_B0`, and
//! `V_Bj → V_Bj+1` is the identity. `F_k` keeps `k` of the `B` blocks and sends
//! the last one back onto `V_C`.

use crate::lattice::PointId;
use crate::matrix::{rational_det, IntMatrix};
use crate::numbers::{classify_number, IntPolynomial, NumberKind};
use crate::report::Check;
use crate::weyl::WeylElement;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitsError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("annotation does not give an invariant decomposition: {0}")]
    NotInvariant(String),
}

/// Which points span `V_C`, `V_A \ {e0}` and `V_B0` for a Weyl element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitAnnotation {
    /// Base points `p_1..p_n` whose partner `q_i` has infinite length.
    pub c_points: Vec<PointId>,
    /// Points `f^j(q_i)` of the finite-length orbits.
    pub a_points: Vec<PointId>,
    /// The infinite-length points `q_1..q_n`, in the order matching `c_points`.
    pub b0_points: Vec<PointId>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitModel {
    pub m: IntMatrix,
    pub n: IntMatrix,
    pub p: IntMatrix,
    pub q: IntMatrix,
    pub source: Option<(WeylElement, OrbitAnnotation)>,
}

fn dims(name: &str, m: &IntMatrix, rows: usize, cols: usize) -> Result<(), OrbitsError> {
    if m.rows() != rows || m.cols() != cols {
        return Err(OrbitsError::DimensionMismatch(format!(
            "{name} is {}x{}, expected {rows}x{cols}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

fn to_poly(coeffs: Vec<BigInt>) -> IntPolynomial {
    IntPolynomial::new(coeffs).expect("characteristic polynomials are monic")
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl OrbitModel {
    /// `N` is `a×a`, `M` is `a×n`, `P` is `n×n`, `Q` is `n×a`.
    pub fn new(m: IntMatrix, n: IntMatrix, p: IntMatrix, q: IntMatrix) -> Result<Self, OrbitsError> {
        let a = n.rows();
        let ninf = p.rows();
        dims("N", &n, a, a)?;
        dims("M", &m, a, ninf)?;
        dims("P", &p, ninf, ninf)?;
        dims("Q", &q, ninf, a)?;
        if a == 0 {
            return Err(OrbitsError::DimensionMismatch("V_A must contain e0".into()));
        }
        Ok(OrbitModel { m, n, p, q, source: None })
    }

    /// Number of infinite-length orbits, `dim V_C = dim V_Bj`.
    pub fn n_inf(&self) -> usize {
        self.p.rows()
    }

    pub fn dim_a(&self) -> usize {
        self.n.rows()
    }

    /// Size of `F_k`.
    pub fn size(&self, k: usize) -> usize {
        self.dim_a() + (k + 1) * self.n_inf()
    }

    /// Read the blocks off `h`. `V_A` is spanned by `e0` followed by `a_points`.
    pub fn from_weyl(h: &WeylElement, ann: OrbitAnnotation) -> Result<Self, OrbitsError> {
        let ninf = ann.c_points.len();
        if ann.b0_points.len() != ninf {
            return Err(OrbitsError::DimensionMismatch(format!(
                "{} points in C but {} in B0",
                ninf,
                ann.b0_points.len()
            )));
        }
        let mut all: Vec<PointId> = ann.c_points.clone();
        all.extend(&ann.a_points);
        all.extend(&ann.b0_points);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != all.len() {
            return Err(OrbitsError::InvalidParameter("annotation repeats a point".into()));
        }
        let a = ann.a_points.len() + 1;
        let index_a = |p: PointId| ann.a_points.iter().position(|&x| x == p).map(|i| i + 1);
        let index_b = |p: PointId| ann.b0_points.iter().position(|&x| x == p);
        let mut m = IntMatrix::zeros(a, ninf);
        let mut nn = IntMatrix::zeros(a, a);
        let mut pp = IntMatrix::zeros(ninf, ninf);
        let mut qq = IntMatrix::zeros(ninf, a);
        let sources: Vec<Option<PointId>> = ann
            .c_points
            .iter()
            .map(|&p| Some(p))
            .chain(std::iter::once(None))
            .chain(ann.a_points.iter().map(|&p| Some(p)))
            .collect();
        for (col, src) in sources.into_iter().enumerate() {
            let img = match src {
                None => h.image_of_e0(),
                Some(p) => h.image_of_point(p),
            };
            let int = |x: &BigRational| x.to_integer();
            // column position inside C (first ninf) or A (e0 then a_points)
            let (in_c, j) = if col < ninf { (true, col) } else { (false, col - ninf) };
            let e0 = int(img.e0_coeff());
            if in_c {
                m[(0, j)] = e0;
            } else {
                nn[(0, j)] = e0;
            }
            for (&pt, c) in img.point_coeffs() {
                let c = int(c);
                if let Some(i) = index_a(pt) {
                    if in_c {
                        m[(i, j)] = c;
                    } else {
                        nn[(i, j)] = c;
                    }
                } else if let Some(i) = index_b(pt) {
                    if in_c {
                        pp[(i, j)] = c;
                    } else {
                        qq[(i, j)] = c;
                    }
                } else if !c.is_zero() {
                    return Err(OrbitsError::NotInvariant(format!(
                        "image of column {col} has a component on a point outside A and B0"
                    )));
                }
            }
        }
        let mut model = OrbitModel::new(m, nn, pp, qq)?;
        model.source = Some((h.clone(), ann));
        Ok(model)
    }

    /// `F_k` on `V_C ⊕ V_A ⊕ V_B0 ⊕ … ⊕ V_B(k-1)`; for `k = 0` the `P, Q` rows land on `V_C`.
    pub fn build_fk(&self, k: usize) -> IntMatrix {
        let n = self.n_inf();
        let a = self.dim_a();
        let size = self.size(k);
        let mut f = IntMatrix::zeros(size, size);
        let c0 = 0;
        let a0 = n;
        let b = |j: usize| n + a + j * n;
        // rows of V_B0, or V_C when there is no B block
        let target = if k == 0 { c0 } else { b(0) };
        for i in 0..a {
            for j in 0..n {
                f[(a0 + i, c0 + j)] = self.m[(i, j)].clone();
            }
            for j in 0..a {
                f[(a0 + i, a0 + j)] = self.n[(i, j)].clone();
            }
        }
        for i in 0..n {
            for j in 0..n {
                f[(target + i, c0 + j)] = self.p[(i, j)].clone();
            }
            for j in 0..a {
                f[(target + i, a0 + j)] = self.q[(i, j)].clone();
            }
        }
        for blk in 1..k {
            for i in 0..n {
                f[(b(blk) + i, b(blk - 1) + i)] = BigInt::one();
            }
        }
        if k > 0 {
            for i in 0..n {
                f[(c0 + i, b(k - 1) + i)] = BigInt::one();
            }
        }
        f
    }

    /// Diagonal of the Minkowski form on `V_k`: `+1` on `e0`, `-1` elsewhere.
    pub fn minkowski_form(&self, k: usize) -> Vec<i64> {
        let mut j = vec![-1; self.size(k)];
        j[self.n_inf()] = 1;
        j
    }

    /// The matrix defining `P(s,t)`, blocks ordered `(C, A, B)`.
    pub fn p_matrix(&self, s: &BigRational, t: &BigRational) -> Vec<Vec<BigRational>> {
        let n = self.n_inf();
        let a = self.dim_a();
        let size = 2 * n + a;
        let mut out = vec![vec![BigRational::zero(); size]; size];
        for i in 0..n {
            out[i][n + a + i] = -BigRational::one();
            out[n + a + i][n + a + i] = BigRational::one();
            out[n + a + i][i] += t;
        }
        let r = |x: &BigInt| BigRational::from_integer(x.clone());
        for i in 0..a {
            for j in 0..n {
                out[n + i][j] = -r(&self.m[(i, j)]);
            }
            for j in 0..a {
                out[n + i][n + j] = -r(&self.n[(i, j)]);
            }
            out[n + i][n + i] += t;
        }
        for i in 0..n {
            for j in 0..n {
                out[n + a + i][j] -= s * r(&self.p[(i, j)]);
            }
            for j in 0..a {
                out[n + a + i][n + j] = -(s * r(&self.q[(i, j)]));
            }
        }
        out
    }

    pub fn p_value(&self, s: &BigRational, t: &BigRational) -> BigRational {
        rational_det(self.p_matrix(s, t))
    }

    /// `P(0,t)` as an exact polynomial, by interpolation at `t = 0, 1, …, n + a`.
    pub fn p_at_zero(&self) -> Vec<BigInt> {
        let deg = self.n_inf() + self.dim_a();
        let xs: Vec<BigRational> = (0..=deg as i64).map(q).collect();
        let ys: Vec<BigRational> = xs.iter().map(|x| self.p_value(&BigRational::zero(), x)).collect();
        interpolate(&xs, &ys)
            .into_iter()
            .map(|c| {
                assert!(c.is_integer(), "integer matrix gives an integer polynomial");
                c.to_integer()
            })
            .collect()
    }
}

/// Lagrange interpolation, coefficients lowest degree first.
fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut out = vec![BigRational::zero(); n];
    for i in 0..n {
        // basis polynomial Π_{j≠i} (x − x_j)/(x_i − x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * &xs[j];
            }
            basis = next;
            denom *= &xs[i] - &xs[j];
        }
        let f = &ys[i] / denom;
        for (o, c) in out.iter_mut().zip(basis) {
            *o += c * &f;
        }
    }
    while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn det_f64(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs()))
            .unwrap_or(c);
        if m[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for i in c + 1..n {
            let f = m[i][c] / m[c][c];
            for j in c..n {
                m[i][j] -= f * m[c][j];
            }
        }
    }
    det
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleComparison {
    pub x: String,
    pub charpoly: String,
    /// `x^{kn} P(x^{-k}, x)`
    pub rhs: String,
    pub equal: bool,
    /// Whether `x^k P(x^{-k}, x)` also agrees.
    pub single_power_equal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PIdentityReport {
    pub k: usize,
    pub size: usize,
    pub charpoly: Vec<String>,
    pub samples: Vec<SampleComparison>,
    pub p_at_zero: Vec<String>,
    /// `l` with `P(0,t) = t^l det(tI − N)`.
    pub p_zero_power: Option<usize>,
    pub lambda_k: f64,
    /// `|P(λ^{-k}, λ)|` divided by the Hadamard bound of the matrix.
    pub root_residual: f64,
    pub checks: Vec<Check>,
}

impl PIdentityReport {
    pub fn passed(&self) -> bool {
        crate::report::all_hold(&self.checks)
    }
}

/// Compare `char(F_k)` with `x^{kn} P(x^{-k}, x)` at exact samples and test the relations of `P(0,t)`.
pub fn verify_p_identity(
    model: &OrbitModel,
    k: usize,
    samples: &[BigRational],
    tol: f64,
) -> Result<PIdentityReport, OrbitsError> {
    if k < 1 {
        return Err(OrbitsError::InvalidParameter("k must be at least 1".into()));
    }
    let n = model.n_inf();
    let fk = model.build_fk(k);
    let chi = to_poly(fk.charpoly());
    let mut checks = Vec::new();
    let mut comps = Vec::new();
    for x in samples {
        if x.is_zero() {
            return Err(OrbitsError::InvalidParameter("samples must be nonzero".into()));
        }
        let lhs = chi.eval_rational(x);
        let xk: BigRational = Pow::pow(x, k as u64);
        let core = model.p_value(&xk.recip(), x);
        let rhs = &core * Pow::pow(&xk, n as u64);
        let single = &core * &xk;
        comps.push(SampleComparison {
            x: x.to_string(),
            charpoly: lhs.to_string(),
            rhs: rhs.to_string(),
            equal: lhs == rhs,
            single_power_equal: lhs == single,
        });
    }
    let all_equal = comps.iter().all(|c| c.equal);
    checks.push(Check::new("char(F_k)(x) = x^(kn) P(x^-k, x) at every sample", all_equal, || {
        comps
            .iter()
            .filter(|c| !c.equal)
            .map(|c| format!("x = {}: {} != {}", c.x, c.charpoly, c.rhs))
            .collect::<Vec<_>>()
            .join("; ")
    }));

    let p0 = model.p_at_zero();
    let det_n = to_poly(model.n.charpoly());
    let p0_poly = IntPolynomial::new(p0.clone()).ok();
    let power = p0_poly.as_ref().and_then(|p| p.div_exact(&det_n)).and_then(|quot| {
        let c = quot.coeffs();
        let l = c.len() - 1;
        (c[..l].iter().all(|x| x.is_zero()) && c[l].is_one()).then_some(l)
    });
    checks.push(Check::new("P(0,t) = t^l det(tI - N)", power.is_some(), || {
        format!("P(0,t) coefficients {p0:?}, det(tI - N) = {det_n}")
    }));

    let cls = classify_number(&chi, tol);
    let lambda = cls.dominant_root;
    let mut root_residual = f64::NAN;
    if lambda > 1.0 {
        let s = lambda.powi(-(k as i32));
        let fm = model.p_matrix(&BigRational::zero(), &BigRational::zero());
        // rebuild numerically: entries are affine in (s, t)
        let ones = model.p_matrix(&BigRational::one(), &BigRational::zero());
        let tees = model.p_matrix(&BigRational::zero(), &BigRational::one());
        let num: Vec<Vec<f64>> = (0..fm.len())
            .map(|i| {
                (0..fm.len())
                    .map(|j| {
                        let c = fm[i][j].to_f64().unwrap_or(0.0);
                        let ds = ones[i][j].to_f64().unwrap_or(0.0) - c;
                        let dt = tees[i][j].to_f64().unwrap_or(0.0) - c;
                        c + s * ds + lambda * dt
                    })
                    .collect()
            })
            .collect();
        let hadamard: f64 = num.iter().map(|r| r.iter().map(|x| x * x).sum::<f64>().sqrt()).product();
        root_residual = det_f64(num).abs() / hadamard.max(f64::MIN_POSITIVE);
        checks.push(Check::new("P(lambda_k^-k, lambda_k) = 0", root_residual <= tol, || {
            format!("relative residual {root_residual:e} at lambda_k = {lambda}")
        }));
    } else {
        checks.push(Check::new("P(lambda_k^-k, lambda_k) = 0", false, || {
            format!("F_k has spectral radius 1 ({})", cls.kind.as_str())
        }));
    }

    Ok(PIdentityReport {
        k,
        size: fk.rows(),
        charpoly: chi.coeff_strings(),
        samples: comps,
        p_at_zero: p0.iter().map(|c| c.to_string()).collect(),
        p_zero_power: power,
        lambda_k: lambda,
        root_residual,
        checks,
    })
}

/// Parameters of the quadratic family, `m, k ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadraticOrbitSpec {
    pub m: u32,
    pub k: u32,
}

impl QuadraticOrbitSpec {
    pub fn new(m: u32, k: u32) -> Result<Self, OrbitsError> {
        if m < 2 || k < 2 {
            return Err(OrbitsError::InvalidParameter(format!("need m, k >= 2, got m = {m}, k = {k}")));
        }
        Ok(QuadraticOrbitSpec { m, k })
    }

    pub fn size(&self) -> usize {
        2 * self.k as usize + 4
    }
}

/// `M_h` in the basis
/// `e(p1), Σ e(p_i), e0, Σ e(q_i), e(q1), Σ' e(q_i), e(a_{1,1}), Σ e(a_{i,1}), …, e(a_{1,k-1}), Σ e(a_{i,k-1})`.
pub fn quadratic_orbit_matrix(spec: QuadraticOrbitSpec) -> IntMatrix {
    let m = i64::from(spec.m);
    let size = spec.size();
    let mut h = IntMatrix::zeros(size, size);
    let head: [[i64; 4]; 4] = [
        [m - 1, m - 3, m, m + 1],
        [-1, 0, -1, -1],
        [-(m - 2), -(m - 3), -(m - 1), -(m + 1)],
        [-1, -1, -1, 0],
    ];
    for (i, row) in head.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            h[(2 + i, j)] = BigInt::from(v);
        }
    }
    for c in 4..size - 2 {
        h[(c + 2, c)] = BigInt::one();
    }
    h[(0, size - 2)] = BigInt::one();
    h[(1, size - 1)] = BigInt::one();
    h
}

/// Self-intersections of the basis of `W'`.
pub fn quadratic_form(spec: QuadraticOrbitSpec) -> Vec<i64> {
    let m = i64::from(spec.m);
    let mut j = vec![-1, -(m - 3), 1, -(m + 1), -1, -(m - 3)];
    for _ in 1..spec.k {
        j.push(-1);
        j.push(-(m - 3));
    }
    j
}

/// Values of the canonical form `-3e0 + Σ e(p)` on the basis of `W'`.
pub fn quadratic_canonical_functional(spec: QuadraticOrbitSpec) -> Vec<i64> {
    let m = i64::from(spec.m);
    let mut w = vec![-1, -(m - 3), -3, -(m + 1), -1, -(m - 3)];
    for _ in 1..spec.k {
        w.push(-1);
        w.push(-(m - 3));
    }
    w
}

/// `x^{2k+2}(x² − (m−1)x + 1) + x^{k+1}((m−1)x² − 4x + (m−1)) + (x² − (m−1)x + 1)`.
pub fn quadratic_closed_form(spec: QuadraticOrbitSpec) -> IntPolynomial {
    let m1 = BigInt::from(spec.m) - BigInt::one();
    let k = spec.k as usize;
    let mut c = vec![BigInt::zero(); 2 * k + 5];
    let quad = [BigInt::one(), -m1.clone(), BigInt::one()];
    let mid = [m1.clone(), BigInt::from(-4), m1.clone()];
    for i in 0..3 {
        c[2 * k + 2 + i] += &quad[i];
        c[k + 1 + i] += &mid[i];
        c[i] += &quad[i];
    }
    to_poly(c)
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticCharpoly {
    pub charpoly: IntPolynomial,
    pub closed_form: IntPolynomial,
    pub matches: bool,
}

pub fn quadratic_charpoly(spec: QuadraticOrbitSpec) -> QuadraticCharpoly {
    let charpoly = to_poly(quadratic_orbit_matrix(spec).charpoly());
    let closed_form = quadratic_closed_form(spec);
    QuadraticCharpoly {
        matches: charpoly == closed_form,
        charpoly,
        closed_form,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaEntry {
    pub k: u32,
    pub lambda: f64,
    pub class: NumberKind,
    pub reciprocal: bool,
    pub closed_form_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaSequence {
    pub m: u32,
    pub entries: Vec<LambdaEntry>,
    /// Largest root of `x² − (m+1)x + 1`.
    pub stated_limit: f64,
    /// Largest root of `x² − (m−1)x + 1`, the leading block of the closed form; 1 when it has none above 1.
    pub leading_block_root: f64,
    pub checks: Vec<Check>,
}

fn largest_quadratic_root(trace: f64) -> f64 {
    if trace <= 2.0 {
        1.0
    } else {
        (trace + (trace * trace - 4.0).sqrt()) / 2.0
    }
}

/// Horizon at which the limit is tested.
pub const DEFAULT_KMAX: u32 = 40;

/// Convergence threshold at the largest `k`.
pub const LIMIT_TOL: f64 = 1e-6;

/// `λ_{m,k}` for each `k`, with the limit, monotonicity and Salem-tail checks against `x² − (m+1)x + 1`.
pub fn lambda_sequence(m: u32, ks: &[u32], tol: f64) -> Result<LambdaSequence, OrbitsError> {
    let mut entries = Vec::new();
    for &k in ks {
        let spec = QuadraticOrbitSpec::new(m, k)?;
        let cp = quadratic_charpoly(spec);
        let cls = classify_number(&cp.charpoly, tol);
        entries.push(LambdaEntry {
            k,
            lambda: cls.dominant_root.max(1.0),
            class: cls.kind,
            reciprocal: cp.charpoly.is_reciprocal(),
            closed_form_matches: cp.matches,
        });
    }
    let stated_limit = largest_quadratic_root(f64::from(m) + 1.0);
    let leading_block_root = largest_quadratic_root(f64::from(m) - 1.0);
    let mut checks = Vec::new();
    if let Some(last) = entries.last() {
        let gap = (last.lambda - stated_limit).abs();
        checks.push(Check::new(
            "|lambda_{m,k} - lambda_{m,inf}| < 1e-6 at the largest k",
            gap < LIMIT_TOL,
            || format!("k = {}: lambda = {}, limit = {stated_limit}, gap = {gap:e}", last.k, last.lambda),
        ));
        let gaps: Vec<f64> = entries.iter().map(|e| (e.lambda - stated_limit).abs()).collect();
        let decreasing = gaps.windows(2).all(|w| w[1] < w[0]);
        checks.push(Check::new("gap to the limit strictly decreasing in k", decreasing, || {
            format!("gaps {gaps:?}")
        }));
        let tail = &entries[entries.len() / 2..];
        let salem = tail.iter().all(|e| e.class == NumberKind::Salem);
        checks.push(Check::new("lambda_{m,k} is Salem on the tail", salem, || {
            tail.iter()
                .filter(|e| e.class != NumberKind::Salem)
                .map(|e| format!("k = {}: {}", e.k, e.class.as_str()))
                .collect::<Vec<_>>()
                .join(", ")
        }));
    }
    let recip = entries.iter().all(|e| e.reciprocal);
    checks.push(Check::new("char(M_h) reciprocal", recip, || "non-palindromic charpoly".into()));
    let closed = entries.iter().all(|e| e.closed_form_matches);
    checks.push(Check::new("char(M_h) equals the closed form", closed, || "mismatch".into()));
    Ok(LambdaSequence {
        m,
        entries,
        stated_limit,
        leading_block_root,
        checks,
    })
}

/// `Fᵀ J F = J` for a diagonal form `J`.
pub fn preserves_diagonal_form(f: &IntMatrix, j: &[i64]) -> bool {
    let n = f.rows();
    if j.len() != n || !f.is_square() {
        return false;
    }
    for a in 0..n {
        for b in a..n {
            let s: BigInt = (0..n).map(|i| &f[(i, a)] * &f[(i, b)] * j[i]).sum();
            let want = if a == b { BigInt::from(j[a]) } else { BigInt::zero() };
            if s != want {
                return false;
            }
        }
    }
    true
}

/// `w F = w` for a row functional `w`.
pub fn preserves_functional(f: &IntMatrix, w: &[i64]) -> bool {
    let wb: Vec<BigInt> = w.iter().map(|&x| BigInt::from(x)).collect();
    f.vec_mul(&wb) == wb
}

/// Noether identities for the `e0` column of `F_k` on a model extracted from a Weyl element.
pub fn noether_on_e0(model: &OrbitModel, k: usize) -> bool {
    let f = model.build_fk(k);
    let col = f.column(model.n_inf());
    let d = &col[model.n_inf()];
    let rest: Vec<&BigInt> = col.iter().enumerate().filter(|(i, _)| *i != model.n_inf()).map(|x| x.1).collect();
    let sum: BigInt = rest.iter().map(|x| -(*x).clone()).sum();
    let sq: BigInt = rest.iter().map(|x| *x * *x).sum();
    sum == d * 3 - 3 && sq == d * d - 1 && rest.iter().all(|x| !x.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_small() {
        for m in 2..6 {
            for k in 2..6 {
                let s = QuadraticOrbitSpec::new(m, k).unwrap();
                assert!(quadratic_charpoly(s).matches, "m = {m}, k = {k}");
            }
        }
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let xs: Vec<BigRational> = (0..4).map(q).collect();
        let ys: Vec<BigRational> = xs.iter().map(|x| x * x * x - q(2) * x + q(5)).collect();
        assert_eq!(interpolate(&xs, &ys), vec![q(5), q(-2), q(0), q(1)]);
    }
}
