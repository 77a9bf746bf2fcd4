//! Whether given base points can carry a Jonquières map of degree `m`.
//!
//! Collinearity and proximity are decided from coordinates where available and otherwise from
//! declared facts; anything not declared is taken to be false.

use super::ReductionError;
use crate::lattice::{Annotation, BubbleSpace, PointId};
use crate::matrix::{rational_det, rational_rank};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::{BTreeMap, BTreeSet};

pub const DEFAULT_K_MAX: usize = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct PointConfiguration {
    /// Candidate order `p1, …, p_{2m-1}`.
    pub points: Vec<PointId>,
    pub annotations: BTreeMap<PointId, Annotation>,
    /// Declared collinear sets.
    pub lines: Vec<BTreeSet<PointId>>,
    /// Declared pairs `(q, p)`: `q` lies on the exceptional divisor of `p`.
    pub proximate: BTreeSet<(PointId, PointId)>,
    pub k_max: usize,
}

impl PointConfiguration {
    /// Copies the annotations of `points` from `space`.
    pub fn from_space(space: &BubbleSpace, points: Vec<PointId>) -> Self {
        let annotations = points
            .iter()
            .filter_map(|p| space.annotation(*p).map(|a| (*p, a.clone())))
            .collect();
        PointConfiguration {
            points,
            annotations,
            lines: Vec::new(),
            proximate: BTreeSet::new(),
            k_max: DEFAULT_K_MAX,
        }
    }

    pub fn declare_line(&mut self, pts: &[PointId]) {
        self.lines.push(pts.iter().copied().collect());
    }

    pub fn declare_proximate(&mut self, q: PointId, p: PointId) {
        self.proximate.insert((q, p));
    }

    fn coords(&self, p: PointId) -> Option<&[BigRational; 3]> {
        match self.annotations.get(&p) {
            Some(Annotation::Proper(c)) => Some(c),
            _ => None,
        }
    }

    fn parent(&self, p: PointId) -> Option<PointId> {
        match self.annotations.get(&p) {
            Some(Annotation::InfinitelyNear(q)) => Some(*q),
            _ => None,
        }
    }

    fn is_proximate(&self, q: PointId, p: PointId) -> bool {
        self.parent(q) == Some(p) || self.proximate.contains(&(q, p))
    }

    /// `Some(bool)` when decidable.
    fn collinear(&self, t: [PointId; 3]) -> Option<bool> {
        if self.lines.iter().any(|l| t.iter().all(|p| l.contains(p))) {
            return Some(true);
        }
        let cs: Option<Vec<&[BigRational; 3]>> = t.iter().map(|p| self.coords(*p)).collect();
        match cs {
            Some(cs) => Some(rational_det(cs.iter().map(|c| c.to_vec()).collect()).is_zero()),
            None if t.iter().all(|p| self.annotations.contains_key(p)) => Some(false),
            None => None,
        }
    }

    /// Declared lines must agree with coordinates.
    pub fn validate(&self) -> Result<(), ReductionError> {
        for l in &self.lines {
            let cs: Vec<Vec<BigRational>> = l.iter().filter_map(|p| self.coords(*p)).map(|c| c.to_vec()).collect();
            if cs.len() >= 3 && rational_rank(cs) > 2 {
                return Err(ReductionError::InconsistentFacts("declared line through non-collinear points".into()));
            }
        }
        Ok(())
    }

    /// JSON form:
    /// `{"points":[{"name":"p1","coords":[1,0,0]},{"name":"p2","parent":"p1"}],
    ///   "lines":[["p1","p2","p3"]], "proximate":[["p3","p1"]], "k_max":6}`.
    /// Coordinates are integers or rational strings such as `"1/2"`.
    pub fn from_json(text: &str, space: &mut BubbleSpace) -> Result<Self, ReductionError> {
        let raw: RawConfig = serde_json::from_str(text).map_err(|e| ReductionError::BadConfig(e.to_string()))?;
        let mut points = Vec::new();
        for rp in &raw.points {
            points.push(space.point(&rp.name));
        }
        for (rp, &id) in raw.points.iter().zip(&points) {
            match (&rp.coords, &rp.parent) {
                (Some(c), None) => {
                    if c.len() != 3 {
                        return Err(ReductionError::BadConfig(format!("{}: expected 3 coordinates", rp.name)));
                    }
                    let q: Result<Vec<BigRational>, _> = c.iter().map(parse_coord).collect();
                    let q = q.map_err(ReductionError::BadConfig)?;
                    space
                        .annotate_proper(id, [q[0].clone(), q[1].clone(), q[2].clone()])
                        .map_err(|e| ReductionError::BadConfig(e.to_string()))?;
                }
                (None, Some(parent)) => {
                    let pid = space.point(parent);
                    space
                        .annotate_infinitely_near(id, pid)
                        .map_err(|e| ReductionError::BadConfig(e.to_string()))?;
                }
                (None, None) => {}
                (Some(_), Some(_)) => {
                    return Err(ReductionError::BadConfig(format!("{}: both coords and parent", rp.name)));
                }
            }
        }
        let mut cfg = PointConfiguration::from_space(space, points);
        for l in &raw.lines {
            let ids: Vec<PointId> = l.iter().map(|n| space.point(n)).collect();
            cfg.declare_line(&ids);
        }
        for pr in &raw.proximate {
            cfg.declare_proximate(space.point(&pr[0]), space.point(&pr[1]));
        }
        if let Some(k) = raw.k_max {
            cfg.k_max = k;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Deserialize)]
struct RawPoint {
    name: String,
    #[serde(default)]
    coords: Option<Vec<Value>>,
    #[serde(default)]
    parent: Option<String>,
}

#[derive(Deserialize)]
struct RawConfig {
    points: Vec<RawPoint>,
    #[serde(default)]
    lines: Vec<Vec<String>>,
    #[serde(default)]
    proximate: Vec<[String; 2]>,
    #[serde(default)]
    k_max: Option<usize>,
}

fn parse_coord(v: &Value) -> Result<BigRational, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(BigInt::from(i)))
            .ok_or_else(|| format!("coordinate {n} is not an integer")),
        Value::String(s) => {
            let (num, den) = match s.split_once('/') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (s.trim(), "1"),
            };
            let n: BigInt = num.parse().map_err(|_| format!("bad coordinate '{s}'"))?;
            let d: BigInt = den.parse().map_err(|_| format!("bad coordinate '{s}'"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in '{s}'"));
            }
            Ok(BigRational::new(n, d))
        }
        other => Err(format!("bad coordinate {other}")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum RealizabilityVerdict {
    Pass,
    Fail { condition: u8, witness: String },
    Undecidable { condition: u8, missing: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealizabilityReport {
    #[serde(flatten)]
    pub verdict: RealizabilityVerdict,
    /// The point used as `p1` (the one of multiplicity `m - 1`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p1: Option<String>,
    pub k_max: usize,
}

impl RealizabilityReport {
    pub fn passed(&self) -> bool {
        self.verdict == RealizabilityVerdict::Pass
    }
}

/// Conditions (1)–(6) for `2m − 1` base points, with (6) checked for `k ≤ k_max`.
///
/// Each proper point is tried as `p1` in the given order; the remaining points are ordered
/// parents first. The report of the first candidate is returned when none passes.
pub fn realizable_jonquieres(
    cfg: &PointConfiguration,
    m: usize,
    space: &BubbleSpace,
) -> Result<RealizabilityReport, ReductionError> {
    if m < 1 || cfg.points.len() != 2 * m - 1 {
        return Err(ReductionError::BadConfig(format!(
            "expected {} points for m = {m}, got {}",
            2 * m.max(1) - 1,
            cfg.points.len()
        )));
    }
    let set: BTreeSet<PointId> = cfg.points.iter().copied().collect();
    if set.len() != cfg.points.len() {
        return Err(ReductionError::BadConfig("repeated point".into()));
    }
    let mut first: Option<RealizabilityReport> = None;
    for &p1 in &cfg.points {
        let verdict = check_with_root(cfg, m, p1, space);
        let report = RealizabilityReport {
            verdict,
            p1: Some(space.label(p1)),
            k_max: cfg.k_max,
        };
        if report.passed() {
            return Ok(report);
        }
        if first.is_none() {
            first = Some(report);
        }
    }
    Ok(first.expect("at least one point"))
}

fn check_with_root(cfg: &PointConfiguration, m: usize, p1: PointId, space: &BubbleSpace) -> RealizabilityVerdict {
    let name = |p: PointId| space.label(p);
    // (1)
    match cfg.annotations.get(&p1) {
        None => {
            return RealizabilityVerdict::Undecidable {
                condition: 1,
                missing: format!("annotation of {}", name(p1)),
            }
        }
        Some(Annotation::InfinitelyNear(_)) => {
            return RealizabilityVerdict::Fail {
                condition: 1,
                witness: format!("{} is infinitely near", name(p1)),
            }
        }
        Some(Annotation::Proper(_)) => {}
    }
    let rest: Vec<PointId> = cfg.points.iter().copied().filter(|&p| p != p1).collect();
    // (2): every infinitely near point has its parent among the base points
    for &p in &rest {
        match cfg.annotations.get(&p) {
            None => {
                return RealizabilityVerdict::Undecidable {
                    condition: 2,
                    missing: format!("annotation of {}", name(p)),
                }
            }
            Some(Annotation::InfinitelyNear(q)) if !cfg.points.contains(q) => {
                return RealizabilityVerdict::Fail {
                    condition: 2,
                    witness: format!("{} is infinitely near {}, which is not a base point", name(p), name(*q)),
                }
            }
            _ => {}
        }
    }
    // (3)
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            match cfg.collinear([p1, rest[i], rest[j]]) {
                Some(true) => {
                    return RealizabilityVerdict::Fail {
                        condition: 3,
                        witness: format!("{}, {}, {} are collinear", name(p1), name(rest[i]), name(rest[j])),
                    }
                }
                Some(false) => {}
                None => {
                    return RealizabilityVerdict::Undecidable {
                        condition: 3,
                        missing: format!("collinearity of {}, {}, {}", name(p1), name(rest[i]), name(rest[j])),
                    }
                }
            }
        }
    }
    // (4)
    for &pi in &rest {
        let prox: Vec<PointId> = rest.iter().copied().filter(|&q| q != pi && cfg.is_proximate(q, pi)).collect();
        if prox.len() >= 2 {
            return RealizabilityVerdict::Fail {
                condition: 4,
                witness: format!("{} and {} are both proximate to {}", name(prox[0]), name(prox[1]), name(pi)),
            };
        }
    }
    // (5)
    let prox1: Vec<String> = rest.iter().copied().filter(|&q| cfg.is_proximate(q, p1)).map(name).collect();
    if prox1.len() > m - 1 {
        return RealizabilityVerdict::Fail {
            condition: 5,
            witness: format!("{} points proximate to {}: {}", prox1.len(), name(p1), prox1.join(", ")),
        };
    }
    // (6): only k ≤ m - 2 can be violated, since a subset of k + m points is needed
    let k_top = cfg.k_max.min(m.saturating_sub(2));
    if k_top >= 1 {
        let mut coords = Vec::new();
        for &p in &rest {
            match cfg.coords(p) {
                Some(c) => coords.push(c.clone()),
                None => {
                    return RealizabilityVerdict::Undecidable {
                        condition: 6,
                        missing: format!("coordinates of {}", name(p)),
                    }
                }
            }
        }
        let c1 = cfg.coords(p1).expect("p1 is proper").clone();
        for k in 1..=k_top {
            if let Some(sel) = curve_through_too_many(&c1, &coords, k, m) {
                let names: Vec<String> = sel.iter().map(|&i| name(rest[i])).collect();
                return RealizabilityVerdict::Fail {
                    condition: 6,
                    witness: format!(
                        "a curve of degree {k} with multiplicity {} at {} passes through {}",
                        k - 1,
                        name(p1),
                        names.join(", ")
                    ),
                };
            }
        }
    }
    RealizabilityVerdict::Pass
}

/// Change of coordinates sending `p` to `[1:0:0]`; returns the matrix to apply to points.
fn to_origin(p: &[BigRational; 3]) -> Vec<Vec<BigRational>> {
    // columns of B: p and two standard vectors completing a basis; the inverse sends p to e1
    let piv = (0..3).find(|&i| !p[i].is_zero()).expect("nonzero point");
    let others: Vec<usize> = (0..3).filter(|&i| i != piv).collect();
    let mut b = vec![vec![BigRational::zero(); 3]; 3];
    for r in 0..3 {
        b[r][0] = p[r].clone();
    }
    b[others[0]][1] = BigRational::one();
    b[others[1]][2] = BigRational::one();
    invert3(&b)
}

fn invert3(b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let det = rational_det(b.to_vec());
    let minor = |r: usize, c: usize| {
        let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        &b[rows[0]][cols[0]] * &b[rows[1]][cols[1]] - &b[rows[0]][cols[1]] * &b[rows[1]][cols[0]]
    };
    let mut inv = vec![vec![BigRational::zero(); 3]; 3];
    for r in 0..3 {
        for c in 0..3 {
            let cof = minor(c, r);
            inv[r][c] = if (r + c) % 2 == 0 { cof } else { -cof } / &det;
        }
    }
    inv
}

/// Some `(k + m)`-subset of `pts` lying on a degree-`k` curve with multiplicity `≥ k − 1` at `p1`.
fn curve_through_too_many(
    p1: &[BigRational; 3],
    pts: &[[BigRational; 3]],
    k: usize,
    m: usize,
) -> Option<Vec<usize>> {
    let a = to_origin(p1);
    let moved: Vec<Vec<BigRational>> = pts
        .iter()
        .map(|q| (0..3).map(|r| (0..3).map(|c| &a[r][c] * &q[c]).sum()).collect())
        .collect();
    // forms x^e y^i z^j with e ≤ 1 and e + i + j = k
    let mut monos = Vec::new();
    for e in 0..=1usize.min(k) {
        for i in 0..=k - e {
            monos.push((e, i, k - e - i));
        }
    }
    let pw = |x: &BigRational, n: usize| (0..n).fold(BigRational::one(), |acc, _| acc * x);
    let rows: Vec<Vec<BigRational>> = moved
        .iter()
        .map(|q| monos.iter().map(|&(e, i, j)| pw(&q[0], e) * pw(&q[1], i) * pw(&q[2], j)).collect())
        .collect();
    let size = k + m;
    if size > rows.len() {
        return None;
    }
    let mut found = None;
    let mut cur = Vec::new();
    subsets(rows.len(), size, 0, &mut cur, &mut |sel| {
        if found.is_some() {
            return;
        }
        let sub: Vec<Vec<BigRational>> = sel.iter().map(|&i| rows[i].clone()).collect();
        if rational_rank(sub) < monos.len() {
            found = Some(sel.to_vec());
        }
    });
    found
}

fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in start..n {
        if n - i < k - cur.len() {
            break;
        }
        cur.push(i);
        subsets(n, k, i + 1, cur, f);
        cur.pop();
    }
}
