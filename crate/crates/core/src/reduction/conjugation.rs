use super::bounds::{decrease_quantum, degree_threshold};
use super::ReductionError;
use crate::lattice::{BubbleSpace, ClassVector, PointId};
use crate::spectral::{axis_data, classify, IsometryKind, LoxodromicData};
use crate::weyl::{multiplicity_profile, random_word, sigma_omega_word, WeylElement, WeylGenerator, WeylWord};
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Which test selected the triple of a step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepCriterion {
    /// `c1 + c2 + c3 ≥ d + (5/2)√(d/λ)` on the three largest averaged multiplicities.
    CSum,
    /// `(e(p1)+e(p2)+e(p3)−e0)·E > δ` on the three points of largest weight on `E`.
    AxisWeight,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Step {
    /// Base point of the conjugator.
    pub root: PointId,
    /// The two other base points.
    pub omega: Vec<PointId>,
    pub criterion: StepCriterion,
    /// Whether the `c`-sum hypothesis held on the top three `c` points.
    pub hypothesis: bool,
    pub conjugator: WeylWord,
    pub element: WeylElement,
    pub degree_before: num_bigint::BigInt,
    pub degree_after: num_bigint::BigInt,
    pub cosh_before: f64,
    pub cosh_after: f64,
    /// Lower bound `(Σ e(p)·E) − e0·E` for the decrease.
    pub predicted: f64,
    pub achieved: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Terminal {
    ReachedDegreeThreshold,
    NoDecreasingTriple,
    StepBudgetExhausted,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionTrace {
    pub lambda: f64,
    pub delta: f64,
    pub threshold: f64,
    pub initial_degree: num_bigint::BigInt,
    pub initial_cosh: f64,
    /// `cosh dist(e0, Ax(h)) / δ`
    pub step_bound: f64,
    pub steps: Vec<Step>,
    pub terminal: Terminal,
    /// `final = conjugator · h · conjugator⁻¹`
    pub conjugator: WeylWord,
    pub final_element: WeylElement,
    pub warnings: Vec<String>,
}

/// `e(p)·E` is minus the coefficient of `e(p)` in `E`.
fn weights(data: &LoxodromicData, points: &[PointId]) -> Vec<(f64, PointId)> {
    points.iter().map(|&p| (-data.e.coeff(p), p)).collect()
}

fn top_three(mut v: Vec<(f64, PointId)>) -> Vec<(f64, PointId)> {
    v.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    v.truncate(3);
    v
}

/// One conjugation by a quadratic involution that lowers `cosh dist(e0, Ax(h))`, if one is found.
///
/// `space` supplies padding points when fewer than three base points exist.
pub fn decreasing_step(h: &WeylElement, space: &mut BubbleSpace) -> Result<Option<Step>, ReductionError> {
    let data = axis_data(h, crate::DEFAULT_TOL)?;
    decreasing_step_with(h, &data, space)
}

fn decreasing_step_with(
    h: &WeylElement,
    data: &LoxodromicData,
    space: &mut BubbleSpace,
) -> Result<Option<Step>, ReductionError> {
    let lambda = data.lambda;
    let delta = decrease_quantum(lambda)?;
    let prof = multiplicity_profile(h);
    let d = prof.degree.to_f64().unwrap_or(f64::INFINITY);
    let alpha0 = data.e.e0;
    let mut pts = prof.points.clone();
    while pts.len() < 3 {
        pts.push(space.fresh());
    }
    let weight = |p: PointId| -data.e.coeff(p);
    // c-sum hypothesis on the top three c
    let order = prof.by_decreasing_c();
    let mut by_c: Vec<PointId> = order.iter().take(3).map(|&i| prof.points[i]).collect();
    by_c.extend(pts.iter().filter(|p| !prof.points.contains(p)).take(3 - by_c.len().min(3)));
    let c_sum: f64 = by_c.iter().map(|p| prof.c_of(*p).to_f64().unwrap_or(0.0)).sum();
    let hypothesis = c_sum >= d + 2.5 * (d / lambda).sqrt();
    let by_w: Vec<PointId> = top_three(weights(data, &pts)).into_iter().map(|x| x.1).collect();
    let mut candidates = Vec::new();
    if hypothesis {
        candidates.push((by_c.clone(), StepCriterion::CSum));
    }
    candidates.push((by_w, StepCriterion::AxisWeight));
    for (tri, criterion) in candidates {
        let predicted = tri.iter().map(|&p| weight(p)).sum::<f64>() - alpha0;
        if criterion == StepCriterion::AxisWeight && predicted <= delta {
            continue;
        }
        // root at the point of largest weight on E, ties by id
        let root = *tri
            .iter()
            .max_by(|&&a, &&b| weight(a).total_cmp(&weight(b)).then(b.cmp(&a)))
            .expect("three points");
        let mut omega: Vec<PointId> = tri.iter().copied().filter(|&p| p != root).collect();
        omega.sort();
        let word = sigma_omega_word(root, &omega)?;
        let g = WeylElement::realize(&word);
        let h2 = g.compose(h).compose(&g);
        let after = axis_data(&h2, crate::DEFAULT_TOL)?;
        let achieved = data.cosh_axis_distance - after.cosh_axis_distance;
        if achieved <= 0.0 {
            continue;
        }
        return Ok(Some(Step {
            root,
            omega,
            criterion,
            hypothesis,
            conjugator: word,
            degree_before: h.degree(),
            degree_after: h2.degree(),
            element: h2,
            cosh_before: data.cosh_axis_distance,
            cosh_after: after.cosh_axis_distance,
            predicted,
            achieved,
        }));
    }
    Ok(None)
}

/// Conjugate repeatedly until `deg ≤ 24λ³`, no step is found, or `budget` steps were taken.
pub fn reduce(h: &WeylElement, budget: usize, space: &mut BubbleSpace) -> Result<ReductionTrace, ReductionError> {
    let c = classify(h);
    if c.kind != IsometryKind::Loxodromic {
        return Err(ReductionError::NotLoxodromic(c.kind));
    }
    let mut data = axis_data(h, crate::DEFAULT_TOL)?;
    let lambda = data.lambda;
    let delta = decrease_quantum(lambda)?;
    let threshold = degree_threshold(lambda)?;
    let mut trace = ReductionTrace {
        lambda,
        delta,
        threshold,
        initial_degree: h.degree(),
        initial_cosh: data.cosh_axis_distance,
        step_bound: data.cosh_axis_distance / delta,
        steps: Vec::new(),
        terminal: Terminal::StepBudgetExhausted,
        conjugator: WeylWord::identity(),
        final_element: h.clone(),
        warnings: Vec::new(),
    };
    let mut cur = h.clone();
    let mut letters: Vec<WeylGenerator> = Vec::new();
    loop {
        if cur.degree().to_f64().unwrap_or(f64::INFINITY) <= threshold {
            trace.terminal = Terminal::ReachedDegreeThreshold;
            break;
        }
        if trace.steps.len() >= budget {
            trace.terminal = Terminal::StepBudgetExhausted;
            break;
        }
        let Some(step) = decreasing_step_with(&cur, &data, space)? else {
            if lambda > 1e6 {
                trace.warnings.push(format!(
                    "no step found although d = {} > 24 lambda^3 and lambda > 1e6",
                    cur.degree()
                ));
            }
            trace.terminal = Terminal::NoDecreasingTriple;
            break;
        };
        if step.hypothesis && step.achieved < delta {
            trace.warnings.push(format!(
                "step {} decreased cosh by {} < delta = {delta}",
                trace.steps.len() + 1,
                step.achieved
            ));
        }
        let mut new_letters = step.conjugator.letters.clone();
        new_letters.extend(letters);
        letters = new_letters;
        cur = step.element.clone();
        data = axis_data(&cur, crate::DEFAULT_TOL)?;
        trace.steps.push(step);
    }
    if !letters.is_empty() {
        trace.conjugator = WeylWord::new(letters);
    }
    trace.final_element = cur;
    Ok(trace)
}

/// A loxodromic element conjugated by a long Jonquières word, for exercising [`reduce`].
#[derive(Clone, Debug)]
pub struct InflatedInstance {
    pub core_word: WeylWord,
    pub core: WeylElement,
    pub conjugator: WeylWord,
    pub element: WeylElement,
    pub lambda: f64,
}

/// Core on eleven points `p1..p11` with `λ ∈ (1.5, 4)`, conjugated by `Π σ0(p1, a_i, b_i)`
/// over fresh pairs: at least `pairs` of them, and more until the degree exceeds `24λ³`.
pub fn inflated_instance(seed: u64, pairs: usize, space: &mut BubbleSpace) -> InflatedInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = space.points("p", 11);
    let (core_word, core, lambda) = loop {
        let len = 6 + (rand::Rng::gen_range(&mut rng, 0..7));
        let w = random_word(&mut rng, &pts, len);
        let h = WeylElement::realize(&w);
        let c = classify(&h);
        if c.kind != IsometryKind::Loxodromic {
            continue;
        }
        let l = crate::numbers::largest_real_root(&c.remainder).unwrap_or(0.0);
        if l > 1.5 && l < 4.0 {
            break (w, h, l);
        }
    };
    let threshold = 24.0 * lambda.powi(3);
    let mut letters = Vec::new();
    let mut g = WeylElement::identity();
    let mut element = core.clone();
    while letters.len() < pairs || element.degree().to_f64().unwrap_or(f64::INFINITY) <= threshold {
        let a = space.fresh();
        let b = space.fresh();
        let letter = WeylGenerator::Sigma0([pts[0], a, b]);
        g = g.compose(&WeylElement::from_generator(&letter));
        letters.push(letter);
        element = g.compose(&core).compose(&g.inverse());
    }
    let conjugator = WeylWord::new(letters);
    InflatedInstance {
        core_word,
        core,
        conjugator,
        element,
        lambda,
    }
}

/// `u·E` for `u` in `{e0, e(p), e0 − e(p), 3e0 − Σ e(p_i)}`.
pub fn axis_positivity(data: &LoxodromicData, classes: &[ClassVector]) -> Vec<f64> {
    classes.iter().map(|u| data.e.intersect_exact(u)).collect()
}
