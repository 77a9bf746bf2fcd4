//! Exhaustive search for Salem numbers of bounded degree below a given bound.
//!
//! A Salem polynomial of degree `2n` is `x^n Q(x + 1/x)` where the trace polynomial `Q`
//! is monic of degree `n`, has one root in `(2, a + 1/a]` and `n - 1` roots in `(-2, 2)`.
//! Writing `Q = y^n + q_1 y^{n-1} + … + q_n`, the elementary-symmetric estimate over roots
//! bounded by 2 (and one root bounded by `A = a + 1/a`) gives
//!
//! `|q_j| ≤ C(n-1, j) 2^j + C(n-1, j-1) 2^{j-1} A`.
//!
//! Coefficients are fixed from the top; once `q_0..q_j` are fixed the `(n-j)`-th derivative
//! of `Q` is known and, by Rolle, must have `j` distinct real roots in `[-2, A]`. That test is
//! exact (Sturm), so pruning never discards a genuine solution.

use super::classify::{from_trace_polynomial, is_salem_squarefree};
use super::cyclotomic::strip_cyclotomic;
use super::poly::{eval_rational, IntPolynomial};
use super::qpoly::Sturm;
use super::roots::largest_real_root;
use super::NumbersError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct SalemEntry {
    pub poly: IntPolynomial,
    pub root: f64,
    pub degree: usize,
}

/// Default cap on search nodes.
pub const DEFAULT_NODE_LIMIT: u64 = 200_000_000;

fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Search-space size before pruning (product of coefficient ranges), for the resource guard.
pub fn raw_search_size(degree_bound: usize, a: f64) -> f64 {
    let big_a = a + 1.0 / a;
    (2..=degree_bound / 2)
        .map(|n| {
            (1..=n)
                .map(|j| 2.0 * coefficient_bound(n, j, big_a) as f64 + 1.0)
                .product::<f64>()
        })
        .sum()
}

fn coefficient_bound(n: usize, j: usize, big_a: f64) -> i64 {
    let v = binom(n - 1, j) * 2f64.powi(j as i32) + binom(n - 1, j - 1) * 2f64.powi(j as i32 - 1) * big_a;
    (v + 1e-9).floor() as i64
}

struct Search<'a> {
    n: usize,
    lo: &'a BigRational,
    hi: &'a BigRational,
    a_trace: &'a BigRational,
    bounds: Vec<i64>,
    fact: Vec<BigInt>,
    nodes: u64,
    node_limit: u64,
    out: Vec<Vec<BigInt>>,
}

impl Search<'_> {
    /// `(n-j)`-th derivative of Q from the fixed top coefficients `q[0..=j]` (low-to-high output).
    fn derivative_poly(&self, q: &[i64], j: usize) -> Vec<BigInt> {
        let n = self.n;
        let mut c = vec![BigInt::zero(); j + 1];
        for (i, &qi) in q.iter().enumerate().take(j + 1) {
            // term q_i y^{n-i}, derivative order n-j: factor (n-i)!/(j-i)!
            let f = &self.fact[n - i] / &self.fact[j - i];
            c[j - i] = f * BigInt::from(qi);
        }
        c
    }

    fn real_rooted_in_window(&self, p: &[BigInt], j: usize) -> bool {
        let s = Sturm::new(p);
        // distinct roots in [lo, hi]
        let at_lo = eval_rational(p, self.lo).is_zero() as usize;
        s.count_in(self.lo, self.hi) + at_lo == j
    }

    fn run(&mut self, q: &mut Vec<i64>, j: usize) -> Result<(), NumbersError> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(NumbersError::SearchTooLarge(self.node_limit));
        }
        if j == self.n {
            self.leaf(q);
            return Ok(());
        }
        let j1 = j + 1;
        let b = self.bounds[j1];
        for v in -b..=b {
            q.push(v);
            let d = self.derivative_poly(q, j1);
            if self.real_rooted_in_window(&d, j1) {
                self.run(q, j1)?;
            }
            q.pop();
        }
        Ok(())
    }

    fn leaf(&mut self, q: &[i64]) {
        // low-to-high coefficients of Q
        let qc: Vec<BigInt> = q.iter().rev().map(|&v| BigInt::from(v)).collect();
        let two = BigRational::from_integer(BigInt::from(2));
        let s = Sturm::new(&qc);
        if s.count_in(&two, self.a_trace) != 1 {
            return;
        }
        let r = from_trace_polynomial(&qc);
        if !is_salem_squarefree(&r) {
            return;
        }
        if strip_cyclotomic(&r) != r {
            return;
        }
        self.out.push(qc);
    }
}

/// All Salem numbers of degree ≤ `degree_bound` in `(1, a]`, with minimal polynomials, sorted by root.
pub fn enumerate_salem(degree_bound: usize, a: f64) -> Result<Vec<SalemEntry>, NumbersError> {
    enumerate_salem_with_limit(degree_bound, a, DEFAULT_NODE_LIMIT)
}

pub fn enumerate_salem_with_limit(
    degree_bound: usize,
    a: f64,
    node_limit: u64,
) -> Result<Vec<SalemEntry>, NumbersError> {
    if degree_bound < 4 || degree_bound % 2 == 1 {
        return Err(NumbersError::InvalidArgument(format!(
            "degree bound must be even and at least 4, got {degree_bound}"
        )));
    }
    if !(a > 1.0) || !a.is_finite() {
        return Err(NumbersError::InvalidArgument(format!("upper bound must exceed 1, got {a}")));
    }
    let ar = BigRational::from_f64(a).expect("finite");
    let a_trace = &ar + ar.recip();
    let lo = BigRational::from_integer(BigInt::from(-2));
    let big_a = a_trace.to_f64().unwrap_or(f64::INFINITY);
    let mut found = Vec::new();
    for n in 2..=degree_bound / 2 {
        let mut fact = vec![BigInt::from(1)];
        for i in 1..=n {
            let next = &fact[i - 1] * BigInt::from(i);
            fact.push(next);
        }
        let bounds: Vec<i64> = (0..=n)
            .map(|j| if j == 0 { 1 } else { coefficient_bound(n, j, big_a) })
            .collect();
        let mut search = Search {
            n,
            lo: &lo,
            hi: &a_trace,
            a_trace: &a_trace,
            bounds,
            fact,
            nodes: 0,
            node_limit,
            out: Vec::new(),
        };
        let mut q = vec![1i64];
        search.run(&mut q, 0)?;
        for qc in search.out {
            let poly = from_trace_polynomial(&qc);
            let root = largest_real_root(&poly).unwrap_or(f64::NAN);
            found.push(SalemEntry {
                degree: poly.degree(),
                poly,
                root,
            });
        }
    }
    found.sort_by(|x, y| x.root.partial_cmp(&y.root).unwrap_or(std::cmp::Ordering::Equal));
    Ok(found)
}
