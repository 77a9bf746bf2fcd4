use super::generator::{WeylGenerator, WeylWord};
use super::WeylError;
use crate::lattice::{BubbleSpace, ClassVector, PointId};
use crate::matrix::IntMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// Finite-support isometry of the lattice, stored as an integer matrix on `(e0, e(p1), …, e(pn))`.
///
/// Column `j` is the image of the `j`-th basis vector. The support is sorted by id and kept
/// minimal, so two equal elements have identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    support: Vec<PointId>,
    matrix: IntMatrix,
}

/// Apply one generator in place to a column vector indexed by `(e0, support…)`.
fn act(g: &WeylGenerator, idx: &dyn Fn(PointId) -> usize, x: &mut [BigInt]) {
    match g {
        WeylGenerator::Sigma0(t) => {
            let [a, b, c] = [idx(t[0]), idx(t[1]), idx(t[2])];
            // reflection in e0 - e(a) - e(b) - e(c)
            let s = &x[0] + &x[a] + &x[b] + &x[c];
            if s.is_zero() {
                return;
            }
            x[0] += &s;
            x[a] -= &s;
            x[b] -= &s;
            x[c] -= &s;
        }
        WeylGenerator::Tau(p, q) => x.swap(idx(*p), idx(*q)),
        WeylGenerator::Permutation(cycles) => {
            for cyc in cycles {
                // e(c0) -> e(c1) -> ... : the coefficient at c1 becomes the old one at c0
                let ids: Vec<usize> = cyc.iter().map(|p| idx(*p)).collect();
                let last = x[ids[ids.len() - 1]].clone();
                for k in (1..ids.len()).rev() {
                    x[ids[k]] = x[ids[k - 1]].clone();
                }
                x[ids[0]] = last;
            }
        }
    }
}

impl WeylElement {
    pub fn identity() -> Self {
        WeylElement {
            support: Vec::new(),
            matrix: IntMatrix::identity(1),
        }
    }

    /// Build from an explicit matrix on `(e0, support…)`; checks the invariants and prunes the support.
    pub fn from_matrix(support: Vec<PointId>, matrix: IntMatrix) -> Result<Self, WeylError> {
        let n = support.len() + 1;
        if matrix.rows() != n || matrix.cols() != n {
            return Err(WeylError::DimensionMismatch {
                expected: n,
                found: matrix.rows(),
            });
        }
        let set: BTreeSet<PointId> = support.iter().copied().collect();
        if set.len() != support.len() {
            return Err(WeylError::RepeatedPoint);
        }
        let mut order: Vec<usize> = (0..support.len()).collect();
        order.sort_by_key(|&i| support[i]);
        let mut map = vec![0usize];
        map.extend(order.iter().map(|&i| i + 1));
        let mut sorted = IntMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                sorted[(r, c)] = matrix[(map[r], map[c])].clone();
            }
        }
        let support: Vec<PointId> = order.iter().map(|&i| support[i]).collect();
        let h = WeylElement {
            support,
            matrix: sorted,
        };
        h.check()?;
        Ok(h.pruned())
    }

    /// Verify `MᵀJM = J`, preservation of the canonical form and positive degree.
    pub fn check(&self) -> Result<(), WeylError> {
        let m = &self.matrix;
        let n = m.rows();
        let sign = |r: usize| if r == 0 { 1 } else { -1 };
        for a in 0..n {
            for b in a..n {
                let mut s = BigInt::zero();
                for r in 0..n {
                    let t = &m[(r, a)] * &m[(r, b)];
                    if sign(r) > 0 {
                        s += t;
                    } else {
                        s -= t;
                    }
                }
                let want = if a == b { BigInt::from(sign(a)) } else { BigInt::zero() };
                if s != want {
                    return Err(WeylError::NotAnIsometry);
                }
            }
        }
        let omega: Vec<BigInt> = (0..n).map(|r| BigInt::from(if r == 0 { 3 } else { 1 })).collect();
        if m.vec_mul(&omega) != omega {
            return Err(WeylError::CanonicalFormNotPreserved);
        }
        if !m[(0, 0)].is_positive() {
            return Err(WeylError::NonPositiveDegree);
        }
        Ok(())
    }

    fn pruned(self) -> Self {
        let n = self.matrix.rows();
        let keep: Vec<usize> = (1..n)
            .filter(|&i| {
                (0..n).any(|j| {
                    let want = if i == j { BigInt::one() } else { BigInt::zero() };
                    self.matrix[(i, j)] != want || self.matrix[(j, i)] != want
                })
            })
            .collect();
        if keep.len() + 1 == n {
            return self;
        }
        let mut idx = vec![0usize];
        idx.extend(keep.iter().copied());
        let k = idx.len();
        let mut m = IntMatrix::zeros(k, k);
        for (r, &ir) in idx.iter().enumerate() {
            for (c, &ic) in idx.iter().enumerate() {
                m[(r, c)] = self.matrix[(ir, ic)].clone();
            }
        }
        WeylElement {
            support: keep.iter().map(|&i| self.support[i - 1]).collect(),
            matrix: m,
        }
    }

    pub fn from_generator(g: &WeylGenerator) -> Self {
        Self::realize(&WeylWord::new(vec![g.clone()]))
    }

    /// Matrix of the composed word; letters act right-to-left.
    pub fn realize(word: &WeylWord) -> Self {
        let support: Vec<PointId> = word.points().into_iter().collect();
        let n = support.len() + 1;
        let idx = |p: PointId| support.binary_search(&p).expect("point in support") + 1;
        let mut cols: Vec<Vec<BigInt>> = (0..n)
            .map(|j| (0..n).map(|i| BigInt::from((i == j) as i32)).collect())
            .collect();
        for g in word.letters.iter().rev() {
            for col in cols.iter_mut() {
                act(g, &idx, col);
            }
        }
        let mut m = IntMatrix::zeros(n, n);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        WeylElement { support, matrix: m }.pruned()
    }

    pub fn parse(text: &str, space: &mut BubbleSpace) -> Result<Self, crate::ParseError> {
        Ok(Self::realize(&WeylWord::parse(text, space)?))
    }

    pub fn support(&self) -> &[PointId] {
        &self.support
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_identity(&self) -> bool {
        self.support.is_empty()
    }

    /// `deg(h) = e0 · h(e0)`.
    pub fn degree(&self) -> BigInt {
        self.matrix[(0, 0)].clone()
    }

    /// Matrix on a superset of the support, in the order of `points`.
    pub fn matrix_on(&self, points: &[PointId]) -> Result<IntMatrix, WeylError> {
        let mut map = vec![0usize];
        for p in &self.support {
            let i = points.iter().position(|q| q == p).ok_or(WeylError::PointOutsideBasis(*p))?;
            map.push(i + 1);
        }
        Ok(self.matrix.embed(points.len() + 1, &map))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let union: Vec<PointId> = self
            .support
            .iter()
            .chain(other.support.iter())
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let a = self.matrix_on(&union).expect("union contains support");
        let b = other.matrix_on(&union).expect("union contains support");
        WeylElement {
            support: union,
            matrix: &a * &b,
        }
        .pruned()
    }

    /// `J Mᵀ J`.
    pub fn inverse(&self) -> WeylElement {
        let mut m = self.matrix.transpose();
        let n = m.rows();
        for i in 1..n {
            m[(0, i)] = -m[(0, i)].clone();
            m[(i, 0)] = -m[(i, 0)].clone();
        }
        WeylElement {
            support: self.support.clone(),
            matrix: m,
        }
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &WeylElement) -> WeylElement {
        g.compose(self).compose(&g.inverse())
    }

    pub fn pow(&self, e: u64) -> WeylElement {
        WeylElement {
            support: self.support.clone(),
            matrix: self.matrix.pow(e),
        }
        .pruned()
    }

    /// Coordinates of `v` on `(e0, support…)`.
    pub fn coordinates(&self, v: &ClassVector) -> Vec<BigRational> {
        let mut x = vec![v.e0_coeff().clone()];
        x.extend(self.support.iter().map(|p| v.coeff(*p)));
        x
    }

    pub fn apply(&self, v: &ClassVector) -> ClassVector {
        let x = self.coordinates(v);
        let n = x.len();
        let mut y = vec![BigRational::zero(); n];
        for (r, yr) in y.iter_mut().enumerate() {
            for (c, xc) in x.iter().enumerate() {
                let m = &self.matrix[(r, c)];
                if !m.is_zero() && !xc.is_zero() {
                    *yr += xc * BigRational::from_integer(m.clone());
                }
            }
        }
        let e0 = y[0].clone();
        let mut coeffs: Vec<(PointId, BigRational)> = v
            .point_coeffs()
            .iter()
            .filter(|(p, _)| self.support.binary_search(p).is_err())
            .map(|(p, c)| (*p, c.clone()))
            .collect();
        coeffs.extend(self.support.iter().copied().zip(y.into_iter().skip(1)));
        ClassVector::new(e0, coeffs)
    }

    /// Image of `e0` as a class, `d e0 - Σ a_i e(p_i)`.
    pub fn image_of_e0(&self) -> ClassVector {
        self.column_class(0)
    }

    /// Image of `e(p)`.
    pub fn image_of_point(&self, p: PointId) -> ClassVector {
        match self.support.binary_search(&p) {
            Ok(i) => self.column_class(i + 1),
            Err(_) => ClassVector::e(p),
        }
    }

    fn column_class(&self, j: usize) -> ClassVector {
        let col = self.matrix.column(j);
        ClassVector::new(
            BigRational::from_integer(col[0].clone()),
            self.support
                .iter()
                .zip(col.into_iter().skip(1))
                .map(|(p, c)| (*p, BigRational::from_integer(c))),
        )
    }

    /// `deg(h^k)` for `k = 1..=n`, by iterating the action on `e0`.
    pub fn degree_sequence(&self, n: usize) -> Vec<BigInt> {
        let mut x: Vec<BigInt> = (0..self.dim()).map(|i| BigInt::from((i == 0) as i32)).collect();
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            x = self.matrix.mul_vec(&x);
            out.push(x[0].clone());
        }
        out
    }

    /// For degree-one elements: the underlying permutation of points.
    pub fn as_permutation(&self) -> Option<WeylGenerator> {
        if !self.degree().is_one() {
            return None;
        }
        let mut map = std::collections::HashMap::new();
        for (j, p) in self.support.iter().enumerate() {
            let col = self.matrix.column(j + 1);
            let i = col.iter().position(|c| c.is_one())?;
            if i == 0 || col.iter().filter(|c| !c.is_zero()).count() != 1 {
                return None;
            }
            map.insert(*p, self.support[i - 1]);
        }
        WeylGenerator::permutation_from_map(&map).ok()
    }

    pub fn render_image_of_e0(&self, space: &BubbleSpace) -> String {
        self.image_of_e0().render(space)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma0_matrix() {
        let mut sp = BubbleSpace::new();
        let h = WeylElement::parse("q(p1,p2,p3)", &mut sp).unwrap();
        assert_eq!(h.degree(), BigInt::from(2));
        assert_eq!(h.render_image_of_e0(&sp), "2*e0 - e(p1) - e(p2) - e(p3)");
        assert!(h.check().is_ok());
        assert!(h.compose(&h).is_identity());
    }

    #[test]
    fn cycle_action() {
        let mut sp = BubbleSpace::new();
        let h = WeylElement::parse("s(a b c)", &mut sp).unwrap();
        let a = sp.lookup("a").unwrap();
        let b = sp.lookup("b").unwrap();
        assert_eq!(h.apply(&ClassVector::e(a)), ClassVector::e(b));
        assert_eq!(h.as_permutation().unwrap(), WeylWord::parse("s(a b c)", &mut sp).unwrap().letters[0]);
    }

    #[test]
    fn from_matrix_rejects_non_isometry() {
        let m = IntMatrix::from_i64(&[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(
            WeylElement::from_matrix(vec![PointId(0)], m),
            Err(WeylError::NotAnIsometry)
        );
    }
}
