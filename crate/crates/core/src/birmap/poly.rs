use super::field::Field;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Homogeneous polynomial in `x, y, z`; the key `(i, j)` stands for `x^i y^j z^(d−i−j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HPoly<F> {
    degree: u32,
    terms: BTreeMap<(u32, u32), F>,
}

impl<F: Field> HPoly<F> {
    pub fn zero(degree: u32) -> Self {
        HPoly {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: F) -> Self {
        let mut p = Self::zero(0);
        p.add_term((0, 0), c);
        p
    }

    /// `c x^i y^j z^k`.
    pub fn monomial(c: F, i: u32, j: u32, k: u32) -> Self {
        let mut p = Self::zero(i + j + k);
        p.add_term((i, j), c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(F::one(), 1, 0, 0)
    }

    pub fn y() -> Self {
        Self::monomial(F::one(), 0, 1, 0)
    }

    pub fn z() -> Self {
        Self::monomial(F::one(), 0, 0, 1)
    }

    /// From `((i, j), c)` pairs of the given degree; zero coefficients are dropped.
    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = ((u32, u32), F)>) -> Self {
        let mut p = Self::zero(degree);
        for (k, c) in terms {
            assert!(k.0 + k.1 <= degree, "exponents exceed the degree");
            p.add_term(k, c);
        }
        p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), F> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> F {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(F::zero)
    }

    fn add_term(&mut self, k: (u32, u32), c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    /// Lex-largest term.
    pub fn leading(&self) -> Option<((u32, u32), &F)> {
        self.terms.iter().next_back().map(|(k, c)| (*k, c))
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, o.degree, "adding homogeneous polynomials of different degrees");
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(*k, c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        HPoly {
            degree: self.degree,
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero(self.degree);
        }
        HPoly {
            degree: self.degree,
            terms: self.terms.iter().map(|(k, c)| (*k, c.clone() * s.clone())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut acc: HashMap<(u32, u32), F> = HashMap::with_capacity(self.len() * o.len());
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                let k = (ka.0 + kb.0, ka.1 + kb.1);
                let v = ca.clone() * cb.clone();
                match acc.get_mut(&k) {
                    Some(x) => *x = x.clone() + v,
                    None => {
                        acc.insert(k, v);
                    }
                }
            }
        }
        HPoly {
            degree: self.degree + o.degree,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::constant(F::one());
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv()),
            None => self.clone(),
        }
    }

    /// Exact quotient `self / g`, or `None` if `g` does not divide.
    pub fn div_exact(&self, g: &Self) -> Option<Self> {
        let (gk, gc) = g.leading()?;
        if self.degree < g.degree {
            return self.is_zero().then(|| Self::zero(0));
        }
        let dq = self.degree - g.degree;
        let ginv = gc.inv();
        let mut r = self.clone();
        let mut q = Self::zero(dq);
        while let Some((rk, rc)) = r.leading() {
            if rk.0 < gk.0 || rk.1 < gk.1 {
                return None;
            }
            let mk = (rk.0 - gk.0, rk.1 - gk.1);
            if mk.0 + mk.1 > dq {
                return None;
            }
            let c = rc.clone() * ginv.clone();
            for (k, gv) in &g.terms {
                r.add_term((k.0 + mk.0, k.1 + mk.1), -(c.clone() * gv.clone()));
            }
            q.add_term(mk, c);
        }
        Some(q)
    }

    /// Exponents `(a, b, c)` of the largest monomial `x^a y^b z^c` dividing every term.
    pub fn monomial_content(&self) -> Option<(u32, u32, u32)> {
        let d = self.degree;
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut m = (first.0, first.1, d - first.0 - first.1);
        for k in it {
            m.0 = m.0.min(k.0);
            m.1 = m.1.min(k.1);
            m.2 = m.2.min(d - k.0 - k.1);
        }
        Some(m)
    }

    /// Divide by `x^a y^b z^c`, which must divide every term.
    pub fn divide_monomial(&self, a: u32, b: u32, c: u32) -> Self {
        let degree = self.degree - a - b - c;
        HPoly {
            degree,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| {
                    assert!(k.0 >= a && k.1 >= b && self.degree - k.0 - k.1 >= c);
                    ((k.0 - a, k.1 - b), v.clone())
                })
                .collect(),
        }
    }

    pub fn eval(&self, pt: &[F; 3]) -> F {
        let d = self.degree as usize;
        let powers = |v: &F| {
            let mut out = Vec::with_capacity(d + 1);
            out.push(F::one());
            for i in 0..d {
                let next = out[i].clone() * v.clone();
                out.push(next);
            }
            out
        };
        let (px, py, pz) = (powers(&pt[0]), powers(&pt[1]), powers(&pt[2]));
        let mut s = F::zero();
        for (k, c) in &self.terms {
            let e = (k.0 as usize, k.1 as usize, d - k.0 as usize - k.1 as usize);
            s = s + c.clone() * px[e.0].clone() * py[e.1].clone() * pz[e.2].clone();
        }
        s
    }

    /// `self(g0, g1, g2)` for components of a common degree.
    pub fn substitute(&self, g: &[HPoly<F>; 3]) -> Self {
        let e = g[0].degree;
        let out_deg = self.degree * e;
        let d = self.degree;
        let mut need = [0u32; 3];
        for k in self.terms.keys() {
            need[0] = need[0].max(k.0);
            need[1] = need[1].max(k.1);
            need[2] = need[2].max(d - k.0 - k.1);
        }
        let caches: Vec<Vec<HPoly<F>>> = (0..3)
            .map(|v| {
                let mut c = vec![HPoly::constant(F::one())];
                for i in 0..need[v] as usize {
                    let next = c[i].mul(&g[v]);
                    c.push(next);
                }
                c
            })
            .collect();
        let mut acc = Self::zero(out_deg);
        for (k, c) in &self.terms {
            let t = caches[0][k.0 as usize]
                .mul(&caches[1][k.1 as usize])
                .mul(&caches[2][(d - k.0 - k.1) as usize])
                .scale(c);
            acc = acc.add(&t);
        }
        acc.degree = out_deg;
        acc
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<HPoly<G>> {
        let mut out = HPoly::zero(self.degree);
        for (k, c) in &self.terms {
            out.add_term(*k, f(c)?);
        }
        Some(out)
    }

    /// Upper bound on the multiplications of [`HPoly::substitute`], used for budgeting.
    pub fn substitution_work(&self, g: &[HPoly<F>; 3]) -> u64 {
        let t: u64 = g.iter().map(|p| p.len() as u64).max().unwrap_or(0).max(1);
        let d = u64::from(self.degree);
        let out = u64::from(self.degree * g[0].degree);
        let dense = (out + 1) * (out + 2) / 2;
        // each factor of each term multiplies a partial product of at most `dense` terms by `t`
        (self.len() as u64 + 3) * d.max(1) * dense * t
    }
}

impl<F: Field> fmt::Display for HPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let d = self.degree;
        for (n, (k, c)) in self.terms.iter().rev().enumerate() {
            let mut vars = Vec::new();
            for (name, e) in [("x", k.0), ("y", k.1), ("z", d - k.0 - k.1)] {
                match e {
                    0 => {}
                    1 => vars.push(name.to_string()),
                    _ => vars.push(format!("{name}^{e}")),
                }
            }
            let mut cs = c.to_string();
            let negative = cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            if n == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let body = vars.join("*");
            if body.is_empty() {
                write!(f, "{cs}")?;
            } else if cs == "1" {
                write!(f, "{body}")?;
            } else {
                write!(f, "{cs}*{body}")?;
            }
        }
        Ok(())
    }
}
