use super::WeylError;
use crate::error::{Cursor, ParseError};
use crate::lattice::{BubbleSpace, PointId};
use std::collections::{BTreeSet, HashMap};

/// A generator of the Weyl group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WeylGenerator {
    /// Finite permutation of points given by disjoint cycles; `e(p) ↦ e(next(p))`.
    Permutation(Vec<Vec<PointId>>),
    /// The quadratic involution on three base points.
    Sigma0([PointId; 3]),
    /// Transposition of two points.
    Tau(PointId, PointId),
}

impl WeylGenerator {
    pub fn sigma0(a: PointId, b: PointId, c: PointId) -> Result<Self, WeylError> {
        if a == b || b == c || a == c {
            return Err(WeylError::RepeatedPoint);
        }
        Ok(WeylGenerator::Sigma0([a, b, c]))
    }

    pub fn tau(p: PointId, q: PointId) -> Result<Self, WeylError> {
        if p == q {
            return Err(WeylError::RepeatedPoint);
        }
        Ok(WeylGenerator::Tau(p, q))
    }

    /// Cycles are validated for disjointness, rotated to start at their smallest id, and sorted.
    pub fn permutation(cycles: Vec<Vec<PointId>>) -> Result<Self, WeylError> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for c in cycles {
            for p in &c {
                if !seen.insert(*p) {
                    return Err(WeylError::RepeatedPoint);
                }
            }
            if c.len() < 2 {
                continue;
            }
            let k = (0..c.len()).min_by_key(|&i| c[i]).unwrap_or(0);
            let mut r = c[k..].to_vec();
            r.extend_from_slice(&c[..k]);
            out.push(r);
        }
        out.sort();
        Ok(WeylGenerator::Permutation(out))
    }

    pub fn identity() -> Self {
        WeylGenerator::Permutation(Vec::new())
    }

    /// Permutation from a point map (pairs `p ↦ q`); the map must be a bijection of its support.
    pub fn permutation_from_map(map: &HashMap<PointId, PointId>) -> Result<Self, WeylError> {
        let mut done = BTreeSet::new();
        let mut cycles = Vec::new();
        let mut keys: Vec<PointId> = map.keys().copied().collect();
        keys.sort();
        for start in keys {
            if done.contains(&start) || map[&start] == start {
                continue;
            }
            let mut cyc = vec![start];
            done.insert(start);
            let mut cur = map[&start];
            while cur != start {
                if !done.insert(cur) {
                    return Err(WeylError::NotAPermutation);
                }
                cyc.push(cur);
                cur = *map.get(&cur).ok_or(WeylError::NotAPermutation)?;
            }
            cycles.push(cyc);
        }
        Self::permutation(cycles)
    }

    pub fn points(&self) -> Vec<PointId> {
        match self {
            WeylGenerator::Permutation(cs) => cs.iter().flatten().copied().collect(),
            WeylGenerator::Sigma0(t) => t.to_vec(),
            WeylGenerator::Tau(p, q) => vec![*p, *q],
        }
    }

    /// Image of a point under a degree-one generator; `None` for σ0.
    pub fn map_point(&self, p: PointId) -> Option<PointId> {
        match self {
            WeylGenerator::Permutation(cs) => {
                for c in cs {
                    if let Some(i) = c.iter().position(|&x| x == p) {
                        return Some(c[(i + 1) % c.len()]);
                    }
                }
                Some(p)
            }
            WeylGenerator::Tau(a, b) => Some(if p == *a {
                *b
            } else if p == *b {
                *a
            } else {
                p
            }),
            WeylGenerator::Sigma0(_) => None,
        }
    }

    pub fn render(&self, space: &BubbleSpace) -> String {
        match self {
            WeylGenerator::Permutation(cs) => {
                if cs.is_empty() {
                    return "s()".into();
                }
                let mut s = String::from("s");
                for c in cs {
                    let names: Vec<String> = c.iter().map(|p| space.label(*p)).collect();
                    s.push('(');
                    s.push_str(&names.join(" "));
                    s.push(')');
                }
                s
            }
            WeylGenerator::Sigma0([a, b, c]) => {
                format!("q({},{},{})", space.label(*a), space.label(*b), space.label(*c))
            }
            WeylGenerator::Tau(p, q) => format!("t({},{})", space.label(*p), space.label(*q)),
        }
    }
}

/// Word in the generators; `letters[0]` is leftmost and applied last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct WeylWord {
    pub letters: Vec<WeylGenerator>,
}

impl WeylWord {
    pub fn new(letters: Vec<WeylGenerator>) -> Self {
        WeylWord { letters }
    }

    pub fn identity() -> Self {
        WeylWord {
            letters: vec![WeylGenerator::identity()],
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `self ∘ other`
    pub fn then_apply_after(&self, other: &WeylWord) -> WeylWord {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        WeylWord { letters }
    }

    /// Inverse word (generators are involutions except cycles, which are reversed).
    pub fn inverse(&self) -> WeylWord {
        WeylWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|g| match g {
                    WeylGenerator::Permutation(cs) => WeylGenerator::permutation(
                        cs.iter().map(|c| c.iter().rev().copied().collect()).collect(),
                    )
                    .expect("disjoint cycles stay disjoint"),
                    other => other.clone(),
                })
                .collect(),
        }
    }

    pub fn points(&self) -> BTreeSet<PointId> {
        self.letters.iter().flat_map(|g| g.points()).collect()
    }

    pub fn render(&self, space: &BubbleSpace) -> String {
        if self.letters.is_empty() {
            return "s()".into();
        }
        self.letters
            .iter()
            .map(|g| g.render(space))
            .collect::<Vec<_>>()
            .join(" * ")
    }

    /// Grammar: `q(a,b,c)`, `t(p,q)`, `s(a b)(c d e)`, joined by `*`.
    pub fn parse(text: &str, space: &mut BubbleSpace) -> Result<Self, ParseError> {
        let mut cur = Cursor::new(text);
        let mut letters = Vec::new();
        loop {
            cur.skip_ws();
            let at = cur.pos();
            let head = cur.ident().ok_or_else(|| cur.error("expected a generator q(..), t(..) or s(..)"))?;
            let g = match head {
                "q" => {
                    cur.expect('(')?;
                    let a = parse_point(&mut cur, space)?;
                    cur.expect(',')?;
                    let b = parse_point(&mut cur, space)?;
                    cur.expect(',')?;
                    let c = parse_point(&mut cur, space)?;
                    cur.expect(')')?;
                    WeylGenerator::sigma0(a, b, c).map_err(|e| ParseError::new(at, e.to_string()))?
                }
                "t" => {
                    cur.expect('(')?;
                    let a = parse_point(&mut cur, space)?;
                    cur.expect(',')?;
                    let b = parse_point(&mut cur, space)?;
                    cur.expect(')')?;
                    WeylGenerator::tau(a, b).map_err(|e| ParseError::new(at, e.to_string()))?
                }
                "s" => {
                    let mut cycles = Vec::new();
                    cur.skip_ws();
                    if cur.peek() != Some('(') {
                        return Err(cur.error("expected '('"));
                    }
                    while cur.eat('(') {
                        let mut cyc = Vec::new();
                        loop {
                            cur.skip_ws();
                            if cur.eat(')') {
                                break;
                            }
                            cyc.push(parse_point(&mut cur, space)?);
                            cur.eat(',');
                        }
                        cycles.push(cyc);
                        cur.skip_ws();
                    }
                    WeylGenerator::permutation(cycles).map_err(|e| ParseError::new(at, e.to_string()))?
                }
                other => {
                    return Err(ParseError::new(at, format!("unknown generator '{other}'")));
                }
            };
            letters.push(g);
            if cur.at_end() {
                break;
            }
            cur.expect('*')?;
        }
        Ok(WeylWord { letters })
    }
}

fn parse_point(cur: &mut Cursor<'_>, space: &mut BubbleSpace) -> Result<PointId, ParseError> {
    let name = cur.ident().ok_or_else(|| cur.error("expected point name"))?;
    Ok(space.point(name))
}
