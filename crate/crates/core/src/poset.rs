//! Finite posets and order combinators: union, Cartesian product, the
//! Higman lift to sequences and to finite sets, good pairs and antichains.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::format::{tokens, ParseError};

/// A decision procedure for a (quasi-)order.
pub trait Comparator<T: ?Sized> {
    fn leq(&self, a: &T, b: &T) -> bool;
}

impl<T: ?Sized, F> Comparator<T> for F
where
    F: Fn(&T, &T) -> bool,
{
    fn leq(&self, a: &T, b: &T) -> bool {
        self(a, b)
    }
}

/// The usual order on integers.
#[derive(Debug, Clone, Copy, Default)]
pub struct NaturalOrder;

impl<T: Ord> Comparator<T> for NaturalOrder {
    fn leq(&self, a: &T, b: &T) -> bool {
        a <= b
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("antisymmetry violated between `{0}` and `{1}`")]
    NotAntisymmetric(String, String),
    #[error("arity mismatch: {left} vs {right} components")]
    ArityMismatch { left: usize, right: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Explicit finite poset. The stored relation is the reflexive-transitive
/// closure of the pairs given at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    leq: Vec<bool>,
}

impl FinitePoset {
    pub fn new<S: AsRef<str>>(
        elements: impl IntoIterator<Item = S>,
        pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self, PosetError> {
        let mut names = Vec::new();
        let mut index = BTreeMap::new();
        for e in elements {
            let e = e.as_ref().to_string();
            if index.insert(e.clone(), names.len()).is_some() {
                return Err(PosetError::DuplicateElement(e));
            }
            names.push(e);
        }
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (a, b) in pairs {
            let ia = *index
                .get(a.as_ref())
                .ok_or_else(|| PosetError::UnknownElement(a.as_ref().to_string()))?;
            let ib = *index
                .get(b.as_ref())
                .ok_or_else(|| PosetError::UnknownElement(b.as_ref().to_string()))?;
            leq[ia * n + ib] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(PosetError::NotAntisymmetric(
                        names[i].clone(),
                        names[j].clone(),
                    ));
                }
            }
        }
        Ok(FinitePoset { names, index, leq })
    }

    /// Parses `elem <id>` and `le <a> <b>` lines.
    pub fn parse(text: &str) -> Result<Self, PosetError> {
        let mut elems = Vec::new();
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let toks = tokens(raw);
            match (toks[0].1, toks.len()) {
                ("elem", 2) => elems.push(toks[1].1.to_string()),
                ("le", 3) => pairs.push((toks[1].1.to_string(), toks[2].1.to_string())),
                (other, _) => {
                    return Err(ParseError::new(
                        line,
                        toks[0].0,
                        format!("expected `elem <id>` or `le <a> <b>`, found `{other}`"),
                    )
                    .into())
                }
            }
        }
        FinitePoset::new(elems, pairs)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.names
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    /// `a ≤ b`. Identifiers outside the poset are only related to themselves.
    pub fn leq_ids(&self, a: &str, b: &str) -> bool {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&i), Some(&j)) => self.leq[i * self.names.len() + j],
            _ => a == b,
        }
    }
}

impl Comparator<str> for FinitePoset {
    fn leq(&self, a: &str, b: &str) -> bool {
        self.leq_ids(a, b)
    }
}

impl Comparator<String> for FinitePoset {
    fn leq(&self, a: &String, b: &String) -> bool {
        self.leq_ids(a, b)
    }
}

/// Componentwise order on pairs.
#[derive(Debug, Clone, Copy)]
pub struct ProductOrder<A, B> {
    pub left: A,
    pub right: B,
}

pub fn product_order<A, B>(left: A, right: B) -> ProductOrder<A, B> {
    ProductOrder { left, right }
}

impl<X, Y, A: Comparator<X>, B: Comparator<Y>> Comparator<(X, Y)> for ProductOrder<A, B> {
    fn leq(&self, a: &(X, Y), b: &(X, Y)) -> bool {
        self.left.leq(&a.0, &b.0) && self.right.leq(&a.1, &b.1)
    }
}

/// Componentwise order on tuples of a fixed arity given as slices.
pub struct ProductOrderN<'a, T> {
    factors: Vec<&'a dyn Comparator<T>>,
}

impl<'a, T> ProductOrderN<'a, T> {
    pub fn new(factors: Vec<&'a dyn Comparator<T>>) -> Self {
        ProductOrderN { factors }
    }

    pub fn compare(&self, a: &[T], b: &[T]) -> Result<bool, PosetError> {
        let k = self.factors.len();
        if a.len() != k || b.len() != k {
            return Err(PosetError::ArityMismatch {
                left: a.len(),
                right: b.len(),
            });
        }
        Ok(self
            .factors
            .iter()
            .zip(a.iter().zip(b))
            .all(|(c, (x, y))| c.leq(x, y)))
    }
}

/// Element of a union of two posets, tagged with its side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tagged<X, Y> {
    A(X),
    B(Y),
}

/// Union of two orders: elements compare only within the same side.
#[derive(Debug, Clone, Copy)]
pub struct UnionOrder<A, B> {
    pub a: A,
    pub b: B,
}

pub fn union_order<A, B>(a: A, b: B) -> UnionOrder<A, B> {
    UnionOrder { a, b }
}

impl<X, Y, A: Comparator<X>, B: Comparator<Y>> Comparator<Tagged<X, Y>> for UnionOrder<A, B> {
    fn leq(&self, x: &Tagged<X, Y>, y: &Tagged<X, Y>) -> bool {
        match (x, y) {
            (Tagged::A(p), Tagged::A(q)) => self.a.leq(p, q),
            (Tagged::B(p), Tagged::B(q)) => self.b.leq(p, q),
            _ => false,
        }
    }
}

/// Higman order on sequences: `r ≼* s` iff some strictly increasing map sends
/// each `r[i]` to a dominating `s[φ(i)]`. Greedy earliest matching is exact.
pub fn star_order_seq<T, C: Comparator<T> + ?Sized>(r: &[T], s: &[T], base: &C) -> bool {
    let mut j = 0;
    for x in r {
        while j < s.len() && !base.leq(x, &s[j]) {
            j += 1;
        }
        if j == s.len() {
            return false;
        }
        j += 1;
    }
    true
}

/// Order on finite sets: `b ≼* c` iff there is an injection `φ: b → c` with
/// `x ≤ φ(x)`. Decided by bipartite matching.
pub fn star_order_set<T, C: Comparator<T> + ?Sized>(b: &[T], c: &[T], base: &C) -> bool {
    if b.len() > c.len() {
        return false;
    }
    let adj: Vec<Vec<usize>> = b
        .iter()
        .map(|x| (0..c.len()).filter(|&j| base.leq(x, &c[j])).collect())
        .collect();
    maximum_matching(&adj, c.len()) == b.len()
}

/// Size of a maximum matching in a bipartite graph given as left adjacency.
pub(crate) fn maximum_matching(adj: &[Vec<usize>], right: usize) -> usize {
    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|w| augment(w, adj, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; right];
    let mut size = 0;
    for u in 0..adj.len() {
        let mut seen = vec![false; right];
        if augment(u, adj, &mut seen, &mut owner) {
            size += 1;
        }
    }
    size
}

/// First good pair `(i, j)`, `i < j`, `seq[i] ≤ seq[j]`, in lexicographic
/// order of `(i, j)`. Indices are 0-based.
pub fn find_good_pair<T, C: Comparator<T> + ?Sized>(seq: &[T], cmp: &C) -> Option<(usize, usize)> {
    (0..seq.len()).find_map(|i| {
        (i + 1..seq.len())
            .find(|&j| cmp.leq(&seq[i], &seq[j]))
            .map(|j| (i, j))
    })
}

/// No two distinct positions are comparable (in either direction).
pub fn is_antichain<T, C: Comparator<T> + ?Sized>(items: &[T], cmp: &C) -> bool {
    (0..items.len()).all(|i| (0..items.len()).all(|j| i == j || !cmp.leq(&items[i], &items[j])))
}
