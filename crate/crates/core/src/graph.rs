//! Loop-free multigraphs with optional vertex labels and up to two roots.
//!
//! Vertices are dense indices `0..n`. Edge multiplicities are stored sparsely
//! keyed by the ordered pair `(min, max)`; an absent pair and multiplicity
//! zero are the same thing.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Vertex index.
pub type Vertex = usize;

/// Opaque label identifier, resolved against a [`crate::poset::FinitePoset`].
pub type Label = String;

/// A set of labels carried by a single vertex.
pub type LabelSet = BTreeSet<Label>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("loop at vertex {0}: loops are not allowed")]
    Loop(Vertex),
    #[error("{{{0}, {1}}} is not an edge")]
    NotAnEdge(Vertex, Vertex),
    #[error("a graph has at most two roots, got {0}")]
    TooManyRoots(usize),
    #[error("roots must be distinct (vertex {0} repeated)")]
    DuplicateRoot(Vertex),
}

/// Unordered pair of distinct vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeRef {
    lo: Vertex,
    hi: Vertex,
}

impl EdgeRef {
    pub fn new(u: Vertex, v: Vertex) -> Result<Self, GraphError> {
        if u == v {
            return Err(GraphError::Loop(u));
        }
        Ok(EdgeRef {
            lo: u.min(v),
            hi: u.max(v),
        })
    }

    pub fn endpoints(self) -> (Vertex, Vertex) {
        (self.lo, self.hi)
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Multigraph {
    n: usize,
    mult: BTreeMap<(Vertex, Vertex), usize>,
    labels: Vec<LabelSet>,
    roots: Vec<Vertex>,
}

fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

impl Multigraph {
    /// Edgeless, unlabeled, unrooted graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Multigraph {
            n,
            mult: BTreeMap::new(),
            labels: vec![LabelSet::new(); n],
            roots: Vec::new(),
        }
    }

    /// Builds a graph from `(u, v, multiplicity)` triples; repeated pairs add up.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Multigraph::new(n);
        for (u, v, m) in edges {
            g.add_edges(u, v, m)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Total number of edges counted with multiplicity.
    pub fn edge_sum(&self) -> usize {
        self.mult.values().sum()
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> usize {
        if u == v {
            return 0;
        }
        self.mult.get(&key(u, v)).copied().unwrap_or(0)
    }

    /// Adds `m` parallel edges between `u` and `v`.
    pub fn add_edges(&mut self, u: Vertex, v: Vertex, m: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if m > 0 {
            *self.mult.entry(key(u, v)).or_insert(0) += m;
        }
        Ok(())
    }

    pub fn set_multiplicity(&mut self, u: Vertex, v: Vertex, m: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            if m == 0 {
                return Ok(());
            }
            return Err(GraphError::Loop(u));
        }
        if m == 0 {
            self.mult.remove(&key(u, v));
        } else {
            self.mult.insert(key(u, v), m);
        }
        Ok(())
    }

    /// Adjacent pairs `(u, v, multiplicity)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, usize)> + '_ {
        self.mult.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    /// Number of adjacent pairs (edges without multiplicity).
    pub fn pair_count(&self) -> usize {
        self.mult.len()
    }

    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self
            .mult
            .keys()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Sum of multiplicities of edges incident to `v`.
    pub fn degree(&self, v: Vertex) -> usize {
        self.mult
            .iter()
            .filter(|(&(a, b), _)| a == v || b == v)
            .map(|(_, &m)| m)
            .sum()
    }

    /// Adjacency lists (neighbors only, no multiplicities).
    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in self.mult.keys() {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Dense multiplicity matrix, row-major.
    pub fn matrix(&self) -> Vec<usize> {
        let n = self.n;
        let mut m = vec![0; n * n];
        for (&(u, v), &k) in &self.mult {
            m[u * n + v] = k;
            m[v * n + u] = k;
        }
        m
    }

    pub fn labels(&self, v: Vertex) -> &LabelSet {
        &self.labels[v]
    }

    pub fn set_labels(&mut self, v: Vertex, labels: LabelSet) -> Result<(), GraphError> {
        self.check_vertex(v)?;
        self.labels[v] = labels;
        Ok(())
    }

    pub fn add_label(&mut self, v: Vertex, label: impl Into<Label>) -> Result<(), GraphError> {
        self.check_vertex(v)?;
        self.labels[v].insert(label.into());
        Ok(())
    }

    /// True when some vertex carries a nonempty label set.
    pub fn is_labeled(&self) -> bool {
        self.labels.iter().any(|l| !l.is_empty())
    }

    pub fn without_labels(&self) -> Multigraph {
        let mut g = self.clone();
        g.labels = vec![LabelSet::new(); self.n];
        g
    }

    pub fn roots(&self) -> &[Vertex] {
        &self.roots
    }

    pub fn set_roots(&mut self, roots: &[Vertex]) -> Result<(), GraphError> {
        if roots.len() > 2 {
            return Err(GraphError::TooManyRoots(roots.len()));
        }
        for &r in roots {
            self.check_vertex(r)?;
        }
        if roots.len() == 2 && roots[0] == roots[1] {
            return Err(GraphError::DuplicateRoot(roots[0]));
        }
        self.roots = roots.to_vec();
        Ok(())
    }

    pub fn with_roots(mut self, roots: &[Vertex]) -> Result<Self, GraphError> {
        self.set_roots(roots)?;
        Ok(self)
    }

    pub fn without_roots(&self) -> Multigraph {
        let mut g = self.clone();
        g.roots.clear();
        g
    }

    /// Position of `v` in the root tuple, if it is a root.
    pub fn root_position(&self, v: Vertex) -> Option<usize> {
        self.roots.iter().position(|&r| r == v)
    }

    /// Two-rooted graph whose roots are adjacent.
    pub fn is_edge_rooted(&self) -> bool {
        self.roots.len() == 2 && self.multiplicity(self.roots[0], self.roots[1]) > 0
    }

    /// Contracts the edge `e`: its endpoints merge into the lower index, edges
    /// between them disappear, multiplicities to common neighbors add up and
    /// label sets are united. Higher vertices shift down by one.
    pub fn contract_edge(&self, e: EdgeRef) -> Result<Multigraph, GraphError> {
        let (keep, gone) = e.endpoints();
        self.check_vertex(gone)?;
        if self.multiplicity(keep, gone) == 0 {
            return Err(GraphError::NotAnEdge(keep, gone));
        }
        Ok(self.merge_vertices(keep, gone))
    }

    /// Identifies `keep` and `gone` (keep < gone) regardless of adjacency.
    pub(crate) fn merge_vertices(&self, keep: Vertex, gone: Vertex) -> Multigraph {
        debug_assert!(keep < gone);
        let relabel = |w: Vertex| -> Vertex {
            if w == gone {
                keep
            } else if w > gone {
                w - 1
            } else {
                w
            }
        };
        let mut g = Multigraph::new(self.n - 1);
        for (&(a, b), &m) in &self.mult {
            let (x, y) = (relabel(a), relabel(b));
            if x != y {
                *g.mult.entry(key(x, y)).or_insert(0) += m;
            }
        }
        for (w, ls) in self.labels.iter().enumerate() {
            g.labels[relabel(w)].extend(ls.iter().cloned());
        }
        g.roots = self.roots.iter().map(|&r| relabel(r)).collect();
        g
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Whether `set` induces a connected subgraph. The empty set does not.
    pub fn induces_connected(&self, set: &[Vertex]) -> bool {
        let Some(&start) = set.first() else {
            return false;
        };
        let mut inside = vec![false; self.n];
        for &v in set {
            inside[v] = true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == set.len()
    }

    /// Every positive multiplicity clamped to one.
    pub fn underlying_simple(&self) -> Multigraph {
        let mut g = self.clone();
        for m in g.mult.values_mut() {
            *m = 1;
        }
        g
    }

    pub fn is_simple(&self) -> bool {
        self.mult.values().all(|&m| m == 1)
    }

    /// Subgraph induced by `vertices`, renumbered in the given order. Roots
    /// and labels of kept vertices carry over; roots outside are dropped.
    pub fn induced(&self, vertices: &[Vertex]) -> Multigraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Multigraph::new(vertices.len());
        for (&(a, b), &m) in &self.mult {
            if index[a] != usize::MAX && index[b] != usize::MAX {
                g.mult.insert(key(index[a], index[b]), m);
            }
        }
        for (i, &v) in vertices.iter().enumerate() {
            g.labels[i] = self.labels[v].clone();
        }
        g.roots = self
            .roots
            .iter()
            .filter(|&&r| index[r] != usize::MAX)
            .map(|&r| index[r])
            .collect();
        g
    }

    /// Disjoint union; `other`'s vertices are shifted after `self`'s. Keeps
    /// `self`'s roots.
    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let shift = self.n;
        let mut g = self.clone();
        g.n += other.n;
        g.labels.extend(other.labels.iter().cloned());
        for (&(a, b), &m) in &other.mult {
            g.mult.insert((a + shift, b + shift), m);
        }
        g
    }

    /// Renumbers vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Multigraph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut g = Multigraph::new(self.n);
        for (&(a, b), &m) in &self.mult {
            g.mult.insert(key(perm[a], perm[b]), m);
        }
        for (v, ls) in self.labels.iter().enumerate() {
            g.labels[perm[v]] = ls.clone();
        }
        g.roots = self.roots.iter().map(|&r| perm[r]).collect();
        g
    }
}

/// Components of `g` as a partition of its vertices.
pub fn components(g: &Multigraph) -> Vec<Vec<Vertex>> {
    g.components()
}

pub fn contract_edge(g: &Multigraph, e: EdgeRef) -> Result<Multigraph, GraphError> {
    g.contract_edge(e)
}

pub fn underlying_simple(g: &Multigraph) -> Multigraph {
    g.underlying_simple()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{gen, GraphKind};
    use crate::iso::is_isomorphic;

    fn house() -> Multigraph {
        gen(GraphKind::House).unwrap()
    }

    fn theta(k: usize) -> Multigraph {
        gen(GraphKind::Theta(k)).unwrap()
    }

    #[test]
    fn loops_rejected() {
        let mut g = Multigraph::new(2);
        assert_eq!(g.add_edges(1, 1, 1), Err(GraphError::Loop(1)));
        assert!(EdgeRef::new(0, 0).is_err());
        assert!(g.add_edges(0, 2, 1).is_err());
    }

    #[test]
    fn roots_validated() {
        let g = Multigraph::new(3);
        assert_eq!(
            g.clone().with_roots(&[1, 1]),
            Err(GraphError::DuplicateRoot(1))
        );
        assert!(g.clone().with_roots(&[0, 1, 2]).is_err());
        assert!(g.clone().with_roots(&[3]).is_err());
        assert!(Multigraph::new(0).with_roots(&[]).is_ok());
    }

    #[test]
    fn contracting_theta_gives_single_vertex() {
        let g = theta(5).contract_edge(EdgeRef::new(0, 1).unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_sum(), 0);
    }

    #[test]
    fn contracting_triangle_keeps_parallel_edges() {
        let tri = gen(GraphKind::Cycle(3)).unwrap();
        let g = tri.contract_edge(EdgeRef::new(1, 2).unwrap()).unwrap();
        assert!(is_isomorphic(&g, &theta(2)));
    }

    #[test]
    fn contracting_house_edges() {
        // 0 and 1 share no neighbour: the result stays simple (K4 minus an edge).
        let g = house().contract_edge(EdgeRef::new(0, 1).unwrap()).unwrap();
        let expected =
            Multigraph::from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1), (0, 2, 1)])
                .unwrap();
        assert_eq!(g, expected);
        // 0 and 3 share the apex 4, which becomes a double edge.
        let g = house().contract_edge(EdgeRef::new(0, 3).unwrap()).unwrap();
        let expected =
            Multigraph::from_edges(4, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (0, 3, 2)]).unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn contraction_merges_labels_and_roots() {
        let mut g = Multigraph::from_edges(3, [(0, 1, 1), (1, 2, 2)]).unwrap();
        g.add_label(1, "a").unwrap();
        g.add_label(2, "b").unwrap();
        g.set_roots(&[0, 2]).unwrap();
        let c = g.contract_edge(EdgeRef::new(2, 1).unwrap()).unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.multiplicity(0, 1), 1);
        assert_eq!(c.roots(), &[0, 1]);
        let want: LabelSet = ["a", "b"].iter().map(|s| s.to_string()).collect();
        assert_eq!(c.labels(1), &want);
    }

    #[test]
    fn contract_requires_edge() {
        let g = gen(GraphKind::Coclique(3)).unwrap();
        assert_eq!(
            g.contract_edge(EdgeRef::new(0, 1).unwrap()),
            Err(GraphError::NotAnEdge(0, 1))
        );
    }

    #[test]
    fn component_examples() {
        assert_eq!(gen(GraphKind::Coclique(4)).unwrap().components().len(), 4);
        assert_eq!(house().components(), vec![vec![0, 1, 2, 3, 4]]);
        let g = theta(3).disjoint_union(&Multigraph::new(1));
        assert_eq!(g.components().len(), 2);
        assert!(Multigraph::new(0).components().is_empty());
    }

    #[test]
    fn underlying_simple_examples() {
        let k2 = Multigraph::from_edges(2, [(0, 1, 1)]).unwrap();
        assert_eq!(theta(5).underlying_simple(), k2);
        assert_eq!(house().underlying_simple(), house());
        assert_eq!(Multigraph::new(0).underlying_simple(), Multigraph::new(0));
    }

    #[test]
    fn induced_connectivity() {
        let h = house();
        assert!(h.induces_connected(&[0, 2, 3, 4]));
        assert!(!h.induces_connected(&[1, 3]));
        assert!(!h.induces_connected(&[]));
    }
}
