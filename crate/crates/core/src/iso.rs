//! Backtracking isomorphism for small multigraphs.
//!
//! Candidates are filtered by a per-vertex signature (degree with
//! multiplicity and the sorted multiset of incident multiplicities), then
//! extended one vertex at a time while checking multiplicities against every
//! vertex already placed.

use crate::graph::{Multigraph, Vertex};

fn signature(g: &Multigraph, matrix: &[usize], v: Vertex) -> (usize, Vec<usize>) {
    let n = g.vertex_count();
    let mut ms: Vec<usize> = (0..n)
        .map(|w| matrix[v * n + w])
        .filter(|&m| m > 0)
        .collect();
    ms.sort_unstable();
    (ms.iter().sum(), ms)
}

/// Finds a bijection `phi: V(a) -> V(b)` that preserves every multiplicity and
/// satisfies `compat(v, phi(v))` for each vertex. Returns `phi` as a vector.
pub fn find_isomorphism_with<F>(a: &Multigraph, b: &Multigraph, compat: F) -> Option<Vec<Vertex>>
where
    F: Fn(Vertex, Vertex) -> bool,
{
    let n = a.vertex_count();
    if n != b.vertex_count() || a.pair_count() != b.pair_count() || a.edge_sum() != b.edge_sum() {
        return None;
    }
    let ma = a.matrix();
    let mb = b.matrix();
    let sa: Vec<_> = (0..n).map(|v| signature(a, &ma, v)).collect();
    let sb: Vec<_> = (0..n).map(|v| signature(b, &mb, v)).collect();
    let mut sorted_a = sa.clone();
    let mut sorted_b = sb.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return None;
    }

    let candidates: Vec<Vec<Vertex>> = (0..n)
        .map(|v| (0..n).filter(|&w| sa[v] == sb[w] && compat(v, w)).collect())
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return None;
    }

    // Place vertices with few candidates first, then prefer neighbours of
    // already placed vertices so multiplicity checks bite early.
    let mut order: Vec<Vertex> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| {
                let linked = order.iter().filter(|&&u| ma[u * n + v] > 0).count();
                (candidates[v].len(), usize::MAX - linked, v)
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }

    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(0, &order, &candidates, &ma, &mb, n, &mut phi, &mut used) {
        Some(phi)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    depth: usize,
    order: &[Vertex],
    candidates: &[Vec<Vertex>],
    ma: &[usize],
    mb: &[usize],
    n: usize,
    phi: &mut [Vertex],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for &w in &candidates[v] {
        if used[w] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| ma[u * n + v] == mb[phi[u] * n + w]);
        if !consistent {
            continue;
        }
        phi[v] = w;
        used[w] = true;
        if extend(depth + 1, order, candidates, ma, mb, n, phi, used) {
            return true;
        }
        used[w] = false;
    }
    phi[v] = usize::MAX;
    false
}

/// Isomorphism test. Roots are matched positionally when both graphs carry
/// roots, and label sets must agree when both graphs are labeled.
pub fn is_isomorphic(a: &Multigraph, b: &Multigraph) -> bool {
    find_isomorphism(a, b).is_some()
}

pub fn find_isomorphism(a: &Multigraph, b: &Multigraph) -> Option<Vec<Vertex>> {
    let check_roots = !a.roots().is_empty() && !b.roots().is_empty();
    if check_roots && a.roots().len() != b.roots().len() {
        return None;
    }
    let check_labels = a.is_labeled() && b.is_labeled();
    find_isomorphism_with(a, b, |v, w| {
        (!check_roots || a.root_position(v) == b.root_position(w))
            && (!check_labels || a.labels(v) == b.labels(w))
    })
}

/// Structure-only isomorphism, ignoring roots and labels.
pub fn is_isomorphic_plain(a: &Multigraph, b: &Multigraph) -> bool {
    find_isomorphism_with(a, b, |_, _| true).is_some()
}

/// Vertex count, edge sum, sorted vertex signatures and root degrees.
pub type InvariantKey = (usize, usize, Vec<(usize, Vec<usize>)>, Vec<Option<usize>>);

/// Cheap isomorphism invariant used to bucket graphs before pairwise tests.
pub fn invariant_key(g: &Multigraph) -> InvariantKey {
    let m = g.matrix();
    let n = g.vertex_count();
    let mut sigs: Vec<_> = (0..n).map(|v| signature(g, &m, v)).collect();
    sigs.sort();
    let mut roots: Vec<Option<usize>> = g.roots().iter().map(|&r| Some(g.degree(r))).collect();
    roots.resize(2, None);
    (n, g.edge_sum(), sigs, roots)
}

/// A set of graphs deduplicated up to isomorphism, in insertion order.
#[derive(Debug, Clone, Default)]
pub struct IsoSet {
    items: Vec<Multigraph>,
    buckets: std::collections::HashMap<InvariantKey, Vec<usize>>,
}

impl IsoSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts `g` unless an isomorphic graph is present; returns whether it was new.
    pub fn insert(&mut self, g: Multigraph) -> bool {
        let k = invariant_key(&g);
        let bucket = self.buckets.entry(k).or_default();
        if bucket.iter().any(|&i| is_isomorphic(&self.items[i], &g)) {
            return false;
        }
        bucket.push(self.items.len());
        self.items.push(g);
        true
    }

    pub fn contains(&self, g: &Multigraph) -> bool {
        self.buckets
            .get(&invariant_key(g))
            .is_some_and(|b| b.iter().any(|&i| is_isomorphic(&self.items[i], g)))
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Multigraph> {
        self.items.iter()
    }

    pub fn into_vec(self) -> Vec<Multigraph> {
        self.items
    }
}
