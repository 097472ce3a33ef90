//! The contraction order.
//!
//! `H ⊴ G` holds iff `G` has an `H`-model: a partition of `V(G)` into
//! connected branch sets, one per vertex of `H`, such that the number of
//! edges between two branch sets equals the multiplicity of the
//! corresponding pair in `H`. Rooted and labeled variants add that each root
//! of `G` lies in the branch set of the matching root of `H`, and that the
//! label set of every `H` vertex is dominated (as a set, by injection) by the
//! union of the labels in its branch set.
//!
//! Two independent routes decide the relation: [`find_model`] enumerates
//! connected partitions and matches the quotient against `H`, while
//! [`brute_force_is_contraction`] explores edge-contraction sequences.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeRef, LabelSet, Multigraph, Vertex};
use crate::iso::{find_isomorphism_with, IsoSet};
use crate::poset::{star_order_set, Comparator, FinitePoset};

/// Default edge-sum bound for the contraction-sequence explorer.
pub const DEFAULT_ORACLE_BOUND: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("model has {found} branch sets but the pattern has {expected} vertices")]
    DomainMismatch { expected: usize, found: usize },
    #[error(
        "branch set of pattern vertex {pattern} names host vertex {host}, host has {n} vertices"
    )]
    HostVertexOutOfRange {
        pattern: Vertex,
        host: Vertex,
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("size bound exceeded: edge sum {edge_sum} > {bound}")]
pub struct SizeBoundExceeded {
    pub edge_sum: usize,
    pub bound: usize,
}

/// Which extra conditions a model must satisfy.
#[derive(Debug, Clone, Copy, Default)]
pub struct CheckOptions<'a> {
    pub respect_roots: bool,
    /// When present, models must be label-preserving with respect to this poset.
    pub label_poset: Option<&'a FinitePoset>,
}

impl<'a> CheckOptions<'a> {
    pub fn plain() -> Self {
        CheckOptions::default()
    }

    pub fn rooted() -> Self {
        CheckOptions {
            respect_roots: true,
            label_poset: None,
        }
    }

    pub fn labeled(poset: &'a FinitePoset) -> Self {
        CheckOptions {
            respect_roots: false,
            label_poset: Some(poset),
        }
    }

    pub fn rooted_labeled(poset: &'a FinitePoset) -> Self {
        CheckOptions {
            respect_roots: true,
            label_poset: Some(poset),
        }
    }
}

/// Branch sets indexed by pattern vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Model {
    pub branch_sets: Vec<Vec<Vertex>>,
}

#[derive(Serialize, Deserialize)]
struct ModelDocument {
    branch_sets: BTreeMap<Vertex, Vec<Vertex>>,
}

impl Model {
    pub fn new(branch_sets: Vec<Vec<Vertex>>) -> Self {
        Model { branch_sets }
    }

    /// Identity model of a graph in itself.
    pub fn identity(n: usize) -> Self {
        Model {
            branch_sets: (0..n).map(|v| vec![v]).collect(),
        }
    }

    /// `{"branch_sets": {"0": [..], ...}}`
    pub fn to_json(&self) -> String {
        let doc = ModelDocument {
            branch_sets: self.branch_sets.iter().cloned().enumerate().collect(),
        };
        serde_json::to_string(&doc).expect("model serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        let doc: ModelDocument = serde_json::from_str(text)?;
        let n = doc.branch_sets.keys().next_back().map_or(0, |k| k + 1);
        let mut sets = vec![Vec::new(); n];
        for (k, v) in doc.branch_sets {
            sets[k] = v;
        }
        Ok(Model { branch_sets: sets })
    }

    /// Composes `self` (a model of `h` in `g`) with `outer` (a model of `g`
    /// in `host`), giving a model of `h` in `host`.
    pub fn compose(&self, outer: &Model) -> Model {
        Model {
            branch_sets: self
                .branch_sets
                .iter()
                .map(|set| {
                    let mut out: Vec<Vertex> = set
                        .iter()
                        .flat_map(|&v| outer.branch_sets[v].iter().copied())
                        .collect();
                    out.sort_unstable();
                    out
                })
                .collect(),
        }
    }
}

fn label_union<'g>(g: &'g Multigraph, set: &[Vertex]) -> Vec<&'g String> {
    let mut all: Vec<&String> = set.iter().flat_map(|&v| g.labels(v).iter()).collect();
    all.sort();
    all.dedup();
    all
}

fn labels_dominated(pattern: &LabelSet, host: &[&String], poset: &FinitePoset) -> bool {
    let p: Vec<&String> = pattern.iter().collect();
    star_order_set(&p, host, &|a: &&String, b: &&String| poset.leq_ids(a, b))
}

/// Checks that the branch sets partition `V(g)`, are connected and carry
/// the multiplicities of `h`, plus roots and labels as requested.
pub fn verify_model(
    h: &Multigraph,
    g: &Multigraph,
    m: &Model,
    opts: &CheckOptions<'_>,
) -> Result<bool, ModelError> {
    let (nh, ng) = (h.vertex_count(), g.vertex_count());
    if m.branch_sets.len() != nh {
        return Err(ModelError::DomainMismatch {
            expected: nh,
            found: m.branch_sets.len(),
        });
    }
    let mut owner = vec![usize::MAX; ng];
    let mut disjoint = true;
    for (u, set) in m.branch_sets.iter().enumerate() {
        for &x in set {
            if x >= ng {
                return Err(ModelError::HostVertexOutOfRange {
                    pattern: u,
                    host: x,
                    n: ng,
                });
            }
            if owner[x] != usize::MAX {
                disjoint = false;
            }
            owner[x] = u;
        }
    }
    if !disjoint || owner.contains(&usize::MAX) {
        return Ok(false);
    }
    if !m.branch_sets.iter().all(|s| g.induces_connected(s)) {
        return Ok(false);
    }
    let mut sums = vec![0usize; nh * nh];
    for (a, b, k) in g.edges() {
        let (x, y) = (owner[a], owner[b]);
        if x != y {
            sums[x * nh + y] += k;
            sums[y * nh + x] += k;
        }
    }
    for u in 0..nh {
        for v in u + 1..nh {
            if sums[u * nh + v] != h.multiplicity(u, v) {
                return Ok(false);
            }
        }
    }
    if opts.respect_roots {
        if h.roots().len() != g.roots().len() {
            return Ok(false);
        }
        for (&hr, &gr) in h.roots().iter().zip(g.roots()) {
            if owner[gr] != hr {
                return Ok(false);
            }
        }
    }
    if let Some(poset) = opts.label_poset {
        for (u, set) in m.branch_sets.iter().enumerate() {
            if !labels_dominated(h.labels(u), &label_union(g, set), poset) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// BFS order over all components, so each prefix of a component is connected.
fn bfs_order(g: &Multigraph) -> Vec<Vertex> {
    let adj = g.adjacency();
    let mut seen = vec![false; g.vertex_count()];
    let mut order = Vec::with_capacity(g.vertex_count());
    for s in 0..g.vertex_count() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    order
}

struct Search<'a, 'p> {
    h: &'a Multigraph,
    g: &'a Multigraph,
    opts: &'a CheckOptions<'p>,
    order: Vec<Vertex>,
    gm: Vec<usize>,
    blocks: usize,
    block_of: Vec<usize>,
    cross_budget: usize,
}

impl Search<'_, '_> {
    fn run(&mut self, i: usize, used: usize, cross: usize) -> Option<Model> {
        let ng = self.g.vertex_count();
        if i == self.order.len() {
            return if used == self.blocks {
                self.check_leaf()
            } else {
                None
            };
        }
        if ng - i < self.blocks - used {
            return None;
        }
        let x = self.order[i];
        let limit = (used + 1).min(self.blocks);
        for b in 0..limit {
            let mut added = 0;
            for &y in &self.order[..i] {
                if self.block_of[y] != b {
                    added += self.gm[x * ng + y];
                }
            }
            if cross + added > self.cross_budget {
                continue;
            }
            self.block_of[x] = b;
            if self.roots_split_ok() {
                let next_used = if b == used { used + 1 } else { used };
                if let Some(m) = self.run(i + 1, next_used, cross + added) {
                    return Some(m);
                }
            }
            self.block_of[x] = usize::MAX;
        }
        None
    }

    fn roots_split_ok(&self) -> bool {
        if !self.opts.respect_roots {
            return true;
        }
        match self.g.roots() {
            [r, s] => {
                let (a, b) = (self.block_of[*r], self.block_of[*s]);
                a == usize::MAX || b == usize::MAX || a != b
            }
            _ => true,
        }
    }

    fn check_leaf(&self) -> Option<Model> {
        let k = self.blocks;
        let mut sets = vec![Vec::new(); k];
        for v in 0..self.g.vertex_count() {
            sets[self.block_of[v]].push(v);
        }
        if !sets.iter().all(|s| self.g.induces_connected(s)) {
            return None;
        }
        let mut q = Multigraph::new(k);
        for (a, b, m) in self.g.edges() {
            let (x, y) = (self.block_of[a], self.block_of[b]);
            if x != y {
                q.add_edges(x, y, m).expect("quotient edge in range");
            }
        }
        let root_block: Vec<usize> = self.g.roots().iter().map(|&r| self.block_of[r]).collect();
        let unions: Vec<Vec<&String>> = sets.iter().map(|s| label_union(self.g, s)).collect();
        let h = self.h;
        let opts = self.opts;
        let phi = find_isomorphism_with(h, &q, |v, w| {
            if opts.respect_roots {
                let hp = h.root_position(v);
                let qp = root_block.iter().position(|&b| b == w);
                if hp != qp {
                    return false;
                }
            }
            match opts.label_poset {
                Some(p) => labels_dominated(h.labels(v), &unions[w], p),
                None => true,
            }
        })?;
        Some(Model {
            branch_sets: phi.iter().map(|&w| sets[w].clone()).collect(),
        })
    }
}

/// Exact model search: enumerates partitions of `V(g)` into `|V(h)|` blocks
/// (pruned on the number of edges running between blocks), keeps the
/// connected ones and matches the quotient multigraph against `h`.
pub fn find_model(h: &Multigraph, g: &Multigraph, opts: &CheckOptions<'_>) -> Option<Model> {
    let (nh, ng) = (h.vertex_count(), g.vertex_count());
    if nh > ng || h.edge_sum() > g.edge_sum() {
        return None;
    }
    if opts.respect_roots && h.roots().len() != g.roots().len() {
        return None;
    }
    if nh == 0 {
        return (ng == 0).then(|| Model::new(Vec::new()));
    }
    if h.component_count() != g.component_count() {
        return None;
    }
    let mut search = Search {
        h,
        g,
        opts,
        order: bfs_order(g),
        gm: g.matrix(),
        blocks: nh,
        block_of: vec![usize::MAX; ng],
        cross_budget: h.edge_sum(),
    };
    let m = search.run(0, 0, 0)?;
    debug_assert_eq!(verify_model(h, g, &m, opts), Ok(true));
    Some(m)
}

pub fn is_contraction(h: &Multigraph, g: &Multigraph, opts: &CheckOptions<'_>) -> bool {
    find_model(h, g, opts).is_some()
}

/// The contraction order as a [`Comparator`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ContractionOrder<'a> {
    pub opts: CheckOptions<'a>,
}

impl<'a> ContractionOrder<'a> {
    pub fn new(opts: CheckOptions<'a>) -> Self {
        ContractionOrder { opts }
    }
}

impl Comparator<Multigraph> for ContractionOrder<'_> {
    fn leq(&self, a: &Multigraph, b: &Multigraph) -> bool {
        is_contraction(a, b, &self.opts)
    }
}

fn normalize_for(g: &Multigraph, opts: &CheckOptions<'_>) -> Multigraph {
    let mut s = if opts.respect_roots {
        g.clone()
    } else {
        g.without_roots()
    };
    if opts.label_poset.is_none() {
        s = s.without_labels();
    }
    s
}

fn roots_merged(g: &Multigraph) -> bool {
    matches!(g.roots(), [r, s] if r == s)
}

/// Breadth-first walk over every graph reachable by edge contractions,
/// deduplicated by isomorphism. States whose two roots were merged are
/// dropped, as they are not 2-rooted graphs.
fn explore(start: Multigraph, mut visit: impl FnMut(&Multigraph) -> bool) -> IsoSet {
    let mut seen = IsoSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(state) = queue.pop_front() {
        if visit(&state) {
            break;
        }
        for (u, v, _) in state.edges().collect::<Vec<_>>() {
            let next = state.merge_vertices(u, v);
            if roots_merged(&next) {
                continue;
            }
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

fn matches_pattern(h: &Multigraph, state: &Multigraph, opts: &CheckOptions<'_>) -> bool {
    if opts.respect_roots && h.roots().len() != state.roots().len() {
        return false;
    }
    find_isomorphism_with(h, state, |v, w| {
        (!opts.respect_roots || h.root_position(v) == state.root_position(w))
            && opts.label_poset.is_none_or(|p| {
                let host: Vec<&String> = state.labels(w).iter().collect();
                labels_dominated(h.labels(v), &host, p)
            })
    })
    .is_some()
}

/// Reference decision by exhaustive exploration of contraction sequences.
pub fn brute_force_is_contraction(
    h: &Multigraph,
    g: &Multigraph,
    opts: &CheckOptions<'_>,
    bound: usize,
) -> Result<bool, SizeBoundExceeded> {
    if g.edge_sum() > bound {
        return Err(SizeBoundExceeded {
            edge_sum: g.edge_sum(),
            bound,
        });
    }
    if opts.respect_roots && h.roots().len() != g.roots().len() {
        return Ok(false);
    }
    let mut found = false;
    explore(normalize_for(g, opts), |state| {
        found = matches_pattern(h, state, opts);
        found
    });
    Ok(found)
}

/// All contractions of `g` up to isomorphism (roots and labels kept), in
/// breadth-first order. `strict` leaves out `g` itself.
pub fn contraction_closure(
    g: &Multigraph,
    strict: bool,
    bound: usize,
) -> Result<Vec<Multigraph>, SizeBoundExceeded> {
    if g.edge_sum() > bound {
        return Err(SizeBoundExceeded {
            edge_sum: g.edge_sum(),
            bound,
        });
    }
    let mut all = explore(g.clone(), |_| false).into_vec();
    if strict {
        all.remove(0);
    }
    Ok(all)
}

/// Contracts a sequence of edges and returns the result with the model of it
/// in the original graph.
pub fn contract_sequence(
    g: &Multigraph,
    edges: impl IntoIterator<Item = EdgeRef>,
) -> Result<(Multigraph, Model), crate::graph::GraphError> {
    let mut cur = g.clone();
    let mut model = Model::identity(g.vertex_count());
    for e in edges {
        let (keep, gone) = e.endpoints();
        cur = cur.contract_edge(e)?;
        let moved = model.branch_sets.remove(gone);
        model.branch_sets[keep].extend(moved);
        model.branch_sets[keep].sort_unstable();
    }
    Ok((cur, model))
}
