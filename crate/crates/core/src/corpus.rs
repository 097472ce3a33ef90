//! Seeded random graphs and exhaustive enumeration for tests and probes.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bonds::classify;
use crate::contraction::{contract_sequence, Model};
use crate::graph::{EdgeRef, Multigraph, Vertex};
use crate::iso::IsoSet;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `edge_sum` edges between uniformly random distinct pairs.
pub fn random_multigraph(rng: &mut impl Rng, n: usize, edge_sum: usize) -> Multigraph {
    let mut g = Multigraph::new(n);
    if n >= 2 {
        for _ in 0..edge_sum {
            let (u, v) = random_pair(rng, n);
            g.add_edges(u, v, 1).expect("in range");
        }
    }
    g
}

fn random_pair(rng: &mut impl Rng, n: usize) -> (Vertex, Vertex) {
    let u = rng.gen_range(0..n);
    let mut v = rng.gen_range(0..n - 1);
    if v >= u {
        v += 1;
    }
    (u, v)
}

/// A random spanning tree plus `extra` random edges.
pub fn random_connected(rng: &mut impl Rng, n: usize, extra: usize) -> Multigraph {
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    let mut g = Multigraph::new(n);
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        g.add_edges(parent, order[i], 1).expect("in range");
    }
    if n >= 2 {
        for _ in 0..extra {
            let (u, v) = random_pair(rng, n);
            g.add_edges(u, v, 1).expect("in range");
        }
    }
    g
}

/// A 2-connected graph on `n ≥ 3` vertices grown by ears from a cycle, with
/// `extra` additional random edges (possibly parallel).
pub fn random_two_connected(rng: &mut impl Rng, n: usize, extra: usize) -> Multigraph {
    assert!(n >= 2, "2-connected graphs need two vertices");
    if n == 2 {
        return Multigraph::from_edges(2, [(0, 1, 2 + extra)]).expect("valid");
    }
    let mut g = Multigraph::new(n);
    let start = rng.gen_range(3..=n);
    for i in 0..start {
        g.add_edges(i, (i + 1) % start, 1).expect("in range");
    }
    let mut placed = start;
    while placed < n {
        let len = rng.gen_range(1..=n - placed);
        let (a, b) = random_pair(rng, placed);
        let mut prev = a;
        for w in placed..placed + len {
            g.add_edges(prev, w, 1).expect("in range");
            prev = w;
        }
        g.add_edges(prev, b, 1).expect("in range");
        placed += len;
    }
    for _ in 0..extra {
        let (u, v) = random_pair(rng, n);
        g.add_edges(u, v, 1).expect("in range");
    }
    g
}

/// Attaches random label sets drawn from `alphabet`.
pub fn random_labels(rng: &mut impl Rng, g: &Multigraph, alphabet: &[&str]) -> Multigraph {
    let mut out = g.clone();
    for v in 0..g.vertex_count() {
        for l in alphabet {
            if rng.gen_bool(0.3) {
                out.add_label(v, *l).expect("in range");
            }
        }
    }
    out
}

/// Two distinct random roots.
pub fn random_roots(rng: &mut impl Rng, g: &Multigraph) -> Multigraph {
    let (r, s) = random_pair(rng, g.vertex_count());
    g.clone().with_roots(&[r, s]).expect("distinct roots")
}

/// Rejection sampler for `G_{p,k}`: random graphs with at most `max_n`
/// vertices and edge sum at most `max_edge_sum`, kept when they have at most
/// `p` components and no bond larger than `k`.
pub fn sample_gpk(
    rng: &mut impl Rng,
    p: usize,
    k: usize,
    max_n: usize,
    max_edge_sum: usize,
) -> Multigraph {
    loop {
        let n = rng.gen_range(1..=max_n);
        let m = rng.gen_range(0..=max_edge_sum);
        let g = random_multigraph(rng, n, m);
        if classify(&g).belongs_to(p, k) {
            return g;
        }
    }
}

/// Contracts up to `steps` random edges, never the pair of roots, and
/// returns the contraction with its model.
pub fn random_contraction(rng: &mut impl Rng, g: &Multigraph, steps: usize) -> (Multigraph, Model) {
    let mut cur = g.clone();
    let mut model = Model::identity(g.vertex_count());
    for _ in 0..steps {
        let roots = cur.roots().to_vec();
        let candidates: Vec<EdgeRef> = cur
            .edges()
            .filter(|&(u, v, _)| !(roots.contains(&u) && roots.contains(&v)))
            .map(|(u, v, _)| EdgeRef::new(u, v).expect("loop-free"))
            .collect();
        let Some(&e) = candidates.choose(rng) else {
            break;
        };
        let (next, step) = contract_sequence(&cur, [e]).expect("edge exists");
        model = step.compose(&model);
        cur = next;
    }
    (cur, model)
}

/// Every multigraph with exactly `n` vertices and edge sum at most
/// `max_edge_sum`, up to isomorphism.
pub fn all_graphs(n: usize, max_edge_sum: usize, connected_only: bool) -> Vec<Multigraph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut seen = IsoSet::new();
    let mut mults = vec![0usize; pairs.len()];
    fn rec(
        i: usize,
        left: usize,
        n: usize,
        pairs: &[(Vertex, Vertex)],
        mults: &mut Vec<usize>,
        connected_only: bool,
        seen: &mut IsoSet,
    ) {
        if i == pairs.len() {
            let g = Multigraph::from_edges(
                n,
                pairs
                    .iter()
                    .zip(mults.iter())
                    .filter(|(_, &m)| m > 0)
                    .map(|(&(u, v), &m)| (u, v, m)),
            )
            .expect("valid");
            if !connected_only || g.is_connected() {
                seen.insert(g);
            }
            return;
        }
        for m in 0..=left {
            mults[i] = m;
            rec(i + 1, left - m, n, pairs, mults, connected_only, seen);
        }
        mults[i] = 0;
    }
    rec(
        0,
        max_edge_sum,
        n,
        &pairs,
        &mut mults,
        connected_only,
        &mut seen,
    );
    seen.into_vec()
}

/// [`all_graphs`] for every vertex count from 1 to `max_n`.
pub fn all_graphs_up_to(
    max_n: usize,
    max_edge_sum: usize,
    connected_only: bool,
) -> Vec<Multigraph> {
    (1..=max_n)
        .flat_map(|n| all_graphs(n, max_edge_sum, connected_only))
        .collect()
}

/// Every simple graph on `n` vertices, up to isomorphism, grown one vertex
/// at a time by joining a new vertex to every subset of the old ones.
pub fn all_simple_graphs(n: usize) -> Vec<Multigraph> {
    let mut level = vec![Multigraph::new(0)];
    for k in 0..n {
        let mut seen = IsoSet::new();
        for g in &level {
            for mask in 0u64..(1u64 << k) {
                let mut h = g.disjoint_union(&Multigraph::new(1));
                for v in (0..k).filter(|v| mask >> v & 1 == 1) {
                    h.add_edges(v, k, 1).expect("in range");
                }
                seen.insert(h);
            }
        }
        level = seen.into_vec();
    }
    level
}
