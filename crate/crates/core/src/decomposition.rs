//! Blocks, 2- and 3-connectivity of multigraphs, Tutte decompositions and
//! the torso pieces of a 2-rooted 2-connected graph.
//!
//! Multigraph conventions: `θ_k` is 2-connected for `k ≥ 2` (and a cycle for
//! `k = 2`), 3-connected for `k ≥ 3`. With three or more vertices a
//! multigraph is 2- or 3-connected exactly when its underlying simple graph
//! is.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::construct::{attach, TwoRootedGraph};
use crate::format::{parse_usize, tokens, ParseError};
use crate::graph::{Multigraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("bag of node {node} references vertex {vertex}, graph has {n} vertices")]
    UnknownVertex {
        node: usize,
        vertex: Vertex,
        n: usize,
    },
    #[error("unknown tree node {0}")]
    UnknownNode(usize),
    #[error("graph must have two roots")]
    NotTwoRooted,
    #[error("no bag contains both roots")]
    RootsNotCoresident,
    #[error("decomposition is not a valid Tutte decomposition of the graph")]
    InvalidDecomposition,
}

/// Blocks and cutvertices. Bridges and isolated vertices are blocks too, so
/// every edge lies in exactly one block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockForest {
    pub blocks: Vec<Vec<Vertex>>,
    pub cutvertices: BTreeSet<Vertex>,
    /// `(block index, cutvertex)` incidences.
    pub incidence: Vec<(usize, Vertex)>,
}

pub fn blocks(g: &Multigraph) -> BlockForest {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut found: Vec<Vec<Vertex>> = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        v: Vertex,
        parent: Option<Vertex>,
        adj: &[Vec<Vertex>],
        disc: &mut [usize],
        low: &mut [usize],
        time: &mut usize,
        stack: &mut Vec<(Vertex, Vertex)>,
        found: &mut Vec<Vec<Vertex>>,
    ) {
        disc[v] = *time;
        low[v] = *time;
        *time += 1;
        for &w in &adj[v] {
            if Some(w) == parent {
                continue;
            }
            if disc[w] == usize::MAX {
                stack.push((v, w));
                dfs(w, Some(v), adj, disc, low, time, stack, found);
                low[v] = low[v].min(low[w]);
                if low[w] >= disc[v] {
                    let mut block = BTreeSet::new();
                    while let Some((a, b)) = stack.pop() {
                        block.insert(a);
                        block.insert(b);
                        if (a, b) == (v, w) {
                            break;
                        }
                    }
                    found.push(block.into_iter().collect());
                }
            } else if disc[w] < disc[v] {
                stack.push((v, w));
                low[v] = low[v].min(disc[w]);
            }
        }
    }

    for v in 0..n {
        if disc[v] != usize::MAX {
            continue;
        }
        if adj[v].is_empty() {
            disc[v] = time;
            time += 1;
            found.push(vec![v]);
            continue;
        }
        dfs(
            v, None, &adj, &mut disc, &mut low, &mut time, &mut stack, &mut found,
        );
    }
    found.sort();

    let mut count = vec![0; n];
    for b in &found {
        for &v in b {
            count[v] += 1;
        }
    }
    let cutvertices: BTreeSet<Vertex> = (0..n).filter(|&v| count[v] > 1).collect();
    let incidence = found
        .iter()
        .enumerate()
        .flat_map(|(i, b)| {
            b.iter()
                .filter(|v| cutvertices.contains(v))
                .map(move |&v| (i, v))
        })
        .collect();
    BlockForest {
        blocks: found,
        cutvertices,
        incidence,
    }
}

fn connected_avoiding(
    g: &Multigraph,
    from: Vertex,
    to: Vertex,
    avoid: &[Vertex],
    skip_direct: bool,
) -> bool {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut seen = vec![false; n];
    for &a in avoid {
        seen[a] = true;
    }
    seen[from] = true;
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if skip_direct && ((v == from && w == to) || (v == to && w == from)) {
                continue;
            }
            if w == to {
                return true;
            }
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

/// Whether `u` and `v` are joined by two internally disjoint paths.
fn two_disjoint_paths(g: &Multigraph, u: Vertex, v: Vertex) -> bool {
    match g.multiplicity(u, v) {
        0 => {
            connected_avoiding(g, u, v, &[], false)
                && (0..g.vertex_count())
                    .filter(|&w| w != u && w != v)
                    .all(|w| connected_avoiding(g, u, v, &[w], false))
        }
        1 => connected_avoiding(g, u, v, &[], true),
        _ => true,
    }
}

/// 2-connectivity: at least two vertices and every pair joined by two
/// internally disjoint paths (parallel edges count as distinct paths).
pub fn is_2_connected(g: &Multigraph) -> bool {
    let n = g.vertex_count();
    n >= 2 && (0..n).all(|u| (u + 1..n).all(|v| two_disjoint_paths(g, u, v)))
}

fn connected_without(g: &Multigraph, removed: &[Vertex]) -> bool {
    let keep: Vec<Vertex> = (0..g.vertex_count())
        .filter(|v| !removed.contains(v))
        .collect();
    g.induces_connected(&keep)
}

/// 3-connectivity; `θ_k` counts as 3-connected for `k ≥ 3`.
pub fn is_3_connected(g: &Multigraph) -> bool {
    let n = g.vertex_count();
    if n == 2 {
        return g.multiplicity(0, 1) >= 3;
    }
    if n < 4 || !g.is_connected() {
        return false;
    }
    (0..n).all(|a| (a + 1..n).all(|b| connected_without(g, &[a, b])))
}

/// Connected, every vertex of degree two (with multiplicity); `θ_2` included.
pub fn is_cycle(g: &Multigraph) -> bool {
    g.vertex_count() >= 2 && g.is_connected() && (0..g.vertex_count()).all(|v| g.degree(v) == 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct TreeDecomposition {
    /// Sorted bag contents, indexed by node.
    pub bags: Vec<Vec<Vertex>>,
    /// Undirected tree edges between node indices.
    pub tree: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn single_bag(n: usize) -> Self {
        TreeDecomposition {
            bags: vec![(0..n).collect()],
            tree: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn neighbors(&self, t: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .tree
            .iter()
            .filter_map(|&(a, b)| {
                if a == t {
                    Some(b)
                } else if b == t {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn adhesion(&self, t: usize, u: usize) -> Vec<Vertex> {
        self.bags[t]
            .iter()
            .filter(|v| self.bags[u].contains(v))
            .copied()
            .collect()
    }

    /// Text form: `bag <id>: v...` lines followed by `tree <a> <b>` lines.
    pub fn to_text(&self) -> String {
        let mut lines = Vec::new();
        for (t, bag) in self.bags.iter().enumerate() {
            let vs: Vec<String> = bag.iter().map(|v| v.to_string()).collect();
            lines.push(format!("bag {t}: {}", vs.join(" ")));
        }
        for (a, b) in &self.tree {
            lines.push(format!("tree {a} {b}"));
        }
        lines.join("\n")
    }

    /// Parses [`TreeDecomposition::to_text`] output; `torso` lines are ignored.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut bags: Vec<Option<Vec<Vertex>>> = Vec::new();
        let mut tree = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let toks = tokens(raw);
            match toks[0].1 {
                "bag" => {
                    let Some(&(col, id)) = toks.get(1) else {
                        return Err(ParseError::new(
                            line,
                            toks[0].0,
                            "expected `bag <id>: v...`",
                        ));
                    };
                    let id = id
                        .strip_suffix(':')
                        .ok_or_else(|| ParseError::new(line, col, "expected `:` after bag id"))?;
                    let t = parse_usize((col, id), line, "node id")?;
                    let vs = toks[2..]
                        .iter()
                        .map(|&tok| parse_usize(tok, line, "vertex"))
                        .collect::<Result<BTreeSet<_>, _>>()?;
                    if bags.len() <= t {
                        bags.resize(t + 1, None);
                    }
                    if bags[t].is_some() {
                        return Err(ParseError::new(line, col, format!("duplicate bag {t}")));
                    }
                    bags[t] = Some(vs.into_iter().collect());
                }
                "tree" => {
                    if toks.len() != 3 {
                        return Err(ParseError::new(line, toks[0].0, "expected `tree <a> <b>`"));
                    }
                    let a = parse_usize(toks[1], line, "node id")?;
                    let b = parse_usize(toks[2], line, "node id")?;
                    tree.push((a, b));
                }
                "torso" => {}
                other => {
                    return Err(ParseError::new(
                        line,
                        toks[0].0,
                        format!("unknown directive `{other}`"),
                    ))
                }
            }
        }
        let bags = bags
            .into_iter()
            .enumerate()
            .map(|(t, b)| b.ok_or_else(|| ParseError::new(1, 1, format!("missing bag {t}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TreeDecomposition { bags, tree })
    }
}

/// Simple torso on `bag` given the adhesion sets of the node's neighbours,
/// with bag vertices renumbered in sorted order.
fn torso_of(g: &Multigraph, bag: &[Vertex], adhesions: &[Vec<Vertex>]) -> Multigraph {
    let mut t = g
        .induced(bag)
        .underlying_simple()
        .without_labels()
        .without_roots();
    let local = |v: Vertex| bag.binary_search(&v).expect("adhesion inside bag");
    for adh in adhesions {
        for (i, &x) in adh.iter().enumerate() {
            for &y in &adh[i + 1..] {
                t.set_multiplicity(local(x), local(y), 1).expect("in range");
            }
        }
    }
    t
}

/// The torso of node `t`: the underlying simple graph of the induced
/// subgraph on the bag, plus an edge for each pair shared with a neighbour
/// bag. Local vertex `i` is the `i`-th smallest vertex of the bag.
pub fn torso(
    g: &Multigraph,
    d: &TreeDecomposition,
    t: usize,
) -> Result<Multigraph, DecompositionError> {
    if t >= d.node_count() {
        return Err(DecompositionError::UnknownNode(t));
    }
    check_bags(g, d)?;
    let adhesions: Vec<Vec<Vertex>> = d
        .neighbors(t)
        .into_iter()
        .map(|u| d.adhesion(t, u))
        .collect();
    Ok(torso_of(g, &d.bags[t], &adhesions))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TorsoKind {
    Cycle,
    ThreeConnected,
}

impl fmt::Display for TorsoKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TorsoKind::Cycle => "cycle",
            TorsoKind::ThreeConnected => "3conn",
        })
    }
}

/// Classifies the torso of `t`. Two-vertex bags are judged on the induced
/// multigraph, so that the single bag of `θ_k` is a cycle (`k = 2`) or
/// 3-connected (`k ≥ 3`).
pub fn torso_kind(
    g: &Multigraph,
    d: &TreeDecomposition,
    t: usize,
) -> Result<Option<TorsoKind>, DecompositionError> {
    let simple = torso(g, d, t)?;
    let judged = if d.bags[t].len() == 2 {
        let mut m = g.induced(&d.bags[t]).without_labels().without_roots();
        if m.multiplicity(0, 1) == 0 && simple.multiplicity(0, 1) == 1 {
            m.set_multiplicity(0, 1, 1).expect("in range");
        }
        m
    } else {
        simple
    };
    Ok(if is_3_connected(&judged) {
        Some(TorsoKind::ThreeConnected)
    } else if is_cycle(&judged) {
        Some(TorsoKind::Cycle)
    } else {
        None
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    NotATree,
    UncoveredVertex(Vertex),
    UncoveredEdge(Vertex, Vertex),
    DisconnectedOccurrence(Vertex),
    AdhesionSize { nodes: (usize, usize), size: usize },
    BadTorso(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree => write!(f, "tree edges do not form a tree"),
            Violation::UncoveredVertex(v) => write!(f, "vertex {v} in no bag"),
            Violation::UncoveredEdge(u, v) => write!(f, "edge {u}-{v} in no bag"),
            Violation::DisconnectedOccurrence(v) => {
                write!(f, "bags containing {v} are not connected in the tree")
            }
            Violation::AdhesionSize { nodes, size } => {
                write!(
                    f,
                    "adhesion of tree edge {}-{} has size {size}",
                    nodes.0, nodes.1
                )
            }
            Violation::BadTorso(t) => {
                write!(f, "torso of node {t} is neither 3-connected nor a cycle")
            }
        }
    }
}

fn check_bags(g: &Multigraph, d: &TreeDecomposition) -> Result<(), DecompositionError> {
    for (t, bag) in d.bags.iter().enumerate() {
        if let Some(&v) = bag.iter().find(|&&v| v >= g.vertex_count()) {
            return Err(DecompositionError::UnknownVertex {
                node: t,
                vertex: v,
                n: g.vertex_count(),
            });
        }
    }
    for &(a, b) in &d.tree {
        for x in [a, b] {
            if x >= d.node_count() {
                return Err(DecompositionError::UnknownNode(x));
            }
        }
    }
    Ok(())
}

fn is_tree(nodes: usize, edges: &[(usize, usize)]) -> bool {
    if nodes == 0 {
        return edges.is_empty();
    }
    if edges.len() != nodes - 1 {
        return false;
    }
    let mut adj = vec![Vec::new(); nodes];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; nodes];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == nodes
}

/// Every violated tree-decomposition axiom, every tree edge whose adhesion
/// is not exactly two vertices and every torso that is neither 3-connected
/// nor a cycle. An empty list means `d` is a Tutte decomposition of `g`.
pub fn validate_decomposition(
    g: &Multigraph,
    d: &TreeDecomposition,
) -> Result<Vec<Violation>, DecompositionError> {
    check_bags(g, d)?;
    let mut report = Vec::new();
    let tree_ok = is_tree(d.node_count(), &d.tree);
    if !tree_ok {
        report.push(Violation::NotATree);
    }
    for v in 0..g.vertex_count() {
        if !d.bags.iter().any(|b| b.contains(&v)) {
            report.push(Violation::UncoveredVertex(v));
        }
    }
    for (u, v, _) in g.edges() {
        if !d.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            report.push(Violation::UncoveredEdge(u, v));
        }
    }
    for v in 0..g.vertex_count() {
        let holders: Vec<usize> = (0..d.node_count())
            .filter(|&t| d.bags[t].contains(&v))
            .collect();
        if holders.len() < 2 {
            continue;
        }
        let sub: Vec<(usize, usize)> = d
            .tree
            .iter()
            .filter(|(a, b)| holders.contains(a) && holders.contains(b))
            .map(|&(a, b)| {
                let ia = holders.binary_search(&a).expect("holder");
                let ib = holders.binary_search(&b).expect("holder");
                (ia, ib)
            })
            .collect();
        if !is_tree(holders.len(), &sub) {
            report.push(Violation::DisconnectedOccurrence(v));
        }
    }
    for &(a, b) in &d.tree {
        let size = d.adhesion(a, b).len();
        if size != 2 {
            report.push(Violation::AdhesionSize {
                nodes: (a, b),
                size,
            });
        }
    }
    for t in 0..d.node_count() {
        if torso_kind(g, d, t)?.is_none() {
            report.push(Violation::BadTorso(t));
        }
    }
    Ok(report)
}

/// Working state of the splitting procedure.
struct Builder<'a> {
    simple: &'a Multigraph,
    bags: Vec<Vec<Vertex>>,
    adj: Vec<BTreeSet<usize>>,
    alive: Vec<bool>,
}

impl Builder<'_> {
    fn torso_with(&self, bag: &[Vertex], neighbors: &BTreeSet<usize>) -> Multigraph {
        let adh: Vec<Vec<Vertex>> = neighbors
            .iter()
            .map(|&u| {
                bag.iter()
                    .filter(|v| self.bags[u].binary_search(v).is_ok())
                    .copied()
                    .collect()
            })
            .collect();
        torso_of(self.simple, bag, &adh)
    }

    fn torso(&self, t: usize) -> Multigraph {
        self.torso_with(&self.bags[t], &self.adj[t])
    }

    /// Splits node `t` along the separation pair `(a, b)` of its torso.
    fn split(&mut self, t: usize, torso: &Multigraph, a: usize, b: usize) {
        let bag = self.bags[t].clone();
        let rest: Vec<usize> = (0..bag.len()).filter(|&i| i != a && i != b).collect();
        let comps = torso.induced(&rest).components();
        let first: BTreeSet<Vertex> = comps[0].iter().map(|&i| bag[rest[i]]).collect();
        let mut x1: Vec<Vertex> = first.iter().copied().chain([bag[a], bag[b]]).collect();
        let mut x2: Vec<Vertex> = bag.iter().filter(|v| !first.contains(v)).copied().collect();
        x1.sort_unstable();
        x2.sort_unstable();

        let t2 = self.bags.len();
        self.bags.push(x2);
        self.adj.push(BTreeSet::new());
        self.alive.push(true);
        self.bags[t] = x1;
        let old: Vec<usize> = self.adj[t].iter().copied().collect();
        for u in old {
            let adh = self.adhesion_against(u, &bag);
            if adh.iter().all(|v| self.bags[t].binary_search(v).is_ok()) {
                continue;
            }
            self.adj[t].remove(&u);
            self.adj[u].remove(&t);
            self.adj[u].insert(t2);
            self.adj[t2].insert(u);
        }
        self.adj[t].insert(t2);
        self.adj[t2].insert(t);
    }

    fn adhesion_against(&self, u: usize, bag: &[Vertex]) -> Vec<Vertex> {
        self.bags[u]
            .iter()
            .filter(|v| bag.binary_search(v).is_ok())
            .copied()
            .collect()
    }

    fn merged_torso(&self, t: usize, u: usize) -> (Vec<Vertex>, BTreeSet<usize>, Multigraph) {
        let mut bag: Vec<Vertex> = self.bags[t].iter().chain(&self.bags[u]).copied().collect();
        bag.sort_unstable();
        bag.dedup();
        let nbrs: BTreeSet<usize> = self.adj[t]
            .iter()
            .chain(&self.adj[u])
            .copied()
            .filter(|&x| x != t && x != u)
            .collect();
        let tor = self.torso_with(&bag, &nbrs);
        (bag, nbrs, tor)
    }

    fn merge(&mut self, t: usize, u: usize, bag: Vec<Vertex>, nbrs: BTreeSet<usize>) {
        for &x in &self.adj[u].clone() {
            self.adj[x].remove(&u);
        }
        self.adj[u].clear();
        self.alive[u] = false;
        for &x in &nbrs {
            self.adj[x].insert(t);
        }
        self.adj[t] = nbrs;
        self.bags[t] = bag;
    }
}

fn separation_pair(torso: &Multigraph) -> Option<(usize, usize)> {
    let n = torso.vertex_count();
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .find(|&(a, b)| !connected_without(torso, &[a, b]))
}

/// Tutte decomposition of a 2-connected multigraph: adhesions of size two
/// and every torso 3-connected or a cycle.
///
/// Nodes are split along separation pairs of their torso until every torso
/// is 3-connected or a cycle, then adjacent cycle nodes are merged whenever
/// the merged torso is still a cycle. Nodes are numbered by sorted bag.
pub fn tutte_decomposition(g: &Multigraph) -> Result<TreeDecomposition, DecompositionError> {
    if !is_2_connected(g) {
        return Err(DecompositionError::NotTwoConnected);
    }
    let simple = g.underlying_simple().without_labels().without_roots();
    if g.vertex_count() == 2 {
        return Ok(TreeDecomposition::single_bag(2));
    }
    let mut b = Builder {
        simple: &simple,
        bags: vec![(0..g.vertex_count()).collect()],
        adj: vec![BTreeSet::new()],
        alive: vec![true],
    };

    loop {
        let mut target = None;
        for t in 0..b.bags.len() {
            let tor = b.torso(t);
            if !is_3_connected(&tor) && !is_cycle(&tor) {
                target = Some((t, tor));
                break;
            }
        }
        let Some((t, tor)) = target else { break };
        let (x, y) =
            separation_pair(&tor).expect("2-connected torso that is not 3-connected has a 2-cut");
        b.split(t, &tor, x, y);
    }

    'merging: loop {
        for t in 0..b.bags.len() {
            if !b.alive[t] || !is_cycle(&b.torso(t)) {
                continue;
            }
            for u in b.adj[t].clone() {
                if !is_cycle(&b.torso(u)) {
                    continue;
                }
                let (bag, nbrs, tor) = b.merged_torso(t, u);
                if is_cycle(&tor) {
                    b.merge(t, u, bag, nbrs);
                    continue 'merging;
                }
            }
        }
        break;
    }

    let mut live: Vec<usize> = (0..b.bags.len()).filter(|&t| b.alive[t]).collect();
    live.sort_by(|&x, &y| b.bags[x].cmp(&b.bags[y]));
    let mut index = vec![usize::MAX; b.bags.len()];
    for (i, &t) in live.iter().enumerate() {
        index[t] = i;
    }
    let mut tree = Vec::new();
    for &t in &live {
        for &u in &b.adj[t] {
            if t < u {
                let (x, y) = (index[t], index[u]);
                tree.push((x.min(y), x.max(y)));
            }
        }
    }
    tree.sort_unstable();
    let d = TreeDecomposition {
        bags: live.iter().map(|&t| b.bags[t].clone()).collect(),
        tree,
    };
    debug_assert!(validate_decomposition(g, &d).is_ok_and(|r| r.is_empty()));
    Ok(d)
}

/// One piece hanging off a torso edge `{x, y}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub x: Vertex,
    pub y: Vertex,
    /// Original vertices; position `i` is local vertex `i` of `graph`
    /// (`x` first, `y` second).
    pub vertices: Vec<Vertex>,
    /// Induced subgraph on `vertices`, rooted at `(x, y)`.
    pub graph: TwoRootedGraph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsoPieces {
    pub torso_node: usize,
    pub torso_bag: Vec<Vertex>,
    pub pieces: Vec<Piece>,
    roots: (Vertex, Vertex),
}

/// Splits a 2-rooted 2-connected graph along the torso of the first bag
/// holding both roots: one piece per torso edge `{x, y}`, made of `x`, `y`
/// and the components of `g - bag` attached exactly at `{x, y}`. Every edge
/// of `g` lands in exactly one piece.
pub fn extract_torso_pieces(
    g: &Multigraph,
    d: &TreeDecomposition,
) -> Result<TorsoPieces, DecompositionError> {
    let [r, s] = *g.roots() else {
        return Err(DecompositionError::NotTwoRooted);
    };
    if !is_2_connected(g) {
        return Err(DecompositionError::NotTwoConnected);
    }
    check_bags(g, d)?;
    let t = (0..d.node_count())
        .find(|&t| d.bags[t].contains(&r) && d.bags[t].contains(&s))
        .ok_or(DecompositionError::RootsNotCoresident)?;
    let bag = d.bags[t].clone();
    let tor = torso(g, d, t)?;

    let outside: Vec<Vertex> = (0..g.vertex_count()).filter(|v| !bag.contains(v)).collect();
    let comps: Vec<Vec<Vertex>> = g
        .induced(&outside)
        .components()
        .into_iter()
        .map(|c| c.into_iter().map(|i| outside[i]).collect())
        .collect();
    let mut hanging: Vec<((Vertex, Vertex), Vec<Vertex>)> = Vec::new();
    for c in comps {
        let attach_at: BTreeSet<Vertex> = c
            .iter()
            .flat_map(|&v| g.neighbors(v))
            .filter(|w| bag.contains(w))
            .collect();
        let [x, y] = attach_at.into_iter().collect::<Vec<_>>()[..] else {
            return Err(DecompositionError::InvalidDecomposition);
        };
        let li = bag.binary_search(&x).expect("in bag");
        let lj = bag.binary_search(&y).expect("in bag");
        if tor.multiplicity(li, lj) == 0 {
            return Err(DecompositionError::InvalidDecomposition);
        }
        hanging.push(((x, y), c));
    }

    let mut pieces = Vec::new();
    for (i, j, _) in tor.edges() {
        let (x, y) = (bag[i], bag[j]);
        let mut vertices = vec![x, y];
        for ((a, b), c) in &hanging {
            if (*a, *b) == (x, y) {
                vertices.extend(c);
            }
        }
        vertices[2..].sort_unstable();
        let graph = g
            .without_roots()
            .induced(&vertices)
            .with_roots(&[0, 1])
            .expect("two roots");
        pieces.push(Piece {
            x,
            y,
            vertices,
            graph: TwoRootedGraph::new(graph).expect("two roots"),
        });
    }
    Ok(TorsoPieces {
        torso_node: t,
        torso_bag: bag,
        pieces,
        roots: (r, s),
    })
}

impl TorsoPieces {
    /// Attaches every piece onto the edgeless graph on the torso bag,
    /// rooted like the original graph.
    pub fn reassemble(&self) -> Multigraph {
        let local = |v: Vertex| self.torso_bag.binary_search(&v).expect("in bag");
        let base = Multigraph::new(self.torso_bag.len())
            .with_roots(&[local(self.roots.0), local(self.roots.1)])
            .expect("distinct roots");
        self.pieces.iter().fold(base, |acc, p| {
            attach(&acc, local(p.x), local(p.y), &p.graph).expect("valid attachment")
        })
    }

    /// Piece `i` with `m` parallel edges between its roots.
    pub fn piece_with_root_multiplicity(&self, i: usize, m: usize) -> TwoRootedGraph {
        crate::construct::with_root_multiplicity(&self.pieces[i].graph, m)
    }

    /// A contraction of `g` onto piece `i`: everything outside the piece is
    /// split into two connected regions grown from `x` and `y` and each
    /// region is contracted into its root. Only the root multiplicity
    /// differs from the piece itself.
    pub fn contracted_piece(&self, g: &Multigraph, i: usize) -> TwoRootedGraph {
        let p = &self.pieces[i];
        let n = g.vertex_count();
        let mut inside = vec![false; n];
        for &v in &p.vertices[2..] {
            inside[v] = true;
        }
        let mut owner = vec![usize::MAX; n];
        owner[p.x] = 0;
        owner[p.y] = 1;
        let adj = g.adjacency();
        let mut queue = VecDeque::from([p.x, p.y]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !inside[w] && owner[w] == usize::MAX {
                    owner[w] = owner[v];
                    queue.push_back(w);
                }
            }
        }
        for (k, &v) in p.vertices.iter().enumerate().skip(2) {
            owner[v] = k;
        }
        let mut out = Multigraph::new(p.vertices.len());
        for (a, b, m) in g.edges() {
            let (x, y) = (owner[a], owner[b]);
            if x != usize::MAX && y != usize::MAX && x != y {
                out.add_edges(x, y, m).expect("in range");
            }
        }
        for (v, &o) in owner.iter().enumerate().take(n) {
            if o != usize::MAX {
                for l in g.labels(v) {
                    out.add_label(o, l.clone()).expect("in range");
                }
            }
        }
        TwoRootedGraph::rooted_at(out, 0, 1).expect("distinct roots")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{gen, GraphKind};
    use crate::iso::{is_isomorphic, is_isomorphic_plain};

    fn house() -> Multigraph {
        gen(GraphKind::House).unwrap()
    }

    #[test]
    fn block_examples() {
        let p = blocks(&gen(GraphKind::Path(3)).unwrap());
        assert_eq!(p.blocks, vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(p.cutvertices, BTreeSet::from([1]));

        let h = blocks(&house());
        assert_eq!(h.blocks, vec![vec![0, 1, 2, 3, 4]]);
        assert!(h.cutvertices.is_empty());

        let bowtie = Multigraph::from_edges(
            5,
            [
                (0, 1, 1),
                (1, 2, 1),
                (0, 2, 1),
                (2, 3, 1),
                (3, 4, 1),
                (2, 4, 1),
            ],
        )
        .unwrap();
        let b = blocks(&bowtie);
        assert_eq!(b.blocks.len(), 2);
        assert_eq!(b.cutvertices, BTreeSet::from([2]));
        assert_eq!(b.incidence, vec![(0, 2), (1, 2)]);

        let iso = blocks(&Multigraph::from_edges(3, [(0, 1, 3)]).unwrap());
        assert_eq!(iso.blocks, vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn connectivity_examples() {
        let t2 = gen(GraphKind::Theta(2)).unwrap();
        assert!(is_2_connected(&t2));
        assert!(!is_2_connected(&t2.underlying_simple()));
        assert!(is_3_connected(&gen(GraphKind::Theta(4)).unwrap()));
        assert!(!is_3_connected(&gen(GraphKind::Theta(2)).unwrap()));
        assert!(!is_3_connected(&gen(GraphKind::Cycle(4)).unwrap()));
        assert!(is_3_connected(&gen(GraphKind::Complete(4)).unwrap()));
        assert!(is_3_connected(&gen(GraphKind::Wheel(5)).unwrap()));
        assert!(!is_2_connected(&Multigraph::new(1)));
        assert!(is_2_connected(&house()));
        assert!(!is_3_connected(&house()));
        assert!(is_cycle(&t2) && is_cycle(&gen(GraphKind::Cycle(5)).unwrap()));
    }

    #[test]
    fn house_decomposition() {
        let d = tutte_decomposition(&house()).unwrap();
        assert_eq!(d.bags, vec![vec![0, 1, 2, 3], vec![0, 3, 4]]);
        assert_eq!(d.tree, vec![(0, 1)]);
        assert_eq!(d.adhesion(0, 1), vec![0, 3]);
        assert!(validate_decomposition(&house(), &d).unwrap().is_empty());
        assert!(is_isomorphic(
            &torso(&house(), &d, 0).unwrap(),
            &gen(GraphKind::Cycle(4)).unwrap()
        ));
        assert!(is_isomorphic(
            &torso(&house(), &d, 1).unwrap(),
            &gen(GraphKind::Cycle(3)).unwrap()
        ));
    }

    #[test]
    fn single_bag_cases() {
        let k4 = gen(GraphKind::Complete(4)).unwrap();
        let d = tutte_decomposition(&k4).unwrap();
        assert_eq!(d, TreeDecomposition::single_bag(4));
        assert_eq!(
            torso_kind(&k4, &d, 0).unwrap(),
            Some(TorsoKind::ThreeConnected)
        );

        let t5 = gen(GraphKind::Theta(5)).unwrap();
        let d = tutte_decomposition(&t5).unwrap();
        assert_eq!(d.bags, vec![vec![0, 1]]);
        assert!(validate_decomposition(&t5, &d).unwrap().is_empty());
        assert_eq!(torso(&t5, &d, 0).unwrap(), t5.underlying_simple());

        assert_eq!(
            tutte_decomposition(&gen(GraphKind::Path(3)).unwrap()),
            Err(DecompositionError::NotTwoConnected)
        );
    }

    #[test]
    fn validator_flags_problems() {
        let single = TreeDecomposition::single_bag(5);
        assert_eq!(
            validate_decomposition(&house(), &single).unwrap(),
            vec![Violation::BadTorso(0)]
        );

        let t3 = gen(GraphKind::Theta(3)).unwrap();
        let split = TreeDecomposition {
            bags: vec![vec![0], vec![1]],
            tree: vec![(0, 1)],
        };
        let report = validate_decomposition(&t3, &split).unwrap();
        assert!(report.contains(&Violation::UncoveredEdge(0, 1)));

        let bad = TreeDecomposition {
            bags: vec![vec![0, 7]],
            tree: vec![],
        };
        assert!(matches!(
            validate_decomposition(&t3, &bad),
            Err(DecompositionError::UnknownVertex { vertex: 7, .. })
        ));

        // Vertex 0 in two bags that are not adjacent.
        let c4 = gen(GraphKind::Cycle(4)).unwrap();
        let broken = TreeDecomposition {
            bags: vec![vec![0, 1, 2], vec![1, 2, 3], vec![0, 3]],
            tree: vec![(0, 1), (1, 2)],
        };
        let report = validate_decomposition(&c4, &broken).unwrap();
        assert!(report.contains(&Violation::DisconnectedOccurrence(0)));
    }

    #[test]
    fn decomposition_text_round_trip() {
        let d = tutte_decomposition(&house()).unwrap();
        let text = d.to_text();
        assert_eq!(text, "bag 0: 0 1 2 3\nbag 1: 0 3 4\ntree 0 1");
        assert_eq!(TreeDecomposition::parse(&text).unwrap(), d);
        assert!(TreeDecomposition::parse("bag 0 1 2").is_err());
    }

    #[test]
    fn house_pieces() {
        let g = house().with_roots(&[0, 3]).unwrap();
        let d = tutte_decomposition(&g).unwrap();
        let tp = extract_torso_pieces(&g, &d).unwrap();
        assert_eq!(tp.torso_node, 0);
        assert_eq!(tp.torso_bag, vec![0, 1, 2, 3]);
        assert_eq!(tp.pieces.len(), 4);
        let apex = tp.pieces.iter().find(|p| (p.x, p.y) == (0, 3)).unwrap();
        assert_eq!(apex.vertices, vec![0, 3, 4]);
        assert_eq!(apex.graph.graph().edge_sum(), 3);
        assert!(is_isomorphic(&tp.reassemble(), &g));
    }

    #[test]
    fn theta_single_piece() {
        let g = gen(GraphKind::Theta(4))
            .unwrap()
            .with_roots(&[0, 1])
            .unwrap();
        let d = tutte_decomposition(&g).unwrap();
        let tp = extract_torso_pieces(&g, &d).unwrap();
        assert_eq!(tp.pieces.len(), 1);
        assert_eq!(tp.pieces[0].graph.graph(), &g);
        assert_eq!(tp.reassemble(), g);
    }

    #[test]
    fn k4_pieces_are_edges() {
        let g = gen(GraphKind::Complete(4))
            .unwrap()
            .with_roots(&[0, 1])
            .unwrap();
        let d = tutte_decomposition(&g).unwrap();
        let tp = extract_torso_pieces(&g, &d).unwrap();
        assert_eq!(tp.pieces.len(), 6);
        for p in &tp.pieces {
            assert_eq!(p.graph.graph().vertex_count(), 2);
            assert_eq!(p.graph.root_multiplicity(), 1);
        }
        assert!(is_isomorphic(&tp.reassemble(), &g));
    }

    #[test]
    fn contracted_piece_differs_only_at_roots() {
        let g = house().with_roots(&[0, 3]).unwrap();
        let d = tutte_decomposition(&g).unwrap();
        let tp = extract_torso_pieces(&g, &d).unwrap();
        for i in 0..tp.pieces.len() {
            let c = tp.contracted_piece(&g, i);
            let stripped = crate::construct::strip_root_edges(&c);
            assert_eq!(
                stripped,
                crate::construct::strip_root_edges(&tp.pieces[i].graph)
            );
            assert!(c.root_multiplicity() >= 1);
            assert!(crate::contraction::is_contraction(
                &c.graph().without_roots(),
                &g.without_roots(),
                &crate::contraction::CheckOptions::plain()
            ));
        }
        let reset = tp.piece_with_root_multiplicity(0, 5);
        assert_eq!(reset.root_multiplicity(), 5);
        assert!(is_isomorphic_plain(
            &strip_root(&reset),
            &strip_root(&tp.pieces[0].graph)
        ));
    }

    fn strip_root(h: &TwoRootedGraph) -> Multigraph {
        crate::construct::strip_root_edges(h).into_graph()
    }

    #[test]
    fn pieces_need_roots() {
        let d = tutte_decomposition(&house()).unwrap();
        assert_eq!(
            extract_torso_pieces(&house(), &d),
            Err(DecompositionError::NotTwoRooted)
        );
        let g = house().with_roots(&[1, 4]).unwrap();
        assert_eq!(
            extract_torso_pieces(&g, &d),
            Err(DecompositionError::RootsNotCoresident)
        );
    }
}
