//! Generators and gluing constructions on 2-rooted graphs.

use thiserror::Error;

use crate::graph::{GraphError, Multigraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("attachment vertices must be distinct (got {0} twice)")]
    SameVertex(Vertex),
    #[error("graph must have exactly two roots, found {0}")]
    NotTwoRooted(usize),
    #[error("cycle construction needs at least two pieces, got {0}")]
    TooFewPieces(usize),
    #[error("piece {0} is not connected")]
    DisconnectedPiece(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Named graph families with canonical vertex numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    /// Two vertices joined by `k` parallel edges.
    Theta(usize),
    /// `n` isolated vertices.
    Coclique(usize),
    /// Cycle `0-1-...-(n-1)-0`; `Cycle(2)` is `θ_2`.
    Cycle(usize),
    Complete(usize),
    /// Rim `0..n` in cycle order, hub `n`.
    Wheel(usize),
    /// Path on `n` vertices.
    Path(usize),
    /// Square `0-1-2-3` with apex `4` over the pair `{0, 3}`.
    House,
}

impl GraphKind {
    /// Parses a kind name and its parameters, e.g. `("theta", [5])`.
    pub fn from_args(kind: &str, params: &[usize]) -> Result<Self, ConstructError> {
        let one = || -> Result<usize, ConstructError> {
            match params {
                [x] => Ok(*x),
                _ => Err(ConstructError::BadParameter(format!(
                    "`{kind}` takes exactly one parameter"
                ))),
            }
        };
        Ok(match kind {
            "theta" => GraphKind::Theta(one()?),
            "coclique" => GraphKind::Coclique(one()?),
            "cycle" => GraphKind::Cycle(one()?),
            "complete" => GraphKind::Complete(one()?),
            "wheel" => GraphKind::Wheel(one()?),
            "path" => GraphKind::Path(one()?),
            "house" if params.is_empty() => GraphKind::House,
            "house" => {
                return Err(ConstructError::BadParameter(
                    "`house` takes no parameters".into(),
                ))
            }
            other => {
                return Err(ConstructError::BadParameter(format!(
                    "unknown graph kind `{other}`"
                )))
            }
        })
    }
}

pub fn gen(kind: GraphKind) -> Result<Multigraph, ConstructError> {
    let bad = |msg: &str| Err(ConstructError::BadParameter(msg.to_string()));
    let g = match kind {
        GraphKind::Theta(0) => return bad("theta needs k >= 1"),
        GraphKind::Theta(k) => Multigraph::from_edges(2, [(0, 1, k)])?,
        GraphKind::Coclique(n) => Multigraph::new(n),
        GraphKind::Cycle(n) if n < 2 => return bad("cycle needs n >= 2"),
        GraphKind::Cycle(n) => Multigraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n, 1)))?,
        GraphKind::Complete(0) => return bad("complete graph needs n >= 1"),
        GraphKind::Complete(n) => {
            Multigraph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v, 1))))?
        }
        GraphKind::Wheel(n) if n < 3 => return bad("wheel needs a rim of at least 3"),
        GraphKind::Wheel(n) => Multigraph::from_edges(
            n + 1,
            (0..n)
                .map(|i| (i, (i + 1) % n, 1))
                .chain((0..n).map(|i| (i, n, 1))),
        )?,
        GraphKind::Path(0) => return bad("path needs n >= 1"),
        GraphKind::Path(n) => Multigraph::from_edges(n, (1..n).map(|i| (i - 1, i, 1)))?,
        GraphKind::House => Multigraph::from_edges(
            5,
            [
                (0, 1, 1),
                (1, 2, 1),
                (2, 3, 1),
                (3, 4, 1),
                (4, 0, 1),
                (0, 3, 1),
            ],
        )?,
    };
    Ok(g)
}

/// A multigraph with an ordered pair of distinct roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoRootedGraph(Multigraph);

impl TwoRootedGraph {
    pub fn new(g: Multigraph) -> Result<Self, ConstructError> {
        match g.roots().len() {
            2 => Ok(TwoRootedGraph(g)),
            k => Err(ConstructError::NotTwoRooted(k)),
        }
    }

    /// Roots `g` at `(r, s)`.
    pub fn rooted_at(g: Multigraph, r: Vertex, s: Vertex) -> Result<Self, ConstructError> {
        Ok(TwoRootedGraph(g.with_roots(&[r, s])?))
    }

    pub fn graph(&self) -> &Multigraph {
        &self.0
    }

    pub fn into_graph(self) -> Multigraph {
        self.0
    }

    pub fn roots(&self) -> (Vertex, Vertex) {
        (self.0.roots()[0], self.0.roots()[1])
    }

    pub fn is_edge_rooted(&self) -> bool {
        self.0.is_edge_rooted()
    }

    pub fn root_multiplicity(&self) -> usize {
        let (r, s) = self.roots();
        self.0.multiplicity(r, s)
    }

    /// Same graph with the two roots swapped.
    pub fn reversed(&self) -> Self {
        let (r, s) = self.roots();
        TwoRootedGraph(self.0.clone().with_roots(&[s, r]).expect("distinct roots"))
    }
}

/// Glues `h` onto `g` by identifying `h`'s roots with `u` and `v`.
///
/// Vertices of `g` keep their numbers; the non-root vertices of `h` follow
/// in increasing order. Multiplicities between `u` and `v` add up, label
/// sets at `u` and `v` are united, and the result keeps `g`'s roots.
pub fn attach(
    g: &Multigraph,
    u: Vertex,
    v: Vertex,
    h: &TwoRootedGraph,
) -> Result<Multigraph, ConstructError> {
    if u == v {
        return Err(ConstructError::SameVertex(u));
    }
    for w in [u, v] {
        if w >= g.vertex_count() {
            return Err(GraphError::VertexOutOfRange {
                vertex: w,
                n: g.vertex_count(),
            }
            .into());
        }
    }
    let inner = h.graph();
    let (r, s) = h.roots();
    let base = g.vertex_count();
    let mut map = vec![0; inner.vertex_count()];
    let mut next = base;
    for (x, slot) in map.iter_mut().enumerate() {
        *slot = if x == r {
            u
        } else if x == s {
            v
        } else {
            next += 1;
            next - 1
        };
    }
    let mut out = g.disjoint_union(&Multigraph::new(next - base));
    for (a, b, m) in inner.edges() {
        out.add_edges(map[a], map[b], m)?;
    }
    for (x, &y) in map.iter().enumerate() {
        for l in inner.labels(x) {
            out.add_label(y, l.clone())?;
        }
    }
    Ok(out)
}

/// Left fold of [`attach`] over `attachments`.
pub fn build_on_backbone(
    backbone: &Multigraph,
    attachments: &[(Vertex, Vertex, TwoRootedGraph)],
) -> Result<Multigraph, ConstructError> {
    attachments
        .iter()
        .try_fold(backbone.clone(), |acc, (u, v, h)| attach(&acc, *u, *v, h))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    #[default]
    Forward,
    Reversed,
}

/// Cycle on `v_0, ..., v_{k-1}` where every cycle edge `{v_i, v_{i+1 mod k}}`
/// is replaced by the piece `hs[i]`, attached at `(v_i, v_{i+1})` or, when
/// reversed, at `(v_{i+1}, v_i)`. Missing orientations default to forward.
pub fn cycle_construction(
    hs: &[TwoRootedGraph],
    orientations: &[Orientation],
) -> Result<Multigraph, ConstructError> {
    let k = hs.len();
    if k < 2 {
        return Err(ConstructError::TooFewPieces(k));
    }
    if let Some(i) = hs.iter().position(|h| !h.graph().is_connected()) {
        return Err(ConstructError::DisconnectedPiece(i));
    }
    let mut out = Multigraph::new(k);
    for (i, h) in hs.iter().enumerate() {
        let (a, b) = (i, (i + 1) % k);
        out = match orientations.get(i).copied().unwrap_or_default() {
            Orientation::Forward => attach(&out, a, b, h)?,
            Orientation::Reversed => attach(&out, b, a, h)?,
        };
    }
    Ok(out)
}

/// Deletes every edge between the two roots.
pub fn strip_root_edges(h: &TwoRootedGraph) -> TwoRootedGraph {
    let (r, s) = h.roots();
    let mut g = h.graph().clone();
    g.set_multiplicity(r, s, 0).expect("roots in range");
    TwoRootedGraph(g)
}

/// Sets the multiplicity of the root pair to `m`.
pub fn with_root_multiplicity(h: &TwoRootedGraph, m: usize) -> TwoRootedGraph {
    let (r, s) = h.roots();
    let mut g = h.graph().clone();
    g.set_multiplicity(r, s, m).expect("roots in range");
    TwoRootedGraph(g)
}
