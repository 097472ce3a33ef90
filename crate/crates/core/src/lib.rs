//! Contraction of loop-free multigraphs, bonds, Tutte decompositions and
//! the antichain machinery behind the well-quasi-ordering of `G_{p,k}`.

pub mod bonds;
pub mod cli;
pub mod construct;
pub mod contraction;
pub mod corpus;
pub mod decomposition;
pub mod format;
pub mod graph;
pub mod iso;
pub mod poset;
pub mod props;
pub mod wqo;

pub use graph::{EdgeRef, GraphError, Label, LabelSet, Multigraph, Vertex};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/multigraphs.md")]
    mod multigraphs {}
    #[doc = include_str!("../../../book/src/contraction.md")]
    mod contraction {}
    #[doc = include_str!("../../../book/src/bonds.md")]
    mod bonds {}
    #[doc = include_str!("../../../book/src/decomposition.md")]
    mod decomposition {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/antichains.md")]
    mod antichains {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
