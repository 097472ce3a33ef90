//! Bonds (minimal non-empty edge cuts) and the `(p, k)` classification.
//!
//! A bond of a graph is exactly the set of edges between the two sides of a
//! bipartition of one component into two connected halves, so bonds are
//! enumerated that way. Sizes count multiplicity.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::construct::{gen, GraphKind};
use crate::contraction::{is_contraction, CheckOptions, SizeBoundExceeded};
use crate::graph::{EdgeRef, Multigraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bond {
    /// Crossing pairs with their multiplicities, sorted.
    pub edges: Vec<(EdgeRef, usize)>,
    /// The side containing the smallest vertex of the component.
    pub side: BTreeSet<Vertex>,
}

impl Bond {
    pub fn size(&self) -> usize {
        self.edges.iter().map(|&(_, m)| m).sum()
    }

    /// Re-checks minimality: deleting the bond adds exactly one component
    /// and putting back any single pair undoes that.
    pub fn is_minimal_cut(&self, g: &Multigraph) -> bool {
        let base = g.component_count();
        let cut = |skip: Option<usize>| {
            let mut h = g.clone();
            for (i, &(e, _)) in self.edges.iter().enumerate() {
                if Some(i) != skip {
                    let (u, v) = e.endpoints();
                    h.set_multiplicity(u, v, 0).expect("bond edge in range");
                }
            }
            h.component_count()
        };
        if self.edges.is_empty() || cut(None) != base + 1 {
            return false;
        }
        (0..self.edges.len()).all(|i| cut(Some(i)) == base)
    }
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, m) in &self.edges {
            if *m == 1 {
                write!(f, "{e} ")?;
            } else {
                write!(f, "{e}x{m} ")?;
            }
        }
        write!(f, "size={}", self.size())
    }
}

/// Component count and largest bond.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PKClass {
    pub p: usize,
    pub k: usize,
}

impl PKClass {
    /// Whether a graph of this class lies in `G_{p,k}`.
    pub fn belongs_to(&self, p: usize, k: usize) -> bool {
        self.p <= p && self.k <= k
    }
}

impl fmt::Display for PKClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} k={}", self.p, self.k)
    }
}

fn crossing_edges(g: &Multigraph, side: &[bool]) -> Vec<(EdgeRef, usize)> {
    g.edges()
        .filter(|&(u, v, _)| side[u] != side[v])
        .map(|(u, v, m)| (EdgeRef::new(u, v).expect("loop-free"), m))
        .collect()
}

/// All bonds of `g`.
pub fn enumerate_bonds(g: &Multigraph) -> Vec<Bond> {
    let mut out = Vec::new();
    for comp in g.components() {
        if comp.len() < 2 {
            continue;
        }
        let (first, rest) = comp.split_first().expect("nonempty component");
        // Subsets of the rest joined with `first` form one side.
        let k = rest.len();
        for mask in 0u64..(1u64 << k) - 1 {
            let mut a = vec![*first];
            let mut b = Vec::new();
            for (i, &v) in rest.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    a.push(v);
                } else {
                    b.push(v);
                }
            }
            if !g.induces_connected(&a) || !g.induces_connected(&b) {
                continue;
            }
            let mut side = vec![false; g.vertex_count()];
            for &v in &a {
                side[v] = true;
            }
            out.push(Bond {
                edges: crossing_edges(g, &side),
                side: a.into_iter().collect(),
            });
        }
    }
    out.sort_by(|x, y| x.edges.cmp(&y.edges));
    out
}

pub fn max_bond_size(g: &Multigraph) -> usize {
    enumerate_bonds(g).iter().map(Bond::size).max().unwrap_or(0)
}

pub fn classify(g: &Multigraph) -> PKClass {
    PKClass {
        p: g.component_count(),
        k: max_bond_size(g),
    }
}

/// `θ_k` together with `p - 1` isolated vertices: the graph a `p`-component
/// graph contracts to when one of its components holds a bond of size `k`.
pub fn padded_theta(k: usize, p: usize) -> Multigraph {
    let theta = gen(GraphKind::Theta(k)).expect("k >= 1");
    theta.disjoint_union(&Multigraph::new(p.saturating_sub(1)))
}

fn check_bound(g: &Multigraph, bound: usize) -> Result<(), SizeBoundExceeded> {
    if g.edge_sum() > bound {
        Err(SizeBoundExceeded {
            edge_sum: g.edge_sum(),
            bound,
        })
    } else {
        Ok(())
    }
}

/// Checks, for every `k` up to one past the largest bond, that a bond of
/// size `k` exists exactly when `θ_k` (padded with isolated vertices for the
/// other components) is a contraction of `g`.
pub fn theta_characterization(g: &Multigraph, bound: usize) -> Result<bool, SizeBoundExceeded> {
    check_bound(g, bound)?;
    let sizes: BTreeSet<usize> = enumerate_bonds(g).iter().map(Bond::size).collect();
    let top = sizes.iter().next_back().copied().unwrap_or(0);
    let p = g.component_count();
    Ok((1..=top + 1).all(|k| {
        sizes.contains(&k) == is_contraction(&padded_theta(k, p), g, &CheckOptions::plain())
    }))
}

/// Checks that `K̄_q ⊴ g` holds for `q ≤ p_max` exactly when `q` is the
/// component count of `g`.
pub fn coclique_characterization(
    g: &Multigraph,
    p_max: usize,
    bound: usize,
) -> Result<bool, SizeBoundExceeded> {
    check_bound(g, bound)?;
    let p = g.component_count();
    Ok((1..=p_max).all(|q| {
        let kq = gen(GraphKind::Coclique(q)).expect("coclique");
        is_contraction(&kq, g, &CheckOptions::plain()) == (q == p)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn house() -> Multigraph {
        gen(GraphKind::House).unwrap()
    }

    fn e(u: usize, v: usize) -> EdgeRef {
        EdgeRef::new(u, v).unwrap()
    }

    #[test]
    fn theta_has_one_bond() {
        let bonds = enumerate_bonds(&gen(GraphKind::Theta(3)).unwrap());
        assert_eq!(bonds.len(), 1);
        assert_eq!(bonds[0].size(), 3);
    }

    #[test]
    fn coclique_has_no_bonds() {
        let g = gen(GraphKind::Coclique(4)).unwrap();
        assert!(enumerate_bonds(&g).is_empty());
        assert_eq!(max_bond_size(&g), 0);
    }

    #[test]
    fn house_dashed_bond() {
        let bonds = enumerate_bonds(&house());
        let want = vec![(e(0, 3), 1), (e(1, 2), 1), (e(3, 4), 1)];
        assert!(bonds.iter().any(|b| b.edges == want));
        assert!(bonds.iter().all(|b| b.is_minimal_cut(&house())));
    }

    /// Largest cut between two connected sides, by scanning all 2^n vertex
    /// bipartitions independently of `enumerate_bonds`.
    fn brute_max_bond(g: &Multigraph) -> usize {
        let n = g.vertex_count();
        let mut best = 0;
        for mask in 1u32..(1 << n) - 1 {
            let a: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let b: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 0).collect();
            if g.induces_connected(&a) && g.induces_connected(&b) {
                let cut: usize = g
                    .edges()
                    .filter(|&(u, v, _)| (mask >> u & 1) != (mask >> v & 1))
                    .map(|(_, _, m)| m)
                    .sum();
                best = best.max(cut);
            }
        }
        best
    }

    #[test]
    fn house_max_bond_is_three() {
        assert_eq!(brute_max_bond(&house()), 3);
        assert_eq!(max_bond_size(&house()), 3);
        assert_eq!(max_bond_size(&gen(GraphKind::Theta(7)).unwrap()), 7);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&gen(GraphKind::Theta(5)).unwrap()),
            PKClass { p: 1, k: 5 }
        );
        assert_eq!(
            classify(&gen(GraphKind::Coclique(4)).unwrap()),
            PKClass { p: 4, k: 0 }
        );
        let g = house().disjoint_union(&Multigraph::new(1));
        let c = classify(&g);
        assert_eq!(c, PKClass { p: 2, k: 3 });
        assert_eq!(c.to_string(), "p=2 k=3");
        assert!(c.belongs_to(2, 3) && c.belongs_to(5, 9) && !c.belongs_to(1, 3));
        assert_eq!(classify(&Multigraph::new(0)), PKClass { p: 0, k: 0 });
    }

    #[test]
    fn characterizations_hold() {
        assert_eq!(theta_characterization(&house(), 12), Ok(true));
        assert_eq!(
            theta_characterization(&gen(GraphKind::Theta(6)).unwrap(), 12),
            Ok(true)
        );
        let hk = house().disjoint_union(&Multigraph::new(1));
        assert_eq!(theta_characterization(&hk, 12), Ok(true));
        assert_eq!(coclique_characterization(&hk, 3, 12), Ok(true));
        assert_eq!(
            coclique_characterization(&gen(GraphKind::Coclique(3)).unwrap(), 3, 12),
            Ok(true)
        );
        assert_eq!(
            coclique_characterization(&gen(GraphKind::Theta(2)).unwrap(), 2, 12),
            Ok(true)
        );
        assert!(theta_characterization(&gen(GraphKind::Theta(20)).unwrap(), 12).is_err());
    }

    #[test]
    fn bond_display() {
        let b = &enumerate_bonds(&gen(GraphKind::Theta(2)).unwrap())[0];
        assert_eq!(b.to_string(), "0-1x2 size=2");
    }
}
