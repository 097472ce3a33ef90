//! Symbolic antichains built from the two infinite families `θ_i` and `K̄_i`,
//! canonicality and fundamentality tests, and a sampling probe of the
//! well-quasi-ordering of `G_{p,k}`.
//!
//! `K̄_1` is the single vertex, which is also a contraction of every `θ_i`.
//! A combined antichain therefore has to leave out `K̄_1` or every `θ_i`.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use rand::seq::SliceRandom;
use serde::Serialize;
use thiserror::Error;

use crate::bonds::max_bond_size;
use crate::construct::{gen, GraphKind};
use crate::contraction::{
    contraction_closure, is_contraction, CheckOptions, ContractionOrder, SizeBoundExceeded,
};
use crate::corpus::{rng, sample_gpk};
use crate::format::parse_graph;
use crate::graph::Multigraph;
use crate::iso::{is_isomorphic_plain, IsoSet};
use crate::poset::find_good_pair;

/// Explicit comparisons against family members run up to this index.
pub const DEFAULT_PROBE_BOUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AntichainError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("extra member {0} is isomorphic to a member of a canonical family")]
    FamilyMember(usize),
    #[error("not a valid antichain")]
    Invalid,
    #[error(transparent)]
    SizeBound(#[from] SizeBoundExceeded),
}

/// `θ_i` for all `i` outside `theta_excluded` (none if `theta_all_absent`),
/// likewise for `K̄_i`, plus finitely many extra graphs.
#[derive(Debug, Clone, Default)]
pub struct SymbolicAntichain {
    pub theta_excluded: BTreeSet<usize>,
    pub coclique_excluded: BTreeSet<usize>,
    pub theta_all_absent: bool,
    pub coclique_all_absent: bool,
    pub extra: Vec<Multigraph>,
}

pub fn theta(i: usize) -> Multigraph {
    gen(GraphKind::Theta(i)).expect("index is positive")
}

pub fn coclique(i: usize) -> Multigraph {
    gen(GraphKind::Coclique(i)).expect("index is positive")
}

impl SymbolicAntichain {
    /// Both families in full.
    pub fn both_families() -> Self {
        SymbolicAntichain::default()
    }

    pub fn theta_family() -> Self {
        SymbolicAntichain {
            coclique_all_absent: true,
            ..Default::default()
        }
    }

    pub fn coclique_family() -> Self {
        SymbolicAntichain {
            theta_all_absent: true,
            ..Default::default()
        }
    }

    /// Nothing at all.
    pub fn empty() -> Self {
        SymbolicAntichain {
            theta_all_absent: true,
            coclique_all_absent: true,
            ..Default::default()
        }
    }

    pub fn exclude_theta(mut self, indices: impl IntoIterator<Item = usize>) -> Self {
        self.theta_excluded.extend(indices);
        self
    }

    pub fn exclude_coclique(mut self, indices: impl IntoIterator<Item = usize>) -> Self {
        self.coclique_excluded.extend(indices);
        self
    }

    pub fn with_extra(mut self, g: Multigraph) -> Self {
        self.extra.push(g);
        self
    }

    pub fn includes_theta(&self, i: usize) -> bool {
        !self.theta_all_absent && i >= 1 && !self.theta_excluded.contains(&i)
    }

    pub fn includes_coclique(&self, i: usize) -> bool {
        !self.coclique_all_absent && i >= 1 && !self.coclique_excluded.contains(&i)
    }

    /// Parses the text form, loading `extra` graphs relative to `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self, AntichainError> {
        Self::parse_with(text, |name| {
            let path = base.join(name);
            let body =
                std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            parse_graph(&body).map_err(|e| format!("{}: {e}", path.display()))
        })
    }

    /// Parses `theta exclude <i,...>|none|all`, `coclique exclude ...` and
    /// `extra <name>` lines; `load` resolves extra names to graphs.
    pub fn parse_with(
        text: &str,
        mut load: impl FnMut(&str) -> Result<Multigraph, String>,
    ) -> Result<Self, AntichainError> {
        let mut a = SymbolicAntichain::default();
        let mut seen = BTreeSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |message: String| AntichainError::Parse { line, message };
            let trimmed = raw.split('#').next().unwrap_or("").trim();
            if trimmed.is_empty() {
                continue;
            }
            let words: Vec<&str> = trimmed.split_whitespace().collect();
            match words[..] {
                [family @ ("theta" | "coclique"), "exclude", spec] => {
                    if !seen.insert(family) {
                        return Err(err(format!("duplicate `{family}` line")));
                    }
                    let (set, all) = match spec {
                        "none" => (BTreeSet::new(), false),
                        "all" => (BTreeSet::new(), true),
                        list => {
                            let set = list
                                .split(',')
                                .map(|s| match s.trim().parse::<usize>() {
                                    Ok(0) | Err(_) => Err(err(format!("bad index `{s}`"))),
                                    Ok(v) => Ok(v),
                                })
                                .collect::<Result<BTreeSet<_>, _>>()?;
                            (set, false)
                        }
                    };
                    if family == "theta" {
                        a.theta_excluded = set;
                        a.theta_all_absent = all;
                    } else {
                        a.coclique_excluded = set;
                        a.coclique_all_absent = all;
                    }
                }
                ["extra", name] => a.extra.push(load(name).map_err(err)?),
                _ => return Err(err(format!("cannot parse `{trimmed}`"))),
            }
        }
        Ok(a)
    }
}

impl fmt::Display for SymbolicAntichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let family = |f: &mut fmt::Formatter<'_>, name: &str, all: bool, ex: &BTreeSet<usize>| {
            let spec = if all {
                "all".to_string()
            } else if ex.is_empty() {
                "none".to_string()
            } else {
                ex.iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            writeln!(f, "{name} exclude {spec}")
        };
        family(f, "theta", self.theta_all_absent, &self.theta_excluded)?;
        family(
            f,
            "coclique",
            self.coclique_all_absent,
            &self.coclique_excluded,
        )?;
        write!(f, "extra graphs: {}", self.extra.len())
    }
}

/// Indices `i` with `θ_i ⊴ g` or `g ⊴ θ_i`; `all` is set for `K_1`, which
/// is a contraction of every `θ_i`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Comparability {
    pub indices: BTreeSet<usize>,
    pub all: bool,
}

impl Comparability {
    pub fn contains(&self, i: usize) -> bool {
        self.all || self.indices.contains(&i)
    }
}

fn check_bound(g: &Multigraph, bound: usize) -> Result<(), SizeBoundExceeded> {
    if g.edge_sum() > bound {
        return Err(SizeBoundExceeded {
            edge_sum: g.edge_sum(),
            bound,
        });
    }
    Ok(())
}

fn theta_index(g: &Multigraph) -> Option<usize> {
    (g.vertex_count() == 2 && g.multiplicity(0, 1) > 0).then(|| g.multiplicity(0, 1))
}

fn coclique_index(g: &Multigraph) -> Option<usize> {
    (g.vertex_count() >= 1 && g.edge_sum() == 0).then(|| g.vertex_count())
}

pub fn comparable_with_theta(
    g: &Multigraph,
    bound: usize,
) -> Result<Comparability, SizeBoundExceeded> {
    check_bound(g, bound)?;
    let g = g.without_roots().without_labels();
    if g.vertex_count() == 1 {
        return Ok(Comparability {
            indices: BTreeSet::new(),
            all: true,
        });
    }
    let mut indices: BTreeSet<usize> = (1..=max_bond_size(&g))
        .filter(|&i| is_contraction(&theta(i), &g, &CheckOptions::plain()))
        .collect();
    indices.extend(theta_index(&g));
    Ok(Comparability {
        indices,
        all: false,
    })
}

pub fn comparable_with_coclique(g: &Multigraph) -> BTreeSet<usize> {
    if g.vertex_count() == 0 {
        return BTreeSet::new();
    }
    let mut out = BTreeSet::from([g.component_count()]);
    out.extend(coclique_index(g));
    out
}

fn plain(g: &Multigraph) -> Multigraph {
    g.without_roots().without_labels()
}

/// Whether the presented family is a ⊴-antichain. Family members up to
/// `probe_bound` are compared with each extra graph by explicit contraction
/// checks; beyond it the comparability sets decide.
pub fn is_valid_antichain(
    a: &SymbolicAntichain,
    probe_bound: usize,
    bound: usize,
) -> Result<bool, AntichainError> {
    let extra: Vec<Multigraph> = a.extra.iter().map(plain).collect();
    for (idx, g) in extra.iter().enumerate() {
        check_bound(g, bound)?;
        if theta_index(g).is_some() || coclique_index(g).is_some() {
            return Err(AntichainError::FamilyMember(idx));
        }
    }
    if a.includes_coclique(1) && !a.theta_all_absent {
        return Ok(false);
    }
    let opts = CheckOptions::plain();
    for (i, g) in extra.iter().enumerate() {
        for h in &extra[i + 1..] {
            if is_isomorphic_plain(g, h)
                || is_contraction(g, h, &opts)
                || is_contraction(h, g, &opts)
            {
                return Ok(false);
            }
        }
    }
    for g in &extra {
        for i in 1..=probe_bound {
            if a.includes_theta(i)
                && (is_contraction(&theta(i), g, &opts) || is_contraction(g, &theta(i), &opts))
            {
                return Ok(false);
            }
            if a.includes_coclique(i)
                && (is_contraction(&coclique(i), g, &opts)
                    || is_contraction(g, &coclique(i), &opts))
            {
                return Ok(false);
            }
        }
        let th = comparable_with_theta(g, bound)?;
        if (th.all && !a.theta_all_absent)
            || th
                .indices
                .iter()
                .any(|&i| i > probe_bound && a.includes_theta(i))
        {
            return Ok(false);
        }
        if comparable_with_coclique(g)
            .iter()
            .any(|&i| i > probe_bound && a.includes_coclique(i))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Canonical exactly when neither family is entirely absent: a cofinite
/// family leaves finitely many members out and the extras are finite.
pub fn is_canonical(a: &SymbolicAntichain, bound: usize) -> Result<bool, AntichainError> {
    if !is_valid_antichain(a, DEFAULT_PROBE_BOUND, bound)? {
        return Err(AntichainError::Invalid);
    }
    Ok(!a.theta_all_absent && !a.coclique_all_absent)
}

/// Graphs strictly below some member: `K_1` when any `θ_i` is present
/// (the cocliques contribute nothing) and the strict contraction closures of
/// the extra graphs, deduplicated up to isomorphism.
pub fn down_set(a: &SymbolicAntichain, bound: usize) -> Result<Vec<Multigraph>, SizeBoundExceeded> {
    let mut out = IsoSet::new();
    if !a.theta_all_absent {
        out.insert(Multigraph::new(1));
    }
    for g in &a.extra {
        for h in contraction_closure(&plain(g), true, bound)? {
            out.insert(h);
        }
    }
    Ok(out.into_vec())
}

/// Fundamental when the strict down-set has no infinite antichain; the
/// down-set of a representable antichain is computed in full and is finite.
pub fn is_fundamental(a: &SymbolicAntichain, bound: usize) -> Result<bool, SizeBoundExceeded> {
    down_set(a, bound).map(|_| true)
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeConfig {
    pub p: usize,
    pub k: usize,
    pub length: usize,
    pub trials: usize,
    pub seed: u64,
    pub max_vertices: usize,
    pub max_edge_sum: usize,
}

impl ProbeConfig {
    pub fn new(p: usize, k: usize, length: usize, trials: usize) -> Self {
        ProbeConfig {
            p,
            k,
            length,
            trials,
            seed: 0,
            max_vertices: 6,
            max_edge_sum: 8,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeTrial {
    /// 0-based indices `i < j` with `seq[i] ⊴ seq[j]`.
    pub good_pair: Option<(usize, usize)>,
    /// The sampled sequence, kept only when no good pair was found.
    pub miss: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeReport {
    pub config: ProbeConfig,
    pub trials: Vec<ProbeTrial>,
    /// Control trials over shuffled `θ` sequences that found no good pair.
    pub theta_controls_clean: usize,
    /// Control trials over shuffled `K̄` sequences that found no good pair.
    pub coclique_controls_clean: usize,
}

impl ProbeReport {
    pub fn hits(&self) -> usize {
        self.trials.iter().filter(|t| t.good_pair.is_some()).count()
    }
}

/// Samples sequences from `G_{p,k}` and looks for a good pair in each. Each
/// trial also runs two negative controls: `length` distinct members of
/// `A_θ` and of `A_K̄` in random order, which never contain a good pair.
pub fn wqo_probe(config: &ProbeConfig) -> ProbeReport {
    let order = ContractionOrder::new(CheckOptions::plain());
    let mut trials = Vec::new();
    let (mut theta_clean, mut coclique_clean) = (0, 0);
    for t in 0..config.trials {
        let mut r = rng(config.seed.wrapping_add(t as u64));
        let seq: Vec<Multigraph> = (0..config.length)
            .map(|_| {
                sample_gpk(
                    &mut r,
                    config.p,
                    config.k,
                    config.max_vertices,
                    config.max_edge_sum,
                )
            })
            .collect();
        let good_pair = find_good_pair(&seq, &order);
        let miss = good_pair.is_none().then(|| {
            seq.iter()
                .map(|g| crate::format::serialize_graph(g, crate::format::GraphFormat::MgText))
                .collect()
        });
        trials.push(ProbeTrial { good_pair, miss });

        let mut idx: Vec<usize> = (1..=2 * config.length).collect();
        idx.shuffle(&mut r);
        idx.truncate(config.length);
        let thetas: Vec<Multigraph> = idx.iter().map(|&i| theta(i)).collect();
        if find_good_pair(&thetas, &order).is_none() {
            theta_clean += 1;
        }
        let cocliques: Vec<Multigraph> = idx.iter().map(|&i| coclique(i)).collect();
        if find_good_pair(&cocliques, &order).is_none() {
            coclique_clean += 1;
        }
    }
    ProbeReport {
        config: config.clone(),
        trials,
        theta_controls_clean: theta_clean,
        coclique_controls_clean: coclique_clean,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bonds::enumerate_bonds;
    use crate::contraction::DEFAULT_ORACLE_BOUND as B;
    use crate::corpus::random_connected;
    use crate::iso::is_isomorphic;

    fn house() -> Multigraph {
        gen(GraphKind::House).unwrap()
    }

    #[test]
    fn theta_comparability_examples() {
        let k1 = comparable_with_theta(&Multigraph::new(1), B).unwrap();
        assert!(k1.all);
        let h = comparable_with_theta(&house(), B).unwrap();
        // The house is 2-edge-connected, so θ_1 is not a contraction of it.
        assert_eq!(h.indices, BTreeSet::from([2, 3]));
        assert!(!h.all);
        assert!(comparable_with_theta(&coclique(2), B)
            .unwrap()
            .indices
            .is_empty());
        assert_eq!(
            comparable_with_theta(&theta(5), B).unwrap().indices,
            BTreeSet::from([5])
        );
    }

    #[test]
    fn coclique_comparability_examples() {
        assert_eq!(
            comparable_with_coclique(&house().disjoint_union(&Multigraph::new(1))),
            BTreeSet::from([2])
        );
        assert_eq!(comparable_with_coclique(&coclique(4)), BTreeSet::from([4]));
        assert_eq!(comparable_with_coclique(&theta(3)), BTreeSet::from([1]));
    }

    #[test]
    fn theta_comparability_matches_bonds() {
        let mut r = rng(5);
        for _ in 0..60 {
            let g = random_connected(&mut r, 5, 3);
            let sizes: BTreeSet<usize> = enumerate_bonds(&g).iter().map(|b| b.size()).collect();
            let c = comparable_with_theta(&g, B).unwrap();
            assert_eq!(c.indices, sizes);
            for i in 1..=8 {
                let direct = is_contraction(&theta(i), &g, &CheckOptions::plain())
                    || is_contraction(&g, &theta(i), &CheckOptions::plain());
                assert_eq!(c.contains(i), direct);
            }
        }
    }

    #[test]
    fn validity_examples() {
        let both = SymbolicAntichain::both_families().exclude_coclique([1]);
        assert_eq!(is_valid_antichain(&both, 8, B), Ok(true));
        assert_eq!(
            is_valid_antichain(&SymbolicAntichain::both_families(), 8, B),
            Ok(false)
        );

        let with_k1 = both.clone().with_extra(Multigraph::new(1));
        assert_eq!(
            is_valid_antichain(&with_k1, 8, B),
            Err(AntichainError::FamilyMember(0))
        );
        let with_k2 = both
            .clone()
            .with_extra(Multigraph::from_edges(3, [(0, 1, 1), (1, 2, 1)]).unwrap());
        assert_eq!(is_valid_antichain(&with_k2, 8, B), Ok(false));

        let house_ok = both.clone().exclude_theta([1, 2, 3]).with_extra(house());
        assert_eq!(is_valid_antichain(&house_ok, 8, B), Ok(true));
        let house_bad = both.exclude_theta([1, 2]).with_extra(house());
        assert_eq!(is_valid_antichain(&house_bad, 8, B), Ok(false));
        let house_bad = house_ok
            .clone()
            .with_extra(gen(GraphKind::Cycle(3)).unwrap());
        assert_eq!(is_valid_antichain(&house_bad, 8, B), Ok(false));
    }

    #[test]
    fn tail_beyond_probe_bound_is_symbolic() {
        // θ_10 with a pendant edge.
        let g = Multigraph::from_edges(3, [(0, 1, 10), (1, 2, 1)]).unwrap();
        let a = SymbolicAntichain::theta_family()
            .exclude_theta(1..=9)
            .with_extra(g);
        assert_eq!(is_valid_antichain(&a, 3, B), Ok(false));
        let a = a.exclude_theta([10]);
        assert_eq!(is_valid_antichain(&a, 3, B), Ok(true));
    }

    #[test]
    fn canonical_examples() {
        let both = SymbolicAntichain::both_families().exclude_coclique([1]);
        assert_eq!(is_canonical(&both, B), Ok(true));
        assert_eq!(
            is_canonical(&SymbolicAntichain::theta_family(), B),
            Ok(false)
        );
        let cut = both.clone().exclude_theta([1]);
        assert_eq!(is_canonical(&cut, B), Ok(true));
        assert_eq!(
            is_canonical(&SymbolicAntichain::both_families(), B),
            Err(AntichainError::Invalid)
        );
    }

    #[test]
    fn down_set_examples() {
        let both = SymbolicAntichain::both_families().exclude_coclique([1]);
        let d = down_set(&both, B).unwrap();
        assert_eq!(d.len(), 1);
        assert!(is_isomorphic(&d[0], &Multigraph::new(1)));

        let tri = SymbolicAntichain::empty().with_extra(gen(GraphKind::Cycle(3)).unwrap());
        let d = down_set(&tri, B).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.iter().any(|g| is_isomorphic(g, &theta(2))));
        assert!(d.iter().any(|g| is_isomorphic(g, &Multigraph::new(1))));

        assert!(down_set(&SymbolicAntichain::empty(), B).unwrap().is_empty());
        assert_eq!(is_fundamental(&both, B), Ok(true));
        assert_eq!(is_fundamental(&tri, B), Ok(true));
    }

    #[test]
    fn parse_antichain_text() {
        let text = "theta exclude 1,2,3\ncoclique exclude 1\nextra house.mg\n";
        let a = SymbolicAntichain::parse_with(text, |name| {
            assert_eq!(name, "house.mg");
            Ok(house())
        })
        .unwrap();
        assert_eq!(a.theta_excluded, BTreeSet::from([1, 2, 3]));
        assert_eq!(a.coclique_excluded, BTreeSet::from([1]));
        assert_eq!(a.extra.len(), 1);
        let a = SymbolicAntichain::parse_with(
            "theta exclude none\ncoclique exclude all",
            |_| unreachable!(),
        )
        .unwrap();
        assert!(a.coclique_all_absent && !a.theta_all_absent);
        assert!(SymbolicAntichain::parse_with("theta exclude 0", |_| unreachable!()).is_err());
        assert!(SymbolicAntichain::parse_with("bogus", |_| unreachable!()).is_err());
    }

    #[test]
    fn probe_finds_good_pairs() {
        let mut c = ProbeConfig::new(1, 3, 30, 3);
        c.seed = 9;
        let report = wqo_probe(&c);
        assert_eq!(report.hits(), 3);
        assert_eq!(report.theta_controls_clean, 3);
        assert_eq!(report.coclique_controls_clean, 3);
    }
}
