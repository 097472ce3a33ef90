//! Named randomized property suites. Every suite is deterministic in its
//! seed and keeps the first counterexample it finds.

use rand::seq::{IteratorRandom, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bonds::{
    classify, coclique_characterization, enumerate_bonds, max_bond_size, theta_characterization,
};
use crate::construct::{
    attach, build_on_backbone, cycle_construction, strip_root_edges, with_root_multiplicity,
    TwoRootedGraph,
};
use crate::contraction::{
    brute_force_is_contraction, contract_sequence, contraction_closure, is_contraction,
    verify_model, CheckOptions, DEFAULT_ORACLE_BOUND,
};
use crate::corpus::{
    random_connected, random_contraction, random_labels, random_multigraph, random_roots,
    random_two_connected, rng,
};
use crate::decomposition::{
    extract_torso_pieces, is_2_connected, tutte_decomposition, validate_decomposition,
};
use crate::format::{parse_graph, parse_structured, serialize_graph, GraphFormat};
use crate::graph::{EdgeRef, Multigraph};
use crate::iso::{invariant_key, is_isomorphic};
use crate::poset::FinitePoset;
use crate::wqo::{
    comparable_with_theta, down_set, is_canonical, is_fundamental, is_valid_antichain,
    SymbolicAntichain, DEFAULT_PROBE_BOUND,
};

pub const SUITES: &[&str] = &[
    "oracle-equivalence",
    "lemma1-attach-monotone",
    "iso-equivalence",
    "contract-edge",
    "serialize-roundtrip",
    "closure-consistency",
    "label-relabel",
    "rooted-implies-unrooted",
    "bond-minimality",
    "theta-characterization",
    "coclique-characterization",
    "lemma8",
    "tutte-valid",
    "reassembly",
    "backbone",
    "lemma3-cycle",
    "lemma4-strip",
    "downset-finite",
    "canonical-implies-fundamental",
    "theta-bonds-cross",
];

pub const DEFAULT_TRIALS: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

/// A failing trial with the graphs involved, in the text format.
#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub message: String,
    pub graphs: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub failures: usize,
    pub counterexample: Option<Counterexample>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

type Failure = (String, Vec<Multigraph>);
type TrialResult = Result<(), Failure>;

fn fail(message: impl Into<String>, graphs: &[&Multigraph]) -> TrialResult {
    Err((
        message.into(),
        graphs.iter().map(|g| (*g).clone()).collect(),
    ))
}

/// The label poset used by labeled suites: chains `a ≤ b ≤ c` and `x ≤ y`,
/// with `d` and `z` incomparable to everything else.
pub fn sample_poset() -> FinitePoset {
    FinitePoset::new(
        ["a", "b", "c", "d", "x", "y", "z"],
        [("a", "b"), ("b", "c"), ("x", "y")],
    )
    .expect("valid poset")
}

const ALPHABET: &[&str] = &["a", "b", "c", "d"];

/// Labels for attached pieces, unrelated to [`ALPHABET`]. When both sides of
/// an attachment may carry related labels at a shared root, the union at
/// that root can need more targets than the injective set order allows.
const PIECE_ALPHABET: &[&str] = &["x", "y", "z"];

/// Replaces each label by a random label below it, or drops it.
fn weaken_labels(r: &mut ChaCha8Rng, g: &Multigraph, poset: &FinitePoset) -> Multigraph {
    let mut out = g.without_labels();
    for v in 0..g.vertex_count() {
        for l in g.labels(v) {
            if r.gen_bool(0.2) {
                continue;
            }
            let below: Vec<&String> = poset
                .elements()
                .iter()
                .filter(|x| poset.leq_ids(x, l))
                .collect();
            let pick = below.choose(r).expect("reflexive");
            out.add_label(v, pick.as_str()).expect("in range");
        }
    }
    out.with_roots(g.roots()).expect("same roots")
}

fn rooted_connected(r: &mut ChaCha8Rng, n: usize, extra: usize) -> Multigraph {
    let g = random_connected(r, n, extra);
    random_roots(r, &g)
}

/// One trial of attach monotonicity: `H ⊴ H'` and `G ⊴^μ G'` give
/// `G ⊕_{u,v} H ⊴ G' ⊕_{u',v'} H'` for `u' ∈ μ(u)`, `v' ∈ μ(v)`, with roots
/// and labels respected. The pieces are labeled from [`PIECE_ALPHABET`].
pub fn lemma1_trial(r: &mut ChaCha8Rng) -> TrialResult {
    let poset = sample_poset();
    let hn = r.gen_range(2..=4);
    let extra = r.gen_range(0..=2);
    let base = rooted_connected(r, hn, extra);
    let h_big = random_labels(r, &base, PIECE_ALPHABET);
    let steps = r.gen_range(0..hn);
    let (h_small, _) = random_contraction(r, &h_big, steps);
    let h_small = weaken_labels(r, &h_small, &poset);

    let gn = r.gen_range(2..=5);
    let extra = r.gen_range(0..=2);
    let base = rooted_connected(r, gn, extra);
    let g_big = random_labels(r, &base, ALPHABET);
    let steps = r.gen_range(0..gn);
    let (g_small, mu) = random_contraction(r, &g_big, steps);
    let g_small = weaken_labels(r, &g_small, &poset);
    if g_small.vertex_count() < 2 {
        return Ok(());
    }
    let (u, v) = {
        let pair: Vec<usize> = (0..g_small.vertex_count()).choose_multiple(r, 2);
        (pair[0], pair[1])
    };
    let u2 = *mu.branch_sets[u].choose(r).expect("nonempty branch set");
    let v2 = *mu.branch_sets[v].choose(r).expect("nonempty branch set");

    let hs = TwoRootedGraph::new(h_small).expect("rooted");
    let hb = TwoRootedGraph::new(h_big).expect("rooted");
    let left = attach(&g_small, u, v, &hs).expect("valid attach");
    let right = attach(&g_big, u2, v2, &hb).expect("valid attach");
    if is_contraction(&left, &right, &CheckOptions::rooted_labeled(&poset)) {
        Ok(())
    } else {
        fail("G ⊕ H is not a contraction of G' ⊕ H'", &[&left, &right])
    }
}

fn random_piece(r: &mut ChaCha8Rng) -> TwoRootedGraph {
    let n = r.gen_range(2..=3);
    let extra = r.gen_range(0..=1);
    let g = random_connected(r, n, extra);
    let piece = TwoRootedGraph::new(random_roots(r, &g)).expect("rooted");
    if r.gen_bool(0.5) {
        piece.reversed()
    } else {
        piece
    }
}

/// One trial of cycle monotonicity: `hs ≼* hs'` gives
/// `cycle(hs) ⊴ cycle(hs')`.
pub fn lemma3_trial(r: &mut ChaCha8Rng) -> TrialResult {
    let l = r.gen_range(2..=4);
    let big: Vec<TwoRootedGraph> = (0..l).map(|_| random_piece(r)).collect();
    let k = r.gen_range(2..=l);
    let mut rho: Vec<usize> = (0..l).choose_multiple(r, k);
    rho.sort_unstable();
    let small: Vec<TwoRootedGraph> = rho
        .iter()
        .map(|&j| {
            let steps = r.gen_range(0..big[j].graph().vertex_count());
            let (h, _) = random_contraction(r, big[j].graph(), steps);
            TwoRootedGraph::new(h).expect("rooted")
        })
        .collect();
    let left = cycle_construction(&small, &[]).expect("connected pieces");
    let right = cycle_construction(&big, &[]).expect("connected pieces");
    if is_contraction(&left, &right, &CheckOptions::plain()) {
        Ok(())
    } else {
        fail(
            "cycle(hs) is not a contraction of cycle(hs')",
            &[&left, &right],
        )
    }
}

/// One trial of root-edge stripping: for edge-rooted `H`, `G` with the same
/// root multiplicity, `H ⊴ G` iff `H⁻ ⊴ G⁻`. Returns whether `H ⊴ G`.
pub fn lemma4_trial(r: &mut ChaCha8Rng) -> Result<bool, Failure> {
    let n = r.gen_range(2..=6);
    let extra = r.gen_range(0..=3);
    let g = rooted_connected(r, n, extra);
    let h = if r.gen_bool(0.7) {
        let steps = r.gen_range(0..n);
        random_contraction(r, &g, steps).0
    } else {
        let m = r.gen_range(2..=n);
        let extra = r.gen_range(0..=2);
        rooted_connected(r, m, extra)
    };
    let m = r.gen_range(1..=3);
    let g = with_root_multiplicity(&TwoRootedGraph::new(g).expect("rooted"), m);
    let h = with_root_multiplicity(&TwoRootedGraph::new(h).expect("rooted"), m);
    let opts = CheckOptions::rooted();
    let full = is_contraction(h.graph(), g.graph(), &opts);
    let stripped = is_contraction(
        strip_root_edges(&h).graph(),
        strip_root_edges(&g).graph(),
        &opts,
    );
    if full == stripped {
        Ok(full)
    } else {
        Err((
            format!("H ⊴ G is {full} but H⁻ ⊴ G⁻ is {stripped}"),
            vec![h.into_graph(), g.into_graph()],
        ))
    }
}

/// One reassembly trial on a random 2-connected graph rooted at two
/// vertices of one bag.
pub fn reassembly_trial(r: &mut ChaCha8Rng) -> TrialResult {
    let n = r.gen_range(2..=7);
    let extra = r.gen_range(0..=2);
    let g = random_two_connected(r, n, extra);
    let d = tutte_decomposition(&g).expect("2-connected");
    let bag = d.bags.choose(r).expect("nonempty decomposition");
    let pair: Vec<usize> = bag.iter().copied().choose_multiple(r, 2);
    let g = g.with_roots(&[pair[1], pair[0]]).expect("distinct roots");
    let pieces = match extract_torso_pieces(&g, &d) {
        Ok(p) => p,
        Err(e) => return fail(format!("extraction failed: {e}"), &[&g]),
    };
    let back = pieces.reassemble();
    if is_isomorphic(&back, &g) {
        Ok(())
    } else {
        fail("reassembled graph differs", &[&g, &back])
    }
}

fn oracle_trial(r: &mut ChaCha8Rng) -> TrialResult {
    let n = r.gen_range(1..=5);
    let extra = r.gen_range(0..=3);
    let mut g = random_connected(r, n, extra);
    let rooted = n >= 2 && r.gen_bool(0.3);
    if rooted {
        g = random_roots(r, &g);
    }
    let h = if r.gen_bool(0.5) {
        let steps = r.gen_range(0..=n);
        random_contraction(r, &g, steps).0
    } else {
        let m = r.gen_range(1..=n);
        let edges = r.gen_range(0..=4);
        let h = random_multigraph(r, m, edges);
        if rooted && m >= 2 {
            random_roots(r, &h)
        } else {
            h
        }
    };
    let opts = if rooted {
        CheckOptions::rooted()
    } else {
        CheckOptions::plain()
    };
    let fast = is_contraction(&h, &g, &opts);
    let slow =
        brute_force_is_contraction(&h, &g, &opts, DEFAULT_ORACLE_BOUND).expect("within bound");
    if fast == slow {
        Ok(())
    } else {
        fail(
            format!("model search says {fast}, oracle says {slow}"),
            &[&h, &g],
        )
    }
}

fn iso_trial(r: &mut ChaCha8Rng) -> TrialResult {
    let n = r.gen_range(1..=7);
    let edges = r.gen_range(0..=9);
    let g = random_multigraph(r, n, edges);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(r);
    let p = g.permuted(&perm);
    if !is_isomorphic(&g, &p) || invariant_key(&g) != invariant_key(&p) {
        return fail("graph not isomorphic to its permutation", &[&g, &p]);
    }
    Ok(())
}

fn contract_edge_trial(r: &mut ChaCha8Rng) -> TrialResult {
    let n = r.gen_range(2..=6);
    let extra = r.gen_range(0..=3);
    let g = random_connected(r, n, extra);
    let (u, v, m) = g.edges().choose(r).expect("connected graph has edges");
    let e = EdgeRef::new(u, v).expect("loop-free");
    let (h, model) = contract_sequence(&g, [e]).expect("edge exists");
    if h.edge_sum() + m != g.edge_sum() || h.vertex_count() + 1 != g.vertex_count() {
        return fail("contraction changed sizes wrongly", &[&g, &h]);
    }
    if verify_model(&h, &g, &model, &CheckOptions::plain()) != Ok(true) {
        return fail("contraction model does not verify", &[&g, &h]);
    }
    Ok(())
}

fn serialize_trial(r: &mut ChaCha8Rng) -> TrialResult {
    let n = r.gen_range(0..=6);
    let edges = r.gen_range(0..=8);
    let base = random_multigraph(r, n, edges);
    let mut g = random_labels(r, &base, ALPHABET);
    if n >= 2 && r.gen_bool(0.5) {
        g = random_roots(r, &g);
    }
    let text = serialize_graph(&g, GraphFormat::MgText);
    let json = serialize_graph(&g, GraphFormat::Structured);
    if parse_graph(&text).as_ref() != Ok(&g) || parse_structured(&json).as_ref() != Ok(&g) {
        return fail("round trip changed the graph", &[&g]);
    }
    Ok(())
}

fn closure_trial(r: &mut ChaCha8Rng) -> TrialResult {
    let n = r.gen_range(1..=5);
    let extra = r.gen_range(0..=2);
    let g = random_connected(r, n, extra);
    let closure = contraction_closure(&g, false, DEFAULT_ORACLE_BOUND).expect("within bound");
    if !is_isomorphic(&closure[0], &g) {
        return fail("closure does not start with the graph", &[&g]);
    }
    for h in &closure {
        if !is_contraction(h, &g, &CheckOptions::plain()) {
            return fail("closure member is not a contraction", &[h, &g]);
        }
    }
    Ok(())
}

fn label_relabel_trial(r: &mut ChaCha8Rng) -> TrialResult {
    let poset = sample_poset();
    let n = r.gen_range(1..=5);
    let extra = r.gen_range(0..=2);
    let base = random_connected(r, n, extra);
    let g = random_labels(r, &base, ALPHABET);
    let steps = r.gen_range(0..n);
    let (h, _) = random_contraction(r, &g, steps);
    let h = weaken_labels(r, &h, &poset);
    if is_contraction(&h, &g, &CheckOptions::labeled(&poset)) {
        Ok(())
    } else {
        fail("weakened contraction not below the graph", &[&h, &g])
    }
}

fn rooted_unrooted_trial(r: &mut ChaCha8Rng) -> TrialResult {
    let n = r.gen_range(2..=5);
    let extra = r.gen_range(0..=2);
    let g = rooted_connected(r, n, extra);
    let m = r.gen_range(2..=n);
    let extra = r.gen_range(0..=2);
    let h = rooted_connected(r, m, extra);
    if is_contraction(&h, &g, &CheckOptions::rooted())
        && !is_contraction(&h, &g, &CheckOptions::plain())
    {
        return fail("rooted contraction without unrooted one", &[&h, &g]);
    }
    Ok(())
}

fn bond_trial(r: &mut ChaCha8Rng) -> TrialResult {
    let n = r.gen_range(1..=6);
    let edges = r.gen_range(0..=8);
    let g = random_multigraph(r, n, edges);
    for b in enumerate_bonds(&g) {
        if !b.is_minimal_cut(&g) {
            return fail(format!("`{b}` is not a minimal cut"), &[&g]);
        }
    }
    Ok(())
}

fn theta_char_trial(r: &mut ChaCha8Rng) -> TrialResult {
    let n = r.gen_range(1..=5);
    let edges = r.gen_range(0..=7);
    let g = random_multigraph(r, n, edges);
    match theta_characterization(&g, DEFAULT_ORACLE_BOUND) {
        Ok(true) => Ok(()),
        _ => fail("bond sizes disagree with θ contractions", &[&g]),
    }
}

fn coclique_char_trial(r: &mut ChaCha8Rng) -> TrialResult {
    let n = r.gen_range(1..=6);
    let edges = r.gen_range(0..=6);
    let g = random_multigraph(r, n, edges);
    match coclique_characterization(&g, n + 1, DEFAULT_ORACLE_BOUND) {
        Ok(true) => Ok(()),
        _ => fail(
            "component count disagrees with coclique contractions",
            &[&g],
        ),
    }
}

fn lemma8_trial(r: &mut ChaCha8Rng) -> TrialResult {
    let n = r.gen_range(1..=6);
    let edges = r.gen_range(0..=9);
    let g = random_multigraph(r, n, edges);
    let simple = g.underlying_simple();
    let simple_2c = simple.vertex_count() >= 3 && is_2_connected(&simple);
    let theta = n == 2 && g.multiplicity(0, 1) >= 2;
    if is_2_connected(&g) == (simple_2c || theta) {
        Ok(())
    } else {
        fail("2-connectivity disagrees with the simple graph", &[&g])
    }
}

fn tutte_trial(r: &mut ChaCha8Rng) -> TrialResult {
    let n = r.gen_range(2..=7);
    let extra = r.gen_range(0..=3);
    let g = random_two_connected(r, n, extra);
    let d = tutte_decomposition(&g).expect("2-connected");
    let report = validate_decomposition(&g, &d).expect("bags in range");
    if report.is_empty() {
        Ok(())
    } else {
        fail(
            format!("{} violations, first: {}", report.len(), report[0]),
            &[&g],
        )
    }
}

fn backbone_trial(r: &mut ChaCha8Rng) -> TrialResult {
    let n = r.gen_range(2..=3);
    let edges = r.gen_range(0..=1);
    let backbone = random_multigraph(r, n, edges);
    let count = r.gen_range(1..=2);
    let mut small = Vec::new();
    let mut big = Vec::new();
    for _ in 0..count {
        let pair: Vec<usize> = (0..n).choose_multiple(r, 2);
        let g = random_piece(r);
        let steps = r.gen_range(0..g.graph().vertex_count());
        let (h, _) = random_contraction(r, g.graph(), steps);
        small.push((pair[0], pair[1], TwoRootedGraph::new(h).expect("rooted")));
        big.push((pair[0], pair[1], g));
    }
    let left = build_on_backbone(&backbone, &small).expect("valid");
    let right = build_on_backbone(&backbone, &big).expect("valid");
    if is_contraction(&left, &right, &CheckOptions::plain()) {
        Ok(())
    } else {
        fail(
            "same-backbone constructions not comparable",
            &[&left, &right],
        )
    }
}

fn downset_trial(r: &mut ChaCha8Rng) -> TrialResult {
    let n = r.gen_range(3..=5);
    let extra = r.gen_range(0..=2);
    let g = random_connected(r, n, extra);
    let a = SymbolicAntichain::empty().with_extra(g.clone());
    let d = down_set(&a, DEFAULT_ORACLE_BOUND).expect("within bound");
    let closure = contraction_closure(&g, true, DEFAULT_ORACLE_BOUND).expect("within bound");
    if d.len() > 1 + closure.len() {
        return fail("down-set larger than the closure bound", &[&g]);
    }
    for h in &d {
        if is_isomorphic(h, &g) || !is_contraction(h, &g, &CheckOptions::plain()) {
            return fail("down-set member not strictly below", &[h, &g]);
        }
    }
    Ok(())
}

fn canonical_trial(r: &mut ChaCha8Rng) -> TrialResult {
    let mut a = SymbolicAntichain::both_families();
    a.theta_all_absent = r.gen_bool(0.2);
    a.coclique_all_absent = r.gen_bool(0.2);
    a = a.exclude_coclique([1]);
    a = a.exclude_theta((1..=6).filter(|_| r.gen_bool(0.4)));
    a = a.exclude_coclique((2..=6).filter(|_| r.gen_bool(0.4)));
    let valid = is_valid_antichain(&a, DEFAULT_PROBE_BOUND, DEFAULT_ORACLE_BOUND).unwrap_or(false);
    if !valid {
        return Ok(());
    }
    let canonical = is_canonical(&a, DEFAULT_ORACLE_BOUND).unwrap_or(false);
    let fundamental = is_fundamental(&a, DEFAULT_ORACLE_BOUND).unwrap_or(false);
    if canonical && !fundamental {
        return Err((format!("canonical but not fundamental: {a}"), Vec::new()));
    }
    Ok(())
}

fn theta_bonds_trial(r: &mut ChaCha8Rng) -> TrialResult {
    let n = r.gen_range(3..=5);
    let extra = r.gen_range(0..=3);
    let g = random_connected(r, n, extra);
    let sizes: std::collections::BTreeSet<usize> =
        enumerate_bonds(&g).iter().map(|b| b.size()).collect();
    let c = comparable_with_theta(&g, DEFAULT_ORACLE_BOUND).expect("within bound");
    if c.indices != sizes || c.all || classify(&g).k != max_bond_size(&g) {
        return fail("θ comparability differs from bond sizes", &[&g]);
    }
    Ok(())
}

fn trial_fn(name: &str) -> Option<fn(&mut ChaCha8Rng) -> TrialResult> {
    Some(match name {
        "oracle-equivalence" => oracle_trial,
        "lemma1-attach-monotone" => lemma1_trial,
        "iso-equivalence" => iso_trial,
        "contract-edge" => contract_edge_trial,
        "serialize-roundtrip" => serialize_trial,
        "closure-consistency" => closure_trial,
        "label-relabel" => label_relabel_trial,
        "rooted-implies-unrooted" => rooted_unrooted_trial,
        "bond-minimality" => bond_trial,
        "theta-characterization" => theta_char_trial,
        "coclique-characterization" => coclique_char_trial,
        "lemma8" => lemma8_trial,
        "tutte-valid" => tutte_trial,
        "reassembly" => reassembly_trial,
        "backbone" => backbone_trial,
        "lemma3-cycle" => lemma3_trial,
        "lemma4-strip" => |r| lemma4_trial(r).map(|_| ()),
        "downset-finite" => downset_trial,
        "canonical-implies-fundamental" => canonical_trial,
        "theta-bonds-cross" => theta_bonds_trial,
        _ => return None,
    })
}

/// Runs `trials` trials of `suite`; trial `i` is seeded with `seed + i`.
pub fn run_suite(suite: &str, seed: u64, trials: usize) -> Result<SuiteReport, UnknownSuite> {
    let f = trial_fn(suite).ok_or_else(|| UnknownSuite(suite.to_string()))?;
    let mut failures = 0;
    let mut counterexample = None;
    for i in 0..trials {
        let mut r = rng(seed.wrapping_add(i as u64));
        if let Err((message, graphs)) = f(&mut r) {
            failures += 1;
            counterexample.get_or_insert_with(|| Counterexample {
                trial: i,
                message,
                graphs: graphs
                    .iter()
                    .map(|g| serialize_graph(g, GraphFormat::MgText))
                    .collect(),
            });
        }
    }
    Ok(SuiteReport {
        suite: suite.to_string(),
        seed,
        trials,
        failures,
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes() {
        for name in SUITES {
            let report = run_suite(name, 7, 15).unwrap();
            assert!(report.passed(), "{name}: {:?}", report.counterexample);
        }
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert_eq!(
            run_suite("nope", 0, 1).unwrap_err(),
            UnknownSuite("nope".into())
        );
    }

    #[test]
    fn reports_are_deterministic() {
        let a = serde_json::to_string(&run_suite("oracle-equivalence", 3, 10).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite("oracle-equivalence", 3, 10).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn related_labels_at_a_shared_root_break_monotonicity() {
        let poset = sample_poset();
        let edge = |l: &str| {
            let mut g = Multigraph::from_edges(2, [(0, 1, 1)])
                .unwrap()
                .with_roots(&[0, 1])
                .unwrap();
            g.add_label(0, l).unwrap();
            g
        };
        let opts = CheckOptions::rooted_labeled(&poset);
        let (g, g2) = (edge("a"), edge("c"));
        let h = TwoRootedGraph::new(edge("c")).unwrap();
        assert!(is_contraction(&g, &g2, &opts));
        let left = attach(&g, 0, 1, &h).unwrap();
        let right = attach(&g2, 0, 1, &h).unwrap();
        assert!(!is_contraction(&left, &right, &opts));
    }

    #[test]
    fn lemma4_sees_both_outcomes() {
        let outcomes: Vec<bool> = (0..60)
            .map(|i| lemma4_trial(&mut rng(i)).unwrap())
            .collect();
        assert!(outcomes.contains(&true) && outcomes.contains(&false));
    }
}
