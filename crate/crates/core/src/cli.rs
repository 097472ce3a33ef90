//! Command-line front end. Exit codes: 0 yes/pass, 1 no/fail, 2 usage or
//! input error, 3 size bound exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bonds::{classify, enumerate_bonds};
use crate::construct::{attach, gen, GraphKind, TwoRootedGraph};
use crate::contraction::{
    brute_force_is_contraction, contraction_closure, find_model, CheckOptions, ContractionOrder,
    SizeBoundExceeded, DEFAULT_ORACLE_BOUND,
};
use crate::decomposition::{
    torso_kind, tutte_decomposition, validate_decomposition, TreeDecomposition,
};
use crate::format::{parse_graph, parse_structured, serialize_graph, GraphDocument, GraphFormat};
use crate::graph::Multigraph;
use crate::poset::{find_good_pair, FinitePoset};
use crate::props::{run_suite, DEFAULT_TRIALS, SUITES};
use crate::wqo::{
    down_set, is_canonical, is_fundamental, is_valid_antichain, wqo_probe, AntichainError,
    ProbeConfig, SymbolicAntichain, DEFAULT_PROBE_BOUND,
};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

/// Default cap on host vertices for the model search.
pub const DEFAULT_MAX_HOST: usize = 9;

#[derive(Debug, Parser)]
#[command(
    name = "multicontract",
    version,
    about = "Contraction order on multigraphs"
)]
pub struct Cli {
    /// Print structured JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OutFormat {
    Mg,
    Json,
    Dot,
}

impl From<OutFormat> for GraphFormat {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Mg => GraphFormat::MgText,
            OutFormat::Json => GraphFormat::Structured,
            OutFormat::Dot => GraphFormat::Dot,
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct OrderArgs {
    /// Require models to be root-preserving.
    #[arg(long)]
    pub roots: bool,
    /// Poset file; models must then be label-preserving.
    #[arg(long, value_name = "POSET")]
    pub labels: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a named graph: theta K, coclique N, cycle N, complete N, wheel N, path N, house.
    Gen {
        kind: String,
        params: Vec<usize>,
        #[arg(long, value_enum, default_value = "mg")]
        format: OutFormat,
    },
    /// Convert a graph file to another format.
    Convert {
        graph: PathBuf,
        #[arg(long, value_enum)]
        to: OutFormat,
    },
    /// Decide H ⊴ G by model search.
    Contract {
        pattern: PathBuf,
        host: PathBuf,
        #[command(flatten)]
        order: OrderArgs,
        /// Write the model found as JSON.
        #[arg(long, value_name = "FILE")]
        model_out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_HOST)]
        max_host: usize,
    },
    /// Decide H ⊴ G by exploring contraction sequences.
    Oracle {
        pattern: PathBuf,
        host: PathBuf,
        #[command(flatten)]
        order: OrderArgs,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        max_edges: usize,
    },
    /// List all bonds.
    Bonds { graph: PathBuf },
    /// Print component count and largest bond.
    Classify { graph: PathBuf },
    /// Tutte decomposition of a 2-connected graph, or check a given one.
    Decompose {
        graph: PathBuf,
        #[arg(long, value_name = "DECOMPOSITION")]
        check: Option<PathBuf>,
    },
    /// All contractions up to isomorphism.
    Closure {
        graph: PathBuf,
        #[arg(long)]
        strict: bool,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        max_edges: usize,
    },
    /// Attach a 2-rooted graph H onto G at the vertices u,v.
    Attach {
        host: PathBuf,
        piece: PathBuf,
        #[arg(long, value_name = "U,V", value_delimiter = ',', required = true)]
        at: Vec<usize>,
        #[arg(long, value_enum, default_value = "mg")]
        format: OutFormat,
    },
    /// First good pair in the `.mg` files of a directory, sorted by name.
    Goodpair {
        dir: PathBuf,
        #[command(flatten)]
        order: OrderArgs,
    },
    /// Check that a symbolic antichain is an antichain.
    Antichain {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PROBE_BOUND)]
        probe_bound: usize,
    },
    /// Decide whether a symbolic antichain is canonical.
    Canonical { file: PathBuf },
    /// Decide whether a symbolic antichain is fundamental.
    Fundamental { file: PathBuf },
    /// Graphs strictly below some member of a symbolic antichain.
    Downset { file: PathBuf },
    /// Look for good pairs in random sequences from G_{p,k}.
    Probe {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 50)]
        len: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run randomized property suites.
    Props {
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
    },
}

/// Failure that ends a command with a non-zero exit code.
#[derive(Debug)]
enum Stop {
    Input(String),
    Bound(String),
}

impl From<SizeBoundExceeded> for Stop {
    fn from(e: SizeBoundExceeded) -> Self {
        Stop::Bound(e.to_string())
    }
}

fn input(msg: impl std::fmt::Display) -> Stop {
    Stop::Input(msg.to_string())
}

fn read(path: &Path) -> Result<String, Stop> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

/// Loads a graph; `.json` files use the structured format.
pub fn load_graph(path: &Path) -> Result<Multigraph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let parsed = if path.extension().is_some_and(|e| e == "json") {
        parse_structured(&text)
    } else {
        parse_graph(&text)
    };
    parsed.map_err(|e| format!("{}: {e}", path.display()))
}

fn graph(path: &Path) -> Result<Multigraph, Stop> {
    load_graph(path).map_err(Stop::Input)
}

fn load_poset(order: &OrderArgs) -> Result<Option<FinitePoset>, Stop> {
    order
        .labels
        .as_deref()
        .map(|p| FinitePoset::parse(&read(p)?).map_err(|e| input(format!("{}: {e}", p.display()))))
        .transpose()
}

fn options<'a>(order: &OrderArgs, poset: Option<&'a FinitePoset>) -> CheckOptions<'a> {
    CheckOptions {
        respect_roots: order.roots,
        label_poset: poset,
    }
}

fn load_antichain(path: &Path) -> Result<SymbolicAntichain, Stop> {
    let base = path.parent().unwrap_or(Path::new("."));
    SymbolicAntichain::parse(&read(path)?, base)
        .map_err(|e| input(format!("{}: {e}", path.display())))
}

fn antichain_stop(e: AntichainError) -> Stop {
    match e {
        AntichainError::SizeBound(b) => b.into(),
        other => input(other),
    }
}

struct Output<'a> {
    json: bool,
    out: &'a mut dyn Write,
}

impl Output<'_> {
    fn emit(&mut self, text: &str, value: impl Serialize) {
        let r = if self.json {
            writeln!(
                self.out,
                "{}",
                serde_json::to_string_pretty(&value).expect("serializable")
            )
        } else if text.is_empty() {
            Ok(())
        } else {
            writeln!(self.out, "{text}")
        };
        r.expect("write to output");
    }

    fn verdict(
        &mut self,
        yes: bool,
        text_yes: &str,
        text_no: &str,
        extra: serde_json::Value,
    ) -> i32 {
        let mut value = json!({ "result": yes });
        if let (Some(obj), serde_json::Value::Object(more)) = (value.as_object_mut(), extra) {
            obj.extend(more);
        }
        self.emit(if yes { text_yes } else { text_no }, value);
        if yes {
            EXIT_YES
        } else {
            EXIT_NO
        }
    }
}

fn join_graphs(gs: &[Multigraph]) -> String {
    gs.iter()
        .map(|g| serialize_graph(g, GraphFormat::MgText))
        .collect::<Vec<_>>()
        .join("\n---\n")
}

fn docs(gs: &[Multigraph]) -> Vec<GraphDocument> {
    gs.iter().map(GraphDocument::from).collect()
}

fn execute(cmd: Command, o: &mut Output<'_>) -> Result<i32, Stop> {
    match cmd {
        Command::Gen {
            kind,
            params,
            format,
        } => {
            let g = GraphKind::from_args(&kind, &params)
                .and_then(gen)
                .map_err(input)?;
            o.emit(&serialize_graph(&g, format.into()), GraphDocument::from(&g));
            Ok(EXIT_YES)
        }
        Command::Convert { graph: path, to } => {
            let g = graph(&path)?;
            o.emit(&serialize_graph(&g, to.into()), GraphDocument::from(&g));
            Ok(EXIT_YES)
        }
        Command::Contract {
            pattern,
            host,
            order,
            model_out,
            max_host,
        } => {
            let (h, g) = (graph(&pattern)?, graph(&host)?);
            if g.vertex_count() > max_host {
                return Err(Stop::Bound(format!(
                    "size bound exceeded: host has {} vertices > {max_host}",
                    g.vertex_count()
                )));
            }
            let poset = load_poset(&order)?;
            let model = find_model(&h, &g, &options(&order, poset.as_ref()));
            if let (Some(path), Some(m)) = (&model_out, &model) {
                fs::write(path, m.to_json())
                    .map_err(|e| input(format!("{}: {e}", path.display())))?;
            }
            let extra = json!({ "model": model.as_ref().map(|m| &m.branch_sets) });
            Ok(o.verdict(model.is_some(), "yes", "no", extra))
        }
        Command::Oracle {
            pattern,
            host,
            order,
            max_edges,
        } => {
            let (h, g) = (graph(&pattern)?, graph(&host)?);
            let poset = load_poset(&order)?;
            let yes =
                brute_force_is_contraction(&h, &g, &options(&order, poset.as_ref()), max_edges)?;
            Ok(o.verdict(yes, "yes", "no", json!({})))
        }
        Command::Bonds { graph: path } => {
            let g = graph(&path)?;
            let bonds = enumerate_bonds(&g);
            let text = bonds
                .iter()
                .map(|b| b.to_string())
                .collect::<Vec<_>>()
                .join("\n");
            o.emit(&text, &bonds);
            Ok(EXIT_YES)
        }
        Command::Classify { graph: path } => {
            let c = classify(&graph(&path)?);
            o.emit(&c.to_string(), c);
            Ok(EXIT_YES)
        }
        Command::Decompose { graph: path, check } => {
            let g = graph(&path)?;
            if let Some(dpath) = check {
                let d = TreeDecomposition::parse(&read(&dpath)?)
                    .map_err(|e| input(format!("{}: {e}", dpath.display())))?;
                let report = validate_decomposition(&g, &d).map_err(input)?;
                let text = if report.is_empty() {
                    "valid".to_string()
                } else {
                    report
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join("\n")
                };
                let lines: Vec<String> = report.iter().map(|v| v.to_string()).collect();
                o.emit(
                    &text,
                    json!({ "valid": report.is_empty(), "violations": lines }),
                );
                return Ok(if report.is_empty() { EXIT_YES } else { EXIT_NO });
            }
            let d = match tutte_decomposition(&g) {
                Ok(d) => d,
                Err(e) => {
                    o.emit(&e.to_string(), json!({ "error": e.to_string() }));
                    return Ok(EXIT_NO);
                }
            };
            let mut text = d.to_text();
            let mut kinds = Vec::new();
            for t in 0..d.node_count() {
                let kind = torso_kind(&g, &d, t).map_err(input)?;
                let name = kind.map_or("other".to_string(), |k| k.to_string());
                text.push_str(&format!("\ntorso {t}: {name}"));
                kinds.push(name);
            }
            o.emit(
                &text,
                json!({ "bags": d.bags, "tree": d.tree, "torsos": kinds }),
            );
            Ok(EXIT_YES)
        }
        Command::Closure {
            graph: path,
            strict,
            max_edges,
        } => {
            let all = contraction_closure(&graph(&path)?, strict, max_edges)?;
            o.emit(&join_graphs(&all), docs(&all));
            Ok(EXIT_YES)
        }
        Command::Attach {
            host,
            piece,
            at,
            format,
        } => {
            let [u, v] = at[..] else {
                return Err(input("--at takes exactly two vertices `u,v`"));
            };
            let g = graph(&host)?;
            let h = TwoRootedGraph::new(graph(&piece)?).map_err(input)?;
            let out = attach(&g, u, v, &h).map_err(input)?;
            o.emit(
                &serialize_graph(&out, format.into()),
                GraphDocument::from(&out),
            );
            Ok(EXIT_YES)
        }
        Command::Goodpair { dir, order } => {
            let mut files: Vec<PathBuf> = fs::read_dir(&dir)
                .map_err(|e| input(format!("{}: {e}", dir.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "mg"))
                .collect();
            files.sort();
            let seq = files
                .iter()
                .map(|p| graph(p))
                .collect::<Result<Vec<_>, _>>()?;
            let poset = load_poset(&order)?;
            let cmp = ContractionOrder::new(options(&order, poset.as_ref()));
            let pair = find_good_pair(&seq, &cmp).map(|(i, j)| (i + 1, j + 1));
            let text = pair.map_or("none".to_string(), |(i, j)| format!("{i} {j}"));
            o.emit(&text, json!({ "good_pair": pair }));
            Ok(if pair.is_some() { EXIT_YES } else { EXIT_NO })
        }
        Command::Antichain { file, probe_bound } => {
            let a = load_antichain(&file)?;
            let yes = is_valid_antichain(&a, probe_bound, DEFAULT_ORACLE_BOUND)
                .map_err(antichain_stop)?;
            Ok(o.verdict(yes, "valid", "invalid", json!({})))
        }
        Command::Canonical { file } => {
            let a = load_antichain(&file)?;
            let yes = is_canonical(&a, DEFAULT_ORACLE_BOUND).map_err(antichain_stop)?;
            Ok(o.verdict(yes, "canonical", "not canonical", json!({})))
        }
        Command::Fundamental { file } => {
            let a = load_antichain(&file)?;
            let yes = is_fundamental(&a, DEFAULT_ORACLE_BOUND)?;
            Ok(o.verdict(yes, "fundamental", "not fundamental", json!({})))
        }
        Command::Downset { file } => {
            let a = load_antichain(&file)?;
            let d = down_set(&a, DEFAULT_ORACLE_BOUND)?;
            o.emit(&join_graphs(&d), docs(&d));
            Ok(EXIT_YES)
        }
        Command::Probe {
            p,
            k,
            len,
            trials,
            seed,
        } => {
            let mut config = ProbeConfig::new(p, k, len, trials);
            config.seed = seed;
            let report = wqo_probe(&config);
            let mut lines: Vec<String> = report
                .trials
                .iter()
                .enumerate()
                .map(|(i, t)| match t.good_pair {
                    Some((a, b)) => format!("trial {}: good pair {} {}", i + 1, a + 1, b + 1),
                    None => format!("trial {}: none", i + 1),
                })
                .collect();
            lines.push(format!("good pairs: {}/{trials}", report.hits()));
            lines.push(format!(
                "theta controls without good pair: {}/{trials}",
                report.theta_controls_clean
            ));
            lines.push(format!(
                "coclique controls without good pair: {}/{trials}",
                report.coclique_controls_clean
            ));
            o.emit(&lines.join("\n"), &report);
            let clean =
                report.theta_controls_clean == trials && report.coclique_controls_clean == trials;
            Ok(if clean { EXIT_YES } else { EXIT_NO })
        }
        Command::Props {
            suite,
            seed,
            trials,
        } => {
            let names: Vec<String> = match suite {
                Some(s) => vec![s],
                None => SUITES.iter().map(|s| s.to_string()).collect(),
            };
            let reports = names
                .iter()
                .map(|n| run_suite(n, seed, trials))
                .collect::<Result<Vec<_>, _>>()
                .map_err(input)?;
            let mut lines = Vec::new();
            for r in &reports {
                if r.passed() {
                    lines.push(format!("PASS {} ({} trials)", r.suite, r.trials));
                } else {
                    lines.push(format!(
                        "FAIL {} ({}/{} trials failed)",
                        r.suite, r.failures, r.trials
                    ));
                    if let Some(c) = &r.counterexample {
                        lines.push(format!("  trial {}: {}", c.trial, c.message));
                        for g in &c.graphs {
                            lines.push(format!("  ---\n{g}"));
                        }
                    }
                }
            }
            o.emit(&lines.join("\n"), &reports);
            Ok(if reports.iter().all(|r| r.passed()) {
                EXIT_YES
            } else {
                EXIT_NO
            })
        }
    }
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_YES };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let mut o = Output {
        json: cli.json,
        out,
    };
    match execute(cli.command, &mut o) {
        Ok(code) => code,
        Err(Stop::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Stop::Bound(b)) => {
            let _ = writeln!(err, "error: {b}");
            EXIT_BOUND
        }
    }
}
