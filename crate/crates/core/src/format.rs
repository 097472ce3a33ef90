//! Text formats: the line-oriented MG format, a JSON document, and DOT export.
//!
//! MG text:
//!
//! ```text
//! n=5
//! e 0 1 1
//! e 0 3 2
//! root 0
//! root 3
//! label 4 a,b
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, LabelSet, Multigraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    MgText,
    Structured,
    Dot,
}

/// Splits a line into whitespace-separated tokens with 1-based columns.
pub(crate) fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub(crate) fn parse_usize(
    tok: (usize, &str),
    line: usize,
    what: &str,
) -> Result<usize, ParseError> {
    tok.1
        .parse()
        .map_err(|_| ParseError::new(line, tok.0, format!("expected {what}, found `{}`", tok.1)))
}

fn graph_err(line: usize, column: usize, e: GraphError) -> ParseError {
    ParseError::new(line, column, e.to_string())
}

/// Parses the MG text format.
pub fn parse_graph(text: &str) -> Result<Multigraph, ParseError> {
    let mut graph: Option<Multigraph> = None;
    let mut seen_pairs = BTreeSet::new();
    let mut roots: Vec<Vertex> = Vec::new();
    let mut labeled = BTreeSet::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim_end();
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let toks = tokens(line);
        let (col, head) = toks[0];
        let Some(g) = graph.as_mut() else {
            let Some(count) = head.strip_prefix("n=") else {
                return Err(ParseError::new(line_no, col, "expected header `n=<N>`"));
            };
            if toks.len() != 1 {
                return Err(ParseError::new(
                    line_no,
                    toks[1].0,
                    "unexpected token after header",
                ));
            }
            let n = count.parse().map_err(|_| {
                ParseError::new(line_no, col + 2, format!("bad vertex count `{count}`"))
            })?;
            graph = Some(Multigraph::new(n));
            continue;
        };
        match head {
            "e" => {
                if toks.len() != 4 {
                    return Err(ParseError::new(line_no, col, "expected `e <u> <v> <m>`"));
                }
                let u = parse_usize(toks[1], line_no, "vertex")?;
                let v = parse_usize(toks[2], line_no, "vertex")?;
                let m = parse_usize(toks[3], line_no, "multiplicity")?;
                if m == 0 {
                    return Err(ParseError::new(
                        line_no,
                        toks[3].0,
                        "multiplicity must be at least 1",
                    ));
                }
                if u == v {
                    return Err(ParseError::new(
                        line_no,
                        toks[1].0,
                        format!("loop at vertex {u}"),
                    ));
                }
                if !seen_pairs.insert((u.min(v), u.max(v))) {
                    return Err(ParseError::new(
                        line_no,
                        col,
                        format!("duplicate edge line for pair {{{u}, {v}}}"),
                    ));
                }
                g.add_edges(u, v, m)
                    .map_err(|e| graph_err(line_no, toks[1].0, e))?;
            }
            "root" => {
                if toks.len() != 2 {
                    return Err(ParseError::new(line_no, col, "expected `root <v>`"));
                }
                let r = parse_usize(toks[1], line_no, "vertex")?;
                roots.push(r);
                g.set_roots(&roots)
                    .map_err(|e| graph_err(line_no, toks[1].0, e))?;
            }
            "label" => {
                if toks.len() != 3 {
                    return Err(ParseError::new(
                        line_no,
                        col,
                        "expected `label <v> <id>[,<id>...]`",
                    ));
                }
                let v = parse_usize(toks[1], line_no, "vertex")?;
                if !labeled.insert(v) {
                    return Err(ParseError::new(
                        line_no,
                        col,
                        format!("duplicate label line for vertex {v}"),
                    ));
                }
                let set: LabelSet = toks[2]
                    .1
                    .split(',')
                    .filter(|s| !s.is_empty())
                    .map(str::to_string)
                    .collect();
                g.set_labels(v, set)
                    .map_err(|e| graph_err(line_no, toks[1].0, e))?;
            }
            other => {
                return Err(ParseError::new(
                    line_no,
                    col,
                    format!("unknown directive `{other}`"),
                ));
            }
        }
    }
    graph.ok_or_else(|| ParseError::new(last_line.max(1), 1, "missing header `n=<N>`"))
}

/// JSON document shape of the structured format.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphDocument {
    pub n: usize,
    #[serde(default)]
    pub edges: Vec<[usize; 3]>,
    #[serde(default)]
    pub roots: Vec<Vertex>,
    #[serde(default)]
    pub labels: BTreeMap<Vertex, Vec<String>>,
}

impl From<&Multigraph> for GraphDocument {
    fn from(g: &Multigraph) -> Self {
        GraphDocument {
            n: g.vertex_count(),
            edges: g.edges().map(|(u, v, m)| [u, v, m]).collect(),
            roots: g.roots().to_vec(),
            labels: (0..g.vertex_count())
                .filter(|&v| !g.labels(v).is_empty())
                .map(|v| (v, g.labels(v).iter().cloned().collect()))
                .collect(),
        }
    }
}

impl TryFrom<GraphDocument> for Multigraph {
    type Error = GraphError;

    fn try_from(doc: GraphDocument) -> Result<Self, GraphError> {
        let mut g = Multigraph::new(doc.n);
        for [u, v, m] in doc.edges {
            g.add_edges(u, v, m)?;
        }
        g.set_roots(&doc.roots)?;
        for (v, ls) in doc.labels {
            g.set_labels(v, ls.into_iter().collect())?;
        }
        Ok(g)
    }
}

/// Parses the structured (JSON) format.
pub fn parse_structured(text: &str) -> Result<Multigraph, ParseError> {
    let doc: GraphDocument = serde_json::from_str(text)
        .map_err(|e| ParseError::new(e.line(), e.column(), e.to_string()))?;
    Multigraph::try_from(doc).map_err(|e| ParseError::new(1, 1, e.to_string()))
}

pub fn serialize_graph(g: &Multigraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::MgText => to_mg_text(g),
        GraphFormat::Structured => {
            serde_json::to_string(&GraphDocument::from(g)).expect("graph document serializes")
        }
        GraphFormat::Dot => to_dot(g),
    }
}

fn to_mg_text(g: &Multigraph) -> String {
    let mut out = format!("n={}", g.vertex_count());
    for (u, v, m) in g.edges() {
        let _ = write!(out, "\ne {u} {v} {m}");
    }
    for r in g.roots() {
        let _ = write!(out, "\nroot {r}");
    }
    for v in 0..g.vertex_count() {
        let ls = g.labels(v);
        if !ls.is_empty() {
            let joined: Vec<&str> = ls.iter().map(String::as_str).collect();
            let _ = write!(out, "\nlabel {v} {}", joined.join(","));
        }
    }
    out
}

fn to_dot(g: &Multigraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.vertex_count() {
        let shape = match g.root_position(v) {
            Some(0) => "doublecircle",
            Some(_) => "box",
            None => "circle",
        };
        let ls = g.labels(v);
        let text = if ls.is_empty() {
            v.to_string()
        } else {
            let joined: Vec<&str> = ls.iter().map(String::as_str).collect();
            format!("{v} {{{}}}", joined.join(","))
        };
        let _ = writeln!(out, "  {v} [shape={shape}, label=\"{text}\"];");
    }
    for (u, v, m) in g.edges() {
        for _ in 0..m {
            let _ = writeln!(out, "  {u} -- {v};");
        }
    }
    out.push('}');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;
    use proptest::prelude::*;

    #[test]
    fn parse_theta_five() {
        let g = parse_graph("n=2\ne 0 1 5").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.multiplicity(0, 1), 5);
    }

    #[test]
    fn parse_empty() {
        let g = parse_graph("n=0").unwrap();
        assert!(g.is_empty());
        assert_eq!(serialize_graph(&g, GraphFormat::MgText), "n=0");
    }

    #[test]
    fn duplicate_pair_rejected() {
        let err = parse_graph("n=3\ne 0 1 1\ne 0 1 1").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("duplicate"));
    }

    #[test]
    fn loop_and_range_errors() {
        let err = parse_graph("n=3\ne 1 1 2").unwrap_err();
        assert!(err.message.contains("loop"));
        let err = parse_graph("n=2\nroot 5").unwrap_err();
        assert_eq!((err.line, err.column), (2, 6));
        assert!(parse_graph("n=2\nroot 0\nroot 1\nroot 0").is_err());
        let err = parse_graph("e 0 1 1").unwrap_err();
        assert_eq!((err.line, err.column), (1, 1));
        let err = parse_graph("n=2\ne 0 x 1").unwrap_err();
        assert_eq!((err.line, err.column), (2, 5));
        assert!(parse_graph("").is_err());
    }

    #[test]
    fn serialize_theta_two() {
        let g = parse_graph("n=2\ne 0 1 2").unwrap();
        assert_eq!(serialize_graph(&g, GraphFormat::MgText), "n=2\ne 0 1 2");
    }

    #[test]
    fn labels_serialize() {
        let mut g = Multigraph::new(1);
        g.add_label(0, "a").unwrap();
        let text = serialize_graph(&g, GraphFormat::MgText);
        assert!(text.contains("label 0 a"));
        assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn dot_draws_parallel_edges_and_roots() {
        let g = parse_graph("n=2\ne 0 1 3\nroot 0\nroot 1").unwrap();
        let dot = serialize_graph(&g, GraphFormat::Dot);
        assert_eq!(dot.matches("0 -- 1;").count(), 3);
        assert!(dot.contains("doublecircle"));
        assert!(dot.contains("shape=box"));
    }

    fn arb_graph() -> impl Strategy<Value = Multigraph> {
        (0usize..6)
            .prop_flat_map(|n| {
                let pairs = n * n.saturating_sub(1) / 2;
                (
                    Just(n),
                    proptest::collection::vec(0usize..4, pairs),
                    proptest::collection::vec(proptest::option::of("[a-c]"), n),
                    0usize..3,
                )
            })
            .prop_map(|(n, ms, labels, nroots)| {
                let mut g = Multigraph::new(n);
                let mut i = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        g.add_edges(u, v, ms[i]).unwrap();
                        i += 1;
                    }
                }
                for (v, l) in labels.into_iter().enumerate() {
                    if let Some(l) = l {
                        g.add_label(v, l).unwrap();
                    }
                }
                let roots: Vec<usize> = (0..nroots.min(n)).collect();
                g.set_roots(&roots).unwrap();
                g
            })
    }

    proptest! {
        #[test]
        fn text_and_json_round_trip(g in arb_graph()) {
            let text = serialize_graph(&g, GraphFormat::MgText);
            let back = parse_graph(&text).unwrap();
            prop_assert!(is_isomorphic(&back, &g));
            prop_assert_eq!(&back, &g);
            let json = serialize_graph(&g, GraphFormat::Structured);
            prop_assert_eq!(parse_structured(&json).unwrap(), g);
        }
    }
}
