//! Text formats: hyperedge lists, reaction lists, edge lists, and ranking
//! output (CSV and JSON).
//!
//! Hyperedge files, one edge per line (`#` starts a comment line):
//!
//! ```text
//! A,B,C            undirected
//! cyc A,B,C        cyclic, weight on the even permutations of the listed order
//! A,B -> C,D       directed, tail A,B and head C,D
//! A,B -> C : 2.5   any line may end with ": weight" (default 1)
//! ```
//!
//! Reaction files hold lines like `2 H + O -> H2O`; stoichiometric
//! coefficients are dropped (each side is a set). Edge lists hold
//! `src dst [weight]` per line.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{EdgeKind, Hyperedge, Hypergraph, HypergraphError, NodeId, NodeRegistry, Orientation};
use crate::perm::{is_odd_arrangement, swap_first_two};
use crate::ranking::Ranking;
use crate::sparse::SparseMatrix;
use crate::spectral::CentralityResult;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("line {line}: reaction has an empty side")]
    EmptySide { line: usize },
    #[error("line {line}: weight must be positive, got {weight}")]
    NonPositiveWeight { line: usize, weight: f64 },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: HypergraphError },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::EmptySide { line }
            | ParseError::NonPositiveWeight { line, .. }
            | ParseError::Invalid { line, .. } => *line,
        }
    }
}

fn syntax(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        reason: reason.into(),
    }
}

/// Non-blank, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_weight(line: usize, s: &str) -> Result<f64, ParseError> {
    let w: f64 = s
        .trim()
        .parse()
        .map_err(|_| syntax(line, format!("invalid weight {:?}", s.trim())))?;
    if !(w.is_finite() && w > 0.0) {
        return Err(ParseError::NonPositiveWeight { line, weight: w });
    }
    Ok(w)
}

fn parse_labels(line: usize, s: &str, reg: &mut NodeRegistry) -> Result<Vec<NodeId>, ParseError> {
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            if tok.is_empty() {
                Err(syntax(line, "empty node label"))
            } else if tok.contains("->") || tok.contains(':') {
                Err(syntax(line, format!("invalid node label {tok:?}")))
            } else {
                Ok(reg.intern(tok))
            }
        })
        .collect()
}

pub fn parse_hyperedges(text: &str) -> Result<Hypergraph, ParseError> {
    let mut reg = NodeRegistry::new();
    let mut edges = Vec::new();
    for (line, raw) in content_lines(text) {
        let (body, weight) = match raw.rsplit_once(':') {
            Some((body, w)) => (body.trim(), parse_weight(line, w)?),
            None => (raw, 1.0),
        };
        let invalid = |source| ParseError::Invalid { line, source };
        let edge = if let Some(rest) = body.strip_prefix("cyc").filter(|r| r.starts_with(char::is_whitespace)) {
            let nodes = parse_labels(line, rest, &mut reg)?;
            Hyperedge::cyclic(&nodes, Orientation::Even, weight).map_err(invalid)?
        } else if let Some((tail, head)) = body.split_once("->") {
            if head.contains("->") {
                return Err(syntax(line, "more than one arrow"));
            }
            let tail = parse_labels(line, tail, &mut reg)?;
            let head = parse_labels(line, head, &mut reg)?;
            Hyperedge::directed(&tail, &head, weight).map_err(invalid)?
        } else {
            let nodes = parse_labels(line, body, &mut reg)?;
            Hyperedge::undirected(&nodes, weight).map_err(invalid)?
        };
        edges.push((line, edge));
    }
    let mut h = Hypergraph::new(reg);
    for (line, e) in edges {
        h.add_hyperedge(e)
            .map_err(|source| ParseError::Invalid { line, source })?;
    }
    Ok(h)
}

/// Serializes to the hyperedge format. Output parses back to an identical
/// hypergraph when `h` itself came from [`parse_hyperedges`].
pub fn write_hyperedges(h: &Hypergraph) -> String {
    let reg = h.nodes();
    let join = |v: &[usize]| v.iter().map(|&i| reg.label(NodeId(i))).collect::<Vec<_>>().join(",");
    let raw = |v: &[NodeId]| v.iter().map(|n| n.index()).collect::<Vec<_>>();
    let mut out = String::new();
    for e in h.edges() {
        let body = match e.kind() {
            EdgeKind::Undirected(v) => join(&raw(v)),
            EdgeKind::Cyclic { nodes, orientation } => {
                let mut t = raw(nodes);
                if *orientation == Orientation::Odd {
                    t = swap_first_two(&t);
                }
                // Pick the orbit member closest to ascending id order so
                // labels are re-interned in the same order.
                let odd = is_odd_arrangement(&t);
                t.sort_unstable();
                if odd {
                    t.swap(0, 1);
                }
                format!("cyc {}", join(&t))
            }
            EdgeKind::Directed { tail, head } => {
                format!("{} -> {}", join(&raw(tail)), join(&raw(head)))
            }
        };
        out.push_str(&body);
        if e.weight() != 1.0 {
            out.push_str(&format!(" : {}", e.weight()));
        }
        out.push('\n');
    }
    out
}

fn parse_reaction_side(line: usize, side: &str, reg: &mut NodeRegistry) -> Result<Vec<NodeId>, ParseError> {
    let tokens: Vec<&str> = side.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(ParseError::EmptySide { line });
    }
    let mut species = Vec::new();
    for group in tokens.split(|t| *t == "+") {
        let name = match group {
            [name] => *name,
            [coef, name] if coef.chars().all(|c| c.is_ascii_digit()) => *name,
            [] => return Err(syntax(line, "dangling '+'")),
            _ => return Err(syntax(line, format!("cannot read species {:?}", group.join(" ")))),
        };
        let id = reg.intern(name);
        if !species.contains(&id) {
            species.push(id);
        }
    }
    Ok(species)
}

pub fn parse_reactions(text: &str) -> Result<Hypergraph, ParseError> {
    let mut reg = NodeRegistry::new();
    let mut edges = Vec::new();
    for (line, raw) in content_lines(text) {
        let (lhs, rhs) = raw.split_once("->").ok_or_else(|| syntax(line, "missing '->'"))?;
        if rhs.contains("->") {
            return Err(syntax(line, "more than one arrow"));
        }
        let tail = parse_reaction_side(line, lhs, &mut reg)?;
        let head = parse_reaction_side(line, rhs, &mut reg)?;
        let e = Hyperedge::directed(&tail, &head, 1.0).map_err(|source| ParseError::Invalid { line, source })?;
        edges.push((line, e));
    }
    let mut h = Hypergraph::new(reg);
    for (line, e) in edges {
        h.add_hyperedge(e)
            .map_err(|source| ParseError::Invalid { line, source })?;
    }
    Ok(h)
}

/// Reaction-format text for an all-directed hypergraph. Weights are not
/// representable and are dropped.
pub fn write_reactions(h: &Hypergraph) -> Result<String, HypergraphError> {
    let reg = h.nodes();
    let side = |v: &[NodeId]| v.iter().map(|&n| reg.label(n)).collect::<Vec<_>>().join(" + ");
    let mut out = String::new();
    for e in h.edges() {
        match e.kind() {
            EdgeKind::Directed { tail, head } => {
                out.push_str(&format!("{} -> {}\n", side(tail), side(head)));
            }
            _ => return Err(HypergraphError::NotDirected),
        }
    }
    Ok(out)
}

/// Weighted digraph read from an edge list.
#[derive(Debug, Clone, PartialEq)]
pub struct Digraph {
    pub nodes: NodeRegistry,
    pub adjacency: SparseMatrix,
}

/// `src dst [w]` per line; with `undirected` every arc is mirrored.
/// Repeated arcs have their weights summed.
pub fn parse_edgelist(text: &str, undirected: bool) -> Result<Digraph, ParseError> {
    let mut reg = NodeRegistry::new();
    let mut arcs = Vec::new();
    for (line, raw) in content_lines(text) {
        let toks: Vec<&str> = raw.split_whitespace().collect();
        let (src, dst, w) = match toks.as_slice() {
            [s, d] => (*s, *d, 1.0),
            [s, d, w] => (*s, *d, parse_weight(line, w)?),
            [_] => return Err(syntax(line, "missing destination")),
            _ => return Err(syntax(line, "expected `src dst [weight]`")),
        };
        let (i, j) = (reg.intern(src).index(), reg.intern(dst).index());
        arcs.push((i, j, w));
        if undirected && i != j {
            arcs.push((j, i, w));
        }
    }
    let n = reg.len();
    Ok(Digraph {
        nodes: reg,
        adjacency: SparseMatrix::from_triplets(n, arcs),
    })
}

#[derive(Debug, Error)]
pub enum OutputError {
    #[error("refusing to write an unconverged result (pass --allow-unconverged to override)")]
    NotConverged,
    #[error("label count {labels} does not match score count {scores}")]
    LabelMismatch { labels: usize, scores: usize },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingRow {
    pub node: String,
    pub score: f64,
    pub rank: f64,
}

/// Serialized centrality result: rows in descending score order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingReport {
    pub lambda: f64,
    pub iterations: usize,
    pub residual: f64,
    pub converged: bool,
    pub rows: Vec<RankingRow>,
}

impl RankingReport {
    pub fn new(result: &CentralityResult, labels: &[String], allow_unconverged: bool) -> Result<Self, OutputError> {
        if !result.converged && !allow_unconverged {
            return Err(OutputError::NotConverged);
        }
        if labels.len() != result.scores.len() {
            return Err(OutputError::LabelMismatch {
                labels: labels.len(),
                scores: result.scores.len(),
            });
        }
        let ranking = Ranking::from_scores(&result.scores);
        let rows = ranking
            .order
            .iter()
            .map(|&i| RankingRow {
                node: labels[i].clone(),
                score: result.scores[i],
                rank: ranking.ranks[i],
            })
            .collect();
        Ok(Self {
            lambda: result.lambda,
            iterations: result.iterations,
            residual: result.residual,
            converged: result.converged,
            rows,
        })
    }

    /// `node,score,rank` with a header line; ranks carry one decimal.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["node", "score", "rank"]).unwrap();
        for r in &self.rows {
            w.write_record([r.node.clone(), r.score.to_string(), format!("{:.1}", r.rank)])
                .unwrap();
        }
        String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8 fields")
    }

    pub fn to_json(&self) -> Result<String, OutputError> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Self, OutputError> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Reads `node,score[,...]` rows with a header (as written by
/// [`RankingReport::to_csv`]).
pub fn read_scores_csv(text: &str) -> Result<Vec<(String, f64)>, ParseError> {
    let mut rdr = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            syntax(line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let node = rec.get(0).unwrap_or("");
        if node.is_empty() {
            return Err(syntax(line, "empty node label"));
        }
        let score = rec.get(1).ok_or_else(|| syntax(line, "missing score column"))?;
        let score: f64 = score
            .parse()
            .map_err(|_| syntax(line, format!("invalid score {score:?}")))?;
        rows.push((node.to_string(), score));
    }
    Ok(rows)
}
