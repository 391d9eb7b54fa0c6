use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use hyperhec::io::{
    parse_edgelist, parse_hyperedges, parse_reactions, read_scores_csv, write_hyperedges, write_reactions, Digraph,
    RankingReport,
};
use hyperhec::ranking::default_k_grid;
use hyperhec::synth::{reaction_network, seeded_rng};
use hyperhec::{
    b_uniform_core, ec_f_hypergraph, ec_projection, eigenvector_centrality, hec, hec_directed, kstep_centrality,
    topk_curve, CentralityResult, EdgeKind, Hypergraph, HypergraphError, KStepOperator, OrbitTensor, RankComparison,
    SolverConfig, SpectralError,
};
use serde::Serialize;

use crate::error::CliError;
use crate::{CompareArgs, Format, InputArgs, Method, ModelArgs, SolverArgs};

enum Loaded {
    Hyper(Hypergraph),
    Graph(Digraph),
}

impl Loaded {
    fn labels(&self) -> &[String] {
        match self {
            Loaded::Hyper(h) => h.nodes().labels(),
            Loaded::Graph(g) => g.nodes.labels(),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path, format: Format, undirected: bool) -> Result<Loaded, CliError> {
    if undirected && format != Format::Edgelist {
        return Err(CliError::Usage("--undirected only applies to --format edgelist".into()));
    }
    let text = read(path)?;
    let parsed = match format {
        Format::Hyperedges => parse_hyperedges(&text).map(Loaded::Hyper),
        Format::Reactions => parse_reactions(&text).map(Loaded::Hyper),
        Format::Edgelist => parse_edgelist(&text, undirected).map(Loaded::Graph),
    };
    parsed.map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

/// Most frequent tail cardinality; ties go to the smaller one.
fn modal_tails(h: &Hypergraph) -> Option<usize> {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for e in h.edges() {
        if let EdgeKind::Directed { tail, .. } = e.kind() {
            *counts.entry(tail.len()).or_default() += 1;
        }
    }
    counts
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .map(|(t, _)| t)
}

fn extract_core(h: &Hypergraph, tails: usize) -> Result<Hypergraph, CliError> {
    let core = b_uniform_core(h, tails)?;
    if core.node_count() == 0 {
        return Err(CliError::Usage(format!(
            "no strongly connected core with {tails} tail node(s)"
        )));
    }
    eprintln!(
        "core ({tails} tails): {} of {} nodes, {} of {} edges",
        core.node_count(),
        h.node_count(),
        core.edge_count(),
        h.edge_count()
    );
    Ok(core)
}

/// Checks `--k` against the methods and applies `--tails`.
fn prepare(loaded: Loaded, methods: &[Method], model: ModelArgs) -> Result<Loaded, CliError> {
    let wants_k = methods.contains(&Method::Kstep);
    match model.k {
        None if wants_k => return Err(CliError::Usage("--method kstep needs --k".into())),
        Some(_) if !wants_k => return Err(CliError::Usage("--k only applies to --method kstep".into())),
        Some(k) if k < 2 => return Err(CliError::Usage(format!("--k must be at least 2, got {k}"))),
        _ => {}
    }
    match (model.tails, loaded) {
        (None, l) => Ok(l),
        (Some(t), Loaded::Hyper(h)) => Ok(Loaded::Hyper(extract_core(&h, t)?)),
        (Some(_), Loaded::Graph(_)) => Err(CliError::Usage("--tails needs a hypergraph input".into())),
    }
}

fn solver_config(s: SolverArgs) -> SolverConfig {
    SolverConfig {
        tol: s.tol,
        max_iter: s.max_iter,
        shift: s.shift,
        ..SolverConfig::default()
    }
}

fn solve(loaded: &Loaded, method: Method, model: ModelArgs, s: SolverArgs) -> Result<CentralityResult, CliError> {
    let cfg = solver_config(s);
    let k = model.k.unwrap_or(2);
    let result = match (method, loaded) {
        (Method::Hec, Loaded::Hyper(h)) => OrbitTensor::from_hypergraph(h)
            .map_err(SpectralError::from)
            .and_then(|t| hec(&t, &cfg)),
        (Method::HecDirected, Loaded::Hyper(h)) => hec_directed(h, &cfg),
        (Method::EcF, Loaded::Hyper(h)) => ec_f_hypergraph(h, &cfg),
        (Method::EcProjection, Loaded::Hyper(h)) => ec_projection(&h.project(), &cfg),
        (Method::EcProjection, Loaded::Graph(g)) => eigenvector_centrality(&g.adjacency, &cfg),
        (Method::Kstep, l) => {
            let a = match l {
                Loaded::Hyper(h) => h.project().adjacency,
                Loaded::Graph(g) => g.adjacency.clone(),
            };
            KStepOperator::new(a, k)
                .map_err(SpectralError::from)
                .and_then(|op| kstep_centrality(&op, &cfg))
        }
        (m, Loaded::Graph(_)) => {
            return Err(CliError::Usage(format!(
                "--method {} needs a hyperedge or reaction input",
                m.name()
            )))
        }
    };
    match result {
        Ok(r) => Ok(r),
        Err(SpectralError::NotConverged {
            iterations,
            residual,
            partial,
        }) if s.allow_unconverged => {
            eprintln!(
                "warning: {} did not converge after {iterations} iterations (bracket width {residual:e}); writing partial result",
                method.name()
            );
            Ok(*partial)
        }
        Err(source) => Err(CliError::Solver {
            method: method.name(),
            source,
        }),
    }
}

pub fn info(args: &InputArgs) -> Result<(), CliError> {
    let mut out = String::new();
    match load(&args.input, args.format, args.undirected)? {
        Loaded::Hyper(h) => {
            let b = h.kind_breakdown();
            writeln!(out, "nodes: {}", h.node_count()).unwrap();
            writeln!(out, "edges: {}", h.edge_count()).unwrap();
            writeln!(out, "undirected: {}", b.undirected).unwrap();
            writeln!(out, "cyclic: {}", b.cyclic).unwrap();
            writeln!(out, "directed: {}", b.directed).unwrap();
            let uniform = match h.uniformity() {
                Ok(m) => m.to_string(),
                Err(HypergraphError::NonUniform(a, b)) => format!("no (sizes {a} and {b})"),
                Err(_) => "n/a".into(),
            };
            writeln!(out, "uniform: {uniform}").unwrap();
            let tails = match h.tail_uniformity() {
                Ok(t) => t.to_string(),
                Err(HypergraphError::NonTailUniform(a, b)) => format!("no (tail sizes {a} and {b})"),
                Err(_) => "n/a".into(),
            };
            writeln!(out, "tail-uniform: {tails}").unwrap();
        }
        Loaded::Graph(g) => {
            writeln!(out, "nodes: {}", g.adjacency.dim()).unwrap();
            writeln!(out, "arcs: {}", g.adjacency.nnz()).unwrap();
        }
    }
    write_out(None, &out)
}

pub fn core(args: &InputArgs, tails: Option<usize>, out: Option<&Path>) -> Result<(), CliError> {
    let h = match load(&args.input, args.format, args.undirected)? {
        Loaded::Hyper(h) => h,
        Loaded::Graph(_) => return Err(CliError::Usage("core needs a hypergraph input".into())),
    };
    let tails = match tails {
        Some(t) => t,
        None => {
            let t = modal_tails(&h).ok_or(HypergraphError::NotDirected)?;
            eprintln!("using the most common tail cardinality: {t}");
            t
        }
    };
    let core = extract_core(&h, tails)?;
    write_out(out, &write_hyperedges(&core))
}

pub fn centrality(
    args: &InputArgs,
    method: Method,
    model: ModelArgs,
    solver: SolverArgs,
    out: Option<&Path>,
    json: Option<&Path>,
) -> Result<(), CliError> {
    let loaded = prepare(load(&args.input, args.format, args.undirected)?, &[method], model)?;
    let result = solve(&loaded, method, model, solver)?;
    let report = RankingReport::new(&result, loaded.labels(), solver.allow_unconverged)?;
    eprintln!(
        "{}: lambda = {}, {} iterations, bracket width {:e}",
        method.name(),
        result.lambda,
        result.iterations,
        result.residual
    );
    if let Some(p) = json {
        write_out(Some(p), &report.to_json()?)?;
    }
    write_out(out, &report.to_csv())
}

#[derive(Serialize)]
struct CompareReport<'a> {
    a: &'a str,
    b: &'a str,
    nodes: usize,
    #[serde(flatten)]
    comparison: &'a RankComparison,
}

/// Score vectors from two ranking files, aligned on the first file's nodes.
fn aligned_scores(pa: &Path, pb: &Path) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let parse = |p: &Path| {
        read_scores_csv(&read(p)?).map_err(|source| CliError::Parse {
            path: p.to_path_buf(),
            source,
        })
    };
    let (ra, rb) = (parse(pa)?, parse(pb)?);
    let mut lookup: HashMap<&str, f64> = HashMap::new();
    for (node, s) in &rb {
        if lookup.insert(node, *s).is_some() {
            return Err(CliError::Usage(format!("{}: node {node:?} listed twice", pb.display())));
        }
    }
    if ra.len() != rb.len() {
        return Err(CliError::Usage(format!(
            "score files cover different node sets ({} and {} nodes)",
            ra.len(),
            rb.len()
        )));
    }
    let mut a = Vec::with_capacity(ra.len());
    let mut b = Vec::with_capacity(ra.len());
    for (node, s) in &ra {
        let t = lookup
            .remove(node.as_str())
            .ok_or_else(|| CliError::Usage(format!("node {node:?} missing from {}", pb.display())))?;
        a.push(*s);
        b.push(t);
    }
    Ok((a, b))
}

pub fn compare(args: &CompareArgs) -> Result<(), CliError> {
    let (names, a, b) = match (
        &args.scores_a,
        &args.scores_b,
        &args.input,
        args.method_a,
        args.method_b,
    ) {
        (Some(pa), Some(pb), _, _, _) => {
            let (a, b) = aligned_scores(pa, pb)?;
            (("scores-a", "scores-b"), a, b)
        }
        (_, _, Some(input), Some(ma), Some(mb)) => {
            let loaded = prepare(load(input, args.format, args.undirected)?, &[ma, mb], args.model)?;
            let ra = solve(&loaded, ma, args.model, args.solver)?;
            let rb = solve(&loaded, mb, args.model, args.solver)?;
            if !args.solver.allow_unconverged && !(ra.converged && rb.converged) {
                return Err(hyperhec::io::OutputError::NotConverged.into());
            }
            ((ma.name(), mb.name()), ra.scores, rb.scores)
        }
        _ => {
            return Err(CliError::Usage(
                "give either --input with --method-a and --method-b, or --scores-a and --scores-b".into(),
            ))
        }
    };
    let ks = args.ks.clone().unwrap_or_else(|| default_k_grid(a.len()));
    let cmp = topk_curve(&a, &b, &ks)?;
    eprintln!("rho_full = {}", cmp.rho_full);
    let mut csv = String::from("K,rho_ab,rho_ba\n");
    for (&(k, ab), &(_, ba)) in cmp.curve_ab.iter().zip(&cmp.curve_ba) {
        writeln!(csv, "{k},{ab},{ba}").unwrap();
    }
    if let Some(p) = &args.json {
        let report = CompareReport {
            a: names.0,
            b: names.1,
            nodes: a.len(),
            comparison: &cmp,
        };
        let text = serde_json::to_string_pretty(&report).map_err(hyperhec::io::OutputError::from)? + "\n";
        write_out(Some(p), &text)?;
    }
    write_out(args.out.as_deref(), &csv)
}

pub fn synth(species: usize, reactions: usize, seed: u64, out: Option<&Path>) -> Result<(), CliError> {
    if species < 4 {
        return Err(CliError::Usage("--species must be at least 4".into()));
    }
    let h = reaction_network(&mut seeded_rng(seed), species, reactions);
    let mut text = format!("# synthetic reaction network: {species} species, seed {seed}\n");
    text.push_str(&write_reactions(&h)?);
    write_out(out, &text)
}
