use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufRead, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use oreham::families::{family_atlas, infer_order};
use oreham::invariants::is_k_connected;
use oreham::verification::{
    enumerate_graphs, enumerate_sorted, verify_graphs, verify_theorem_with, HypothesisFilter,
    NOffset, VerificationReport, STREAM_MAX_ORDER,
};
use oreham::{
    build_family, classify_graph, degree_sequence, find_hamiltonian_cycle,
    is_k_edge_fault_hamiltonian, is_k_vertex_fault_hamiltonian, parse_graph6, sigma2,
    vertex_connectivity, EdgeList, FamilyId, FamilySpec, Graph, Theorem,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "oreham", version, about = "Fault-tolerant hamiltonicity under Ore-type conditions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family instance and print it as graph6.
    Construct(ConstructArgs),
    /// Print invariants for graph6 lines read from stdin.
    Check(CheckArgs),
    /// Classify graph6 lines from stdin against the 2-vertex-fault exceptions.
    Classify,
    /// Check a theorem over every class of order n, or over graph6 from stdin.
    Verify(VerifyArgs),
    /// Stream one graph6 line per isomorphism class passing a filter.
    Enumerate(EnumerateArgs),
    /// Write every family instance up to an order, with degree tables.
    Atlas(AtlasArgs),
}

#[derive(Args)]
struct ConstructArgs {
    /// FamilySpec JSON file, `-` for stdin.
    #[arg(long, conflicts_with_all = ["family", "h_graph6", "cross", "deleted", "param", "n"])]
    spec: Option<PathBuf>,
    #[arg(long, required_unless_present = "spec")]
    family: Option<FamilyId>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    h_graph6: Option<String>,
    /// Pairs as `a-b,c-d`.
    #[arg(long)]
    cross: Option<String>,
    #[arg(long)]
    deleted: Option<String>,
    /// `key=value`, repeatable.
    #[arg(long)]
    param: Vec<String>,
    /// Print Graphviz instead of graph6.
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// Fault counts to test, repeatable.
    #[arg(long = "k", default_values_t = [1usize, 2])]
    k: Vec<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    theorem: Theorem,
    /// Enumerate this order; without it graphs are read from stdin.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Zero the timing field so reruns are byte-identical.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    /// σ₂ floor such as `n` or `n-2`.
    #[arg(long)]
    filter_sigma2: Option<NOffset>,
    #[arg(long)]
    filter_kappa: Option<usize>,
    #[arg(long)]
    connected: bool,
    #[arg(long)]
    maximal_non_hamiltonian: bool,
    /// Generate in parallel and print in sorted order.
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AtlasArgs {
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long)]
    dot: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

type Failure = String;

/// Downstream closed the pipe (`oreham atlas | head`); not an error.
const BROKEN_PIPE: &str = "broken pipe";

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(found) => ExitCode::from(found as u8),
        Err(msg) if msg == BROKEN_PIPE => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("oreham: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether a counterexample was found.
fn run(cmd: Command) -> Result<bool, Failure> {
    match cmd {
        Command::Construct(a) => construct(a).map(|_| false),
        Command::Check(a) => check(a).map(|_| false),
        Command::Classify => classify(),
        Command::Verify(a) => verify(a),
        Command::Enumerate(a) => enumerate(a).map(|_| false),
        Command::Atlas(a) => atlas(a).map(|_| false),
    }
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            fs::File::create(p).map_err(|e| format!("{}: {e}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn io_err(e: io::Error) -> Failure {
    if e.kind() == io::ErrorKind::BrokenPipe {
        BROKEN_PIPE.into()
    } else {
        e.to_string()
    }
}

/// Nonblank stdin lines parsed as graph6.
fn read_graphs() -> Result<Vec<Graph>, Failure> {
    let mut out = Vec::new();
    for (i, line) in io::stdin().lock().lines().enumerate() {
        let line = line.map_err(io_err)?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        out.push(parse_graph6(t).map_err(|e| format!("line {}: {e}", i + 1))?);
    }
    Ok(out)
}

fn parse_pairs(text: &str) -> Result<EdgeList, Failure> {
    let pairs = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|p| {
            let (a, b) = p
                .split_once('-')
                .ok_or_else(|| format!("bad pair `{p}`, expected a-b"))?;
            let a = a.trim().parse::<usize>().map_err(|e| format!("`{p}`: {e}"))?;
            let b = b.trim().parse::<usize>().map_err(|e| format!("`{p}`: {e}"))?;
            Ok((a.min(b), a.max(b)))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    EdgeList::new(pairs).map_err(|e| e.to_string())
}

fn spec_from_flags(a: &ConstructArgs) -> Result<FamilySpec, Failure> {
    let family = a.family.expect("clap requires family without spec");
    let h = a
        .h_graph6
        .as_deref()
        .map(parse_graph6)
        .transpose()
        .map_err(|e| format!("--h-graph6: {e}"))?;
    let mut params = BTreeMap::new();
    for p in &a.param {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| format!("bad --param `{p}`, expected key=value"))?;
        let v: usize = v.parse().map_err(|e| format!("--param {k}: {e}"))?;
        params.insert(k.to_string(), v);
    }
    let n = match a.n {
        Some(n) => n,
        None => infer_order(family, h.as_ref(), &params).map_err(|e| e.to_string())?,
    };
    let mut spec = FamilySpec::new(family, n);
    spec.h = h;
    spec.params = params;
    if let Some(c) = &a.cross {
        spec.cross = parse_pairs(c)?;
    }
    if let Some(d) = &a.deleted {
        spec.deleted = parse_pairs(d)?;
    }
    Ok(spec)
}

fn construct(a: ConstructArgs) -> Result<(), Failure> {
    let spec = match &a.spec {
        Some(path) => {
            let mut text = String::new();
            if path.as_os_str() == "-" {
                io::stdin().read_to_string(&mut text).map_err(io_err)?;
            } else {
                text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            FamilySpec::from_json(&text).map_err(|e| e.to_string())?
        }
        None => spec_from_flags(&a)?,
    };
    let g = build_family(&spec).map_err(|e| e.to_string())?;
    let mut out = output(None)?;
    if a.dot {
        write!(out, "{}", g.to_dot(spec.family.name())).map_err(io_err)?;
    } else {
        writeln!(out, "{}", g.to_graph6()).map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

fn check(a: CheckArgs) -> Result<(), Failure> {
    let mut out = output(None)?;
    for g in read_graphs()? {
        let n = g.order();
        let kappa = (n >= 2)
            .then(|| vertex_connectivity(&g).map(|c| c.kappa))
            .transpose()
            .map_err(|e| e.to_string())?;
        let mut vertex = serde_json::Map::new();
        let mut edge = serde_json::Map::new();
        for &k in &a.k {
            // orders too small for k faults are reported as null
            let v = is_k_vertex_fault_hamiltonian(&g, k).ok().map(|v| v.tolerant);
            let e = is_k_edge_fault_hamiltonian(&g, k).ok().map(|v| v.tolerant);
            vertex.insert(k.to_string(), json!(v));
            edge.insert(k.to_string(), json!(e));
        }
        let row = json!({
            "graph6": g.to_graph6(),
            "n": n,
            "edges": g.edge_count(),
            "delta": degree_sequence(&g).min,
            "sigma2": sigma2(&g),
            "kappa": kappa,
            "hamiltonian": find_hamiltonian_cycle(&g).is_some(),
            "vertex_fault_tolerant": vertex,
            "edge_fault_tolerant": edge,
        });
        writeln!(out, "{row}").map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

fn classify() -> Result<bool, Failure> {
    let mut out = output(None)?;
    let mut found = false;
    for g in read_graphs()? {
        let c = classify_graph(&g).map_err(|e| format!("{}: {e}", g.to_graph6()))?;
        found |= c.is_counterexample();
        writeln!(out, "{}", c.to_json()).map_err(io_err)?;
    }
    out.flush().map_err(io_err)?;
    Ok(found)
}

fn stream_cap() -> Result<usize, Failure> {
    match std::env::var("OREHAM_MAX_N") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|e| format!("OREHAM_MAX_N=`{v}`: {e}")),
        Err(_) => Ok(STREAM_MAX_ORDER),
    }
}

fn verify(a: VerifyArgs) -> Result<bool, Failure> {
    let report: VerificationReport = match a.n {
        Some(n) => verify_theorem_with(a.theorem, n, a.workers),
        None => verify_graphs(a.theorem, read_graphs()?, stream_cap()?, a.workers),
    }
    .map_err(|e| e.to_string())?;
    let report = if a.no_timing { report.without_timing() } else { report };
    let mut out = output(a.out.as_ref())?;
    writeln!(out, "{}", report.to_json()).map_err(io_err)?;
    out.flush().map_err(io_err)?;
    if a.out.is_some() {
        eprintln!(
            "{} n={}: {} graphs, {} counterexamples",
            report.theorem,
            report.n,
            report.enumerated,
            report.counterexamples.len()
        );
    }
    Ok(!report.counterexamples.is_empty())
}

fn enumerate(a: EnumerateArgs) -> Result<(), Failure> {
    let filter = HypothesisFilter {
        min_sigma2: a.filter_sigma2,
        min_kappa: a.filter_kappa,
        connected_only: a.connected,
        maximal_non_hamiltonian: a.maximal_non_hamiltonian,
    };
    let mut out = output(a.out.as_ref())?;
    if a.workers.is_some() {
        for g in enumerate_sorted(a.n, &filter, a.workers).map_err(|e| e.to_string())? {
            writeln!(out, "{}", g.to_graph6()).map_err(io_err)?;
        }
    } else {
        let mut failed = None;
        enumerate_graphs(a.n, &filter, |g| {
            if failed.is_none() {
                failed = writeln!(out, "{}", g.to_graph6()).err();
            }
        })
        .map_err(|e| e.to_string())?;
        if let Some(e) = failed {
            return Err(io_err(e));
        }
    }
    out.flush().map_err(io_err)
}

fn atlas(a: AtlasArgs) -> Result<(), Failure> {
    let mut out = output(a.out.as_ref())?;
    for (spec, g) in family_atlas(a.n) {
        if a.dot {
            let name = format!("{}_n{}_{}", spec.family.name(), spec.n, g.to_graph6());
            write!(out, "{}", g.to_dot(&name)).map_err(io_err)?;
            continue;
        }
        let row = json!({
            "family": spec.family.name(),
            "n": spec.n,
            "graph6": g.to_graph6(),
            "spec": spec.to_json(),
            "degrees": degree_sequence(&g).degrees,
            "sigma2": sigma2(&g),
            "four_connected": is_k_connected(&g, 4),
        });
        writeln!(out, "{row}").map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}
