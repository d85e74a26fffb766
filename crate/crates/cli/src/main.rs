//! `brouwer-lab`: batch runs of the Brouwer bound checker, the certificate
//! pipeline, corpus verification and the signed experiments.
//!
//! Exit codes: `0` when nothing is violated, `2` when a checked graph violates
//! the bound, `1` on bad arguments, I/O or parse failures.

mod output;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use brouwer_core::brouwer::{check_graph, excess_profile, ExcessProfile, Status, TolerancePolicy};
use brouwer_core::certificates::{coverage_report, CertConfig, CertId};
use brouwer_core::corpus::{verify_corpus, CorpusMode, CorpusOptions};
use brouwer_core::graph::{parse_graph6, Graph};
use brouwer_core::signed::{min_violator_search, monte_carlo, signed_spectrum, SignedGraph};
use brouwer_core::spectral::{adjacency_spectrum, laplacian_spectrum, signless_spectrum, Spectrum};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use output::{opt_cell, Document, Format, Renderer, Table};

const EXIT_ERROR: u8 = 1;
const EXIT_VIOLATION: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "brouwer-lab",
    version,
    about = "Check Brouwer's bound on Laplacian eigenvalue sums"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads; 0 uses every core. Never changes the output.
    #[arg(long, global = true, env = "BROUWER_LAB_WORKERS", default_value_t = 0)]
    workers: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Keep wall-clock fields (`wall_time_ms`, `runtime_ms`) in the output.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Per-k excess profile of each graph.
    Check(CheckArgs),
    /// Certificate coverage of each graph, without eigensolving.
    Certify(CertifyArgs),
    /// Verify every graph of a graph6 file.
    Enumerate(EnumerateArgs),
    /// Monte Carlo over uniformly signed complete graphs.
    SignedMc(SignedMcArgs),
    /// Exhaustive search for the smallest violating signed graphs.
    SignedMin(SignedMinArgs),
    /// Spectra, verdicts and certificate coverage of each graph.
    Report(ReportArgs),
}

/// A graph6 file, `-` for stdin, or a single graph6 line. With `--signed`
/// each line is graph6, a tab, then one `+` or `-` per edge in edge-rank order.
#[derive(Debug, Args)]
struct Input {
    input: String,

    #[arg(long)]
    signed: bool,
}

#[derive(Debug, Args)]
struct Tolerance {
    /// Absolute tolerance for classifying an excess; default 1e-6 * max(1, n).
    #[arg(long, value_parser = parse_tol)]
    tol: Option<f64>,
}

impl Tolerance {
    fn policy(&self) -> TolerancePolicy {
        TolerancePolicy { absolute: self.tol }
    }
}

#[derive(Debug, Args)]
struct Limits {
    /// Largest n for the exact spectral density search.
    #[arg(long, default_value_t = 18, value_parser = clap::value_parser!(u64).range(1..))]
    t_exact_limit: u64,

    /// Largest n for exact arboricity.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    arb_exact_limit: u64,

    /// Treat every graph as planar (arboricity at most 3). Not verified.
    #[arg(long)]
    assume_planar: bool,
}

impl Limits {
    fn config(&self) -> CertConfig {
        CertConfig {
            t_exact_limit: self.t_exact_limit as usize,
            arb_exact_limit: self.arb_exact_limit as usize,
            assume_planar: self.assume_planar,
        }
    }

    fn echo(&self) -> Value {
        json!({
            "t_exact_limit": self.t_exact_limit,
            "arb_exact_limit": self.arb_exact_limit,
            "assume_planar": self.assume_planar,
        })
    }
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    tol: Tolerance,
}

#[derive(Debug, Args)]
struct CertifyArgs {
    /// A graph6 file, `-` for stdin, or a single graph6 line.
    input: String,
    #[command(flatten)]
    limits: Limits,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    path: PathBuf,
    #[arg(long, default_value = "certificates-first", value_parser = parse_mode)]
    mode: CorpusMode,
    /// Also eigensolve fully certified graphs and report certificate conflicts.
    #[arg(long)]
    audit: bool,
    #[command(flatten)]
    limits: Limits,
    #[command(flatten)]
    tol: Tolerance,
}

#[derive(Debug, Args)]
struct SignedMcArgs {
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct SignedMinArgs {
    #[arg(long, default_value_t = 5)]
    n_max: usize,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    limits: Limits,
    #[command(flatten)]
    tol: Tolerance,
}

fn parse_tol(s: &str) -> std::result::Result<f64, String> {
    let tol: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if tol.is_finite() && tol >= 0.0 {
        Ok(tol)
    } else {
        Err("tolerance must be finite and nonnegative".into())
    }
}

fn parse_mode(s: &str) -> std::result::Result<CorpusMode, String> {
    s.parse().map_err(|e: brouwer_core::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors must not look like a violation
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers)
        .build_global()?;
    let renderer = Renderer {
        format: cli.format,
        timings: cli.timings,
    };
    let (doc, code) = match &cli.command {
        Command::Check(a) => cmd_check(a, cli.format)?,
        Command::Certify(a) => cmd_certify(a, cli.format)?,
        Command::Enumerate(a) => cmd_enumerate(a, cli.workers, &renderer)?,
        Command::SignedMc(a) => cmd_signed_mc(a, cli.workers, cli.format)?,
        Command::SignedMin(a) => cmd_signed_min(a, cli.format)?,
        Command::Report(a) => cmd_report(a, cli.format)?,
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    renderer.write(doc, &mut out)?;
    out.flush()?;
    Ok(code)
}

fn format_name(format: Format) -> &'static str {
    match format {
        Format::Json => "json",
        Format::Jsonl => "jsonl",
        Format::Csv => "csv",
    }
}

/// Nonblank lines with 1-based line numbers. `source` is a file path, `-` for
/// stdin, or a literal line. Graph6 never contains `.` or `/`, so inputs with
/// either are always treated as paths.
fn input_lines(source: &str) -> Result<Vec<(usize, String)>> {
    let text = if source == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        s
    } else if Path::new(source).is_file() || source.contains(['.', '/']) {
        fs::read_to_string(source).with_context(|| format!("reading {source}"))?
    } else {
        return Ok(vec![(1, source.to_string())]);
    };
    Ok(text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r').to_string()))
        .collect())
}

fn parse_unsigned(line: usize, text: &str) -> Result<Graph> {
    parse_graph6(text.as_bytes())
        .with_context(|| format!("line {line}: cannot parse graph6 {text:?}"))
}

fn parse_signed(line: usize, text: &str) -> Result<SignedGraph> {
    SignedGraph::parse_text(text)
        .with_context(|| format!("line {line}: cannot parse signed graph {text:?}"))
}

/// Laplacian (or signed Laplacian) profile of one input line.
fn profile_of(
    line: usize,
    text: &str,
    signed: bool,
    tol: TolerancePolicy,
) -> Result<(ExcessProfile, Option<Graph>)> {
    if signed {
        let sg = parse_signed(line, text)?;
        let profile = excess_profile(&signed_spectrum(&sg)?, sg.m(), tol)?;
        Ok((profile, None))
    } else {
        let g = parse_unsigned(line, text)?;
        Ok((check_graph(&g, tol)?, Some(g)))
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Holds => "HOLDS",
        Status::Tight => "TIGHT",
        Status::Violated => "VIOLATED",
    }
}

fn ids_cell(ids: &[CertId]) -> String {
    ids.iter().map(|id| id.name()).collect::<Vec<_>>().join(";")
}

fn cmd_check(a: &CheckArgs, format: Format) -> Result<(Document, u8)> {
    let tol = a.tol.policy();
    let mut items = Vec::new();
    let mut rows = Vec::new();
    let mut violated = 0usize;
    for (line, text) in input_lines(&a.input.input)? {
        let (p, _) = profile_of(line, &text, a.input.signed, tol)?;
        violated += p.has_violation() as usize;
        for v in p.verdicts(&[]) {
            rows.push(vec![
                line.to_string(),
                text.clone(),
                p.n.to_string(),
                p.m.to_string(),
                v.k.to_string(),
                status_name(v.status).into(),
                v.excess.to_string(),
            ]);
        }
        items.push(json!({
            "line": line,
            "graph": text,
            "n": p.n,
            "m": p.m,
            "tol": p.tol,
            "max_excess": { "k": p.max_excess.0, "excess": p.max_excess.1 },
            "violated": p.has_violation(),
            "verdicts": p.verdicts(&[]),
        }));
    }
    let graphs = items.len();
    let doc = Document {
        command: "check",
        config: json!({
            "input": a.input.input,
            "signed": a.input.signed,
            "tol": a.tol.tol,
            "format": format_name(format),
        }),
        items: Some(("graphs", "profile", items)),
        summary: Some((
            "summary",
            json!({ "graphs": graphs, "violated_graphs": violated }),
        )),
        table: Table {
            columns: vec!["line", "graph", "n", "m", "k", "status", "excess"],
            rows,
        },
    };
    Ok((doc, if violated > 0 { EXIT_VIOLATION } else { 0 }))
}

fn cmd_certify(a: &CertifyArgs, format: Format) -> Result<(Document, u8)> {
    let cfg = a.limits.config();
    let mut items = Vec::new();
    let mut rows = Vec::new();
    let mut total = 0usize;
    for (line, text) in input_lines(&a.input)? {
        let g = parse_unsigned(line, &text)?;
        let cov = coverage_report(&g, &cfg)?;
        total += cov.is_total() as usize;
        for (i, ids) in cov.covered_by.iter().enumerate() {
            rows.push(vec![
                line.to_string(),
                text.clone(),
                cov.n.to_string(),
                cov.m.to_string(),
                (i + 1).to_string(),
                (!ids.is_empty()).to_string(),
                ids_cell(ids),
            ]);
        }
        items
            .push(json!({ "line": line, "graph": text, "total": cov.is_total(), "coverage": cov }));
    }
    let graphs = items.len();
    let mut config = a.limits.echo();
    config["input"] = json!(a.input);
    config["format"] = json!(format_name(format));
    let doc = Document {
        command: "certify",
        config,
        items: Some(("graphs", "coverage", items)),
        summary: Some((
            "summary",
            json!({ "graphs": graphs, "fully_certified": total }),
        )),
        table: Table {
            columns: vec!["line", "graph", "n", "m", "k", "covered", "certificates"],
            rows,
        },
    };
    Ok((doc, 0))
}

fn cmd_enumerate(a: &EnumerateArgs, workers: usize, renderer: &Renderer) -> Result<(Document, u8)> {
    let opts = CorpusOptions {
        mode: a.mode,
        workers,
        certificates: a.limits.config(),
        tolerance: a.tol.policy(),
        audit: a.audit,
        ..CorpusOptions::default()
    };
    // violations stream to stderr as JSONL while the run continues
    let report = verify_corpus(&a.path, &opts, |v| {
        eprintln!("{}", renderer.line("violation", json!(v)));
    })
    .with_context(|| format!("verifying {}", a.path.display()))?;
    for s in &report.skipped {
        eprintln!("warning: line {} skipped: {}", s.line, s.error);
    }
    let code = if !report.violations.is_empty() {
        EXIT_VIOLATION
    } else if !report.skipped.is_empty() {
        EXIT_ERROR
    } else {
        0
    };
    let row = vec![
        json!(report.mode).as_str().unwrap_or_default().to_string(),
        report.total_graphs.to_string(),
        report.parsed_graphs.to_string(),
        report.total_pairs.to_string(),
        report.fully_certified.to_string(),
        report.eigensolved.to_string(),
        report.violations.len().to_string(),
        report.tight_pairs.to_string(),
        report.tight_graphs.to_string(),
        report.conflicts.len().to_string(),
        report.skipped.len().to_string(),
        report.wall_time_ms.to_string(),
    ];
    let mut config = a.limits.echo();
    config["input"] = json!(a.path);
    config["mode"] = json!(a.mode);
    config["audit"] = json!(a.audit);
    config["tol"] = json!(a.tol.tol);
    config["format"] = json!(format_name(renderer.format));
    let doc = Document {
        command: "enumerate",
        config,
        items: None,
        summary: Some(("report", json!(report))),
        table: Table {
            columns: vec![
                "mode",
                "total_graphs",
                "parsed_graphs",
                "total_pairs",
                "fully_certified",
                "eigensolved",
                "violations",
                "tight_pairs",
                "tight_graphs",
                "conflicts",
                "skipped",
                "wall_time_ms",
            ],
            rows: vec![row],
        },
    };
    Ok((doc, code))
}

fn cmd_signed_mc(a: &SignedMcArgs, workers: usize, format: Format) -> Result<(Document, u8)> {
    let run = monte_carlo(a.n, a.trials as usize, a.seed, workers)?;
    let rows = run
        .records
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.trial_index.to_string(),
                r.seed.to_string(),
                r.kstar.to_string(),
                r.max_excess.to_string(),
                opt_cell(r.excess_at_predicted_k),
                r.runtime_ms.to_string(),
            ]
        })
        .collect();
    let doc = Document {
        command: "signed-mc",
        config: json!({ "n": a.n, "trials": a.trials, "seed": a.seed, "format": format_name(format) }),
        items: Some((
            "records",
            "trial",
            run.records.iter().map(|r| json!(r)).collect(),
        )),
        summary: Some(("summary", json!(run.summary))),
        table: Table {
            columns: vec![
                "n",
                "trial",
                "seed",
                "kstar",
                "max_excess",
                "excess_at_predicted_k",
                "runtime_ms",
            ],
            rows,
        },
    };
    Ok((doc, 0))
}

fn cmd_signed_min(a: &SignedMinArgs, format: Format) -> Result<(Document, u8)> {
    let found = min_violator_search(a.n_max)?;
    let rows = found
        .iter()
        .map(|v| {
            vec![
                v.n.to_string(),
                v.m.to_string(),
                v.graph.clone(),
                v.k.to_string(),
                v.excess.to_string(),
            ]
        })
        .collect();
    let smallest = found.iter().map(|v| (v.n, v.m)).min();
    let doc = Document {
        command: "signed-min",
        config: json!({ "n_max": a.n_max, "format": format_name(format) }),
        summary: Some((
            "summary",
            json!({
                "classes": found.len(),
                "smallest": smallest.map(|(n, m)| json!({ "n": n, "m": m })),
            }),
        )),
        items: Some((
            "violators",
            "violator",
            found.iter().map(|v| json!(v)).collect(),
        )),
        table: Table {
            columns: vec!["n", "m", "graph", "k", "excess"],
            rows,
        },
    };
    Ok((doc, 0))
}

fn spectra_of(g: &Graph) -> Result<Vec<Spectrum>> {
    Ok(vec![
        laplacian_spectrum(g)?,
        signless_spectrum(g)?,
        adjacency_spectrum(g)?,
    ])
}

fn cmd_report(a: &ReportArgs, format: Format) -> Result<(Document, u8)> {
    let tol = a.tol.policy();
    let cfg = a.limits.config();
    let mut items = Vec::new();
    let mut rows = Vec::new();
    let mut violated = 0usize;
    for (line, text) in input_lines(&a.input.input)? {
        let (p, graph) = profile_of(line, &text, a.input.signed, tol)?;
        violated += p.has_violation() as usize;
        let (spectra, coverage) = match &graph {
            Some(g) => (spectra_of(g)?, Some(coverage_report(g, &cfg)?)),
            None => (vec![signed_spectrum(&parse_signed(line, &text)?)?], None),
        };
        let covered_by = coverage
            .as_ref()
            .map(|c| c.covered_by.clone())
            .unwrap_or_default();
        let verdicts = p.verdicts(&covered_by);
        for s in &spectra {
            for (i, x) in s.values.iter().enumerate() {
                rows.push(vec![
                    line.to_string(),
                    text.clone(),
                    s.kind.name().into(),
                    (i + 1).to_string(),
                    x.to_string(),
                ]);
            }
        }
        for v in &verdicts {
            rows.push(vec![
                line.to_string(),
                text.clone(),
                "excess".into(),
                v.k.to_string(),
                v.excess.to_string(),
            ]);
        }
        let spectra: serde_json::Map<String, Value> = spectra
            .iter()
            .map(|s| (s.kind.name().to_string(), json!(s.values)))
            .collect();
        items.push(json!({
            "line": line,
            "graph": text,
            "n": p.n,
            "m": p.m,
            "tol": p.tol,
            "bipartite": graph.as_ref().map(Graph::is_bipartite),
            "spectra": spectra,
            "max_excess": { "k": p.max_excess.0, "excess": p.max_excess.1 },
            "verdicts": verdicts,
            "uncovered": coverage.as_ref().map(|c| c.uncovered.clone()),
            "residual_region": coverage.as_ref().map(|c| json!(c.residual_region)),
        }));
    }
    let graphs = items.len();
    let mut config = a.limits.echo();
    config["input"] = json!(a.input.input);
    config["signed"] = json!(a.input.signed);
    config["tol"] = json!(a.tol.tol);
    config["format"] = json!(format_name(format));
    let doc = Document {
        command: "report",
        config,
        items: Some(("graphs", "report", items)),
        summary: Some((
            "summary",
            json!({ "graphs": graphs, "violated_graphs": violated }),
        )),
        table: Table {
            columns: vec!["line", "graph", "kind", "index", "value"],
            rows,
        },
    };
    Ok((doc, if violated > 0 { EXIT_VIOLATION } else { 0 }))
}
