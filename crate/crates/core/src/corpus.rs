//! Streaming verification of graph6 corpora, plus random threshold graphs.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::brouwer::{check_graph, TolerancePolicy};
use crate::certificates::{coverage_report, CertConfig, CertId};
use crate::error::{Error, Result};
use crate::graph::{parse_graph6, Graph};

/// Tight `(G, k)` pairs kept verbatim in a report.
pub const TIGHT_SAMPLE_LEN: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusMode {
    /// Run the certificates and eigensolve only graphs they do not fully cover.
    #[default]
    CertificatesFirst,
    /// Eigensolve every graph; no certificates.
    DirectOnly,
}

impl FromStr for CorpusMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "certificates_first" | "certificates-first" => Ok(Self::CertificatesFirst),
            "direct_only" | "direct-only" => Ok(Self::DirectOnly),
            other => Err(Error::Parameter(format!("unknown corpus mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorpusOptions {
    pub mode: CorpusMode,
    /// Worker threads; `0` means the rayon default.
    pub workers: usize,
    pub certificates: CertConfig,
    pub tolerance: TolerancePolicy,
    /// Also eigensolve fully certified graphs and record certificate/checker conflicts.
    pub audit: bool,
    /// Lines read and processed per batch.
    pub batch_lines: usize,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        Self {
            mode: CorpusMode::default(),
            workers: 0,
            certificates: CertConfig::default(),
            tolerance: TolerancePolicy::default(),
            audit: false,
            batch_lines: 1 << 14,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusViolation {
    pub line: usize,
    pub graph6: String,
    pub k: usize,
    pub excess: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TightCase {
    pub line: usize,
    pub graph6: String,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkippedLine {
    pub line: usize,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertCoverage {
    pub id: CertId,
    /// `(G, k)` pairs this certificate covered.
    pub pairs: u64,
    /// `pairs` over all `(G, k)` pairs in the corpus.
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertConflict {
    pub line: usize,
    pub graph6: String,
    pub k: usize,
    pub id: CertId,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusReport {
    pub mode: CorpusMode,
    /// Nonblank lines, parsed or not.
    pub total_graphs: usize,
    pub parsed_graphs: usize,
    /// Sum of `n` over parsed graphs.
    pub total_pairs: u64,
    pub fully_certified: usize,
    pub eigensolved: usize,
    pub violations: Vec<CorpusViolation>,
    /// Tight `(G, k)` pairs among eigensolved graphs.
    pub tight_pairs: u64,
    pub tight_graphs: usize,
    pub tight_sample: Vec<TightCase>,
    /// Per-certificate coverage; empty in direct-only mode.
    pub coverage: Vec<CertCoverage>,
    /// Certificates covering a `k` the checker reports violated (audit runs only).
    pub conflicts: Vec<CertConflict>,
    pub skipped: Vec<SkippedLine>,
    pub wall_time_ms: u64,
}

impl CorpusReport {
    pub fn verified(&self) -> bool {
        self.violations.is_empty() && self.skipped.is_empty()
    }

    fn new(mode: CorpusMode) -> Self {
        Self {
            mode,
            total_graphs: 0,
            parsed_graphs: 0,
            total_pairs: 0,
            fully_certified: 0,
            eigensolved: 0,
            violations: Vec::new(),
            tight_pairs: 0,
            tight_graphs: 0,
            tight_sample: Vec::new(),
            coverage: Vec::new(),
            conflicts: Vec::new(),
            skipped: Vec::new(),
            wall_time_ms: 0,
        }
    }
}

/// Result for one input line.
struct Outcome {
    line: usize,
    graph6: String,
    n: usize,
    fully_certified: bool,
    eigensolved: bool,
    violations: Vec<(usize, f64)>,
    tight: Vec<usize>,
    covered: [u64; CertId::ALL.len()],
    conflicts: Vec<(usize, CertId)>,
}

fn process(line: usize, text: &str, opts: &CorpusOptions) -> std::result::Result<Outcome, String> {
    let g = parse_graph6(text.as_bytes()).map_err(|e| e.to_string())?;
    let mut out = Outcome {
        line,
        graph6: text.to_string(),
        n: g.n(),
        fully_certified: false,
        eigensolved: false,
        violations: Vec::new(),
        tight: Vec::new(),
        covered: [0; CertId::ALL.len()],
        conflicts: Vec::new(),
    };
    let coverage = match opts.mode {
        CorpusMode::CertificatesFirst => {
            let report = coverage_report(&g, &opts.certificates).map_err(|e| e.to_string())?;
            for ids in &report.covered_by {
                for id in ids {
                    out.covered[*id as usize] += 1;
                }
            }
            out.fully_certified = report.is_total();
            Some(report)
        }
        CorpusMode::DirectOnly => None,
    };
    if out.fully_certified && !opts.audit {
        return Ok(out);
    }
    let profile = check_graph(&g, opts.tolerance).map_err(|e| e.to_string())?;
    out.eigensolved = true;
    out.violations = profile.violations().collect();
    out.tight = profile.tight_ks().collect();
    if let Some(report) = &coverage {
        out.conflicts = report.conflicts_with(&profile);
    }
    Ok(out)
}

/// Verifies a graph6 file; see [`verify_corpus_reader`].
pub fn verify_corpus(
    path: impl AsRef<Path>,
    opts: &CorpusOptions,
    on_violation: impl FnMut(&CorpusViolation),
) -> Result<CorpusReport> {
    let file = File::open(path)?;
    verify_corpus_reader(BufReader::new(file), opts, on_violation)
}

/// Verifies every graph6 line of `reader`. Lines are processed in parallel in
/// bounded batches and merged in input order, so the report does not depend on
/// the worker count. Unparseable lines are recorded and skipped. `on_violation`
/// sees each violation as soon as its batch is merged.
pub fn verify_corpus_reader<R: BufRead>(
    reader: R,
    opts: &CorpusOptions,
    mut on_violation: impl FnMut(&CorpusViolation),
) -> Result<CorpusReport> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::Parameter(e.to_string()))?;
    let mut report = CorpusReport::new(opts.mode);
    let mut covered = [0u64; CertId::ALL.len()];
    let batch_lines = opts.batch_lines.max(1);
    let mut lines = reader.lines().enumerate();
    let mut batch: Vec<(usize, String)> = Vec::with_capacity(batch_lines);

    loop {
        batch.clear();
        for (i, line) in lines.by_ref() {
            let line = line?;
            let text = line.trim_end_matches('\r');
            if text.trim().is_empty() {
                continue;
            }
            batch.push((i + 1, text.to_string()));
            if batch.len() == batch_lines {
                break;
            }
        }
        if batch.is_empty() {
            break;
        }
        let outcomes: Vec<_> = pool.install(|| {
            batch
                .par_iter()
                .map(|(line, text)| (*line, process(*line, text, opts)))
                .collect()
        });
        for (line, outcome) in outcomes {
            report.total_graphs += 1;
            let o = match outcome {
                Ok(o) => o,
                Err(error) => {
                    report.skipped.push(SkippedLine { line, error });
                    continue;
                }
            };
            merge(&mut report, &mut covered, o, &mut on_violation);
        }
    }

    if opts.mode == CorpusMode::CertificatesFirst {
        let denom = report.total_pairs.max(1) as f64;
        report.coverage = CertId::ALL
            .iter()
            .zip(covered)
            .map(|(&id, pairs)| CertCoverage {
                id,
                pairs,
                fraction: pairs as f64 / denom,
            })
            .collect();
    }
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn merge(
    report: &mut CorpusReport,
    covered: &mut [u64; CertId::ALL.len()],
    o: Outcome,
    on_violation: &mut impl FnMut(&CorpusViolation),
) {
    report.parsed_graphs += 1;
    report.total_pairs += o.n as u64;
    report.fully_certified += o.fully_certified as usize;
    report.eigensolved += o.eigensolved as usize;
    for (acc, c) in covered.iter_mut().zip(o.covered) {
        *acc += c;
    }
    for (k, excess) in o.violations {
        let v = CorpusViolation {
            line: o.line,
            graph6: o.graph6.clone(),
            k,
            excess,
        };
        on_violation(&v);
        report.violations.push(v);
    }
    if !o.tight.is_empty() {
        report.tight_graphs += 1;
        report.tight_pairs += o.tight.len() as u64;
        for k in o.tight {
            if report.tight_sample.len() < TIGHT_SAMPLE_LEN {
                report.tight_sample.push(TightCase {
                    line: o.line,
                    graph6: o.graph6.clone(),
                    k,
                });
            }
        }
    }
    report
        .conflicts
        .extend(o.conflicts.into_iter().map(|(k, id)| CertConflict {
            line: o.line,
            graph6: o.graph6.clone(),
            k,
            id,
        }));
}

/// One step of a threshold-graph construction, applied to the graph so far.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdStep {
    /// Add an isolated vertex.
    Isolate,
    /// Add a vertex adjacent to everything.
    Join,
}

impl FromStr for ThresholdStep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "isolate" | "i" | "0" => Ok(Self::Isolate),
            "join" | "j" | "1" => Ok(Self::Join),
            other => Err(Error::Parameter(format!(
                "unknown threshold step {other:?}"
            ))),
        }
    }
}

/// Applies `steps` to `K_1`.
pub fn threshold_from_steps(steps: &[ThresholdStep]) -> Result<Graph> {
    let mut g = Graph::empty(1)?;
    for step in steps {
        g = match step {
            ThresholdStep::Isolate => g.add_isolated()?,
            ThresholdStep::Join => g.join_one()?,
        };
    }
    Ok(g)
}

/// `count` threshold graphs on `n` vertices, each from `n - 1` fair random
/// steps. Graph `i` uses ChaCha8 stream `i` of `seed`.
pub fn generate_threshold_corpus(count: usize, n: usize, seed: u64) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(Error::VertexCount {
            n,
            max: crate::graph::MAX_VERTICES,
        });
    }
    (0..count)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let steps: Vec<ThresholdStep> = (1..n)
                .map(|_| {
                    if rng.next_u64() >> 63 == 1 {
                        ThresholdStep::Join
                    } else {
                        ThresholdStep::Isolate
                    }
                })
                .collect();
            threshold_from_steps(&steps)
        })
        .collect()
}
