//! Signed graphs, their Laplacians, random signed complete graphs, semicircle
//! predictions for the Brouwer excess, and small exhaustive searches.
//!
//! # Random signs
//!
//! Signs are drawn from ChaCha8 (`rand_chacha`) seeded with
//! `seed_from_u64(seed)` and positioned on stream `trial`. Edge `r` in edge-rank
//! order takes the top bit of the `r`-th `u64` of that stream: `1` is a minus
//! sign. The stream is portable, so a sample depends only on
//! `(n, seed, trial)`.

mod montecarlo;
mod search;
mod semicircle;

pub use montecarlo::{monte_carlo, run_trial, McRecord, McRun, McSummary};
pub use search::{min_violator_search, SignedViolator, MAX_SEARCH_N};
pub use semicircle::{
    predicted_profile, semicircle_density, semicircle_f, semicircle_quantile, semicircle_tail,
    SemicirclePredictor,
};

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{parse_graph6, write_graph6, Graph};
use crate::spectral::{eig_sym, Spectrum, SpectrumKind, SymMatrix};

/// A graph with a `±1` sign on every edge, stored in edge-rank order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedGraph {
    base: Graph,
    signs: Vec<i8>,
}

impl SignedGraph {
    pub fn new(base: Graph, signs: Vec<i8>) -> Result<Self> {
        if signs.len() != base.m() {
            return Err(Error::Signs(format!(
                "{} signs for {} edges",
                signs.len(),
                base.m()
            )));
        }
        if let Some(pos) = signs.iter().position(|&s| s != 1 && s != -1) {
            return Err(Error::Signs(format!(
                "sign {} at edge rank {pos}",
                signs[pos]
            )));
        }
        Ok(Self { base, signs })
    }

    pub fn all_plus(base: Graph) -> Self {
        let signs = vec![1; base.m()];
        Self { base, signs }
    }

    pub fn all_minus(base: Graph) -> Self {
        let signs = vec![-1; base.m()];
        Self { base, signs }
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn m(&self) -> usize {
        self.base.m()
    }

    /// Signed edges `(u, v, sign)` in edge-rank order.
    pub fn signed_edges(&self) -> impl Iterator<Item = (usize, usize, i8)> + '_ {
        self.base
            .edges()
            .zip(&self.signs)
            .map(|((u, v), &s)| (u, v, s))
    }

    /// One-line text form: graph6, a tab, then one `+`/`-` per edge in edge-rank order.
    pub fn to_text(&self) -> String {
        let signs: String = self
            .signs
            .iter()
            .map(|&s| if s > 0 { '+' } else { '-' })
            .collect();
        format!("{}\t{}", write_graph6(&self.base), signs)
    }

    pub fn parse_text(line: &str) -> Result<Self> {
        let line = line.trim_end_matches(['\n', '\r']);
        let (g6, signs) = line.split_once('\t').unwrap_or((line, ""));
        let base = parse_graph6(g6.as_bytes())?;
        let signs = signs
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(Error::Signs(format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        Self::new(base, signs)
    }
}

/// `D - A_τ`: unsigned degrees on the diagonal, `-τ(uv)` on each edge.
pub fn signed_laplacian(sg: &SignedGraph) -> SymMatrix {
    let g = sg.base();
    let mut m = SymMatrix::zeros(g.n());
    for (u, v, s) in sg.signed_edges() {
        m.set(u, v, -(s as f64));
    }
    for v in 0..g.n() {
        m.set(v, v, g.degree(v) as f64);
    }
    m
}

pub fn signed_spectrum(sg: &SignedGraph) -> Result<Spectrum> {
    eig_sym(&signed_laplacian(sg), SpectrumKind::SignedLaplacian)
}

pub(crate) fn sign_stream(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Uniform random signing of `K_n` from stream `trial` of `seed`.
pub fn sample_signed_complete_stream(n: usize, seed: u64, trial: u64) -> Result<SignedGraph> {
    if n < 2 {
        return Err(Error::Parameter(format!(
            "signed complete graph needs n >= 2, got {n}"
        )));
    }
    let base = Graph::complete(n)?;
    let mut rng = sign_stream(seed, trial);
    let signs = (0..base.m())
        .map(|_| if rng.next_u64() >> 63 == 1 { -1 } else { 1 })
        .collect();
    SignedGraph::new(base, signs)
}

/// Uniform random signing of `K_n`, stream 0 of `seed`.
pub fn sample_signed_complete(n: usize, seed: u64) -> Result<SignedGraph> {
    sample_signed_complete_stream(n, seed, 0)
}

/// `L(K_n^τ) = s I + sqrt(n) M` with `M = -A_τ / sqrt(n)` (zero diagonal,
/// entries `±1/sqrt(n)`) and shift `s = n - 1`, the common unsigned degree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftDecomposition {
    pub shift: f64,
    pub scale: f64,
    /// Sign matrix `M`.
    #[serde(skip)]
    pub m: SymMatrix,
    /// `max |L - s I - scale M|`.
    pub residual: f64,
}

pub fn shift_decomposition(sg: &SignedGraph) -> Result<ShiftDecomposition> {
    let n = sg.n();
    if sg.m() != n * (n - 1) / 2 {
        return Err(Error::Parameter(
            "shift decomposition needs a complete base graph".into(),
        ));
    }
    let scale = (n as f64).sqrt();
    let shift = (n - 1) as f64;
    let mut m = SymMatrix::zeros(n);
    for (u, v, s) in sg.signed_edges() {
        m.set(u, v, -(s as f64) / scale);
    }
    let l = signed_laplacian(sg);
    let mut residual: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let rebuilt = if i == j { shift } else { 0.0 } + scale * m.get(i, j);
            residual = residual.max((l.get(i, j) - rebuilt).abs());
        }
    }
    Ok(ShiftDecomposition {
        shift,
        scale,
        m,
        residual,
    })
}
