//! Sufficient conditions for `BC_k` that need no Laplacian eigensolve.
//!
//! Each certificate reports the set of `k` it covers together with the
//! numbers it used. Comparisons on integer data are exact. Comparisons that
//! involve radicals are squared into integer form where possible; the rest
//! carry a small relative slack in the direction that certifies less.

mod window;

pub use window::{window_interval, WindowExponent, WindowInterval};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::brouwer::{ExcessProfile, Status};
use crate::error::{Error, Result};
use crate::graph::{
    arboricity, degree_order, degree_stats, splittance, top_set_from_order, ArborBound,
    DegreeStats, Graph, Splittance, TopSet, DEFAULT_ARBORICITY_EXACT_LIMIT,
};
use crate::spectral::{msd_t, TBound, DEFAULT_T_EXACT_LIMIT};

/// Relative slack applied against certification when a float comparison is unavoidable.
const SOUND_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CertId {
    TrivialK,
    KnBound,
    SpectralDensity,
    Arboricity,
    MaxDegree,
    Variance,
    Popoviciu,
    Splittance,
    SplitEdit,
    SplitKnown,
    SplitProximity,
}

impl CertId {
    pub const ALL: [CertId; 11] = [
        CertId::TrivialK,
        CertId::KnBound,
        CertId::SpectralDensity,
        CertId::Arboricity,
        CertId::MaxDegree,
        CertId::Variance,
        CertId::Popoviciu,
        CertId::Splittance,
        CertId::SplitEdit,
        CertId::SplitKnown,
        CertId::SplitProximity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CertId::TrivialK => "TRIVIAL_K",
            CertId::KnBound => "KN_BOUND",
            CertId::SpectralDensity => "SPECTRAL_DENSITY",
            CertId::Arboricity => "ARBORICITY",
            CertId::MaxDegree => "MAX_DEGREE",
            CertId::Variance => "VARIANCE",
            CertId::Popoviciu => "POPOVICIU",
            CertId::Splittance => "SPLITTANCE",
            CertId::SplitEdit => "SPLIT_EDIT",
            CertId::SplitKnown => "SPLIT_KNOWN",
            CertId::SplitProximity => "SPLIT_PROXIMITY",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub id: CertId,
    pub n: usize,
    /// Covered values of `k`, ascending, within `1..=n`.
    pub covered_k: Vec<usize>,
    pub evidence: BTreeMap<String, f64>,
}

impl Certificate {
    fn new(id: CertId, n: usize) -> Self {
        Self {
            id,
            n,
            covered_k: Vec::new(),
            evidence: BTreeMap::new(),
        }
    }

    fn with_range(mut self, pred: impl Fn(usize) -> bool) -> Self {
        self.covered_k = (1..=self.n).filter(|&k| pred(k)).collect();
        self
    }

    fn all(self) -> Self {
        self.with_range(|_| true)
    }

    fn note(mut self, key: &str, value: f64) -> Self {
        self.evidence.insert(key.to_string(), value);
        self
    }

    pub fn covers(&self, k: usize) -> bool {
        self.covered_k.binary_search(&k).is_ok()
    }

    pub fn is_total(&self) -> bool {
        self.covered_k.len() == self.n
    }
}

/// `BC_1`, `BC_2`, `BC_{n-3}` (complement of `BC_2`), `BC_{n-1}` and `BC_n`.
pub fn cert_trivial(g: &Graph) -> Certificate {
    let n = g.n();
    let mut set = vec![1, 2, n, n.saturating_sub(1)];
    if n >= 4 {
        set.push(n - 3);
    }
    Certificate::new(CertId::TrivialK, n).with_range(|k| set.contains(&k))
}

/// `s_k <= kλ_1 <= kn`, so `BC_k` holds whenever `kn <= m + C(k+1, 2)`.
pub fn cert_kn(g: &Graph) -> Certificate {
    let (n, m) = (g.n() as u64, g.m() as u64);
    Certificate::new(CertId::KnBound, g.n())
        .with_range(|k| {
            let k = k as u64;
            2 * k * n <= 2 * m + k * (k + 1)
        })
        .note("m", m as f64)
        .note("n", n as f64)
}

/// `BC_k` for `k >= 2 m^{1/3} / (1-t)^{2/3}`, and for every `k` when
/// `m >= (2n)^{3/2} / (1-t)`. `tb` must be an upper bound on `t(G)`.
pub fn cert_spectral_density(g: &Graph, tb: &TBound) -> Result<Certificate> {
    if tb.value.is_nan() || tb.value >= 1.0 {
        return Err(Error::Parameter(format!(
            "spectral density bound {} is not below 1",
            tb.value
        )));
    }
    let (n, m) = (g.n() as f64, g.m() as f64);
    let gap = 1.0 - (tb.value + SOUND_SLACK).min(1.0);
    let cert = Certificate::new(CertId::SpectralDensity, g.n())
        .note("t", tb.value)
        .note("t_exact", tb.exact as u8 as f64)
        .note("k_threshold", 2.0 * m.cbrt() / gap.powf(2.0 / 3.0))
        .note("m_threshold", (2.0 * n).powf(1.5) / gap);
    // m >= (2n)^{3/2}/(1-t)  <=>  m^2 (1-t)^2 >= 8 n^3
    if m > 0.0 && m * m * gap * gap >= 8.0 * n * n * n * (1.0 + SOUND_SLACK) {
        return Ok(cert.note("dense_branch", 1.0).all());
    }
    // k >= 2 m^{1/3}/(1-t)^{2/3}  <=>  k^3 (1-t)^2 >= 8m
    Ok(cert
        .note("dense_branch", 0.0)
        .with_range(|k| (k as f64).powi(3) * gap * gap >= 8.0 * m * (1.0 + SOUND_SLACK)))
}

/// `BC_k` for `k >= 4Υ - 1`, where `ab` bounds the arboricity from above.
pub fn cert_arboricity(g: &Graph, ab: ArborBound) -> Certificate {
    let threshold = (4 * ab.value).saturating_sub(1);
    Certificate::new(CertId::Arboricity, g.n())
        .note("arboricity", ab.value as f64)
        .note("arboricity_exact", ab.exact as u8 as f64)
        .with_range(|k| k >= threshold)
}

/// `BC_k` for `k >= 2Δ + 3`.
pub fn cert_max_degree(g: &Graph) -> Certificate {
    let delta = g.max_degree();
    Certificate::new(CertId::MaxDegree, g.n())
        .note("max_degree", delta as f64)
        .with_range(|k| k >= 2 * delta + 3)
}

/// Full conjecture when
/// `Σ d_v^2 <= (1 - 2m/n^2 + 2m^2/n^4) 8m^2/n - 2m/n^3`,
/// checked exactly after multiplying through by `n^5`.
pub fn cert_variance(g: &Graph, ds: &DegreeStats) -> Certificate {
    let (n, m) = (g.n() as i128, g.m() as i128);
    let beta = 2.0 * m as f64 / (n * n) as f64;
    let nf = n as f64;
    let cert = Certificate::new(CertId::Variance, g.n())
        .note("beta", beta)
        .note("tau", ds.sum_sq as f64 / nf.powi(3))
        .note("sum_sq_degrees", ds.sum_sq as f64)
        .note("variance", ds.variance)
        .note(
            "variance_bound",
            (beta * (1.0 - beta) * nf).powi(2) - beta / (nf * nf),
        );
    if m == 0 {
        return cert;
    }
    let lhs = n.pow(5) * ds.sum_sq as i128;
    let rhs = (n.pow(4) - 2 * m * n * n + 2 * m * m) * 8 * m * m - 2 * m * n * n;
    let rhs_f =
        (1.0 - beta + beta * beta / 2.0) * 8.0 * (m * m) as f64 / nf - 2.0 * m as f64 / nf.powi(3);
    let cert = cert.note("variance_rhs", rhs_f);
    if lhs <= rhs {
        cert.all()
    } else {
        cert
    }
}

/// Full conjecture when `Δ - δ <= 2 d̄ (n - d̄) / n - 1`, i.e.
/// `(Δ - δ) n^3 <= 4m(n^2 - 2m) - n^3`.
pub fn cert_popoviciu(g: &Graph, ds: &DegreeStats) -> Certificate {
    let (n, m) = (g.n() as i128, g.m() as i128);
    let spread = (ds.max_degree - ds.min_degree) as i128;
    let dbar = ds.avg_degree();
    let nf = n as f64;
    let cert = Certificate::new(CertId::Popoviciu, g.n())
        .note("degree_spread", spread as f64)
        .note("spread_bound", 2.0 * dbar * (nf - dbar) / nf - 1.0);
    if m == 0 {
        return cert;
    }
    if spread * n.pow(3) <= 4 * m * (n * n - 2 * m) - n.pow(3) {
        cert.all()
    } else {
        cert
    }
}

/// `BC_k` for `k <= σ/sqrt(8n)`, and for every `k` once `σ >= sqrt(2) n^{3/2}`.
pub fn cert_splittance(g: &Graph, sp: Splittance) -> Certificate {
    let n = g.n() as u128;
    let sigma = sp.value as u128;
    let cert = Certificate::new(CertId::Splittance, g.n())
        .note("splittance", sp.value as f64)
        .note("k_max", sp.value as f64 / (8.0 * n as f64).sqrt());
    if sigma * sigma >= 2 * n * n * n {
        cert.all()
    } else {
        cert.with_range(|k| 8 * n * (k as u128).pow(2) <= sigma * sigma)
    }
}

/// Split graphs satisfy the conjecture for every `k`.
pub fn cert_split_known(g: &Graph, sp: Splittance) -> Certificate {
    let cert = Certificate::new(CertId::SplitKnown, g.n()).note("splittance", sp.value as f64);
    if sp.value == 0 {
        cert.all()
    } else {
        cert
    }
}

/// Edit-set test for one `k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitEditFragment {
    pub k: usize,
    pub m1: usize,
    pub m2: usize,
    /// `m1 - m2 + sqrt(2 k m2)`.
    pub first: f64,
    /// `m2 - m1 + sqrt(2 (n-k) m1)`.
    pub second: f64,
    pub covered: bool,
}

/// `BC_k` holds when `min{m1 - m2 + sqrt(2k m2), m2 - m1 + sqrt(2(n-k) m1)} <= 0`.
/// Each branch is decided in integers: `a - b + sqrt(c) <= 0` iff `b >= a`
/// and `c <= (b - a)^2`.
pub fn cert_split_edit(g: &Graph, k: usize, ts: &TopSet) -> Result<SplitEditFragment> {
    let n = g.n();
    if k == 0 || k > n || ts.k != k {
        return Err(Error::KOutOfRange { k, lo: 1, hi: n });
    }
    let (m1, m2) = (ts.m1 as u128, ts.m2 as u128);
    let nonpositive = |a: u128, b: u128, c: u128| b >= a && c <= (b - a) * (b - a);
    let first_ok = nonpositive(m1, m2, 2 * k as u128 * m2);
    let second_ok = nonpositive(m2, m1, 2 * (n - k) as u128 * m1);
    Ok(SplitEditFragment {
        k,
        m1: ts.m1,
        m2: ts.m2,
        first: ts.m1 as f64 - ts.m2 as f64 + (2.0 * k as f64 * ts.m2 as f64).sqrt(),
        second: ts.m2 as f64 - ts.m1 as f64 + (2.0 * (n - k) as f64 * ts.m1 as f64).sqrt(),
        covered: first_ok || second_ok,
    })
}

/// Edge-count diagnostic for one `k`: a violation of `BC_k` forces both
/// `m1` and `m2` below `k sqrt(2n) - k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProximityDiagnostic {
    pub k: usize,
    pub bound: f64,
    pub m1: usize,
    pub m2: usize,
    pub m1_exceeds: bool,
    pub m2_exceeds: bool,
    /// Splittance lower bound `k sqrt(8n)` that a violation would have to stay under.
    pub splittance_bound: f64,
}

impl ProximityDiagnostic {
    pub fn certifies(&self) -> bool {
        self.m1_exceeds || self.m2_exceeds
    }
}

pub fn cert_split_proximity(g: &Graph, k: usize, ts: &TopSet) -> Result<ProximityDiagnostic> {
    let n = g.n();
    if k == 0 || k > n || ts.k != k {
        return Err(Error::KOutOfRange { k, lo: 1, hi: n });
    }
    let kk = k as u128;
    // m_i > k sqrt(2n) - k  <=>  (m_i + k)^2 > 2n k^2
    let exceeds = |mi: usize| (mi as u128 + kk).pow(2) > 2 * n as u128 * kk * kk;
    Ok(ProximityDiagnostic {
        k,
        bound: k as f64 * (2.0 * n as f64).sqrt() - k as f64,
        m1: ts.m1,
        m2: ts.m2,
        m1_exceeds: exceeds(ts.m1),
        m2_exceeds: exceeds(ts.m2),
        splittance_bound: k as f64 * (8.0 * n as f64).sqrt(),
    })
}

/// Options for the full certificate pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertConfig {
    pub t_exact_limit: usize,
    pub arb_exact_limit: usize,
    /// Trust the caller that the graph is planar (arboricity at most 3).
    pub assume_planar: bool,
}

impl Default for CertConfig {
    fn default() -> Self {
        Self {
            t_exact_limit: DEFAULT_T_EXACT_LIMIT,
            arb_exact_limit: DEFAULT_ARBORICITY_EXACT_LIMIT,
            assume_planar: false,
        }
    }
}

/// Where any uncovered `k` must lie: `m/n < k < sqrt(8n)/(1-t)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualRegion {
    pub lower: f64,
    pub upper: f64,
    pub t_used: f64,
    pub contains_all_uncovered: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageReport {
    pub n: usize,
    pub m: usize,
    pub certificates: Vec<Certificate>,
    /// `covered_by[k-1]` lists the certificates covering `k`.
    pub covered_by: Vec<Vec<CertId>>,
    pub uncovered: Vec<usize>,
    pub residual_region: ResidualRegion,
    pub spectral_density: TBound,
    pub arboricity: ArborBound,
    pub splittance: Splittance,
    pub proximity: Vec<ProximityDiagnostic>,
    pub split_edit: Vec<SplitEditFragment>,
}

impl CoverageReport {
    pub fn is_total(&self) -> bool {
        self.uncovered.is_empty()
    }

    pub fn certificate(&self, id: CertId) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.id == id)
    }

    /// `(k, id)` pairs where a certificate covers a `k` the direct check reports violated.
    pub fn conflicts_with(&self, profile: &ExcessProfile) -> Vec<(usize, CertId)> {
        let mut out = Vec::new();
        for k in 1..=self.n.min(profile.n) {
            if profile.status_at(k) == Status::Violated {
                out.extend(self.covered_by[k - 1].iter().map(|&id| (k, id)));
            }
        }
        out
    }
}

/// Runs every certificate and merges their coverage per `k`.
pub fn coverage_report(g: &Graph, cfg: &CertConfig) -> Result<CoverageReport> {
    let n = g.n();
    let ds = degree_stats(g);
    let sp = splittance(g);
    let mut ab = arboricity(g, cfg.arb_exact_limit);
    if cfg.assume_planar && ab.value > 3 {
        ab = ArborBound {
            value: 3,
            exact: false,
        };
    }
    let tb = msd_t(g, cfg.t_exact_limit);

    let order = degree_order(g);
    let mut split_edit = Vec::with_capacity(n);
    let mut proximity = Vec::with_capacity(n);
    for k in 1..=n {
        let ts = top_set_from_order(g, &order, k)?;
        split_edit.push(cert_split_edit(g, k, &ts)?);
        proximity.push(cert_split_proximity(g, k, &ts)?);
    }
    let edit_cert =
        Certificate::new(CertId::SplitEdit, n).with_range(|k| split_edit[k - 1].covered);
    let prox_cert =
        Certificate::new(CertId::SplitProximity, n).with_range(|k| proximity[k - 1].certifies());

    let mut arb_cert = cert_arboricity(g, ab);
    if cfg.assume_planar {
        arb_cert.evidence.insert("planar_assumed".into(), 1.0);
    }

    let certificates = vec![
        cert_trivial(g),
        cert_kn(g),
        cert_spectral_density(g, &tb)?,
        arb_cert,
        cert_max_degree(g),
        cert_variance(g, &ds),
        cert_popoviciu(g, &ds),
        cert_splittance(g, sp),
        edit_cert,
        cert_split_known(g, sp),
        prox_cert,
    ];

    let mut covered_by = vec![Vec::new(); n];
    for cert in &certificates {
        for &k in &cert.covered_k {
            covered_by[k - 1].push(cert.id);
        }
    }
    let uncovered: Vec<usize> = (1..=n).filter(|&k| covered_by[k - 1].is_empty()).collect();

    let lower = g.m() as f64 / n as f64;
    let upper = (8.0 * n as f64).sqrt() / (1.0 - tb.value);
    let residual_region = ResidualRegion {
        lower,
        upper,
        t_used: tb.value,
        contains_all_uncovered: uncovered
            .iter()
            .all(|&k| (k as f64) > lower && (k as f64) < upper),
    };

    Ok(CoverageReport {
        n,
        m: g.m(),
        certificates,
        covered_by,
        uncovered,
        residual_region,
        spectral_density: tb,
        arboricity: ab,
        splittance: sp,
        proximity,
        split_edit,
    })
}
