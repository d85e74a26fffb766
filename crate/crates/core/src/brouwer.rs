//! Brouwer excess profiles: `s_k - m - k(k+1)/2` for every `k`, classified
//! under a tolerance policy, plus the complement and join spectral identities.

use serde::Serialize;

use crate::certificates::CertId;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{laplacian_spectrum, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Holds,
    Tight,
    Violated,
}

/// Absolute tolerance used to classify an excess value. The default scales as
/// `1e-6 * max(1, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct TolerancePolicy {
    pub absolute: Option<f64>,
}

impl TolerancePolicy {
    pub fn fixed(tol: f64) -> Self {
        Self {
            absolute: Some(tol),
        }
    }

    pub fn tol(&self, n: usize) -> f64 {
        self.absolute.unwrap_or(1e-6 * n.max(1) as f64)
    }

    pub fn classify(&self, n: usize, excess: f64) -> Status {
        let tol = self.tol(n);
        if excess > tol {
            Status::Violated
        } else if excess >= -tol {
            Status::Tight
        } else {
            Status::Holds
        }
    }
}

/// `C(k+1, 2)`, the quadratic part of the conjectured bound.
#[inline]
pub fn bound_offset(k: usize) -> f64 {
    (k * (k + 1) / 2) as f64
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExcessProfile {
    pub n: usize,
    pub m: usize,
    pub tol: f64,
    /// `excess[k-1] = s_k - m - C(k+1, 2)` for `k = 1..=n`.
    pub excess: Vec<f64>,
    pub statuses: Vec<Status>,
    /// `(k, excess)` at the largest excess; the smallest such `k` on ties.
    pub max_excess: (usize, f64),
}

impl ExcessProfile {
    pub fn excess_at(&self, k: usize) -> f64 {
        self.excess[k - 1]
    }

    pub fn status_at(&self, k: usize) -> Status {
        self.statuses[k - 1]
    }

    pub fn violations(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.statuses
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == Status::Violated)
            .map(|(i, _)| (i + 1, self.excess[i]))
    }

    pub fn has_violation(&self) -> bool {
        self.statuses.contains(&Status::Violated)
    }

    pub fn tight_ks(&self) -> impl Iterator<Item = usize> + '_ {
        self.statuses
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == Status::Tight)
            .map(|(i, _)| i + 1)
    }

    /// Per-`k` verdicts annotated with the certificates covering each `k`.
    /// `covered_by[k-1]` lists the ids for `k`.
    pub fn verdicts(&self, covered_by: &[Vec<CertId>]) -> Vec<Verdict> {
        (1..=self.n)
            .map(|k| Verdict {
                k,
                status: self.status_at(k),
                excess: self.excess_at(k),
                certificate_ids: covered_by.get(k - 1).cloned().unwrap_or_default(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub k: usize,
    pub status: Status,
    pub excess: f64,
    pub certificate_ids: Vec<CertId>,
}

/// Excess profile of a Laplacian-type spectrum against edge count `m`.
pub fn excess_profile(
    spectrum: &Spectrum,
    m: usize,
    policy: TolerancePolicy,
) -> Result<ExcessProfile> {
    if !spectrum.kind.is_psd() {
        return Err(Error::SpectrumKind(spectrum.kind.name()));
    }
    let n = spectrum.n();
    if n == 0 || spectrum.prefix.len() != n + 1 {
        return Err(Error::Parameter(
            "spectrum prefix length does not match n".into(),
        ));
    }
    let excess: Vec<f64> = (1..=n)
        .map(|k| spectrum.prefix[k] - m as f64 - bound_offset(k))
        .collect();
    let statuses = excess.iter().map(|&e| policy.classify(n, e)).collect();
    let mut max_excess = (1, excess[0]);
    for (i, &e) in excess.iter().enumerate() {
        if e > max_excess.1 {
            max_excess = (i + 1, e);
        }
    }
    Ok(ExcessProfile {
        n,
        m,
        tol: policy.tol(n),
        excess,
        statuses,
        max_excess,
    })
}

/// Builds `L(G)`, eigensolves it and returns the full excess profile. No
/// connectivity reduction is applied.
pub fn check_graph(g: &Graph, policy: TolerancePolicy) -> Result<ExcessProfile> {
    excess_profile(&laplacian_spectrum(g)?, g.m(), policy)
}

/// `s_{n-k-1}(Ḡ) - [n(n-k-1) - 2m + s_k(G)]`, which vanishes for `1 <= k <= n-2`.
pub fn complement_identity_residual(g: &Graph, k: usize) -> Result<f64> {
    let n = g.n();
    if n < 3 || k == 0 || k > n - 2 {
        return Err(Error::KOutOfRange {
            k,
            lo: 1,
            hi: n.saturating_sub(2),
        });
    }
    let s = laplacian_spectrum(g)?;
    let sc = laplacian_spectrum(&g.complement())?;
    Ok(complement_residual_from(&s, &sc, g.m(), k))
}

/// Complement residuals for every `k = 1..=n-2`, from one pair of eigensolves.
pub fn complement_identity_residuals(g: &Graph) -> Result<Vec<f64>> {
    let n = g.n();
    if n < 3 {
        return Ok(Vec::new());
    }
    let s = laplacian_spectrum(g)?;
    let sc = laplacian_spectrum(&g.complement())?;
    Ok((1..=n - 2)
        .map(|k| complement_residual_from(&s, &sc, g.m(), k))
        .collect())
}

pub(crate) fn complement_residual_from(s: &Spectrum, sc: &Spectrum, m: usize, k: usize) -> f64 {
    let n = s.n();
    sc.prefix[n - k - 1] - ((n * (n - k - 1)) as f64 - 2.0 * m as f64 + s.prefix[k])
}

/// `s_k(G + K_1) - (n + k + s_{k-1}(G))` with `s_0 = 0`; vanishes for `1 <= k <= n`.
pub fn join_identity_residual(g: &Graph, k: usize) -> Result<f64> {
    let n = g.n();
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, lo: 1, hi: n });
    }
    let s = laplacian_spectrum(g)?;
    let sj = laplacian_spectrum(&g.join_one()?)?;
    Ok(join_residual_from(&s, &sj, k))
}

/// Join residuals for every `k = 1..=n`, from one pair of eigensolves.
pub fn join_identity_residuals(g: &Graph) -> Result<Vec<f64>> {
    let s = laplacian_spectrum(g)?;
    let sj = laplacian_spectrum(&g.join_one()?)?;
    Ok((1..=g.n())
        .map(|k| join_residual_from(&s, &sj, k))
        .collect())
}

pub(crate) fn join_residual_from(s: &Spectrum, sj: &Spectrum, k: usize) -> f64 {
    sj.prefix[k] - (s.n() as f64 + k as f64 + s.prefix[k - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{ky_fan, SpectrumKind};

    const TOL: f64 = 1e-9;

    #[test]
    fn complete_graph_profile() {
        let p = check_graph(&Graph::complete(4).unwrap(), TolerancePolicy::default()).unwrap();
        assert!(p.excess_at(3).abs() < TOL);
        assert_eq!(p.status_at(3), Status::Tight);
        assert!((p.excess_at(1) + 3.0).abs() < TOL);
        assert_eq!(p.status_at(1), Status::Holds);
        assert!(!p.has_violation());
    }

    #[test]
    fn star_is_tight_at_one() {
        let p = check_graph(&Graph::star(4).unwrap(), TolerancePolicy::default()).unwrap();
        assert!(p.excess_at(1).abs() < TOL);
        assert_eq!(p.status_at(1), Status::Tight);
    }

    #[test]
    fn cycle_four_profile() {
        let p = check_graph(&Graph::cycle(4).unwrap(), TolerancePolicy::default()).unwrap();
        for (k, want) in [(1, -1.0), (2, -1.0), (3, -2.0), (4, -6.0)] {
            assert!((p.excess_at(k) - want).abs() < TOL, "k={k}");
        }
        assert_eq!(p.max_excess.0, 1);
    }

    #[test]
    fn petersen_holds_everywhere() {
        let g = Graph::petersen().unwrap();
        let p = check_graph(&g, TolerancePolicy::default()).unwrap();
        assert!(p
            .statuses
            .iter()
            .all(|&s| s == Status::Holds || s == Status::Tight));
        // spectrum {5^4, 2^5, 0}: s_4 = 20 against 15 + 10
        assert!((p.excess_at(4) - (20.0 - 25.0)).abs() < TOL);
    }

    #[test]
    fn path_four_at_two() {
        let p = check_graph(&Graph::path(4).unwrap(), TolerancePolicy::default()).unwrap();
        let s2 = 2.0 + 2f64.sqrt() + 2.0;
        assert!((p.excess_at(2) - (s2 - 6.0)).abs() < TOL);
        assert_eq!(p.status_at(2), Status::Holds);
    }

    #[test]
    fn last_step_identity() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (1, 5)]).unwrap();
        let p = check_graph(&g, TolerancePolicy::default()).unwrap();
        let n = g.n();
        assert!((p.excess_at(n) - p.excess_at(n - 1) + n as f64).abs() < 1e-9);
    }

    #[test]
    fn tolerance_policy() {
        let pol = TolerancePolicy::default();
        assert_eq!(pol.tol(0), 1e-6);
        assert!((pol.tol(10) - 1e-5).abs() < 1e-18);
        assert_eq!(pol.classify(10, 2e-5), Status::Violated);
        assert_eq!(pol.classify(10, -5e-6), Status::Tight);
        assert_eq!(pol.classify(10, -2e-5), Status::Holds);
        assert_eq!(TolerancePolicy::fixed(0.5).classify(10, 0.4), Status::Tight);
    }

    #[test]
    fn rejects_adjacency_spectra() {
        let s = Spectrum::new(SpectrumKind::Adjacency, vec![1.0, -1.0]);
        assert!(excess_profile(&s, 1, TolerancePolicy::default()).is_err());
        let s = Spectrum::new(SpectrumKind::SignedLaplacian, vec![2.0, 0.0]);
        let p = excess_profile(&s, 1, TolerancePolicy::default()).unwrap();
        assert!((p.excess_at(1) - 0.0).abs() < TOL);
        assert!((ky_fan(&s, 1).unwrap() - 2.0).abs() < TOL);
    }

    #[test]
    fn identity_examples() {
        let k5 = Graph::complete(5).unwrap();
        assert!(complement_identity_residual(&k5, 2).unwrap().abs() < 1e-9);
        let c5 = Graph::cycle(5).unwrap();
        assert!(complement_identity_residual(&c5, 1).unwrap().abs() < 1e-9);
        assert!(complement_identity_residual(&c5, 4).is_err());

        let e3 = Graph::empty(3).unwrap();
        assert!(join_identity_residual(&e3, 1).unwrap().abs() < 1e-9);
        let k3 = Graph::complete(3).unwrap();
        assert!(join_identity_residual(&k3, 2).unwrap().abs() < 1e-9);
        assert!(join_identity_residual(&k3, 0).is_err());

        let p = Graph::petersen().unwrap();
        let all = complement_identity_residuals(&p).unwrap();
        assert_eq!(all.len(), 8);
        assert!((all[2] - complement_identity_residual(&p, 3).unwrap()).abs() < 1e-12);
        assert_eq!(join_identity_residuals(&p).unwrap().len(), 10);
        assert!(complement_identity_residuals(&Graph::path(2).unwrap())
            .unwrap()
            .is_empty());
    }
}
