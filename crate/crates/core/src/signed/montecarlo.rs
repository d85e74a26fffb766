use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::semicircle::predicted_index as predicted_k;
use super::{predicted_profile, sample_signed_complete_stream, signed_spectrum};
use crate::brouwer::{excess_profile, TolerancePolicy};
use crate::error::{Error, Result};

/// One Monte Carlo trial on a random signed `K_n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McRecord {
    pub n: usize,
    pub trial_index: u64,
    /// Master seed; the trial's signs come from stream `trial_index` of it.
    pub seed: u64,
    /// Smallest `k` attaining the largest excess.
    pub kstar: usize,
    pub max_excess: f64,
    /// Excess at the semicircle `predicted_k`, when `n >= 16`.
    pub excess_at_predicted_k: Option<f64>,
    pub runtime_ms: u64,
}

/// Samples stream `trial` of `seed`, eigensolves its signed Laplacian and
/// records the excess profile against `m = C(n, 2)`.
pub fn run_trial(n: usize, seed: u64, trial: u64) -> Result<McRecord> {
    if n < 5 {
        return Err(Error::Parameter(format!(
            "Monte Carlo trials need n >= 5, got {n}"
        )));
    }
    let start = Instant::now();
    let sg = sample_signed_complete_stream(n, seed, trial)?;
    let spectrum = signed_spectrum(&sg)?;
    let profile = excess_profile(&spectrum, sg.m(), TolerancePolicy::default())?;
    let excess_at_predicted_k = if n >= 16 {
        Some(profile.excess_at(predicted_k(n)))
    } else {
        None
    };
    Ok(McRecord {
        n,
        trial_index: trial,
        seed,
        kstar: profile.max_excess.0,
        max_excess: profile.max_excess.1,
        excess_at_predicted_k,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McSummary {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub mean_max_excess: f64,
    pub min_max_excess: f64,
    pub max_max_excess: f64,
    pub mean_max_excess_over_n: f64,
    pub mean_kstar: f64,
    /// Trials with `max_excess > tol`.
    pub violating_trials: usize,
    /// Fraction of trials with `kstar` in `[n - 3 sqrt(n), n]`.
    pub kstar_near_top_fraction: f64,
    pub predicted_k: Option<usize>,
    pub predicted_excess: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McRun {
    pub records: Vec<McRecord>,
    pub summary: McSummary,
}

/// Runs trials `0..trials` of `master_seed` on a pool of `workers` threads
/// (`0` means the rayon default). Trial `i` always uses stream `i`, so the
/// records do not depend on `workers`; they are returned in trial order.
pub fn monte_carlo(n: usize, trials: usize, master_seed: u64, workers: usize) -> Result<McRun> {
    if trials == 0 {
        return Err(Error::Parameter(
            "Monte Carlo needs at least one trial".into(),
        ));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Parameter(e.to_string()))?;
    let records = pool.install(|| {
        (0..trials as u64)
            .into_par_iter()
            .map(|t| run_trial(n, master_seed, t))
            .collect::<Result<Vec<_>>>()
    })?;
    let summary = summarize(n, master_seed, &records);
    Ok(McRun { records, summary })
}

fn summarize(n: usize, seed: u64, records: &[McRecord]) -> McSummary {
    let t = records.len() as f64;
    let nf = n as f64;
    let mean = |f: &dyn Fn(&McRecord) -> f64| records.iter().map(f).sum::<f64>() / t;
    let tol = TolerancePolicy::default().tol(n);
    let band_lo = nf - 3.0 * nf.sqrt();
    let near_top = records.iter().filter(|r| r.kstar as f64 >= band_lo).count();
    let predictor = if n >= 16 {
        predicted_profile(n).ok()
    } else {
        None
    };
    McSummary {
        n,
        trials: records.len(),
        seed,
        mean_max_excess: mean(&|r| r.max_excess),
        min_max_excess: records
            .iter()
            .map(|r| r.max_excess)
            .fold(f64::INFINITY, f64::min),
        max_max_excess: records
            .iter()
            .map(|r| r.max_excess)
            .fold(f64::NEG_INFINITY, f64::max),
        mean_max_excess_over_n: mean(&|r| r.max_excess / nf),
        mean_kstar: mean(&|r| r.kstar as f64),
        violating_trials: records.iter().filter(|r| r.max_excess > tol).count(),
        kstar_near_top_fraction: near_top as f64 / t,
        predicted_k: predictor.as_ref().map(|p| p.predicted_k),
        predicted_excess: predictor.as_ref().map(|p| p.predicted_excess),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trials_are_reproducible() {
        let a = run_trial(30, 5, 2).unwrap();
        let b = run_trial(30, 5, 2).unwrap();
        assert_eq!(
            (a.kstar, a.max_excess.to_bits()),
            (b.kstar, b.max_excess.to_bits())
        );
        assert!(1 <= a.kstar && a.kstar <= 30);
        assert!(a.excess_at_predicted_k.unwrap() <= a.max_excess);
        assert!(run_trial(4, 5, 0).is_err());
    }

    #[test]
    fn small_order_violations_exist() {
        let hits = (0..200)
            .filter(|&t| run_trial(5, 11, t).unwrap().max_excess > 1e-5)
            .count();
        assert!(hits > 0);
    }

    #[test]
    fn worker_count_does_not_matter() {
        let mut one = monte_carlo(24, 6, 7, 1).unwrap();
        let mut four = monte_carlo(24, 6, 7, 4).unwrap();
        for r in one.records.iter_mut().chain(four.records.iter_mut()) {
            r.runtime_ms = 0;
        }
        assert_eq!(one, four);
    }

    #[test]
    fn single_trial_summary() {
        let run = monte_carlo(20, 1, 3, 1).unwrap();
        let r = &run.records[0];
        assert_eq!(run.summary.mean_max_excess, r.max_excess);
        assert_eq!(run.summary.min_max_excess, r.max_excess);
        assert_eq!(run.summary.mean_kstar, r.kstar as f64);
        assert!(monte_carlo(20, 0, 3, 1).is_err());
    }

    #[test]
    fn predicted_index_rounds_half_up() {
        assert_eq!(predicted_k(100), 91);
        assert_eq!(predicted_k(400), 381);
        assert_eq!(predicted_k(16), predicted_profile(16).unwrap().predicted_k);
    }
}
