use std::f64::consts::PI;

use serde::Serialize;

use crate::brouwer::bound_offset;
use crate::error::{Error, Result};

/// `ρ(x) = sqrt((4 - x^2)_+) / (2π)`.
pub fn semicircle_density(x: f64) -> f64 {
    (4.0 - x * x).max(0.0).sqrt() / (2.0 * PI)
}

/// Mass of the semicircle law above `x`: `∫_x^2 ρ(t) dt`, in closed form
/// `(π - x sqrt(4-x^2)/2 - 2 asin(x/2)) / (2π)`.
pub fn semicircle_tail(x: f64) -> f64 {
    let x = x.clamp(-2.0, 2.0);
    (PI - x * (4.0 - x * x).sqrt() / 2.0 - 2.0 * (x / 2.0).asin()) / (2.0 * PI)
}

/// `f(x) = 1/2 + (n / 2π) ∫_x^2 sqrt(4 - t^2) dt`, strictly decreasing on `[-2, 2]`.
pub fn semicircle_f(n: usize, x: f64) -> f64 {
    0.5 + n as f64 * semicircle_tail(x)
}

/// The `k`-th semicircle quantile `θ_k`, defined by `n ∫_{θ_k}^2 ρ = k - 1/2`
/// (equivalently `f(θ_k) = k`), found by bisection on `[-2, 2]`.
pub fn semicircle_quantile(n: usize, k: usize) -> Result<f64> {
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, lo: 1, hi: n });
    }
    let target = k as f64;
    let (mut lo, mut hi) = (-2.0f64, 2.0f64);
    // f(lo) > target > f(hi) throughout
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if semicircle_f(n, mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Semicircle-law predictions for the Brouwer excess of a random signed `K_n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SemicirclePredictor {
    pub n: usize,
    /// `θ_k` for `k = 1..=n`, at index `k - 1`.
    pub theta: Vec<f64>,
    /// `n - sqrt(n) + 1/2`, rounded half up.
    pub predicted_k: usize,
    /// `n / 2`, the leading-order excess at `predicted_k`.
    pub predicted_excess: f64,
    /// Edge-scale `q = (9π^2 / 2n)^{1/3}`.
    pub q: f64,
}

impl SemicirclePredictor {
    pub fn theta(&self, k: usize) -> f64 {
        self.theta[k - 1]
    }

    /// `kn + n^{3/2} (4 - θ_k^2)^{3/2} / (6π)`.
    pub fn predicted_sk(&self, k: usize) -> f64 {
        let n = self.n as f64;
        let th = self.theta(k);
        k as f64 * n + n.powf(1.5) * (4.0 - th * th).max(0.0).powf(1.5) / (6.0 * PI)
    }

    /// `predicted_sk(k) - C(n,2) - C(k+1,2)`.
    pub fn predicted_excess_at(&self, k: usize) -> f64 {
        let m = (self.n * (self.n - 1) / 2) as f64;
        self.predicted_sk(k) - m - bound_offset(k)
    }
}

/// `n - sqrt(n) + 1/2` rounded half up.
pub(crate) fn predicted_index(n: usize) -> usize {
    let nf = n as f64;
    ((nf - nf.sqrt() + 1.0).floor() as usize).clamp(1, n)
}

pub fn predicted_profile(n: usize) -> Result<SemicirclePredictor> {
    if n < 16 {
        return Err(Error::Parameter(format!(
            "semicircle predictions need n >= 16, got {n}"
        )));
    }
    let theta = (1..=n)
        .map(|k| semicircle_quantile(n, k))
        .collect::<Result<Vec<_>>>()?;
    let nf = n as f64;
    Ok(SemicirclePredictor {
        n,
        theta,
        predicted_k: predicted_index(n),
        predicted_excess: nf / 2.0,
        q: (9.0 * PI * PI / (2.0 * nf)).cbrt(),
    })
}
