use serde::Serialize;

use crate::error::{Error, Result};

/// Exponent on `max{k, l}` in the window bound `|l - k| < (2n)^{1/4} max{k,l}^e`.
///
/// `Half` is what the bound's derivation yields and is consistent with the
/// overall `2^{1/4} n^{3/4}` width. `Quarter` is the printed variant, kept for
/// comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowExponent {
    #[default]
    Half,
    Quarter,
}

impl WindowExponent {
    pub fn value(self) -> f64 {
        match self {
            Self::Half => 0.5,
            Self::Quarter => 0.25,
        }
    }
}

/// The only `l`-range in which a second violation can coexist with one at `k0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WindowInterval {
    pub k0: usize,
    pub lo: usize,
    pub hi: usize,
}

impl WindowInterval {
    pub fn contains(&self, l: usize) -> bool {
        self.lo <= l && l <= self.hi
    }

    pub fn width(&self) -> usize {
        self.hi - self.lo
    }
}

pub fn window_interval(n: usize, k0: usize, exponent: WindowExponent) -> Result<WindowInterval> {
    if k0 == 0 || k0 > n {
        return Err(Error::KOutOfRange {
            k: k0,
            lo: 1,
            hi: n,
        });
    }
    // d < (2n)^{1/4} x^e  <=>  d^4 < 2n x^{4e}, decided in integers
    let two_n = 2 * n as u128;
    let power = |x: usize| match exponent {
        WindowExponent::Half => (x as u128).pow(2),
        WindowExponent::Quarter => x as u128,
    };
    let within = |d: usize, x: usize| (d as u128).pow(4) < two_n * power(x);

    // l > k0: l - k0 - c l^e is convex in l and negative at l = k0, so the
    // admissible l form a prefix of k0..=n.
    let (mut good, mut bad) = (k0, n + 1);
    while bad - good > 1 {
        let mid = good + (bad - good) / 2;
        if within(mid - k0, mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    let hi = good;

    // l < k0: k0 - l < c k0^e, and the admissible l form a suffix of 1..=k0
    let (mut bad, mut good) = (0, k0);
    while good - bad > 1 {
        let mid = bad + (good - bad) / 2;
        if within(k0 - mid, k0) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    let lo = good;
    Ok(WindowInterval { k0, lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_point() {
        let w = window_interval(100, 10, WindowExponent::Half).unwrap();
        assert_eq!((w.lo, w.hi), (1, 30));
        assert!(w.contains(10));
    }

    #[test]
    fn first_index_starts_at_one() {
        for n in [1, 5, 100, 1000] {
            assert_eq!(window_interval(n, 1, WindowExponent::Half).unwrap().lo, 1);
        }
    }

    #[test]
    fn quarter_variant_is_narrower() {
        let half = window_interval(400, 200, WindowExponent::Half).unwrap();
        let quarter = window_interval(400, 200, WindowExponent::Quarter).unwrap();
        assert!(quarter.width() < half.width());
        assert!(quarter.contains(200));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(window_interval(10, 0, WindowExponent::Half).is_err());
        assert!(window_interval(10, 11, WindowExponent::Half).is_err());
    }
}
