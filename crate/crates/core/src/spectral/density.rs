use rayon::prelude::*;
use serde::Serialize;

use super::{eigenvalues, SymMatrix};
use crate::graph::Graph;

/// Subset-enumeration cap for the exact spectral density (2^18 subsets).
pub const DEFAULT_T_EXACT_LIMIT: usize = 18;

/// Upper bound on the maximum subgraph spectral density
/// `t(G) = max_S ρ(G[S]) / |S|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TBound {
    pub value: f64,
    pub exact: bool,
    /// Maximizing subset, present when `exact`.
    pub witness: Option<Vec<usize>>,
    /// Where the value came from: `exact`, `bipartite` or `order`.
    pub source: &'static str,
}

/// Maximum subgraph spectral density.
///
/// When `n <= limit` every connected vertex subset is enumerated and its
/// induced adjacency spectral radius computed. Disconnected subsets can be
/// skipped: ρ of a disconnected graph is the maximum over its components, so
/// the density of a disconnected subset is strictly below that of its best
/// component. Above the limit the result is the class bound `1/2` for
/// bipartite graphs, else `1 - 1/n`, both valid upper bounds.
pub fn msd_t(g: &Graph, limit: usize) -> TBound {
    let n = g.n();
    if g.m() == 0 {
        return TBound {
            value: 0.0,
            exact: true,
            witness: Some(vec![0]),
            source: "exact",
        };
    }
    if n > limit || n > 30 {
        let order = 1.0 - 1.0 / n as f64;
        let (value, source) = if g.is_bipartite() && 0.5 < order {
            (0.5, "bipartite")
        } else {
            (order, "order")
        };
        return TBound {
            value,
            exact: false,
            witness: None,
            source,
        };
    }

    let rows: Vec<u32> = (0..n).map(|v| g.row_mask(v) as u32).collect();
    let total = 1u32 << n;
    let chunk = 1u32 << 10.min(n);
    let best = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let start = (c * chunk).max(1);
            let end = ((c + 1) * chunk).min(total);
            let mut best: Option<(f64, u32)> = None;
            for mask in start..end {
                if !is_connected_mask(&rows, mask) {
                    continue;
                }
                let density = subset_radius(&rows, mask) / mask.count_ones() as f64;
                best = better(best, Some((density, mask)));
            }
            best
        })
        .reduce(|| None, better)
        .expect("at least one singleton subset is connected");

    TBound {
        value: best.0,
        exact: true,
        witness: Some(mask_members(best.1)),
        source: "exact",
    }
}

/// Larger density wins; ties go to the lexicographically smaller member list.
fn better(a: Option<(f64, u32)>, b: Option<(f64, u32)>) -> Option<(f64, u32)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            if x.0 > y.0 {
                Some(x)
            } else if y.0 > x.0 {
                Some(y)
            } else if mask_members(x.1) <= mask_members(y.1) {
                Some(x)
            } else {
                Some(y)
            }
        }
    }
}

pub(crate) fn mask_members(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

pub(crate) fn is_connected_mask(rows: &[u32], mask: u32) -> bool {
    let mut reach = mask & mask.wrapping_neg();
    loop {
        let mut next = reach;
        let mut frontier = reach;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            next |= rows[v] & mask;
        }
        if next == reach {
            return reach == mask;
        }
        reach = next;
    }
}

/// Adjacency spectral radius of the subgraph induced by `mask`.
pub(crate) fn subset_radius(rows: &[u32], mask: u32) -> f64 {
    let members = mask_members(mask);
    match members.len() {
        1 => 0.0,
        2 => (rows[members[0]] >> members[1] & 1) as f64,
        s => {
            let m = SymMatrix::from_fn(s, |i, j| {
                if i != j && rows[members[i]] >> members[j] & 1 == 1 {
                    1.0
                } else {
                    0.0
                }
            });
            eigenvalues(&m).expect("0/1 matrices are finite")[0]
        }
    }
}
