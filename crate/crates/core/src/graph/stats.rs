use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};

/// Subset-enumeration cap for exact arboricity (2^20 subsets).
pub const DEFAULT_ARBORICITY_EXACT_LIMIT: usize = 20;

/// Degree sequence statistics. Variance uses the population (1/n) convention.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeStats {
    pub degrees: Vec<usize>,
    /// Degrees in descending order.
    pub sorted: Vec<usize>,
    pub max_degree: usize,
    pub min_degree: usize,
    /// Sum of degrees, equal to `2m`. The average degree is `degree_sum / n`.
    pub degree_sum: u64,
    /// Sum of squared degrees.
    pub sum_sq: u64,
    pub variance: f64,
}

impl DegreeStats {
    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn avg_degree(&self) -> f64 {
        self.degree_sum as f64 / self.n() as f64
    }
}

pub fn degree_stats(g: &Graph) -> DegreeStats {
    let degrees = g.degrees();
    let mut sorted = degrees.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let n = degrees.len() as u64;
    let degree_sum: u64 = degrees.iter().map(|&d| d as u64).sum();
    let sum_sq: u64 = degrees.iter().map(|&d| (d * d) as u64).sum();
    // (n * D - (2m)^2) / n^2, formed exactly before the single division
    let numer = n as i128 * sum_sq as i128 - (degree_sum as i128).pow(2);
    let variance = numer as f64 / (n * n) as f64;
    DegreeStats {
        max_degree: sorted[0],
        min_degree: *sorted.last().unwrap(),
        degrees,
        sorted,
        degree_sum,
        sum_sq,
        variance,
    }
}

/// The `k` highest-degree vertices and the edge counts around them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopSet {
    pub k: usize,
    /// Members in selection order (descending degree, then ascending index).
    pub members: Vec<usize>,
    /// Edges inside the top set.
    pub e_inside: usize,
    /// Edges inside the complement of the top set.
    pub e_outside: usize,
    /// Non-edges inside the top set.
    pub m1: usize,
    /// Edges inside the complement; equal to `e_outside`.
    pub m2: usize,
}

/// Vertices ordered by descending degree, ties by ascending index.
pub fn degree_order(g: &Graph) -> Vec<usize> {
    let deg = g.degrees();
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));
    order
}

pub fn top_set(g: &Graph, k: usize) -> Result<TopSet> {
    top_set_from_order(g, &degree_order(g), k)
}

pub(crate) fn top_set_from_order(g: &Graph, order: &[usize], k: usize) -> Result<TopSet> {
    let n = g.n();
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, lo: 1, hi: n });
    }
    let members = order[..k].to_vec();
    let mut inside = vec![false; n];
    for &v in &members {
        inside[v] = true;
    }
    let e_inside = g.edges_within(&inside);
    let outside: Vec<bool> = inside.iter().map(|&b| !b).collect();
    let e_outside = g.edges_within(&outside);
    Ok(TopSet {
        k,
        members,
        e_inside,
        e_outside,
        m1: k * (k - 1) / 2 - e_inside,
        m2: e_outside,
    })
}

/// Minimum number of edge edits turning the graph into a split graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Splittance {
    pub value: usize,
    /// Length of the descending degree prefix taken as the clique side.
    pub witness_k: usize,
}

/// Splittance from the degree sequence: half the minimum over `k` of
/// `k(k-1) - sum_{i<=k} d_i + sum_{i>k} d_i` (Hammer and Simeone).
pub fn splittance(g: &Graph) -> Splittance {
    let stats = degree_stats(g);
    let total = stats.degree_sum as i64;
    let mut prefix = 0i64;
    let mut best = (i64::MAX, 0usize);
    for k in 0..=g.n() {
        let kk = k as i64;
        let val = kk * (kk - 1) - prefix + (total - prefix);
        if val < best.0 {
            best = (val, k);
        }
        if k < g.n() {
            prefix += stats.sorted[k] as i64;
        }
    }
    debug_assert!(best.0 >= 0 && best.0 % 2 == 0);
    Splittance {
        value: (best.0 / 2) as usize,
        witness_k: best.1,
    }
}

/// Arboricity estimate. `exact` is false when the degree fallback was used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArborBound {
    pub value: usize,
    pub exact: bool,
}

/// Exact Nash-Williams arboricity `max_S ceil(e(S) / (|S| - 1))` over all
/// vertex subsets when `n <= exact_limit`, else the bound `floor(Δ/2) + 1`.
pub fn arboricity(g: &Graph, exact_limit: usize) -> ArborBound {
    if g.m() == 0 {
        return ArborBound {
            value: 0,
            exact: true,
        };
    }
    let n = g.n();
    if n > exact_limit || n > 26 {
        return ArborBound {
            value: g.max_degree() / 2 + 1,
            exact: false,
        };
    }
    let rows: Vec<u32> = (0..n).map(|v| g.row_mask(v) as u32).collect();
    let size = 1usize << n;
    // e[S] = e[S - v] + |N(v) ∩ (S - v)| with v the lowest member of S
    let mut edges = vec![0u32; size];
    let mut best = 0u32;
    for mask in 1..size {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let e = edges[rest] + (rows[v] & rest as u32).count_ones();
        edges[mask] = e;
        let s = mask.count_ones();
        if s >= 2 {
            best = best.max(e.div_ceil(s - 1));
        }
    }
    ArborBound {
        value: best as usize,
        exact: true,
    }
}
