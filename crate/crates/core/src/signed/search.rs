use rayon::prelude::*;
use serde::Serialize;

use super::{signed_spectrum, SignedGraph};
use crate::brouwer::{excess_profile, TolerancePolicy};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order the exhaustive search accepts (`3^15` signed graphs at 6).
pub const MAX_SEARCH_N: usize = 6;

/// First violating signed graph found for one `(n, m)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignedViolator {
    pub n: usize,
    pub m: usize,
    /// Text form: graph6, tab, signs.
    pub graph: String,
    pub k: usize,
    pub excess: f64,
}

/// Checks every labelled graph on `2..=n_max` vertices under every signing.
/// For each `(n, m)` admitting a violation, the witness with the smallest edge
/// mask (then the smallest sign mask) is returned, at its largest-excess `k`.
pub fn min_violator_search(n_max: usize) -> Result<Vec<SignedViolator>> {
    if n_max > MAX_SEARCH_N {
        return Err(Error::Parameter(format!(
            "signed search supports n <= {MAX_SEARCH_N}, got {n_max}"
        )));
    }
    let mut out = Vec::new();
    for n in 2..=n_max {
        out.extend(search_order(n)?);
    }
    Ok(out)
}

fn search_order(n: usize) -> Result<Vec<SignedViolator>> {
    // pairs in edge-rank order, so bit r of a sign mask is the sign of the
    // r-th edge of the induced graph
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    let policy = TolerancePolicy::default();
    let found: Vec<Option<SignedViolator>> = (0u32..1 << pairs.len())
        .into_par_iter()
        .map(|mask| -> Result<Option<SignedViolator>> {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            let base = Graph::from_edges(n, edges)?;
            let m = base.m();
            for signs in 0u32..1 << m {
                let tau = (0..m)
                    .map(|r| if signs >> r & 1 == 1 { -1 } else { 1 })
                    .collect();
                let sg = SignedGraph::new(base.clone(), tau)?;
                let profile = excess_profile(&signed_spectrum(&sg)?, m, policy)?;
                if profile.has_violation() {
                    let (k, excess) = profile.max_excess;
                    return Ok(Some(SignedViolator {
                        n,
                        m,
                        graph: sg.to_text(),
                        k,
                        excess,
                    }));
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;

    let mut best: Vec<Option<SignedViolator>> = vec![None; pairs.len() + 1];
    for v in found.into_iter().flatten() {
        let slot = &mut best[v.m];
        if slot.is_none() {
            *slot = Some(v);
        }
    }
    Ok(best.into_iter().flatten().collect())
}
