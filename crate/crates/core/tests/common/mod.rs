//! Fixtures, random graphs and brute-force oracles shared by the integration
//! tests and the acceptance runner.
#![allow(dead_code)]

use std::path::PathBuf;

use brouwer_core::graph::{parse_graph6, Graph};
use brouwer_core::spectral::{adjacency_spectrum, laplacian_spectrum};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
        .join(name)
}

pub fn fixture(name: &str) -> Vec<Graph> {
    let text = std::fs::read_to_string(data_path(name)).expect("fixture file");
    text.lines()
        .filter(|l| !l.is_empty())
        .map(|l| parse_graph6(l.as_bytes()).expect("fixture graph6"))
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform in `[0, 1)`.
pub fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// Uniform in `lo..=hi`.
pub fn between(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> usize {
    lo + (rng.next_u64() % (hi - lo + 1) as u64) as usize
}

pub fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    Graph::from_fn(n, |_, _| unit(rng) < p).unwrap()
}

/// `count` graphs with `n` uniform in `2..=n_max` and edge probability uniform in `(0, 1)`.
pub fn random_graphs(count: usize, n_max: usize, seed: u64) -> Vec<Graph> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = between(&mut r, 2, n_max);
            let p = unit(&mut r);
            gnp(&mut r, n, p)
        })
        .collect()
}

/// Random bipartite graph with parts of size `a` and `n - a`.
pub fn random_bipartite(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let a = between(rng, 1, n - 1);
    Graph::from_fn(n, |u, v| (u < a) != (v < a) && unit(rng) < p).unwrap()
}

/// Edges with both ends in `set`.
pub fn edges_inside(g: &Graph, set: &[usize]) -> usize {
    let mut e = 0;
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[..i] {
            e += g.has_edge(u, v) as usize;
        }
    }
    e
}

/// Vertices by descending degree, ties by index.
pub fn by_degree(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

/// Fewest edge edits making `g` split: every (clique, independent) partition.
pub fn splittance_oracle(g: &Graph) -> usize {
    let n = g.n();
    let mut best = usize::MAX;
    for mask in 0u32..1 << n {
        let clique: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let indep: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 0).collect();
        let missing = clique.len() * clique.len().saturating_sub(1) / 2 - edges_inside(g, &clique);
        best = best.min(missing + edges_inside(g, &indep));
    }
    best
}

/// Fewest forests covering the edge set, by backtracking over edge colourings.
pub fn arboricity_oracle(g: &Graph) -> usize {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    if edges.is_empty() {
        return 0;
    }
    (1..).find(|&a| colour_forests(&edges, g.n(), a)).unwrap()
}

fn colour_forests(edges: &[(usize, usize)], n: usize, colours: usize) -> bool {
    // comp[c][v] = component label of v in forest c
    let comp = vec![(0..n).collect::<Vec<usize>>(); colours];
    assign(edges, 0, comp, 0)
}

fn assign(edges: &[(usize, usize)], i: usize, comp: Vec<Vec<usize>>, used: usize) -> bool {
    if i == edges.len() {
        return true;
    }
    let (u, v) = edges[i];
    let limit = (used + 1).min(comp.len());
    for c in 0..limit {
        let (a, b) = (comp[c][u], comp[c][v]);
        if a == b {
            continue;
        }
        let mut next = comp.clone();
        for label in next[c].iter_mut() {
            if *label == b {
                *label = a;
            }
        }
        if assign(edges, i + 1, next, used.max(c + 1)) {
            return true;
        }
    }
    false
}

/// `max_S ρ(G[S]) / |S|` over every nonempty subset, connected or not.
/// Returns the value and the lexicographically smallest maximizer.
pub fn msd_oracle(g: &Graph) -> (f64, Vec<usize>) {
    let n = g.n();
    let mut best: (f64, Vec<usize>) = (f64::NEG_INFINITY, Vec::new());
    for mask in 1u32..1 << n {
        let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let sub = g.induced_subgraph(&members).unwrap();
        let rho = if sub.m() == 0 {
            0.0
        } else {
            adjacency_spectrum(&sub).unwrap().values[0]
        };
        let d = rho / members.len() as f64;
        if d > best.0 || (d == best.0 && members < best.1) {
            best = (d, members);
        }
    }
    best
}

/// Largest `l` in `k0..=n` with `l - k0 < (2n)^{1/4} sqrt(l)`, scanning with
/// the exact form `(l - k0)^4 < 2n l^2`.
pub fn window_hi_oracle(n: usize, k0: usize) -> usize {
    let two_n = 2 * n as u128;
    (k0..=n)
        .take_while(|&l| ((l - k0) as u128).pow(4) < two_n * (l as u128).pow(2))
        .last()
        .unwrap()
}

/// Positive root of `x^2 - c x - k0` squared: the real threshold on `l` for
/// the upper end of the window.
pub fn window_hi_root(n: usize, k0: usize) -> f64 {
    let c = (2.0 * n as f64).powf(0.25);
    let root = (c + (c * c + 4.0 * k0 as f64).sqrt()) / 2.0;
    root * root
}

/// Smallest `l >= 1` with `k0 - l < (2n)^{1/4} sqrt(k0)`, by scanning.
pub fn window_lo_oracle(n: usize, k0: usize) -> usize {
    let two_n = 2 * n as u128;
    (1..=k0)
        .find(|&l| ((k0 - l) as u128).pow(4) < two_n * (k0 as u128).pow(2))
        .unwrap()
}

/// Numeric checks of the known upper bounds on Laplacian eigenvalue sums.
/// Returns a description of every bound exceeded by more than `tol`.
pub fn bound_failures(g: &Graph, tol: f64) -> Vec<String> {
    let n = g.n();
    let m = g.m() as f64;
    let nf = n as f64;
    let lap = laplacian_spectrum(g).unwrap();
    let adj = adjacency_spectrum(g).unwrap();
    let mut sing: Vec<f64> = adj.values.iter().map(|x| x.abs()).collect();
    sing.sort_by(|a, b| b.total_cmp(a));
    let order = by_degree(g);
    let bipartite = g.is_bipartite();
    let mut out = Vec::new();
    let mut s = 0.0;
    let mut a = 0.0;
    for k in 1..=n {
        s += lap.values[k - 1];
        a += sing[k - 1];
        let kf = k as f64;
        let top = &order[..k];
        let rest = &order[k..];
        let (e_in, e_out) = (edges_inside(g, top) as f64, edges_inside(g, rest) as f64);
        let base = m + kf * (kf + 1.0) / 2.0;
        let mut check = |name: &str, lhs: f64, rhs: f64| {
            if lhs > rhs + tol {
                out.push(format!(
                    "{name}: k={k} lhs={lhs} rhs={rhs} graph={}",
                    brouwer_core::write_graph6(g)
                ));
            }
        };
        check("degree split", s, m + e_in - e_out + a);
        check("ky fan sqrt(2km)", a, (2.0 * kf * m).sqrt());
        check("ky fan n(sqrt(k)+1)/2", a, nf * (kf.sqrt() + 1.0) / 2.0);
        let m1 = kf * (kf - 1.0) / 2.0 - e_in;
        let m2 = e_out;
        let edit = (m1 - m2 + (2.0 * kf * m2).sqrt()).min(m2 - m1 + (2.0 * (nf - kf) * m1).sqrt());
        check("split edit", s, base + edit);
        check(
            "excess n^1/4",
            s - base,
            2f64.powf(0.75) * nf.powf(0.25) * (kf * (nf - kf)).sqrt(),
        );
        if bipartite {
            check("bipartite 4n", s - base, 4.0 * nf);
        }
    }
    out
}
