//! Undirected simple graphs stored as packed adjacency bit rows.
//!
//! A [`Graph`] is immutable once built. All constructions (complement, joins,
//! unions, induced subgraphs) return new graphs, so graphs can be shared freely
//! between worker threads.

mod graph6;
mod stats;

pub use graph6::{parse_graph6, write_graph6};
pub(crate) use stats::top_set_from_order;
pub use stats::{
    arboricity, degree_order, degree_stats, splittance, top_set, ArborBound, DegreeStats,
    Splittance, TopSet, DEFAULT_ARBORICITY_EXACT_LIMIT,
};

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 4096;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    m: usize,
}

impl Graph {
    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::VertexCount {
                n,
                max: MAX_VERTICES,
            });
        }
        let words = n.div_ceil(64);
        Ok(Self {
            n,
            words,
            bits: vec![0; n * words],
            m: 0,
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::Parameter(format!("self-loop at vertex {u}")));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from a predicate on unordered pairs `u < v`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for v in 1..n {
            for u in 0..v {
                if f(u, v) {
                    g.insert_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| true)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Parameter(format!("cycle needs n >= 3, got {n}")));
        }
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    /// The star `K_{1,n-1}` with center 0.
    pub fn star(n: usize) -> Result<Self> {
        Self::from_edges(n, (1..n).map(|i| (0, i)))
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        Self::from_fn(a + b, |u, v| u < a && v >= a)
    }

    pub fn petersen() -> Result<Self> {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::from_edges(10, edges)
    }

    fn insert_edge(&mut self, u: usize, v: usize) {
        if !self.has_edge(u, v) {
            self.bits[u * self.words + v / 64] |= 1 << (v % 64);
            self.bits[v * self.words + u / 64] |= 1 << (u % 64);
            self.m += 1;
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Packed adjacency row of `v`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    /// Adjacency row as a single mask. Only meaningful when `n <= 64`.
    #[inline]
    pub(crate) fn row_mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.bits[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }

    /// Edges `(u, v)` with `u < v`, in edge-rank order: by `v`, then by `u`.
    /// This is the column-major upper-triangle order of graph6.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.n).flat_map(move |v| {
            (0..v)
                .filter(move |&u| self.has_edge(u, v))
                .map(move |u| (u, v))
        })
    }

    /// Number of edges with both ends in the vertex set given as a membership mask.
    pub fn edges_within(&self, member: &[bool]) -> usize {
        let mut count = 0;
        for v in 0..self.n {
            if !member[v] {
                continue;
            }
            count += self.neighbors(v).filter(|&u| u < v && member[u]).count();
        }
        count
    }

    pub fn complement(&self) -> Self {
        let mut bits = vec![0u64; self.bits.len()];
        for v in 0..self.n {
            let row = &mut bits[v * self.words..(v + 1) * self.words];
            for (w, word) in row.iter_mut().enumerate() {
                *word = !self.bits[v * self.words + w];
            }
            // clear the diagonal and the padding past n
            row[v / 64] &= !(1 << (v % 64));
            let tail = self.n % 64;
            if tail != 0 {
                row[self.words - 1] &= (1u64 << tail) - 1;
            }
        }
        Self {
            n: self.n,
            words: self.words,
            bits,
            m: self.n * (self.n - 1) / 2 - self.m,
        }
    }

    /// Adds one new vertex (index `n`) adjacent to every existing vertex.
    pub fn join_one(&self) -> Result<Self> {
        let n = self.n;
        let mut g = Self::empty(n + 1)?;
        for (u, v) in self.edges() {
            g.insert_edge(u, v);
        }
        for u in 0..n {
            g.insert_edge(u, n);
        }
        Ok(g)
    }

    /// Adds one new isolated vertex (index `n`).
    pub fn add_isolated(&self) -> Result<Self> {
        self.disjoint_union(&Self::empty(1)?)
    }

    /// Block-diagonal union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Self> {
        let mut g = Self::empty(self.n + other.n)?;
        for (u, v) in self.edges() {
            g.insert_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.insert_edge(u + self.n, v + self.n);
        }
        Ok(g)
    }

    /// Subgraph induced by `vertices`, relabeled in ascending vertex order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&v) = sorted.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        let mut g = Self::empty(sorted.len())?;
        for (j, &v) in sorted.iter().enumerate() {
            for (i, &u) in sorted[..j].iter().enumerate() {
                if self.has_edge(u, v) {
                    g.insert_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for u in self.neighbors(v) {
                    if color[u] == u8::MAX {
                        color[u] = 1 - color[v];
                        queue.push_back(u);
                    } else if color[u] == color[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Threshold test by repeatedly peeling an isolated or dominating vertex.
    pub fn is_threshold(&self) -> bool {
        let mut alive = vec![true; self.n];
        let mut deg = self.degrees();
        let mut remaining = self.n;
        while remaining > 1 {
            let pick = (0..self.n).find(|&v| alive[v] && (deg[v] == 0 || deg[v] == remaining - 1));
            let Some(v) = pick else {
                return false;
            };
            alive[v] = false;
            remaining -= 1;
            for u in self.neighbors(v) {
                if alive[u] {
                    deg[u] -= 1;
                }
            }
        }
        true
    }

    /// Split test: the vertex set partitions into a clique and an independent set.
    pub fn is_split(&self) -> bool {
        splittance(self).value == 0
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.m)
            .field("graph6", &write_graph6(self))
            .finish()
    }
}
