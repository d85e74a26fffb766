//! Dense symmetric matrices built from graphs, their spectra, and the spectral
//! quantities consumed by the certificates: Ky Fan norms and the maximum
//! subgraph spectral density.

mod density;
mod jacobi;

pub use density::{msd_t, TBound, DEFAULT_T_EXACT_LIMIT};
pub use jacobi::eigenvalues;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Dense symmetric real matrix, stored row-major in full.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Builds the matrix from its upper triangle `f(i, j)`, `i <= j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Validates symmetry of a row-major buffer.
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Parameter(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                data.len()
            )));
        }
        for i in 0..n {
            for j in i + 1..n {
                if data[i * n + j] != data[j * n + i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { n, data })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// `tr(M^2)`, the squared Frobenius norm.
    pub fn trace_of_square(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }
}

pub fn adjacency(g: &Graph) -> SymMatrix {
    let mut m = SymMatrix::zeros(g.n());
    for (u, v) in g.edges() {
        m.set(u, v, 1.0);
    }
    m
}

/// `L = D - A`.
pub fn laplacian(g: &Graph) -> SymMatrix {
    let mut m = SymMatrix::zeros(g.n());
    for (u, v) in g.edges() {
        m.set(u, v, -1.0);
    }
    for v in 0..g.n() {
        m.set(v, v, g.degree(v) as f64);
    }
    m
}

/// `Q = D + A`.
pub fn signless(g: &Graph) -> SymMatrix {
    let mut m = adjacency(g);
    for v in 0..g.n() {
        m.set(v, v, g.degree(v) as f64);
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumKind {
    Laplacian,
    Adjacency,
    Signless,
    SignedLaplacian,
}

impl SpectrumKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Laplacian => "laplacian",
            Self::Adjacency => "adjacency",
            Self::Signless => "signless",
            Self::SignedLaplacian => "signed_laplacian",
        }
    }

    /// Laplacian-type matrices are positive semidefinite.
    pub fn is_psd(self) -> bool {
        !matches!(self, Self::Adjacency)
    }
}

/// Eigenvalues of a named matrix, descending, with cached trace and prefix sums.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub kind: SpectrumKind,
    pub values: Vec<f64>,
    pub trace: f64,
    /// `prefix[k]` is the sum of the `k` largest eigenvalues; `prefix[0] = 0`.
    pub prefix: Vec<f64>,
}

impl Spectrum {
    /// Wraps eigenvalues; they are re-sorted in descending order.
    pub fn new(kind: SpectrumKind, mut values: Vec<f64>) -> Self {
        values.sort_by(|x, y| y.total_cmp(x));
        let mut prefix = Vec::with_capacity(values.len() + 1);
        let mut acc = 0.0;
        prefix.push(0.0);
        for &v in &values {
            acc += v;
            prefix.push(acc);
        }
        Self {
            kind,
            trace: acc,
            values,
            prefix,
        }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Sum of the `k` largest eigenvalues, `s_k`; `s_0 = 0`.
    pub fn top_sum(&self, k: usize) -> f64 {
        self.prefix[k]
    }
}

pub fn eig_sym(matrix: &SymMatrix, kind: SpectrumKind) -> Result<Spectrum> {
    if matrix.n() == 0 {
        return Err(Error::Parameter("empty matrix".into()));
    }
    Ok(Spectrum::new(kind, eigenvalues(matrix)?))
}

pub fn laplacian_spectrum(g: &Graph) -> Result<Spectrum> {
    eig_sym(&laplacian(g), SpectrumKind::Laplacian)
}

pub fn adjacency_spectrum(g: &Graph) -> Result<Spectrum> {
    eig_sym(&adjacency(g), SpectrumKind::Adjacency)
}

pub fn signless_spectrum(g: &Graph) -> Result<Spectrum> {
    eig_sym(&signless(g), SpectrumKind::Signless)
}

/// The `k`-th Ky Fan norm: the sum of the `k` largest singular values.
///
/// For positive semidefinite kinds this is the prefix sum `s_k`. For adjacency
/// spectra the singular values are `|λ|`, merged greedily from both ends.
pub fn ky_fan(spectrum: &Spectrum, k: usize) -> Result<f64> {
    let n = spectrum.n();
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, lo: 1, hi: n });
    }
    if spectrum.kind.is_psd() {
        return Ok(spectrum.prefix[k]);
    }
    let v = &spectrum.values;
    let (mut lo, mut hi) = (0usize, n - 1);
    let mut sum = 0.0;
    for _ in 0..k {
        if v[lo].abs() >= v[hi].abs() {
            sum += v[lo].abs();
            lo += 1;
        } else {
            sum += v[hi].abs();
            hi = hi.saturating_sub(1);
        }
    }
    Ok(sum)
}

/// Two upper bounds on the adjacency Ky Fan norm: `sqrt(2km)` and `n(sqrt(k)+1)/2`.
pub fn adjacency_kyfan_bounds(g: &Graph, k: usize) -> Result<(f64, f64)> {
    let n = g.n();
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, lo: 1, hi: n });
    }
    let b1 = (2.0 * k as f64 * g.m() as f64).sqrt();
    let b2 = n as f64 * ((k as f64).sqrt() + 1.0) / 2.0;
    Ok((b1, b2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn matrix_constructions() {
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(laplacian(&k2).data(), &[1.0, -1.0, -1.0, 1.0]);

        let p3 = Graph::path(3).unwrap();
        let l = laplacian(&p3);
        assert_eq!((l.get(0, 0), l.get(1, 1), l.get(2, 2)), (1.0, 2.0, 1.0));
        assert_eq!((l.get(0, 1), l.get(1, 2), l.get(0, 2)), (-1.0, -1.0, 0.0));

        let q = signless(&Graph::cycle(4).unwrap());
        for i in 0..4 {
            let row: f64 = (0..4).map(|j| q.get(i, j)).sum();
            assert_eq!(row, 4.0);
        }
    }

    #[test]
    fn known_laplacian_spectra() {
        let k5 = laplacian_spectrum(&Graph::complete(5).unwrap()).unwrap();
        assert!(close(&k5.values, &[5.0, 5.0, 5.0, 5.0, 0.0], 1e-12));

        let c4 = laplacian_spectrum(&Graph::cycle(4).unwrap()).unwrap();
        assert!(close(&c4.values, &[4.0, 2.0, 2.0, 0.0], 1e-12));

        let n = 9;
        let c = laplacian_spectrum(&Graph::cycle(n).unwrap()).unwrap();
        let mut expected: Vec<f64> = (0..n)
            .map(|j| 2.0 - 2.0 * (2.0 * PI * j as f64 / n as f64).cos())
            .collect();
        expected.sort_by(|a, b| b.total_cmp(a));
        assert!(close(&c.values, &expected, 1e-11));

        let star = laplacian_spectrum(&Graph::star(7).unwrap()).unwrap();
        let mut expected = vec![7.0];
        expected.extend([1.0; 5]);
        expected.push(0.0);
        assert!(close(&star.values, &expected, 1e-11));
    }

    #[test]
    fn ky_fan_examples() {
        let k4 = laplacian_spectrum(&Graph::complete(4).unwrap()).unwrap();
        assert!((ky_fan(&k4, 3).unwrap() - 12.0).abs() < 1e-12);

        let a = adjacency_spectrum(&Graph::complete(2).unwrap()).unwrap();
        assert!((ky_fan(&a, 2).unwrap() - 2.0).abs() < 1e-12);

        let c4 = laplacian_spectrum(&Graph::cycle(4).unwrap()).unwrap();
        assert!((ky_fan(&c4, 2).unwrap() - 6.0).abs() < 1e-12);

        assert!(ky_fan(&c4, 0).is_err());
        assert!(ky_fan(&c4, 5).is_err());
    }

    #[test]
    fn adjacency_ky_fan_merges_both_ends() {
        // star K_{1,4}: eigenvalues 2, 0, 0, 0, -2
        let a = adjacency_spectrum(&Graph::star(5).unwrap()).unwrap();
        assert!((ky_fan(&a, 1).unwrap() - 2.0).abs() < 1e-12);
        assert!((ky_fan(&a, 2).unwrap() - 4.0).abs() < 1e-12);
        assert!((ky_fan(&a, 5).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn adjacency_bounds_examples() {
        let k4 = Graph::complete(4).unwrap();
        let (b1, b2) = adjacency_kyfan_bounds(&k4, 1).unwrap();
        assert!((b1 - 12f64.sqrt()).abs() < 1e-12);
        assert_eq!(b2, 4.0);
        let rho = adjacency_spectrum(&k4).unwrap().values[0];
        assert!((rho - 3.0).abs() < 1e-12 && rho <= b1);

        let e = Graph::empty(5).unwrap();
        let (b1, _) = adjacency_kyfan_bounds(&e, 3).unwrap();
        assert_eq!(b1, 0.0);
        assert_eq!(ky_fan(&adjacency_spectrum(&e).unwrap(), 3).unwrap(), 0.0);
    }

    #[test]
    fn from_row_major_checks_symmetry() {
        assert!(SymMatrix::from_row_major(2, vec![1.0, 2.0, 3.0, 1.0]).is_err());
        assert!(SymMatrix::from_row_major(2, vec![1.0, 2.0, 2.0]).is_err());
        assert!(SymMatrix::from_row_major(2, vec![1.0, 2.0, 2.0, 1.0]).is_ok());
    }
}
