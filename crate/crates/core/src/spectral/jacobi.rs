//! Cyclic Jacobi eigenvalue iteration for dense symmetric matrices.

use super::SymMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
/// Convergence: off-diagonal Frobenius norm at most this times the full norm.
const REL_TOL: f64 = 1e-12;

/// Eigenvalues of a symmetric matrix in descending order.
///
/// Rotations are applied in a fixed row-cyclic order, so the result is a
/// deterministic function of the input.
pub fn eigenvalues(matrix: &SymMatrix) -> Result<Vec<f64>> {
    let n = matrix.n();
    let mut a = matrix.data().to_vec();
    for i in 0..n {
        for j in 0..n {
            if !a[i * n + j].is_finite() {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
    }

    let fro2: f64 = a.iter().map(|x| x * x).sum();
    let target2 = (REL_TOL * REL_TOL) * fro2;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off2 = off_diagonal_sq(&a, n);
        if off2 <= target2 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, n, p, q);
            }
        }
    }
    if !converged && off_diagonal_sq(&a, n) > target2 {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}

fn off_diagonal_sq(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let x = a[i * n + j];
            s += 2.0 * x * x;
        }
    }
    s
}

/// Zeroes `a[p][q]` with one plane rotation. Rows p and q are updated in place
/// and mirrored into columns p and q.
#[inline]
fn rotate(a: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[p * n + k];
        let akq = a[q * n + k];
        let np = c * akp - s * akq;
        let nq = s * akp + c * akq;
        a[p * n + k] = np;
        a[q * n + k] = nq;
        a[k * n + p] = np;
        a[k * n + q] = nq;
    }
    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
}
