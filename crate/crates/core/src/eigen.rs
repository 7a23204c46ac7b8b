//! Small dense symmetric eigensolver: cyclic Jacobi rotations.
//!
//! Sized for the (2F+1)-dimensional interaction matrices (n ≤ 5 complex,
//! n ≤ 10 after real embedding), where Jacobi is simple and foolproof.

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
const OFF_DIAG_REL_TOL: f64 = 1e-14;

/// Eigenvalues of a real symmetric matrix (row-major, n×n), unsorted.
/// The input buffer is consumed as scratch.
pub(crate) fn jacobi_eigenvalues(a: &mut [f64], n: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n);
    let frob_total = frobenius(a);
    if frob_total == 0.0 {
        return Ok(vec![0.0; n]);
    }
    let tol = OFF_DIAG_REL_TOL * frob_total;

    for _ in 0..MAX_SWEEPS {
        if off_diag_frobenius(a, n) <= tol {
            return Ok((0..n).map(|i| a[i * n + i]).collect());
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = 0.5 * (a[q * n + q] - a[p * n + p]) / apq;
                let t = if theta.abs() > 1.0e12 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                let app = a[p * n + p];
                let aqq = a[q * n + q];
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                    a[p * n + k] = a[k * n + p];
                    a[q * n + k] = a[k * n + q];
                }
            }
        }
    }
    Err(Error::EigensolverStalled(MAX_SWEEPS))
}

fn frobenius(a: &[f64]) -> f64 {
    a.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn off_diag_frobenius(a: &[f64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[i * n + j] * a[i * n + j];
            }
        }
    }
    acc.sqrt()
}
