//! Singular value decomposition (one-sided Jacobi) and the Moore-Penrose
//! pseudoinverse built on it.

use crate::error::{Error, Result};
use crate::numerics::matrix::Matrix;

const MAX_SWEEPS: usize = 60;

/// Thin SVD: `a = u * diag(singular_values) * v^T` with `u` m x p,
/// `v` n x p, p = min(m, n). Singular values are sorted descending.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: Matrix,
    pub singular_values: Vec<f64>,
    pub v: Matrix,
}

/// One-sided Jacobi SVD. Robust for the tall skinny systems this crate
/// solves (basis matrices are n x K with small K).
pub fn svd(a: &Matrix) -> Result<Svd> {
    if !a.is_finite() {
        return Err(Error::InvalidInput("svd input has non-finite entries".into()));
    }
    if a.rows() >= a.cols() {
        svd_tall(a)
    } else {
        // A = U S V^T  <=>  A^T = V S U^T
        let t = svd_tall(&a.transpose())?;
        Ok(Svd {
            u: t.v,
            singular_values: t.singular_values,
            v: t.u,
        })
    }
}

fn svd_tall(a: &Matrix) -> Result<Svd> {
    let m = a.rows();
    let n = a.cols();
    // Work on columns: rotate pairs until all are mutually orthogonal.
    let mut cols: Vec<Vec<f64>> = (0..n).map(|j| (0..m).map(|i| a[(i, j)]).collect()).collect();
    let mut v = Matrix::identity(n);

    // Rounding noise in long columns keeps |gamma| above raw machine
    // epsilon, so the orthogonality test scales with sqrt(m).
    let eps = f64::EPSILON * (m as f64).sqrt().max(4.0);
    let mut converged = false;
    let mut worst_ratio: f64 = 0.0;
    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        worst_ratio = 0.0;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = 0.0;
                for i in 0..m {
                    alpha += cols[p][i] * cols[p][i];
                    beta += cols[q][i] * cols[q][i];
                    gamma += cols[p][i] * cols[q][i];
                }
                let scale = (alpha * beta).sqrt();
                if scale > 0.0 {
                    worst_ratio = worst_ratio.max(gamma.abs() / scale);
                }
                if gamma == 0.0 || gamma.abs() <= eps * scale {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let xp = cols[p][i];
                    let xq = cols[q][i];
                    cols[p][i] = c * xp - s * xq;
                    cols[q][i] = s * xp + c * xq;
                }
                for i in 0..n {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = c * vp - s * vq;
                    v[(i, q)] = s * vp + c * vq;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    // A stall with near-orthogonal columns is still a usable decomposition.
    if !converged && worst_ratio > 1e-8 {
        return Err(Error::NumericalFailure(format!(
            "svd did not converge within {MAX_SWEEPS} sweeps (residual {worst_ratio:.2e})"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt())
        .collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());

    let mut u = Matrix::zeros(m, n);
    let mut v_sorted = Matrix::zeros(n, n);
    let mut sigma = Vec::with_capacity(n);
    for (slot, &j) in order.iter().enumerate() {
        let s = norms[j];
        sigma.push(s);
        if s > 0.0 {
            for i in 0..m {
                u[(i, slot)] = cols[j][i] / s;
            }
        }
        for i in 0..n {
            v_sorted[(i, slot)] = v[(i, j)];
        }
    }

    Ok(Svd {
        u,
        singular_values: sigma,
        v: v_sorted,
    })
}

/// Moore-Penrose pseudoinverse via SVD. Singular values at or below
/// `rcond * sigma_max` are treated as zero; `rcond = None` uses
/// `machine_epsilon * max(rows, cols)`.
pub fn pseudoinverse(a: &Matrix, rcond: Option<f64>) -> Result<Matrix> {
    if !a.is_finite() {
        return Err(Error::InvalidInput(
            "pseudoinverse input has non-finite entries".into(),
        ));
    }
    let rcond = match rcond {
        Some(r) if r >= 0.0 => r,
        Some(r) => {
            return Err(Error::InvalidParameter(format!(
                "rcond must be >= 0, got {r}"
            )))
        }
        None => f64::EPSILON * a.rows().max(a.cols()) as f64,
    };
    let decomp = svd(a)?;
    let smax = decomp.singular_values.first().copied().unwrap_or(0.0);
    let cutoff = rcond * smax;
    // A+ = V * diag(1/s) * U^T, dropping singular values under the cutoff.
    let p = decomp.singular_values.len();
    let mut out = Matrix::zeros(a.cols(), a.rows());
    for k in 0..p {
        let s = decomp.singular_values[k];
        if s <= cutoff || s == 0.0 {
            continue;
        }
        let inv = 1.0 / s;
        for i in 0..a.cols() {
            let vik = decomp.v[(i, k)] * inv;
            if vik == 0.0 {
                continue;
            }
            for j in 0..a.rows() {
                out[(i, j)] += vik * decomp.u[(j, k)];
            }
        }
    }
    Ok(out)
}
