//! Symmetric eigendecomposition: Householder tridiagonalization followed by
//! the implicit-shift QL iteration, with eigenvector accumulation.

use crate::error::{Error, Result};
use crate::numerics::matrix::Matrix;

/// Eigenvalues in ascending order and the matching eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct SymEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix,
}

const SYMMETRY_TOL: f64 = 1e-10;
const MAX_QL_ITER: usize = 50;

/// Decompose a symmetric matrix. Eigenvector signs are normalized (first
/// component of meaningful magnitude is positive) so downstream embeddings
/// are deterministic.
pub fn sym_eig(s: &Matrix) -> Result<SymEig> {
    if !s.is_square() {
        return Err(Error::InvalidInput(format!(
            "sym_eig requires a square matrix, got {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    if !s.is_finite() {
        return Err(Error::InvalidInput("sym_eig input has non-finite entries".into()));
    }
    if s.asymmetry() > SYMMETRY_TOL {
        return Err(Error::InvalidInput(format!(
            "sym_eig input asymmetric by {} (tolerance {SYMMETRY_TOL})",
            s.asymmetry()
        )));
    }
    let n = s.rows();
    if n == 0 {
        return Ok(SymEig {
            eigenvalues: vec![],
            eigenvectors: Matrix::zeros(0, 0),
        });
    }

    // Symmetrize exactly before reducing; removes sub-tolerance noise.
    let mut z = Matrix::from_fn(n, n, |i, j| 0.5 * (s[(i, j)] + s[(j, i)]));
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(&mut z, &mut d, &mut e);
    ql_implicit(&mut d, &mut e, &mut z)?;

    // Sort ascending, carrying eigenvector columns along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let mut eigenvectors = Matrix::zeros(n, n);
    for (slot, &j) in order.iter().enumerate() {
        // Sign rule: first component with non-negligible magnitude positive.
        let mut flip = false;
        for i in 0..n {
            let v = z[(i, j)];
            if v.abs() > 1e-12 {
                flip = v < 0.0;
                break;
            }
        }
        for i in 0..n {
            eigenvectors[(i, slot)] = if flip { -z[(i, j)] } else { z[(i, j)] };
        }
    }

    Ok(SymEig {
        eigenvalues,
        eigenvectors,
    })
}

/// Householder reduction to tridiagonal form; `a` becomes the accumulated
/// orthogonal transform, `d` the diagonal, `e` the subdiagonal (e[0] unused).
fn tridiagonalize(a: &mut Matrix, d: &mut [f64], e: &mut [f64]) {
    let n = a.rows();
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..=l).map(|k| a[(i, k)].abs()).sum();
            if scale == 0.0 {
                e[i] = a[(i, l)];
            } else {
                for k in 0..=l {
                    a[(i, k)] /= scale;
                    h += a[(i, k)] * a[(i, k)];
                }
                let f = a[(i, l)];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[(i, l)] = f - g;
                let mut f_acc = 0.0;
                for j in 0..=l {
                    a[(j, i)] = a[(i, j)] / h;
                    let mut g_acc = 0.0;
                    for k in 0..=j {
                        g_acc += a[(j, k)] * a[(i, k)];
                    }
                    for k in (j + 1)..=l {
                        g_acc += a[(k, j)] * a[(i, k)];
                    }
                    e[j] = g_acc / h;
                    f_acc += e[j] * a[(i, j)];
                }
                let hh = f_acc / (h + h);
                for j in 0..=l {
                    let f = a[(i, j)];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        let delta = f * e[k] + g * a[(i, k)];
                        a[(j, k)] -= delta;
                    }
                }
            }
        } else {
            e[i] = a[(i, l)];
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for i in 0..n {
        if d[i] != 0.0 {
            for j in 0..i {
                let mut g = 0.0;
                for k in 0..i {
                    g += a[(i, k)] * a[(k, j)];
                }
                for k in 0..i {
                    let delta = g * a[(k, i)];
                    a[(k, j)] -= delta;
                }
            }
        }
        d[i] = a[(i, i)];
        a[(i, i)] = 1.0;
        for j in 0..i {
            a[(j, i)] = 0.0;
            a[(i, j)] = 0.0;
        }
    }
}

/// Implicit-shift QL on a tridiagonal (d, e), rotating the columns of `z`.
fn ql_implicit(d: &mut [f64], e: &mut [f64], z: &mut Matrix) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITER {
                return Err(Error::NumericalFailure(
                    "eigenvalue QL iteration did not converge".into(),
                ));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + copysign_nonzero(r, g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // Deflate: eigenvalue found, restart this l.
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..z.rows() {
                    let fk = z[(k, i + 1)];
                    z[(k, i + 1)] = s * z[(k, i)] + c * fk;
                    z[(k, i)] = c * z[(k, i)] - s * fk;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[inline]
fn copysign_nonzero(magnitude: f64, sign: f64) -> f64 {
    if sign >= 0.0 {
        magnitude.abs()
    } else {
        -magnitude.abs()
    }
}
