//! Gaussian-process model over ProMP weight vectors conditioned on context
//! variables, with predictive uncertainty propagated into trajectory space.
//!
//! The K weight dimensions are treated as independent scalar GPs sharing a
//! single squared-exponential kernel and one Gram factorization; the mean
//! function is the constant empirical mean of the training weights.

use serde::{Deserialize, Serialize};

use crate::basis::{gaussian_basis_matrix, BasisConfig};
use crate::error::{Error, Result};
use crate::numerics::{cholesky, cholesky_solve, Matrix};

pub const DEFAULT_JITTER: f64 = 1e-9;
const MAX_JITTER: f64 = 1e-6;

/// Squared-exponential kernel hyperparameters.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GpConfig {
    pub length_scale: f64,
    pub signal_var: f64,
    pub noise_var: f64,
    pub jitter: f64,
}

impl GpConfig {
    pub fn new(length_scale: f64, signal_var: f64, noise_var: f64) -> Self {
        GpConfig {
            length_scale,
            signal_var,
            noise_var,
            jitter: DEFAULT_JITTER,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.length_scale > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "length_scale must be > 0, got {}",
                self.length_scale
            )));
        }
        if !(self.signal_var > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "signal_var must be > 0, got {}",
                self.signal_var
            )));
        }
        if !(self.noise_var >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "noise_var must be >= 0, got {}",
                self.noise_var
            )));
        }
        Ok(())
    }
}

/// Fitted GP over weight vectors: training contexts, the weight table, the
/// empirical mean row, and the shared Gram factorization.
#[derive(Debug, Clone)]
pub struct GpModel {
    pub contexts: Matrix,
    pub weight_table: Matrix,
    pub mean_row: Vec<f64>,
    pub config: GpConfig,
    gram_factor: Matrix,
    /// Precomputed `Gram^-1 (weights - mean)` per weight dimension (m x K).
    alphas: Matrix,
}

/// `signal_var * exp(-||c1 - c2||^2 / (2 length_scale^2))`.
pub fn rbf_kernel(c1: &[f64], c2: &[f64], cfg: &GpConfig) -> Result<f64> {
    if c1.len() != c2.len() {
        return Err(Error::InvalidInput(format!(
            "context dimensions differ: {} vs {}",
            c1.len(),
            c2.len()
        )));
    }
    let d2: f64 = c1.iter().zip(c2).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok(cfg.signal_var * (-d2 / (2.0 * cfg.length_scale * cfg.length_scale)).exp())
}

/// Fit K independent scalar GPs sharing one kernel over the given contexts.
///
/// The Gram matrix `K(C,C) + (noise_var + jitter) I` is Cholesky-factorized
/// once; jitter escalates by x10 up to 1e-6 before the fit fails. Duplicate
/// contexts carrying different weight rows are contradictory when
/// `noise_var = 0` and are rejected up front.
pub fn gp_fit(contexts: &Matrix, weight_table: &Matrix, cfg: &GpConfig) -> Result<GpModel> {
    cfg.validate()?;
    let m = contexts.rows();
    if m == 0 {
        return Err(Error::InvalidInput("gp_fit needs at least one training row".into()));
    }
    if weight_table.rows() != m {
        return Err(Error::InvalidInput(format!(
            "weight table has {} rows for {m} contexts",
            weight_table.rows()
        )));
    }
    if !(contexts.is_finite() && weight_table.is_finite()) {
        return Err(Error::InvalidInput("gp_fit inputs must be finite".into()));
    }

    if cfg.noise_var == 0.0 {
        for i in 0..m {
            for j in (i + 1)..m {
                let same_ctx = contexts
                    .row(i)
                    .iter()
                    .zip(contexts.row(j))
                    .all(|(a, b)| (a - b).abs() <= 1e-12);
                if !same_ctx {
                    continue;
                }
                let same_w = weight_table
                    .row(i)
                    .iter()
                    .zip(weight_table.row(j))
                    .all(|(a, b)| (a - b).abs() <= 1e-12);
                if !same_w {
                    return Err(Error::NumericalFailure(format!(
                        "contexts {i} and {j} coincide with different weights; \
                         the noiseless Gram matrix is singular"
                    )));
                }
            }
        }
    }

    let k_dim = weight_table.cols();
    let mean_row: Vec<f64> = (0..k_dim)
        .map(|j| (0..m).map(|i| weight_table[(i, j)]).sum::<f64>() / m as f64)
        .collect();

    let base = Matrix::from_fn(m, m, |i, j| {
        rbf_kernel(contexts.row(i), contexts.row(j), cfg).expect("aligned rows")
    });

    let mut jitter = cfg.jitter.max(0.0).max(DEFAULT_JITTER);
    let gram_factor = loop {
        let gram = Matrix::from_fn(m, m, |i, j| {
            base[(i, j)] + if i == j { cfg.noise_var + jitter } else { 0.0 }
        });
        if let Some(l) = cholesky(&gram) {
            break l;
        }
        jitter *= 10.0;
        if jitter > MAX_JITTER {
            return Err(Error::NumericalFailure(format!(
                "Gram factorization failed even with jitter {MAX_JITTER}"
            )));
        }
    };

    let mut alphas = Matrix::zeros(m, k_dim);
    for j in 0..k_dim {
        let centered: Vec<f64> = (0..m).map(|i| weight_table[(i, j)] - mean_row[j]).collect();
        let alpha = cholesky_solve(&gram_factor, &centered);
        for i in 0..m {
            alphas[(i, j)] = alpha[i];
        }
    }

    Ok(GpModel {
        contexts: contexts.clone(),
        weight_table: weight_table.clone(),
        mean_row,
        config: *cfg,
        gram_factor,
        alphas,
    })
}

impl GpModel {
    /// Lower-triangular factor of the (jittered) Gram matrix.
    pub fn gram_factor(&self) -> &Matrix {
        &self.gram_factor
    }
}

/// Posterior mean weight vector and the shared predictive variance at a
/// test context. The variance is clamped at zero.
pub fn gp_predict(model: &GpModel, c_star: &[f64]) -> Result<(Vec<f64>, f64)> {
    if c_star.len() != model.contexts.cols() {
        return Err(Error::InvalidInput(format!(
            "context dimension {} does not match training dimension {}",
            c_star.len(),
            model.contexts.cols()
        )));
    }
    let m = model.contexts.rows();
    let k_dim = model.weight_table.cols();
    let k_star: Vec<f64> = (0..m)
        .map(|i| rbf_kernel(model.contexts.row(i), c_star, &model.config))
        .collect::<Result<_>>()?;

    let mean: Vec<f64> = (0..k_dim)
        .map(|j| {
            let corr: f64 = (0..m).map(|i| k_star[i] * model.alphas[(i, j)]).sum();
            model.mean_row[j] + corr
        })
        .collect();

    // variance = k(c*, c*) - k*^T Gram^-1 k*, via one triangular solve.
    let mut v = vec![0.0; m];
    for i in 0..m {
        let mut s = k_star[i];
        for t in 0..i {
            s -= model.gram_factor[(i, t)] * v[t];
        }
        v[i] = s / model.gram_factor[(i, i)];
    }
    let k_ss = rbf_kernel(c_star, c_star, &model.config)?;
    let raw = k_ss - v.iter().map(|x| x * x).sum::<f64>();
    Ok((mean, raw.max(0.0)))
}

/// Raw (pre-clamp) predictive variance; used by tests that bound how far
/// below zero rounding may push it.
pub fn gp_predict_raw_variance(model: &GpModel, c_star: &[f64]) -> Result<f64> {
    let m = model.contexts.rows();
    let k_star: Vec<f64> = (0..m)
        .map(|i| rbf_kernel(model.contexts.row(i), c_star, &model.config))
        .collect::<Result<_>>()?;
    let mut v = vec![0.0; m];
    for i in 0..m {
        let mut s = k_star[i];
        for t in 0..i {
            s -= model.gram_factor[(i, t)] * v[t];
        }
        v[i] = s / model.gram_factor[(i, i)];
    }
    let k_ss = rbf_kernel(c_star, c_star, &model.config)?;
    Ok(k_ss - v.iter().map(|x| x * x).sum::<f64>())
}

/// Predict a trajectory for a new context and propagate the weight
/// uncertainty pointwise: `std[i] = sqrt(variance) * ||phi row i||`.
pub fn conditional_trajectory(
    model: &GpModel,
    c_star: &[f64],
    t: &[f64],
    basis: &BasisConfig,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let (mean_w, variance) = gp_predict(model, c_star)?;
    let phi = gaussian_basis_matrix(t, basis)?;
    if phi.cols() != mean_w.len() {
        return Err(Error::InvalidInput(format!(
            "basis has {} columns but the model carries {} weights",
            phi.cols(),
            mean_w.len()
        )));
    }
    let trajectory = phi.matvec(&mean_w);
    let sigma = variance.sqrt();
    let pointwise_std: Vec<f64> = (0..phi.rows())
        .map(|i| {
            let norm: f64 = phi.row(i).iter().map(|x| x * x).sum::<f64>().sqrt();
            sigma * norm
        })
        .collect();
    Ok((trajectory, pointwise_std))
}
