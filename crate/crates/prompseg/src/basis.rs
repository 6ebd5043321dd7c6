//! Gaussian basis-function encoding of time grids.
//!
//! Each basis column is a univariate normal *density* with variance `width`
//! (not a unit-height bump): `phi(t; c) = exp(-(t-c)^2 / (2 width)) / sqrt(2 pi width)`.
//! The weight vector absorbs the density scale. `width` is a variance, so the
//! effective kernel std is `sqrt(width)`; the default `span / num_bases`
//! reproduces the ten-basis layout used throughout the experiments.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Matrix;
use crate::trajgen::linspace;

pub const DEFAULT_NUM_BASES: usize = 10;

/// Basis layout: number of Gaussians and their shared variance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasisConfig {
    pub num_bases: usize,
    /// Variance of each Gaussian.
    pub width: f64,
}

impl BasisConfig {
    /// Layout with `width = (t_end - t_start) / num_bases`, the default
    /// spacing-to-variance rule for evenly spread centers.
    pub fn for_span(t_start: f64, t_end: f64, num_bases: usize) -> Result<Self> {
        let cfg = BasisConfig {
            num_bases,
            width: (t_end - t_start) / num_bases as f64,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_bases < 2 {
            return Err(Error::InvalidParameter(format!(
                "num_bases must be >= 2, got {}",
                self.num_bases
            )));
        }
        if !(self.width > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "basis width must be > 0, got {}",
                self.width
            )));
        }
        Ok(())
    }
}

/// `k` evenly spaced centers covering `[min(t), max(t)]` inclusive.
pub fn basis_centers(t: &[f64], k: usize) -> Result<Vec<f64>> {
    if t.is_empty() {
        return Err(Error::InvalidInput("basis_centers needs a non-empty time vector".into()));
    }
    let lo = t.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = t.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    centers_for_span(lo, hi, k)
}

/// Centers over an explicit span; used when rebuilding a basis away from
/// the grid it was learned on.
pub fn centers_for_span(t_start: f64, t_end: f64, k: usize) -> Result<Vec<f64>> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 basis centers, got {k}"
        )));
    }
    linspace(t_start, t_end, k)
}

/// n x K design matrix with centers spread over the span of `t` itself.
pub fn gaussian_basis_matrix(t: &[f64], cfg: &BasisConfig) -> Result<Matrix> {
    if t.is_empty() {
        return Err(Error::InvalidInput("empty time vector".into()));
    }
    let lo = t.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = t.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    basis_matrix_for_span(t, lo, hi, cfg)
}

/// n x K design matrix with centers spread over `[t_start, t_end]`,
/// independent of where the evaluation grid `t` lies.
pub fn basis_matrix_for_span(
    t: &[f64],
    t_start: f64,
    t_end: f64,
    cfg: &BasisConfig,
) -> Result<Matrix> {
    cfg.validate()?;
    let centers = centers_for_span(t_start, t_end, cfg.num_bases)?;
    let norm = 1.0 / (2.0 * std::f64::consts::PI * cfg.width).sqrt();
    let two_width = 2.0 * cfg.width;
    Ok(Matrix::from_fn(t.len(), cfg.num_bases, |i, j| {
        let d = t[i] - centers[j];
        norm * (-d * d / two_width).exp()
    }))
}
