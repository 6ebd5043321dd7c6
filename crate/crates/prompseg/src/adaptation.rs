//! Streaming adaptation experiment: learn a primitive from a clean pass,
//! then replay the path while an obstacle scales it mid-stream, refitting
//! the weights every batch and comparing against a frozen-weight baseline.

use serde::{Deserialize, Serialize};

use crate::basis::{gaussian_basis_matrix, BasisConfig};
use crate::error::{Error, Result};
use crate::promp::{adapt_weights, learn_weights, ProMP};
use crate::trajgen::{generate_dynamic_trajectory, TrajectoryConfig};
use crate::numerics::Rng64;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdaptConfig {
    pub num_points: usize,
    pub noise_level: f64,
    pub num_bases: usize,
    /// Samples between weight refits.
    pub batch: usize,
    /// Most recent samples fed to each refit.
    pub window: usize,
    pub decay: f64,
    pub ridge: f64,
    /// When false the stream replays the learned path untouched.
    pub inject_obstacle: bool,
    pub obstacle_half_width: usize,
}

impl Default for AdaptConfig {
    fn default() -> Self {
        AdaptConfig {
            num_points: 1000,
            noise_level: 0.1,
            num_bases: 10,
            batch: 25,
            window: 100,
            decay: 0.9,
            // Windowed refits with a global basis need a firm anchor, or
            // weights of far-away bases swing on tail excitations and ruin
            // the predictions just ahead of the window.
            ridge: 1e-2,
            inject_obstacle: true,
            obstacle_half_width: 50,
        }
    }
}

impl AdaptConfig {
    pub fn validate(&self) -> Result<()> {
        if self.batch == 0 {
            return Err(Error::InvalidParameter("batch must be >= 1".into()));
        }
        if self.window == 0 {
            return Err(Error::InvalidParameter("window must be >= 1".into()));
        }
        if self.num_points < 4 * self.obstacle_half_width.max(1) {
            return Err(Error::InvalidParameter(
                "num_points too small for the obstacle window".into(),
            ));
        }
        if !(self.noise_level >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "noise_level must be >= 0, got {}",
                self.noise_level
            )));
        }
        Ok(())
    }
}

/// Obstacle actually injected into a stream.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InjectedObstacle {
    pub center: usize,
    pub multiplier: f64,
}

/// Outcome of one streaming run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdaptReport {
    pub config: AdaptConfig,
    pub seed: u64,
    pub obstacle: Option<InjectedObstacle>,
    /// Prediction error over the whole stream with frozen weights.
    pub mse_no_adapt: f64,
    /// Prediction error over the whole stream with per-batch refits.
    pub mse_adapt: f64,
    /// Same comparison restricted to samples at or after the obstacle onset.
    pub post_obstacle_mse_no_adapt: f64,
    pub post_obstacle_mse_adapt: f64,
    /// Max absolute weight change over the run; ~0 when nothing happened.
    pub weight_drift: f64,
}

/// Run the streaming experiment.
///
/// Training phase: a clean (no-obstacle) trajectory drawn with `seed` fits
/// the initial weights. Streaming phase: the learned path is replayed
/// sample by sample; when an obstacle is injected, a window around the
/// drawn center is scaled by a multiplier drawn from [-1, 1). Predictions
/// for each batch use the weights fitted before that batch arrived, so the
/// comparison is honest about lag.
pub fn run_adaptation_stream(cfg: &AdaptConfig, seed: u64) -> Result<AdaptReport> {
    cfg.validate()?;
    let n = cfg.num_points;

    let traj_cfg = TrajectoryConfig {
        num_points: n,
        num_obstacles: 0,
        noise_level: cfg.noise_level,
        ..TrajectoryConfig::default()
    };
    let clean = generate_dynamic_trajectory(&traj_cfg, seed)?;
    let span = (clean.t[0], clean.t[n - 1]);
    let basis = BasisConfig::for_span(span.0, span.1, cfg.num_bases)?;
    let phi = gaussian_basis_matrix(&clean.t, &basis)?;
    let w0 = learn_weights(&phi, &clean.y)?;
    let initial = ProMP {
        weights: w0.clone(),
        basis,
        t_start: span.0,
        t_end: span.1,
        noise_std: 0.0,
    };

    // The stream replays the model's own path, optionally scaled inside an
    // obstacle window whose center and multiplier come from the same seed.
    let base_path = phi.matvec(&w0);
    let mut stream = base_path.clone();
    let half = cfg.obstacle_half_width;
    let obstacle = if cfg.inject_obstacle {
        let mut rng = Rng64::new(seed ^ 0xADA7);
        let lo_center = half.max(1) + n / 4;
        let hi_center = n - half.max(1) - n / 8;
        let center = lo_center + rng.index(hi_center - lo_center)?;
        let multiplier = rng.uniform(-1.0, 1.0)?;
        let lo = center.saturating_sub(half);
        let hi = (center + half).min(n);
        for v in &mut stream[lo..hi] {
            *v *= multiplier;
        }
        Some(InjectedObstacle { center, multiplier })
    } else {
        None
    };

    // Frozen-weight baseline and adaptive branch over the same stream.
    let baseline = base_path;
    let mut adaptive_pred = vec![0.0; n];
    let mut current = initial.clone();
    let mut pos = 0;
    while pos < n {
        let end = (pos + cfg.batch).min(n);
        let pred = crate::promp::reconstruct(&current, &clean.t[pos..end])?;
        adaptive_pred[pos..end].copy_from_slice(&pred);
        let win_start = end.saturating_sub(cfg.window);
        current = adapt_weights(
            &current,
            &clean.t[win_start..end],
            &stream[win_start..end],
            cfg.decay,
            cfg.ridge,
        )?;
        pos = end;
    }

    let sq = |a: &[f64], b: &[f64]| -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>() / a.len() as f64
    };
    let mse_no_adapt = sq(&stream, &baseline);
    let mse_adapt = sq(&stream, &adaptive_pred);
    let onset = obstacle
        .as_ref()
        .map(|o| o.center.saturating_sub(half))
        .unwrap_or(0);
    let post_obstacle_mse_no_adapt = sq(&stream[onset..], &baseline[onset..]);
    let post_obstacle_mse_adapt = sq(&stream[onset..], &adaptive_pred[onset..]);

    let weight_drift = current
        .weights
        .iter()
        .zip(&w0)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0_f64, f64::max);

    Ok(AdaptReport {
        config: cfg.clone(),
        seed,
        obstacle,
        mse_no_adapt,
        mse_adapt,
        post_obstacle_mse_no_adapt,
        post_obstacle_mse_adapt,
        weight_drift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_obstacle_is_a_fixed_point() {
        let cfg = AdaptConfig {
            inject_obstacle: false,
            ..AdaptConfig::default()
        };
        let report = run_adaptation_stream(&cfg, 5).unwrap();
        assert!(report.obstacle.is_none());
        assert!(
            report.weight_drift < 1e-6,
            "weights drifted by {}",
            report.weight_drift
        );
        assert!(report.mse_adapt < 1e-12);
        assert!(report.mse_no_adapt < 1e-12);
    }

    #[test]
    fn adaptation_beats_frozen_weights_under_obstacle() {
        let report = run_adaptation_stream(&AdaptConfig::default(), 3).unwrap();
        let obs = report.obstacle.as_ref().expect("obstacle injected");
        assert!((-1.0..1.0).contains(&obs.multiplier));
        assert!(
            report.post_obstacle_mse_adapt < report.post_obstacle_mse_no_adapt,
            "adapt {} vs frozen {}",
            report.post_obstacle_mse_adapt,
            report.post_obstacle_mse_no_adapt
        );
        assert!(report.mse_adapt < report.mse_no_adapt);
    }

    #[test]
    fn zero_batch_rejected() {
        let cfg = AdaptConfig {
            batch: 0,
            ..AdaptConfig::default()
        };
        assert!(run_adaptation_stream(&cfg, 1).is_err());
    }

    #[test]
    fn deterministic_given_seed() {
        let a = run_adaptation_stream(&AdaptConfig::default(), 9).unwrap();
        let b = run_adaptation_stream(&AdaptConfig::default(), 9).unwrap();
        assert_eq!(a.mse_adapt, b.mse_adapt);
        assert_eq!(a.obstacle.as_ref().map(|o| o.center), b.obstacle.as_ref().map(|o| o.center));
    }
}
