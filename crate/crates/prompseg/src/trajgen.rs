//! Synthetic dynamic trajectories: a sinusoidal base path with additive
//! Gaussian noise and randomly placed multiplicative obstacle windows.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Rng64;

/// Configuration for [`generate_dynamic_trajectory`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrajectoryConfig {
    pub num_points: usize,
    pub num_obstacles: usize,
    /// Standard deviation of the additive noise.
    pub noise_level: f64,
    pub t_start: f64,
    pub t_end: f64,
    /// Obstacle window half-width in samples.
    pub obstacle_half_width: usize,
}

impl Default for TrajectoryConfig {
    fn default() -> Self {
        TrajectoryConfig {
            num_points: 1000,
            num_obstacles: 5,
            noise_level: 0.1,
            t_start: 0.0,
            t_end: 4.0 * std::f64::consts::PI,
            obstacle_half_width: 50,
        }
    }
}

impl TrajectoryConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_points < 2 {
            return Err(Error::InvalidParameter(format!(
                "num_points must be >= 2, got {}",
                self.num_points
            )));
        }
        if !(self.t_end > self.t_start) {
            return Err(Error::InvalidParameter(format!(
                "t_end must exceed t_start, got [{}, {}]",
                self.t_start, self.t_end
            )));
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

/// A generated path: evenly spaced time vector, perturbed values, and the
/// obstacle draws that produced it. Obstacle metadata is kept so tests and
/// the adaptation experiment can replay exactly what happened.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Trajectory {
    pub t: Vec<f64>,
    pub y: Vec<f64>,
    pub obstacle_centers: Vec<usize>,
    pub obstacle_multipliers: Vec<f64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }
}

/// `n` evenly spaced values with both endpoints included exactly.
pub fn linspace(start: f64, end: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "linspace needs n >= 2, got {n}"
        )));
    }
    if !(end > start) {
        return Err(Error::InvalidParameter(format!(
            "linspace needs end > start, got [{start}, {end}]"
        )));
    }
    let step = (end - start) / (n - 1) as f64;
    let mut out: Vec<f64> = (0..n).map(|i| start + step * i as f64).collect();
    // Pin the last sample so the endpoint is exact regardless of rounding.
    out[n - 1] = end;
    Ok(out)
}

/// Generate a perturbed sinusoid.
///
/// Draw order is fixed: all `n` noise draws in sample order, then per
/// obstacle a center-index draw followed by a multiplier draw on [-1, 1).
/// Obstacles apply sequentially, so overlapping windows compound.
/// Duplicate obstacle centers are kept as drawn.
pub fn generate_dynamic_trajectory(cfg: &TrajectoryConfig, seed: u64) -> Result<Trajectory> {
    cfg.validate()?;
    let n = cfg.num_points;
    let t = linspace(cfg.t_start, cfg.t_end, n)?;
    let mut rng = Rng64::new(seed);

    let mut y = Vec::with_capacity(n);
    for ti in &t {
        y.push(ti.sin() + rng.normal(0.0, cfg.noise_level)?);
    }

    let mut centers = Vec::with_capacity(cfg.num_obstacles);
    let mut multipliers = Vec::with_capacity(cfg.num_obstacles);
    let half = cfg.obstacle_half_width;
    for _ in 0..cfg.num_obstacles {
        let center = rng.index(n)?;
        let m = rng.uniform(-1.0, 1.0)?;
        let lo = center.saturating_sub(half);
        let hi = (center + half).min(n);
        for value in &mut y[lo..hi] {
            *value *= m;
        }
        centers.push(center);
        multipliers.push(m);
    }

    Ok(Trajectory {
        t,
        y,
        obstacle_centers: centers,
        obstacle_multipliers: multipliers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn linspace_endpoints_only() {
        assert_eq!(linspace(0.0, 1.0, 2).unwrap(), vec![0.0, 1.0]);
    }

    #[test]
    fn linspace_default_grid() {
        let t = linspace(0.0, 4.0 * PI, 1000).unwrap();
        assert_eq!(t.len(), 1000);
        assert_eq!(t[0], 0.0);
        assert_eq!(t[999], 4.0 * PI);
        let step = 4.0 * PI / 999.0;
        for (i, w) in t.windows(2).enumerate() {
            assert!((w[1] - w[0] - step).abs() < 1e-12, "step at {i}");
        }
    }

    #[test]
    fn linspace_integer_grid() {
        let t = linspace(0.0, 10.0, 11).unwrap();
        for (i, v) in t.iter().enumerate() {
            assert!((v - i as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn linspace_rejects_bad_args() {
        assert!(linspace(0.0, 1.0, 1).is_err());
        assert!(linspace(1.0, 1.0, 5).is_err());
        assert!(linspace(2.0, 1.0, 5).is_err());
    }

    #[test]
    fn unperturbed_path_is_exact_sine() {
        let cfg = TrajectoryConfig {
            noise_level: 0.0,
            num_obstacles: 0,
            ..TrajectoryConfig::default()
        };
        let traj = generate_dynamic_trajectory(&cfg, 123).unwrap();
        assert_eq!(traj.y[0], 0.0);
        let worst = traj
            .t
            .iter()
            .zip(&traj.y)
            .map(|(t, y)| (y - t.sin()).abs())
            .fold(0.0_f64, f64::max);
        assert_eq!(worst, 0.0);
        // Maximum lands on the samples nearest t = pi/2.
        let max = traj.y.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        assert!((max - 1.0).abs() < 1e-4);
    }

    #[test]
    fn default_config_shapes() {
        let traj = generate_dynamic_trajectory(&TrajectoryConfig::default(), 7).unwrap();
        assert_eq!(traj.len(), 1000);
        assert_eq!(traj.obstacle_centers.len(), 5);
        assert_eq!(traj.obstacle_multipliers.len(), 5);
        assert!(traj.obstacle_multipliers.iter().all(|m| (-1.0..1.0).contains(m)));
        assert_eq!(traj.t[0], 0.0);
        assert_eq!(traj.t[999], 4.0 * PI);
    }

    #[test]
    fn single_obstacle_window_replayed_from_seed() {
        let cfg = TrajectoryConfig {
            noise_level: 0.0,
            num_obstacles: 1,
            ..TrajectoryConfig::default()
        };
        let seed = 2024;
        let traj = generate_dynamic_trajectory(&cfg, seed).unwrap();

        // Replay the documented draw order with raw generator calls.
        let n = cfg.num_points;
        let mut rng = Rng64::new(seed);
        for _ in 0..n {
            rng.normal(0.0, 0.0).unwrap();
        }
        let center = rng.index(n).unwrap();
        let mult = rng.uniform(-1.0, 1.0).unwrap();
        assert_eq!(traj.obstacle_centers, vec![center]);
        assert_eq!(traj.obstacle_multipliers, vec![mult]);

        let lo = center.saturating_sub(50);
        let hi = (center + 50).min(n);
        for i in 0..n {
            let base = traj.t[i].sin();
            let want = if (lo..hi).contains(&i) { mult * base } else { base };
            assert_eq!(traj.y[i], want, "sample {i}");
        }
    }

    #[test]
    fn out_of_window_noise_has_configured_std() {
        let cfg = TrajectoryConfig {
            num_points: 12_000,
            num_obstacles: 3,
            noise_level: 0.1,
            t_start: 0.0,
            t_end: 40.0 * PI,
            obstacle_half_width: 50,
        };
        let traj = generate_dynamic_trajectory(&cfg, 5).unwrap();
        let mut in_window = vec![false; cfg.num_points];
        for &c in &traj.obstacle_centers {
            let lo = c.saturating_sub(50);
            let hi = (c + 50).min(cfg.num_points);
            for flag in &mut in_window[lo..hi] {
                *flag = true;
            }
        }
        let residuals: Vec<f64> = (0..cfg.num_points)
            .filter(|&i| !in_window[i])
            .map(|i| traj.y[i] - traj.t[i].sin())
            .collect();
        assert!(residuals.len() >= 10_000);
        let std = crate::numerics::population_std(&residuals);
        assert!(
            (std - cfg.noise_level).abs() < 0.05 * cfg.noise_level,
            "std = {std}"
        );
    }

    #[test]
    fn in_window_ratio_equals_multiplier() {
        let cfg = TrajectoryConfig {
            noise_level: 0.0,
            num_obstacles: 1,
            ..TrajectoryConfig::default()
        };
        let traj = generate_dynamic_trajectory(&cfg, 31).unwrap();
        let c = traj.obstacle_centers[0];
        let m = traj.obstacle_multipliers[0];
        let lo = c.saturating_sub(50);
        let hi = (c + 50).min(traj.len());
        for i in lo..hi {
            let base = traj.t[i].sin();
            if base.abs() > 1e-6 {
                assert!((traj.y[i] / base - m).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn same_seed_same_trajectory() {
        let cfg = TrajectoryConfig::default();
        let a = generate_dynamic_trajectory(&cfg, 99).unwrap();
        let b = generate_dynamic_trajectory(&cfg, 99).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
