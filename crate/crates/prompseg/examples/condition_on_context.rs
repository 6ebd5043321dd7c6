//! Condition movement-primitive weights on a context variable with a
//! Gaussian process and predict the trajectory for an unseen context.
//!
//! Each training run carries one obstacle; its multiplier is the run's
//! context. The GP interpolates weight vectors between observed contexts
//! and reports predictive uncertainty.
//!
//! ```bash
//! cargo run --example condition_on_context
//! ```

use prompseg::basis::{gaussian_basis_matrix, BasisConfig};
use prompseg::gp::{conditional_trajectory, gp_fit, gp_predict, GpConfig};
use prompseg::numerics::Matrix;
use prompseg::promp::learn_weights;
use prompseg::trajgen::{generate_dynamic_trajectory, TrajectoryConfig};

fn main() -> prompseg::Result<()> {
    let traj_cfg = TrajectoryConfig {
        num_obstacles: 1,
        ..TrajectoryConfig::default()
    };
    let basis = BasisConfig::for_span(traj_cfg.t_start, traj_cfg.t_end, 10)?;

    let mut contexts = Vec::new();
    let mut weight_rows = Vec::new();
    let mut t_grid = None;
    for seed in [1u64, 2, 3, 4] {
        let traj = generate_dynamic_trajectory(&traj_cfg, seed)?;
        let phi = gaussian_basis_matrix(&traj.t, &basis)?;
        let w = learn_weights(&phi, &traj.y)?;
        let c = traj.obstacle_multipliers[0];
        println!("seed {seed}: context (obstacle multiplier) = {c:+.4}");
        contexts.push(vec![c]);
        weight_rows.push(w);
        t_grid.get_or_insert(traj.t);
    }
    let t = t_grid.unwrap();

    let gp_cfg = GpConfig::new(0.5, 1.0, 1e-6);
    let model = gp_fit(
        &Matrix::from_rows(&contexts)?,
        &Matrix::from_rows(&weight_rows)?,
        &gp_cfg,
    )?;

    for c_star in [0.0, 0.5, 5.0] {
        let (_, variance) = gp_predict(&model, &[c_star])?;
        let (mean, std) = conditional_trajectory(&model, &[c_star], &t, &basis)?;
        let peak_band = std.iter().cloned().fold(0.0_f64, f64::max);
        let mid = mean[mean.len() / 2];
        println!(
            "context {c_star:+.2}: weight variance {variance:.4e}, mid-path {mid:+.4}, max band {peak_band:.4}"
        );
    }
    println!("(a context far outside the training range reverts to the mean weights)");
    Ok(())
}
