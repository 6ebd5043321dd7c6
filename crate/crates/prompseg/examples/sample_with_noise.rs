//! Draw noisy trajectories from a learned primitive: `tau = phi w + eps`.
//! Averaging draws recovers the mean path.
//!
//! ```bash
//! cargo run --example sample_with_noise
//! ```

use prompseg::basis::{gaussian_basis_matrix, BasisConfig};
use prompseg::numerics::Rng64;
use prompseg::promp::{generate, learn_weights, mse};
use prompseg::trajgen::{generate_dynamic_trajectory, TrajectoryConfig};

fn main() -> prompseg::Result<()> {
    let cfg = TrajectoryConfig {
        noise_level: 0.0,
        num_obstacles: 0,
        ..TrajectoryConfig::default()
    };
    let traj = generate_dynamic_trajectory(&cfg, 1)?;
    let basis = BasisConfig::for_span(cfg.t_start, cfg.t_end, 10)?;
    let phi = gaussian_basis_matrix(&traj.t, &basis)?;
    let w = learn_weights(&phi, &traj.y)?;
    let mean_path = phi.matvec(&w);

    let sigma = 0.1;
    let draws = 200;
    let mut acc = vec![0.0; traj.len()];
    for seed in 0..draws {
        let mut rng = Rng64::new(seed);
        let tau = generate(&phi, &w, sigma, &mut rng)?;
        for (a, v) in acc.iter_mut().zip(tau) {
            *a += v;
        }
    }
    let averaged: Vec<f64> = acc.iter().map(|a| a / draws as f64).collect();

    println!("noise std {sigma}, {draws} draws");
    println!("MSE(single draw, mean path)   ~ {:.5}", {
        let mut rng = Rng64::new(0);
        mse(&generate(&phi, &w, sigma, &mut rng)?, &mean_path)?
    });
    println!(
        "MSE(averaged draws, mean path) = {:.6}",
        mse(&averaged, &mean_path)?
    );
    println!("averaging shrinks the noise floor by ~1/draws");
    Ok(())
}
