//! Generate a perturbed synthetic trajectory and write it as CSV + SVG.
//!
//! ```bash
//! cargo run --example generate_trajectory
//! ```

use prompseg::csv::write_trajectory_csv;
use prompseg::svg::{line_plot, Series, PALETTE};
use prompseg::trajgen::{generate_dynamic_trajectory, TrajectoryConfig};

fn main() -> prompseg::Result<()> {
    let cfg = TrajectoryConfig::default();
    let seed = 7;
    let traj = generate_dynamic_trajectory(&cfg, seed)?;

    println!(
        "generated {} samples over t in [{:.3}, {:.3}]",
        traj.len(),
        traj.t[0],
        traj.t[traj.len() - 1]
    );
    for (c, m) in traj.obstacle_centers.iter().zip(&traj.obstacle_multipliers) {
        println!("  obstacle at sample {c:4}  multiplier {m:+.4}");
    }

    let out = std::path::Path::new("example-output");
    std::fs::create_dir_all(out)?;
    write_trajectory_csv(&out.join("trajectory.csv"), &traj)?;

    let shaded: Vec<(f64, f64)> = traj
        .obstacle_centers
        .iter()
        .map(|&c| {
            let lo = c.saturating_sub(cfg.obstacle_half_width);
            let hi = (c + cfg.obstacle_half_width).min(traj.len() - 1);
            (traj.t[lo], traj.t[hi])
        })
        .collect();
    let svg = line_plot(
        &format!("dynamic trajectory (seed {seed})"),
        &[Series { label: "y", color: PALETTE[0], x: &traj.t, y: &traj.y }],
        &shaded,
        &[],
    );
    std::fs::write(out.join("trajectory.svg"), svg)?;
    println!("wrote example-output/trajectory.csv and trajectory.svg");
    Ok(())
}
