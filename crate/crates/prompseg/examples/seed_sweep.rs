//! Reconstruction-error distribution over many seeds: the single-run MSE is
//! seed-dependent, so judge fidelity by the spread.
//!
//! ```bash
//! cargo run --example seed_sweep
//! ```

use prompseg::pipeline::{run_seed_sweep, PipelineConfig};

fn main() -> prompseg::Result<()> {
    let cfg = PipelineConfig::default();
    let seeds: Vec<u64> = (1..=50).collect();
    let summary = run_seed_sweep(&cfg, &seeds)?;

    println!("{} runs with stock defaults", summary.runs.len());
    println!(
        "global MSE    median {:.4}  IQR {:.4}",
        summary.median_mse_global, summary.iqr_mse_global
    );
    println!(
        "segmented MSE median {:.4}  IQR {:.4}",
        summary.median_mse_segmented, summary.iqr_mse_segmented
    );

    let mut best = &summary.runs[0];
    let mut worst = &summary.runs[0];
    for run in &summary.runs {
        if run.mse_global < best.mse_global {
            best = run;
        }
        if run.mse_global > worst.mse_global {
            worst = run;
        }
    }
    println!(
        "best seed {} (MSE {:.4}), worst seed {} (MSE {:.4})",
        best.seed, best.mse_global, worst.seed, worst.mse_global
    );
    Ok(())
}
