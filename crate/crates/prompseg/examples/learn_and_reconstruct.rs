//! The core experiment: learn basis weights by pseudoinverse, reconstruct,
//! and compare the global fit against segment-wise fits.
//!
//! ```bash
//! cargo run --example learn_and_reconstruct
//! ```

use prompseg::csv::to_csv;
use prompseg::pipeline::{run_pipeline, PipelineConfig};

fn main() -> prompseg::Result<()> {
    let cfg = PipelineConfig::default();
    let outcome = run_pipeline(&cfg, 7).map_err(|e| {
        eprintln!("pipeline failed: {e}");
        e
    })?;

    let report = &outcome.report;
    println!("seed {}: {} significant peaks", report.seed, report.num_peaks);
    println!("global weights ({}):", outcome.promp_global.weights.len());
    for (i, w) in outcome.promp_global.weights.iter().enumerate() {
        println!("  w[{i}] = {w:+.4}");
    }
    println!("segments learned: {}", outcome.promp_segmented.segments.len());
    println!("MSE  global:    {:.6}", report.mse_global);
    println!("MSE  segmented: {:.6}", report.mse_segmented);

    let out = std::path::Path::new("example-output");
    std::fs::create_dir_all(out)?;
    let csv = to_csv(
        &["t", "y_original", "y_global", "y_segmented"],
        &[
            &outcome.trajectory.t,
            &outcome.trajectory.y,
            &outcome.recon_global,
            &outcome.recon_segmented,
        ],
    );
    std::fs::write(out.join("reconstruction.csv"), csv)?;
    println!("wrote example-output/reconstruction.csv");
    Ok(())
}
