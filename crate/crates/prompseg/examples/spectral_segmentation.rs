//! Spectral clustering of delay-embedded trajectory windows: the
//! alternative segmenter for when peak structure is weak.
//!
//! ```bash
//! cargo run --release --example spectral_segmentation
//! ```

use prompseg::segment::{delay_embed, spectral_clusters, SpectralConfig};
use prompseg::trajgen::{generate_dynamic_trajectory, TrajectoryConfig};

fn main() -> prompseg::Result<()> {
    // A shorter grid keeps the n x n eigenproblem quick.
    let cfg = TrajectoryConfig {
        num_points: 300,
        ..TrajectoryConfig::default()
    };
    let traj = generate_dynamic_trajectory(&cfg, 11)?;

    let window = 10;
    let features = delay_embed(&traj.y, window)?;
    println!(
        "embedded {} windows of {} samples each",
        features.rows(),
        features.cols()
    );

    let spectral = SpectralConfig {
        sigma: None, // median pairwise distance
        n_clusters: 3,
        embed_window: window,
    };
    let labels = spectral_clusters(&features, &spectral, 11)?;

    let mut counts = vec![0usize; spectral.n_clusters];
    for &l in &labels {
        counts[l] += 1;
    }
    for (label, count) in counts.iter().enumerate() {
        println!("cluster {label}: {count} windows");
    }

    // Label transitions mark candidate phase boundaries.
    let mut boundaries = Vec::new();
    for (i, w) in labels.windows(2).enumerate() {
        if w[0] != w[1] {
            boundaries.push(i + 1);
        }
    }
    println!("{} label transitions: {boundaries:?}", boundaries.len());
    Ok(())
}
