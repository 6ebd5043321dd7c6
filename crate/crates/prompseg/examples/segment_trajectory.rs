//! Segment a noisy trajectory by significant peaks and cluster the peak
//! amplitudes.
//!
//! ```bash
//! cargo run --example segment_trajectory
//! ```

use prompseg::segment::segment_trajectory;
use prompseg::trajgen::{generate_dynamic_trajectory, TrajectoryConfig};

fn main() -> prompseg::Result<()> {
    let traj = generate_dynamic_trajectory(&TrajectoryConfig::default(), 7)?;
    let seg = segment_trajectory(&traj.y, 3, 7)?;

    println!("{} significant peaks", seg.peak_indices.len());
    let mut counts = [0usize; 3];
    for &l in &seg.peak_labels {
        counts[l] += 1;
    }
    for (label, count) in counts.iter().enumerate() {
        println!("  cluster {label}: {count} peaks");
    }

    println!("{} intervals; first five:", seg.intervals.len());
    for (start, end) in seg.intervals.iter().take(5) {
        println!("  [{start:4}, {end:4})  {} samples", end - start);
    }
    Ok(())
}
