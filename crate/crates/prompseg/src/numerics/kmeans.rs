//! Lloyd's algorithm with seeded, distance-weighted (k-means++ style)
//! initialization. Fully deterministic for a given seed.

use crate::error::{Error, Result};
use crate::numerics::matrix::Matrix;
use crate::numerics::rng::Rng64;

pub const DEFAULT_MAX_ITER: usize = 300;

/// Clustering outcome. `inertia_per_iter` records the objective after each
/// Lloyd iteration (it must be non-increasing).
#[derive(Debug, Clone)]
pub struct KmeansResult {
    pub labels: Vec<usize>,
    pub centers: Matrix,
    pub inertia: f64,
    pub inertia_per_iter: Vec<f64>,
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Cluster the rows of `points` into `k` groups.
///
/// Assignment ties break toward the lowest cluster index. A cluster that
/// empties is reseeded to the point currently farthest from its own center,
/// which keeps all k clusters non-empty. Terminates at an assignment
/// fixpoint or after `max_iter` iterations.
pub fn kmeans(points: &Matrix, k: usize, seed: u64, max_iter: usize) -> Result<KmeansResult> {
    let n = points.rows();
    let d = points.cols();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "k must satisfy 1 <= k <= n, got k={k} with n={n}"
        )));
    }
    if max_iter == 0 {
        return Err(Error::InvalidParameter("max_iter must be >= 1".into()));
    }

    let mut rng = Rng64::new(seed);
    let mut centers = plus_plus_init(points, k, &mut rng)?;
    let mut labels = vec![usize::MAX; n];
    let mut inertia_per_iter = Vec::new();

    for _ in 0..max_iter {
        // Assignment, lowest index wins ties.
        let mut new_labels = vec![0usize; n];
        for i in 0..n {
            let mut best = 0usize;
            let mut best_d = sq_dist(points.row(i), centers.row(0));
            for c in 1..k {
                let dist = sq_dist(points.row(i), centers.row(c));
                if dist < best_d {
                    best_d = dist;
                    best = c;
                }
            }
            new_labels[i] = best;
        }

        // Reseed empty clusters from the globally farthest point.
        let mut counts = vec![0usize; k];
        for &l in &new_labels {
            counts[l] += 1;
        }
        let mut pinned = vec![false; n];
        for c in 0..k {
            if counts[c] > 0 {
                continue;
            }
            let mut far_idx = None;
            let mut far_d = -1.0;
            for i in 0..n {
                if pinned[i] || counts[new_labels[i]] <= 1 {
                    continue;
                }
                let dist = sq_dist(points.row(i), centers.row(new_labels[i]));
                if dist > far_d {
                    far_d = dist;
                    far_idx = Some(i);
                }
            }
            let i = far_idx.expect("k <= n guarantees a reseed candidate");
            counts[new_labels[i]] -= 1;
            new_labels[i] = c;
            counts[c] = 1;
            pinned[i] = true;
            for j in 0..d {
                centers[(c, j)] = points[(i, j)];
            }
        }

        let converged = new_labels == labels;
        labels = new_labels;

        // Update step: centers move to their cluster means.
        let mut sums = Matrix::zeros(k, d);
        for i in 0..n {
            let c = labels[i];
            for j in 0..d {
                sums[(c, j)] += points[(i, j)];
            }
        }
        for c in 0..k {
            for j in 0..d {
                centers[(c, j)] = sums[(c, j)] / counts[c] as f64;
            }
        }

        let inertia: f64 = (0..n)
            .map(|i| sq_dist(points.row(i), centers.row(labels[i])))
            .sum();
        inertia_per_iter.push(inertia);

        if converged {
            break;
        }
    }

    let inertia = *inertia_per_iter.last().expect("max_iter >= 1");
    Ok(KmeansResult {
        labels,
        centers,
        inertia,
        inertia_per_iter,
    })
}

/// Distance-weighted center initialization driven by the caller's seed.
fn plus_plus_init(points: &Matrix, k: usize, rng: &mut Rng64) -> Result<Matrix> {
    let n = points.rows();
    let d = points.cols();
    let mut centers = Matrix::zeros(k, d);
    let first = rng.index(n)?;
    for j in 0..d {
        centers[(0, j)] = points[(first, j)];
    }
    let mut min_d: Vec<f64> = (0..n)
        .map(|i| sq_dist(points.row(i), centers.row(0)))
        .collect();
    for c in 1..k {
        let total: f64 = min_d.iter().sum();
        let chosen = if total > 0.0 {
            let r = rng.uniform(0.0, total)?;
            let mut cum = 0.0;
            let mut pick = n - 1;
            for (i, &w) in min_d.iter().enumerate() {
                cum += w;
                if r < cum {
                    pick = i;
                    break;
                }
            }
            pick
        } else {
            // All remaining distances zero (duplicate data): any point works.
            rng.index(n)?
        };
        for j in 0..d {
            centers[(c, j)] = points[(chosen, j)];
        }
        for i in 0..n {
            let dist = sq_dist(points.row(i), centers.row(c));
            if dist < min_d[i] {
                min_d[i] = dist;
            }
        }
    }
    Ok(centers)
}
