//! Probabilistic movement primitives: weight learning by pseudoinverse,
//! trajectory generation, segment-wise learning, online adaptation, and the
//! reconstruction error metric.

use serde::{Deserialize, Serialize};

use crate::basis::{basis_matrix_for_span, BasisConfig};
use crate::error::{Error, Result};
use crate::numerics::{cholesky, cholesky_solve, pseudoinverse, Matrix, Rng64};
use crate::segment::Segmentation;
use crate::trajgen::Trajectory;

/// Default forgetting factor for [`adapt_weights`].
pub const DEFAULT_DECAY: f64 = 0.98;
/// Default anchor regularization for [`adapt_weights`].
pub const DEFAULT_RIDGE: f64 = 1e-6;

/// A learned movement primitive: weight vector over a Gaussian basis built
/// for a specific time span, plus the sampling noise scale.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProMP {
    pub weights: Vec<f64>,
    #[serde(flatten)]
    pub basis: BasisConfig,
    pub t_start: f64,
    pub t_end: f64,
    pub noise_std: f64,
}

impl ProMP {
    /// Design matrix of this primitive's basis over an arbitrary grid.
    pub fn basis_matrix(&self, t: &[f64]) -> Result<Matrix> {
        basis_matrix_for_span(t, self.t_start, self.t_end, &self.basis)
    }
}

/// Per-interval primitives covering a segmented trajectory.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SegmentedProMP {
    pub segments: Vec<SegmentModel>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SegmentModel {
    pub start: usize,
    pub end: usize,
    pub promp: ProMP,
}

/// Minimum-norm least-squares weights: `w = pinv(phi) * y`.
pub fn learn_weights(phi: &Matrix, y: &[f64]) -> Result<Vec<f64>> {
    if phi.rows() != y.len() {
        return Err(Error::InvalidInput(format!(
            "basis matrix has {} rows but the signal has {} samples",
            phi.rows(),
            y.len()
        )));
    }
    if y.is_empty() {
        return Err(Error::InvalidInput("cannot learn from an empty signal".into()));
    }
    let pinv = pseudoinverse(phi, None)?;
    Ok(pinv.matvec(y))
}

/// Sample `tau = phi * w + eps` with isotropic per-sample noise.
/// `sigma_tau = 0` is deterministic.
pub fn generate(phi: &Matrix, w: &[f64], sigma_tau: f64, rng: &mut Rng64) -> Result<Vec<f64>> {
    if sigma_tau < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "sigma_tau must be >= 0, got {sigma_tau}"
        )));
    }
    let mean = phi.matvec(w);
    mean.into_iter().map(|m| rng.normal(m, sigma_tau)).collect()
}

/// Noise-free reconstruction of a primitive on a grid: rebuilds the basis
/// over the stored training span and returns `phi * w`.
pub fn reconstruct(promp: &ProMP, t: &[f64]) -> Result<Vec<f64>> {
    let phi = promp.basis_matrix(t)?;
    Ok(phi.matvec(&promp.weights))
}

/// Like [`reconstruct`], additionally flagging whether any grid point lies
/// outside the training span (extrapolation is permitted but worth knowing
/// about, since Gaussian bases decay fast past their centers).
pub fn reconstruct_with_flag(promp: &ProMP, t: &[f64]) -> Result<(Vec<f64>, bool)> {
    let extrapolated = t
        .iter()
        .any(|&x| x < promp.t_start || x > promp.t_end);
    Ok((reconstruct(promp, t)?, extrapolated))
}

/// Mean squared error between two equal-length signals.
pub fn mse(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || a.len() != b.len() {
        return Err(Error::InvalidInput(format!(
            "mse needs equal non-empty lengths, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let sum: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    Ok(sum / a.len() as f64)
}

/// Learn one primitive per segmentation interval.
///
/// Degradation rules keep any peak pattern usable: an interval shorter than
/// two samples merges into its predecessor (or successor when it is first),
/// and an interval shorter than `basis_k` gets its basis count reduced to
/// the interval length (never below 2). Segment bases use
/// `width = segment span / K` so short segments keep proportional smoothness.
pub fn learn_segmented(traj: &Trajectory, seg: &Segmentation, basis_k: usize) -> Result<SegmentedProMP> {
    let n = traj.len();
    let mut intervals = seg.intervals.clone();
    if intervals.is_empty() {
        intervals.push((0, n));
    }
    if intervals.first().map(|&(s, _)| s) != Some(0)
        || intervals.last().map(|&(_, e)| e) != Some(n)
        || intervals.windows(2).any(|w| w[0].1 != w[1].0)
    {
        return Err(Error::InvalidInput(
            "segmentation intervals must partition the trajectory".into(),
        ));
    }

    // Merge too-short intervals.
    let mut merged: Vec<(usize, usize)> = Vec::with_capacity(intervals.len());
    for (start, end) in intervals {
        if end - start < 2 {
            if let Some(last) = merged.last_mut() {
                last.1 = end;
            } else {
                merged.push((start, end));
            }
        } else if let Some(last) = merged.last_mut() {
            if last.1 - last.0 < 2 {
                // A short head interval absorbs into its successor.
                last.1 = end;
            } else {
                merged.push((start, end));
            }
        } else {
            merged.push((start, end));
        }
    }
    if merged.len() > 1 {
        let last = merged[merged.len() - 1];
        if last.1 - last.0 < 2 {
            merged.pop();
            merged.last_mut().expect("nonempty").1 = last.1;
        }
    }

    let mut segments = Vec::with_capacity(merged.len());
    for (start, end) in merged {
        let t_slice = &traj.t[start..end];
        let y_slice = &traj.y[start..end];
        let k = basis_k.min(end - start).max(2);
        let t_start = t_slice[0];
        let t_end = t_slice[t_slice.len() - 1];
        let cfg = BasisConfig {
            num_bases: k,
            width: (t_end - t_start) / k as f64,
        };
        let phi = basis_matrix_for_span(t_slice, t_start, t_end, &cfg)?;
        let weights = learn_weights(&phi, y_slice)?;
        segments.push(SegmentModel {
            start,
            end,
            promp: ProMP {
                weights,
                basis: cfg,
                t_start,
                t_end,
                noise_std: 0.0,
            },
        });
    }
    Ok(SegmentedProMP { segments })
}

/// Reconstruct a segmented model on its training grid (the per-segment
/// spans must line up with the supplied `t`).
pub fn reconstruct_segmented(sp: &SegmentedProMP, t: &[f64]) -> Result<Vec<f64>> {
    let n = sp.segments.last().map_or(0, |s| s.end);
    if t.len() != n {
        return Err(Error::InvalidInput(format!(
            "grid length {} does not match the training length {n}",
            t.len()
        )));
    }
    let mut out = Vec::with_capacity(n);
    for seg in &sp.segments {
        let t_slice = &t[seg.start..seg.end];
        let span_tol = 1e-9 * (1.0 + seg.promp.t_end.abs().max(seg.promp.t_start.abs()));
        if (t_slice[0] - seg.promp.t_start).abs() > span_tol
            || (t_slice[t_slice.len() - 1] - seg.promp.t_end).abs() > span_tol
        {
            return Err(Error::InvalidInput(
                "grid does not match the segment's training span".into(),
            ));
        }
        out.extend(reconstruct(&seg.promp, t_slice)?);
    }
    Ok(out)
}

/// Online weight update: exponentially decay-weighted ridge refit anchored
/// at the previous weights, solved in closed form.
///
/// Minimizes `sum_i decay^(m-1-i) (y_i - phi_i w)^2 + ridge ||w - w_old||^2`
/// over the observation batch, so the newest samples dominate and the
/// anchor keeps unexcited basis directions in place.
pub fn adapt_weights(
    promp: &ProMP,
    t_obs: &[f64],
    y_obs: &[f64],
    decay: f64,
    ridge: f64,
) -> Result<ProMP> {
    if !(decay > 0.0 && decay <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "decay must lie in (0, 1], got {decay}"
        )));
    }
    if ridge < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "ridge must be >= 0, got {ridge}"
        )));
    }
    if t_obs.is_empty() || t_obs.len() != y_obs.len() {
        return Err(Error::InvalidInput(format!(
            "observations need equal non-empty lengths, got {} and {}",
            t_obs.len(),
            y_obs.len()
        )));
    }

    let phi = promp.basis_matrix(t_obs)?;
    let m = t_obs.len();
    let k = promp.basis.num_bases;

    // Weighted normal equations: (phi^T D phi + ridge I) w = phi^T D y + ridge w_old.
    let mut lhs = Matrix::zeros(k, k);
    let mut rhs = vec![0.0; k];
    for i in 0..m {
        let weight = decay.powi((m - 1 - i) as i32);
        let row = phi.row(i);
        for a in 0..k {
            let wa = weight * row[a];
            rhs[a] += wa * y_obs[i];
            for b in a..k {
                lhs[(a, b)] += wa * row[b];
            }
        }
    }
    for a in 0..k {
        for b in 0..a {
            lhs[(a, b)] = lhs[(b, a)];
        }
        lhs[(a, a)] += ridge;
        rhs[a] += ridge * promp.weights[a];
    }

    let factor = cholesky(&lhs).ok_or_else(|| {
        Error::NumericalFailure(
            "adaptation system is singular; use ridge > 0 to regularize".into(),
        )
    })?;
    let weights = cholesky_solve(&factor, &rhs);

    Ok(ProMP {
        weights,
        basis: promp.basis,
        t_start: promp.t_start,
        t_end: promp.t_end,
        noise_std: promp.noise_std,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::gaussian_basis_matrix;
    use crate::segment::segment_trajectory;
    use crate::trajgen::{generate_dynamic_trajectory, linspace, TrajectoryConfig};
    use std::f64::consts::PI;

    /// Independent least-squares oracle: solve the normal equations with
    /// plain Gaussian elimination (partial pivoting).
    pub(crate) fn normal_equations_fit(phi: &Matrix, y: &[f64]) -> Vec<f64> {
        let pt = phi.transpose();
        let a = pt.matmul(phi);
        let b = pt.matvec(y);
        solve_dense(&a, &b)
    }

    pub(crate) fn solve_dense(a: &Matrix, b: &[f64]) -> Vec<f64> {
        let n = a.rows();
        let mut aug = Matrix::from_fn(n, n + 1, |i, j| if j < n { a[(i, j)] } else { b[i] });
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| aug[(x, col)].abs().partial_cmp(&aug[(y, col)].abs()).unwrap())
                .unwrap();
            if pivot != col {
                for j in 0..=n {
                    let tmp = aug[(col, j)];
                    aug[(col, j)] = aug[(pivot, j)];
                    aug[(pivot, j)] = tmp;
                }
            }
            let p = aug[(col, col)];
            assert!(p.abs() > 1e-14, "singular system in test oracle");
            for row in (col + 1)..n {
                let f = aug[(row, col)] / p;
                for j in col..=n {
                    let delta = f * aug[(col, j)];
                    aug[(row, j)] -= delta;
                }
            }
        }
        let mut x = vec![0.0; n];
        for row in (0..n).rev() {
            let mut s = aug[(row, n)];
            for j in (row + 1)..n {
                s -= aug[(row, j)] * x[j];
            }
            x[row] = s / aug[(row, row)];
        }
        x
    }

    fn sine_setup(n: usize, k: usize) -> (Vec<f64>, Vec<f64>, Matrix, BasisConfig) {
        let t = linspace(0.0, 4.0 * PI, n).unwrap();
        let y: Vec<f64> = t.iter().map(|x| x.sin()).collect();
        let cfg = BasisConfig::for_span(0.0, 4.0 * PI, k).unwrap();
        let phi = gaussian_basis_matrix(&t, &cfg).unwrap();
        (t, y, phi, cfg)
    }

    #[test]
    fn recovers_true_weights_from_consistent_system() {
        let (_, _, phi, _) = sine_setup(400, 8);
        let w_true: Vec<f64> = (0..8).map(|i| (i as f64 - 3.5) * 0.7).collect();
        let y = phi.matvec(&w_true);
        let w = learn_weights(&phi, &y).unwrap();
        for (got, want) in w.iter().zip(&w_true) {
            assert!((got - want).abs() < 1e-8, "{got} vs {want}");
        }
    }

    #[test]
    fn hand_checked_consistent_system() {
        let phi = Matrix::from_vec(3, 2, vec![1.0, 0.0, 0.0, 1.0, 1.0, 1.0]).unwrap();
        let w = learn_weights(&phi, &[1.0, 2.0, 3.0]).unwrap();
        assert!((w[0] - 1.0).abs() < 1e-12);
        assert!((w[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn ones_column_learns_the_mean() {
        let phi = Matrix::from_vec(5, 1, vec![1.0; 5]).unwrap();
        let y = [2.0, 4.0, 6.0, 8.0, 10.0];
        let w = learn_weights(&phi, &y).unwrap();
        assert!((w[0] - 6.0).abs() < 1e-12);
    }

    #[test]
    fn shape_mismatch_rejected() {
        let phi = Matrix::zeros(3, 2);
        assert!(matches!(
            learn_weights(&phi, &[1.0, 2.0]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn min_norm_among_equal_residual_solutions() {
        // Rank-1 basis: all solutions w + alpha * null_dir share the residual;
        // the learned one must have the smallest norm.
        let phi = Matrix::from_vec(3, 2, vec![1.0, 2.0, 2.0, 4.0, 3.0, 6.0]).unwrap();
        let y = [1.0, 0.5, 2.0];
        let w = learn_weights(&phi, &y).unwrap();
        let residual = |w: &[f64]| -> f64 {
            let pred = phi.matvec(w);
            pred.iter().zip(&y).map(|(p, t)| (p - t) * (p - t)).sum()
        };
        let base = residual(&w);
        let norm = |w: &[f64]| w.iter().map(|x| x * x).sum::<f64>();
        let null_dir = [2.0, -1.0];
        for step in -10..=10 {
            let alpha = step as f64 * 0.37;
            let other: Vec<f64> = w
                .iter()
                .zip(null_dir)
                .map(|(wi, ni)| wi + alpha * ni)
                .collect();
            assert!((residual(&other) - base).abs() < 1e-9);
            assert!(norm(&w) <= norm(&other) + 1e-12);
        }
    }

    #[test]
    fn residual_orthogonal_to_basis_columns() {
        let (_, y, phi, _) = sine_setup(500, 10);
        let w = learn_weights(&phi, &y).unwrap();
        let pred = phi.matvec(&w);
        let resid: Vec<f64> = pred.iter().zip(&y).map(|(p, t)| p - t).collect();
        let grad = phi.transpose().matvec(&resid);
        for g in grad {
            assert!(g.abs() < 1e-8, "gradient component {g}");
        }
    }

    #[test]
    fn generate_zero_and_noiseless_cases() {
        let (_, _, phi, _) = sine_setup(100, 5);
        let mut rng = Rng64::new(0);
        let zeros = generate(&phi, &[0.0; 5], 0.0, &mut rng).unwrap();
        assert!(zeros.iter().all(|&v| v == 0.0));

        let w = [1.0, -0.5, 0.25, 0.0, 2.0];
        let tau = generate(&phi, &w, 0.0, &mut rng).unwrap();
        assert_eq!(tau, phi.matvec(&w));

        assert!(generate(&phi, &w, -0.1, &mut rng).is_err());
    }

    #[test]
    fn generated_noise_averages_out() {
        let (_, _, phi, _) = sine_setup(200, 5);
        let w = [0.5, 1.0, -1.0, 0.3, 0.8];
        let mean_path = phi.matvec(&w);
        let draws = 200;
        let sigma = 0.1;
        let mut acc = vec![0.0; 200];
        for seed in 0..draws {
            let mut rng = Rng64::new(seed);
            let tau = generate(&phi, &w, sigma, &mut rng).unwrap();
            for (a, v) in acc.iter_mut().zip(tau) {
                *a += v;
            }
        }
        let bound = 3.0 * sigma / (draws as f64).sqrt();
        let mut violations = 0;
        for (a, m) in acc.iter().zip(&mean_path) {
            if (a / draws as f64 - m).abs() >= bound {
                violations += 1;
            }
        }
        assert!(violations <= 2, "{violations} samples outside the CLT bound");
    }

    #[test]
    fn reconstruct_on_training_grid_is_identity() {
        let (t, y, phi, cfg) = sine_setup(1000, 10);
        let w = learn_weights(&phi, &y).unwrap();
        let promp = ProMP {
            weights: w.clone(),
            basis: cfg,
            t_start: 0.0,
            t_end: 4.0 * PI,
            noise_std: 0.0,
        };
        let recon = reconstruct(&promp, &t).unwrap();
        let direct = phi.matvec(&w);
        for (a, b) in recon.iter().zip(&direct) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn reconstruction_error_matches_least_squares_oracle() {
        let (t, y, phi, cfg) = sine_setup(1000, 10);
        let w = learn_weights(&phi, &y).unwrap();
        let promp = ProMP {
            weights: w,
            basis: cfg,
            t_start: 0.0,
            t_end: 4.0 * PI,
            noise_std: 0.0,
        };
        let recon = reconstruct(&promp, &t).unwrap();
        let err = mse(&y, &recon).unwrap();

        let w_oracle = normal_equations_fit(&phi, &y);
        let recon_oracle = phi.matvec(&w_oracle);
        let err_oracle = mse(&y, &recon_oracle).unwrap();
        assert!(
            (err - err_oracle).abs() < 1e-10,
            "mse {err} vs oracle {err_oracle}"
        );
        assert!(err_oracle > 0.0);
    }

    #[test]
    fn pointwise_reconstruction_definition() {
        let cfg = BasisConfig::for_span(0.0, 1.0, 3).unwrap();
        let centers = crate::basis::centers_for_span(0.0, 1.0, 3).unwrap();
        let promp = ProMP {
            weights: vec![0.4, -1.0, 2.0],
            basis: cfg,
            t_start: 0.0,
            t_end: 1.0,
            noise_std: 0.0,
        };
        let at = centers[1];
        let got = reconstruct(&promp, &[at]).unwrap()[0];
        let norm = 1.0 / (2.0 * PI * cfg.width).sqrt();
        let want: f64 = promp
            .weights
            .iter()
            .zip(&centers)
            .map(|(w, c)| w * norm * (-(at - c) * (at - c) / (2.0 * cfg.width)).exp())
            .sum();
        assert!((got - want).abs() < 1e-12);
    }

    #[test]
    fn extrapolation_is_flagged() {
        let cfg = BasisConfig::for_span(0.0, 1.0, 3).unwrap();
        let promp = ProMP {
            weights: vec![1.0, 1.0, 1.0],
            basis: cfg,
            t_start: 0.0,
            t_end: 1.0,
            noise_std: 0.0,
        };
        let (_, inside) = reconstruct_with_flag(&promp, &[0.2, 0.9]).unwrap();
        assert!(!inside);
        let (values, outside) = reconstruct_with_flag(&promp, &[0.5, 1.5]).unwrap();
        assert!(outside);
        assert!(values.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn mse_contract() {
        assert_eq!(mse(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(mse(&[0.0, 0.0], &[1.0, 1.0]).unwrap(), 1.0);
        assert!(mse(&[], &[]).is_err());
        assert!(mse(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn segmented_single_interval_equals_global() {
        let cfg = TrajectoryConfig {
            noise_level: 0.0,
            num_obstacles: 0,
            ..TrajectoryConfig::default()
        };
        let traj = generate_dynamic_trajectory(&cfg, 1).unwrap();
        let seg = Segmentation {
            peak_indices: vec![],
            peak_labels: vec![],
            intervals: vec![(0, traj.len())],
        };
        let sp = learn_segmented(&traj, &seg, 10).unwrap();
        assert_eq!(sp.segments.len(), 1);
        let recon_seg = reconstruct_segmented(&sp, &traj.t).unwrap();

        let basis = BasisConfig::for_span(traj.t[0], traj.t[999], 10).unwrap();
        let phi = gaussian_basis_matrix(&traj.t, &basis).unwrap();
        let w = learn_weights(&phi, &traj.y).unwrap();
        let recon_global = phi.matvec(&w);
        for (a, b) in recon_seg.iter().zip(&recon_global) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn segmented_fit_beats_global_on_split_sine() {
        let cfg = TrajectoryConfig {
            noise_level: 0.0,
            num_obstacles: 0,
            ..TrajectoryConfig::default()
        };
        let traj = generate_dynamic_trajectory(&cfg, 1).unwrap();
        let seg = Segmentation {
            peak_indices: vec![500],
            peak_labels: vec![0],
            intervals: vec![(0, 500), (500, 1000)],
        };
        let sp = learn_segmented(&traj, &seg, 10).unwrap();
        let recon_seg = reconstruct_segmented(&sp, &traj.t).unwrap();
        let err_seg = mse(&traj.y, &recon_seg).unwrap();

        let basis = BasisConfig::for_span(traj.t[0], traj.t[999], 10).unwrap();
        let phi = gaussian_basis_matrix(&traj.t, &basis).unwrap();
        let w = learn_weights(&phi, &traj.y).unwrap();
        let err_global = mse(&traj.y, &phi.matvec(&w)).unwrap();
        assert!(
            err_seg <= err_global + 1e-10,
            "segmented {err_seg} vs global {err_global}"
        );
    }

    #[test]
    fn segmented_matches_per_segment_oracle() {
        let cfg = TrajectoryConfig {
            noise_level: 0.0,
            num_obstacles: 0,
            num_points: 600,
            ..TrajectoryConfig::default()
        };
        let traj = generate_dynamic_trajectory(&cfg, 1).unwrap();
        let seg = Segmentation {
            peak_indices: vec![250],
            peak_labels: vec![0],
            intervals: vec![(0, 250), (250, 600)],
        };
        let sp = learn_segmented(&traj, &seg, 8).unwrap();
        let recon = reconstruct_segmented(&sp, &traj.t).unwrap();
        assert_eq!(recon.len(), traj.len());
        let err = mse(&traj.y, &recon).unwrap();

        let mut oracle_sq = 0.0;
        for &(s, e) in &[(0usize, 250usize), (250, 600)] {
            let t_slice = &traj.t[s..e];
            let y_slice = &traj.y[s..e];
            let k = 8;
            let b = BasisConfig {
                num_bases: k,
                width: (t_slice[t_slice.len() - 1] - t_slice[0]) / k as f64,
            };
            let phi = basis_matrix_for_span(t_slice, t_slice[0], t_slice[t_slice.len() - 1], &b).unwrap();
            let w = normal_equations_fit(&phi, y_slice);
            let pred = phi.matvec(&w);
            oracle_sq += pred
                .iter()
                .zip(y_slice)
                .map(|(p, t)| (p - t) * (p - t))
                .sum::<f64>();
        }
        let oracle_mse = oracle_sq / traj.len() as f64;
        assert!((err - oracle_mse).abs() < 1e-8, "{err} vs {oracle_mse}");
    }

    #[test]
    fn tiny_interval_merges_into_predecessor() {
        let cfg = TrajectoryConfig {
            noise_level: 0.0,
            num_obstacles: 0,
            num_points: 100,
            ..TrajectoryConfig::default()
        };
        let traj = generate_dynamic_trajectory(&cfg, 1).unwrap();
        let seg = Segmentation {
            peak_indices: vec![50, 51],
            peak_labels: vec![0, 0],
            intervals: vec![(0, 50), (50, 51), (51, 100)],
        };
        let sp = learn_segmented(&traj, &seg, 5).unwrap();
        assert_eq!(sp.segments.len(), 2);
        assert_eq!((sp.segments[0].start, sp.segments[0].end), (0, 51));
        assert_eq!((sp.segments[1].start, sp.segments[1].end), (51, 100));
    }

    #[test]
    fn segmented_grid_mismatch_rejected() {
        let cfg = TrajectoryConfig {
            noise_level: 0.0,
            num_obstacles: 0,
            num_points: 100,
            ..TrajectoryConfig::default()
        };
        let traj = generate_dynamic_trajectory(&cfg, 1).unwrap();
        let seg = Segmentation {
            peak_indices: vec![],
            peak_labels: vec![],
            intervals: vec![(0, 100)],
        };
        let sp = learn_segmented(&traj, &seg, 5).unwrap();
        assert!(reconstruct_segmented(&sp, &traj.t[..99]).is_err());
        let shifted: Vec<f64> = traj.t.iter().map(|x| x + 0.5).collect();
        assert!(reconstruct_segmented(&sp, &shifted).is_err());
    }

    #[test]
    fn adaptation_fixed_point() {
        let (t, y, phi, cfg) = sine_setup(300, 8);
        let w = learn_weights(&phi, &y).unwrap();
        let promp = ProMP {
            weights: w.clone(),
            basis: cfg,
            t_start: 0.0,
            t_end: 4.0 * PI,
            noise_std: 0.0,
        };
        // Observe exactly what the model already predicts.
        let t_obs = &t[100..140];
        let y_obs = reconstruct(&promp, t_obs).unwrap();
        for decay in [1.0, 0.9, 0.5] {
            let adapted = adapt_weights(&promp, t_obs, &y_obs, decay, 1e-6).unwrap();
            for (a, b) in adapted.weights.iter().zip(&w) {
                assert!((a - b).abs() < 1e-8, "decay {decay}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn adaptation_with_no_decay_reduces_to_batch_fit() {
        let (t, y, phi, cfg) = sine_setup(400, 8);
        let w0 = vec![0.0; 8];
        let promp = ProMP {
            weights: w0,
            basis: cfg,
            t_start: 0.0,
            t_end: 4.0 * PI,
            noise_std: 0.0,
        };
        let adapted = adapt_weights(&promp, &t, &y, 1.0, 0.0).unwrap();
        let batch = learn_weights(&phi, &y).unwrap();
        for (a, b) in adapted.weights.iter().zip(&batch) {
            assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        }
    }

    #[test]
    fn adaptation_matches_weighted_normal_equations_oracle() {
        let cfg = BasisConfig::for_span(0.0, 1.0, 2).unwrap();
        let promp = ProMP {
            weights: vec![0.3, -0.2],
            basis: cfg,
            t_start: 0.0,
            t_end: 1.0,
            noise_std: 0.0,
        };
        let t_obs = [0.1, 0.5, 0.9];
        let y_obs = [1.0, -0.5, 0.7];
        let decay = 0.5;
        let ridge = 1e-6;
        let adapted = adapt_weights(&promp, &t_obs, &y_obs, decay, ridge).unwrap();

        // Direct small-system solve.
        let phi = promp.basis_matrix(&t_obs).unwrap();
        let mut lhs = Matrix::zeros(2, 2);
        let mut rhs = vec![0.0; 2];
        for i in 0..3 {
            let wt = decay.powi((3 - 1 - i) as i32);
            for a in 0..2 {
                rhs[a] += wt * phi[(i, a)] * y_obs[i];
                for b in 0..2 {
                    lhs[(a, b)] += wt * phi[(i, a)] * phi[(i, b)];
                }
            }
        }
        for a in 0..2 {
            lhs[(a, a)] += ridge;
            rhs[a] += ridge * promp.weights[a];
        }
        let oracle = solve_dense(&lhs, &rhs);
        for (got, want) in adapted.weights.iter().zip(&oracle) {
            assert!((got - want).abs() < 1e-8, "{got} vs {want}");
        }
    }

    #[test]
    fn singular_adaptation_without_ridge_errors() {
        let cfg = BasisConfig::for_span(0.0, 1.0, 3).unwrap();
        let promp = ProMP {
            weights: vec![0.0; 3],
            basis: cfg,
            t_start: 0.0,
            t_end: 1.0,
            noise_std: 0.0,
        };
        // A single repeated observation cannot determine three weights.
        let err = adapt_weights(&promp, &[0.5, 0.5], &[1.0, 1.0], 1.0, 0.0);
        match err {
            Err(Error::NumericalFailure(msg)) => assert!(msg.contains("ridge")),
            other => panic!("expected NumericalFailure, got {other:?}"),
        }
    }

    #[test]
    fn invalid_adaptation_parameters() {
        let cfg = BasisConfig::for_span(0.0, 1.0, 2).unwrap();
        let promp = ProMP {
            weights: vec![0.0; 2],
            basis: cfg,
            t_start: 0.0,
            t_end: 1.0,
            noise_std: 0.0,
        };
        assert!(adapt_weights(&promp, &[0.5], &[1.0], 0.0, 0.0).is_err());
        assert!(adapt_weights(&promp, &[0.5], &[1.0], 1.5, 0.0).is_err());
        assert!(adapt_weights(&promp, &[0.5], &[1.0], 1.0, -1.0).is_err());
        assert!(adapt_weights(&promp, &[], &[], 1.0, 0.0).is_err());
        assert!(adapt_weights(&promp, &[0.5], &[1.0, 2.0], 1.0, 0.0).is_err());
    }

    #[test]
    fn segmented_learning_from_real_segmentation() {
        let traj = generate_dynamic_trajectory(&TrajectoryConfig::default(), 7).unwrap();
        let seg = segment_trajectory(&traj.y, 3, 7).unwrap();
        let sp = learn_segmented(&traj, &seg, 10).unwrap();
        let recon = reconstruct_segmented(&sp, &traj.t).unwrap();
        assert_eq!(recon.len(), traj.len());
        assert!(recon.iter().all(|v| v.is_finite()));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn mse_symmetry_and_scaling(
                raw in proptest::collection::vec(-50.0..50.0f64, 1..40),
                alpha in 0.1..4.0f64,
            ) {
                let a = raw.clone();
                let b: Vec<f64> = raw.iter().map(|x| x * 0.5 + 1.0).collect();
                let ab = mse(&a, &b).unwrap();
                let ba = mse(&b, &a).unwrap();
                prop_assert!((ab - ba).abs() < 1e-9 * (1.0 + ab.abs()));
                prop_assert!(ab >= 0.0);
                let a2: Vec<f64> = a.iter().map(|x| alpha * x).collect();
                let b2: Vec<f64> = b.iter().map(|x| alpha * x).collect();
                let scaled = mse(&a2, &b2).unwrap();
                prop_assert!((scaled - alpha * alpha * ab).abs() < 1e-6 * (1.0 + scaled.abs()));
            }

            #[test]
            fn intervals_always_partition(
                mut peaks in proptest::collection::vec(0usize..100, 0..12),
                extra in 1usize..100,
            ) {
                peaks.sort_unstable();
                let n = peaks.last().map_or(extra, |&p| p + extra);
                let intervals = crate::segment::peaks_to_intervals(&peaks, n).unwrap();
                prop_assert_eq!(intervals.first().map(|&(s, _)| s), Some(0));
                prop_assert_eq!(intervals.last().map(|&(_, e)| e), Some(n));
                for w in intervals.windows(2) {
                    prop_assert_eq!(w[0].1, w[1].0);
                }
                for &(s, e) in &intervals {
                    prop_assert!(s < e);
                }
            }
        }
    }
}
