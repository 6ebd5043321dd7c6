//! End-to-end experiment: generate, segment, learn (global and segmented),
//! reconstruct, and score. This is the library core behind the `pipeline`
//! CLI command; examples and tests drive it directly.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::basis::{gaussian_basis_matrix, BasisConfig};
use crate::error::{Error, Result};
use crate::promp::{learn_segmented, learn_weights, mse, reconstruct_segmented, ProMP, SegmentedProMP};
use crate::segment::{segment_trajectory, Segmentation};
use crate::trajgen::{generate_dynamic_trajectory, Trajectory, TrajectoryConfig};

/// Full experiment configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineConfig {
    #[serde(flatten)]
    pub trajectory: TrajectoryConfig,
    pub num_bases: usize,
    pub n_clusters: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            trajectory: TrajectoryConfig::default(),
            num_bases: 10,
            n_clusters: 3,
        }
    }
}

/// Wall-clock per stage, milliseconds. Diagnostic only: these fields are
/// the one part of the report exempt from byte-level determinism.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct StageTimings {
    pub generate: f64,
    pub segment: f64,
    pub learn_global: f64,
    pub learn_segmented: f64,
    pub reconstruct: f64,
}

/// Headline numbers of one pipeline run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineReport {
    pub config: PipelineConfig,
    pub seed: u64,
    pub num_peaks: usize,
    pub cluster_label_histogram: Vec<usize>,
    pub mse_global: f64,
    pub mse_segmented: f64,
    pub runtime_ms: StageTimings,
}

/// Everything a pipeline run produces, kept so callers can serialize or
/// plot any intermediate artifact.
#[derive(Debug, Clone)]
pub struct PipelineOutcome {
    pub trajectory: Trajectory,
    pub segmentation: Segmentation,
    pub promp_global: ProMP,
    pub promp_segmented: SegmentedProMP,
    pub recon_global: Vec<f64>,
    pub recon_segmented: Vec<f64>,
    pub report: PipelineReport,
    /// Set when the requested cluster count had to drop to the peak count.
    pub reduced_clusters: Option<usize>,
}

fn ms_since(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Run the whole experiment for one seed.
///
/// When the signal yields fewer significant peaks than `n_clusters`, the
/// cluster count degrades to the peak count (the outcome records this);
/// a signal with no peaks at all still learns a single global segment.
pub fn run_pipeline(cfg: &PipelineConfig, seed: u64) -> Result<PipelineOutcome> {
    if cfg.num_bases < 2 {
        return Err(Error::InvalidParameter(format!(
            "num_bases must be >= 2, got {}",
            cfg.num_bases
        )));
    }
    if cfg.n_clusters == 0 {
        return Err(Error::InvalidParameter("n_clusters must be >= 1".into()));
    }

    let t0 = Instant::now();
    let trajectory = generate_dynamic_trajectory(&cfg.trajectory, seed)
        .map_err(|e| stage_err("generate", e))?;
    let gen_ms = ms_since(t0);

    let t1 = Instant::now();
    let (segmentation, reduced_clusters) =
        segment_with_degradation(&trajectory.y, cfg.n_clusters, seed)
            .map_err(|e| stage_err("segment", e))?;
    let seg_ms = ms_since(t1);

    let t2 = Instant::now();
    let span = (trajectory.t[0], trajectory.t[trajectory.len() - 1]);
    let basis = BasisConfig::for_span(span.0, span.1, cfg.num_bases)
        .map_err(|e| stage_err("learn", e))?;
    let phi = gaussian_basis_matrix(&trajectory.t, &basis).map_err(|e| stage_err("learn", e))?;
    let weights = learn_weights(&phi, &trajectory.y).map_err(|e| stage_err("learn", e))?;
    let promp_global = ProMP {
        weights,
        basis,
        t_start: span.0,
        t_end: span.1,
        noise_std: 0.0,
    };
    let global_ms = ms_since(t2);

    let t3 = Instant::now();
    let promp_segmented = learn_segmented(&trajectory, &segmentation, cfg.num_bases)
        .map_err(|e| stage_err("learn-segmented", e))?;
    let seg_learn_ms = ms_since(t3);

    let t4 = Instant::now();
    let recon_global = phi.matvec(&promp_global.weights);
    let recon_segmented = reconstruct_segmented(&promp_segmented, &trajectory.t)
        .map_err(|e| stage_err("reconstruct", e))?;
    let mse_global = mse(&trajectory.y, &recon_global).map_err(|e| stage_err("reconstruct", e))?;
    let mse_segmented =
        mse(&trajectory.y, &recon_segmented).map_err(|e| stage_err("reconstruct", e))?;
    let recon_ms = ms_since(t4);

    let k_used = reduced_clusters.unwrap_or(cfg.n_clusters).max(1);
    let mut histogram = vec![0usize; if segmentation.peak_indices.is_empty() { 0 } else { k_used }];
    for &label in &segmentation.peak_labels {
        histogram[label] += 1;
    }

    let report = PipelineReport {
        config: cfg.clone(),
        seed,
        num_peaks: segmentation.peak_indices.len(),
        cluster_label_histogram: histogram,
        mse_global,
        mse_segmented,
        runtime_ms: StageTimings {
            generate: gen_ms,
            segment: seg_ms,
            learn_global: global_ms,
            learn_segmented: seg_learn_ms,
            reconstruct: recon_ms,
        },
    };

    Ok(PipelineOutcome {
        trajectory,
        segmentation,
        promp_global,
        promp_segmented,
        recon_global,
        recon_segmented,
        report,
        reduced_clusters,
    })
}

/// Segment, shrinking the cluster count to the peak count when necessary.
/// Zero peaks produce an empty segmentation covering the whole signal.
pub fn segment_with_degradation(
    y: &[f64],
    n_clusters: usize,
    seed: u64,
) -> Result<(Segmentation, Option<usize>)> {
    match segment_trajectory(y, n_clusters, seed) {
        Ok(seg) => Ok((seg, None)),
        Err(Error::InsufficientPeaks { found, .. }) => {
            if found == 0 {
                Ok((
                    Segmentation {
                        peak_indices: vec![],
                        peak_labels: vec![],
                        intervals: vec![(0, y.len())],
                    },
                    Some(0),
                ))
            } else {
                let seg = segment_trajectory(y, found, seed)?;
                Ok((seg, Some(found)))
            }
        }
        Err(e) => Err(e),
    }
}

fn stage_err(stage: &str, e: Error) -> Error {
    match e {
        Error::Io(io) => Error::Io(io),
        other => Error::NumericalFailure(format!("{stage} stage failed: {other}")),
    }
}

/// Per-seed results plus distribution statistics for a seed sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepSummary {
    pub config: PipelineConfig,
    pub runs: Vec<SweepRun>,
    pub median_mse_global: f64,
    pub iqr_mse_global: f64,
    pub median_mse_segmented: f64,
    pub iqr_mse_segmented: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRun {
    pub seed: u64,
    pub num_peaks: usize,
    pub mse_global: f64,
    pub mse_segmented: f64,
}

/// Run the pipeline over a seed range, in parallel, with results ordered
/// by seed so concurrency never changes the output.
pub fn run_seed_sweep(cfg: &PipelineConfig, seeds: &[u64]) -> Result<SweepSummary> {
    if seeds.is_empty() {
        return Err(Error::InvalidParameter("seed sweep needs at least one seed".into()));
    }
    let threads = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(seeds.len());
    let chunk = seeds.len().div_ceil(threads);

    let mut runs: Vec<Option<SweepRun>> = vec![None; seeds.len()];
    let errors = std::sync::Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for (slice_idx, (seed_chunk, out_chunk)) in
            seeds.chunks(chunk).zip(runs.chunks_mut(chunk)).enumerate()
        {
            let errors = &errors;
            let cfg = &*cfg;
            scope.spawn(move || {
                for (seed, slot) in seed_chunk.iter().zip(out_chunk.iter_mut()) {
                    match run_pipeline(cfg, *seed) {
                        Ok(outcome) => {
                            *slot = Some(SweepRun {
                                seed: *seed,
                                num_peaks: outcome.report.num_peaks,
                                mse_global: outcome.report.mse_global,
                                mse_segmented: outcome.report.mse_segmented,
                            })
                        }
                        Err(e) => errors
                            .lock()
                            .expect("sweep mutex")
                            .push(format!("seed {seed} (chunk {slice_idx}): {e}")),
                    }
                }
            });
        }
    });
    let errors = errors.into_inner().expect("sweep mutex");
    if let Some(first) = errors.first() {
        return Err(Error::NumericalFailure(first.clone()));
    }
    let runs: Vec<SweepRun> = runs.into_iter().map(|r| r.expect("filled")).collect();

    let globals: Vec<f64> = runs.iter().map(|r| r.mse_global).collect();
    let segmented: Vec<f64> = runs.iter().map(|r| r.mse_segmented).collect();
    Ok(SweepSummary {
        config: cfg.clone(),
        median_mse_global: median(&globals),
        iqr_mse_global: iqr(&globals),
        median_mse_segmented: median(&segmented),
        iqr_mse_segmented: iqr(&segmented),
        runs,
    })
}

fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

/// Median with the usual even-length average.
pub fn median(values: &[f64]) -> f64 {
    let v = sorted(values);
    let n = v.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Interquartile range using linearly interpolated quantiles.
pub fn iqr(values: &[f64]) -> f64 {
    quantile(values, 0.75) - quantile(values, 0.25)
}

fn quantile(values: &[f64], q: f64) -> f64 {
    let v = sorted(values);
    let n = v.len();
    if n == 0 {
        return f64::NAN;
    }
    if n == 1 {
        return v[0];
    }
    let pos = q * (n - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    v[lo] + (v[hi] - v[lo]) * frac
}
