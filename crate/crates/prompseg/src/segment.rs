//! Unsupervised segmentation: significant-peak detection with k-means over
//! peak amplitudes, plus spectral clustering of delay-embedded features as
//! an alternative segmenter.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{kmeans, population_std, sym_eig, Matrix, DEFAULT_MAX_ITER};

/// Peak-based segmentation of a signal: significant-peak indices, their
/// cluster labels, and the contiguous index intervals they induce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segmentation {
    #[serde(rename = "peaks")]
    pub peak_indices: Vec<usize>,
    #[serde(rename = "labels")]
    pub peak_labels: Vec<usize>,
    /// Half-open `[start, end)` ranges partitioning `[0, n)`.
    pub intervals: Vec<(usize, usize)>,
}

/// Spectral-clustering parameters. `sigma = None` selects the median of the
/// nonzero pairwise distances.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralConfig {
    pub sigma: Option<f64>,
    pub n_clusters: usize,
    pub embed_window: usize,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        SpectralConfig {
            sigma: None,
            n_clusters: 3,
            embed_window: 10,
        }
    }
}

/// Strict local maxima of `y` at least `height` tall, endpoints excluded.
/// A flat-topped plateau that exceeds both shoulders reports its midpoint
/// index (floor of the run's center).
pub fn find_peaks(y: &[f64], height: f64) -> Vec<usize> {
    let n = y.len();
    let mut peaks = Vec::new();
    if n < 3 {
        return peaks;
    }
    let mut i = 1;
    while i < n - 1 {
        if y[i] > y[i - 1] {
            // Extend across a possible plateau of equal values.
            let mut j = i;
            while j + 1 < n && y[j + 1] == y[i] {
                j += 1;
            }
            if j < n - 1 && y[j + 1] < y[i] {
                let mid = (i + j) / 2;
                if y[mid] >= height {
                    peaks.push(mid);
                }
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    peaks
}

/// Peaks of `|y|` whose height reaches the population standard deviation
/// of `y`: the significance rule used throughout the segmentation stage.
pub fn significant_peaks(y: &[f64]) -> Vec<usize> {
    let abs: Vec<f64> = y.iter().map(|v| v.abs()).collect();
    find_peaks(&abs, population_std(y))
}

/// Boundaries at each peak index: `[0, p1), [p1, p2), ..., [pk, n)`.
/// Empty intervals (a peak at index 0 or duplicate peaks) are dropped.
pub fn peaks_to_intervals(peaks: &[usize], n: usize) -> Result<Vec<(usize, usize)>> {
    for w in peaks.windows(2) {
        if w[1] < w[0] {
            return Err(Error::InvalidInput("peaks must be ascending".into()));
        }
    }
    if let Some(&last) = peaks.last() {
        if last >= n {
            return Err(Error::InvalidInput(format!(
                "peak index {last} out of range for length {n}"
            )));
        }
    }
    let mut intervals = Vec::with_capacity(peaks.len() + 1);
    let mut start = 0;
    for &p in peaks {
        if p > start {
            intervals.push((start, p));
        }
        start = p;
    }
    if n > start {
        intervals.push((start, n));
    }
    Ok(intervals)
}

/// Segment a signal: find significant peaks, cluster their amplitudes with
/// seeded k-means, and cut the index range at each peak.
pub fn segment_trajectory(y: &[f64], n_clusters: usize, seed: u64) -> Result<Segmentation> {
    if n_clusters == 0 {
        return Err(Error::InvalidParameter("n_clusters must be >= 1".into()));
    }
    let peaks = significant_peaks(y);
    if peaks.len() < n_clusters {
        return Err(Error::InsufficientPeaks {
            found: peaks.len(),
            requested: n_clusters,
        });
    }
    // One-dimensional feature per peak: its signed amplitude.
    let amplitudes = Matrix::from_vec(peaks.len(), 1, peaks.iter().map(|&p| y[p]).collect())?;
    let clustering = kmeans(&amplitudes, n_clusters, seed, DEFAULT_MAX_ITER)?;
    let intervals = peaks_to_intervals(&peaks, y.len())?;
    Ok(Segmentation {
        peak_indices: peaks,
        peak_labels: clustering.labels,
        intervals,
    })
}

/// Sliding-window embedding: row i is `(y[i], ..., y[i+m-1])`, giving an
/// `(n - m + 1) x m` feature matrix. Stands in for learned state features.
pub fn delay_embed(y: &[f64], m: usize) -> Result<Matrix> {
    let n = y.len();
    if m == 0 {
        return Err(Error::InvalidParameter("embed window must be >= 1".into()));
    }
    if m > n {
        return Err(Error::InvalidParameter(format!(
            "embed window {m} exceeds signal length {n}"
        )));
    }
    Ok(Matrix::from_fn(n - m + 1, m, |i, j| y[i + j]))
}

/// Gaussian-kernel affinity: `W[i][j] = exp(-||r_i - r_j||^2 / (2 sigma^2))`.
pub fn affinity_matrix(features: &Matrix, sigma: f64) -> Result<Matrix> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "sigma must be > 0, got {sigma}"
        )));
    }
    let n = features.rows();
    let inv = 1.0 / (2.0 * sigma * sigma);
    let mut w = Matrix::zeros(n, n);
    for i in 0..n {
        w[(i, i)] = 1.0;
        for j in (i + 1)..n {
            let d2: f64 = features
                .row(i)
                .iter()
                .zip(features.row(j))
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            let v = (-d2 * inv).exp();
            w[(i, j)] = v;
            w[(j, i)] = v;
        }
    }
    Ok(w)
}

/// Unnormalized graph Laplacian `L = D - W` with `D` the diagonal degree
/// matrix. Row sums vanish by construction.
pub fn laplacian(w: &Matrix) -> Result<Matrix> {
    if !w.is_square() {
        return Err(Error::InvalidInput("laplacian needs a square affinity".into()));
    }
    if w.asymmetry() > 1e-10 {
        return Err(Error::InvalidInput(format!(
            "affinity asymmetric by {}",
            w.asymmetry()
        )));
    }
    if w.data().iter().any(|&x| x < 0.0) {
        return Err(Error::InvalidInput("affinity entries must be non-negative".into()));
    }
    let n = w.rows();
    let mut l = Matrix::zeros(n, n);
    for i in 0..n {
        let degree: f64 = w.row(i).iter().sum();
        for j in 0..n {
            l[(i, j)] = if i == j { degree - w[(i, j)] } else { -w[(i, j)] };
        }
    }
    Ok(l)
}

/// Spectral clustering of feature rows: Gaussian affinity, unnormalized
/// Laplacian, embedding from the k lowest eigenvectors, then seeded k-means
/// on the embedded rows.
pub fn spectral_clusters(features: &Matrix, cfg: &SpectralConfig, seed: u64) -> Result<Vec<usize>> {
    let n = features.rows();
    let k = cfg.n_clusters;
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "n_clusters must satisfy 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    let sigma = match cfg.sigma {
        Some(s) if s > 0.0 => s,
        Some(s) => {
            return Err(Error::InvalidParameter(format!(
                "sigma must be > 0, got {s}"
            )))
        }
        None => auto_sigma(features)?,
    };
    let w = affinity_matrix(features, sigma)?;
    let l = laplacian(&w)?;
    let eig = sym_eig(&l)?;
    let embedding = Matrix::from_fn(n, k, |i, j| eig.eigenvectors[(i, j)]);
    let clustering = kmeans(&embedding, k, seed, DEFAULT_MAX_ITER)?;
    Ok(clustering.labels)
}

/// Median of the nonzero pairwise distances: the fallback kernel scale when
/// the caller does not supply one.
pub fn auto_sigma(features: &Matrix) -> Result<f64> {
    let n = features.rows();
    let mut dists = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let d2: f64 = features
                .row(i)
                .iter()
                .zip(features.row(j))
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            if d2 > 0.0 {
                dists.push(d2.sqrt());
            }
        }
    }
    if dists.is_empty() {
        return Err(Error::DegenerateScale);
    }
    dists.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let m = dists.len();
    Ok(if m % 2 == 1 {
        dists[m / 2]
    } else {
        0.5 * (dists[m / 2 - 1] + dists[m / 2])
    })
}
