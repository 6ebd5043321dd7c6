//! `prompseg segment` — segment a trajectory CSV by significant peaks
//! (default) or spectral clustering of delay-embedded windows.

use std::path::PathBuf;

use serde::Serialize;

use super::{opts, resolve_seed, to_json_pretty, write_file, CmdError};
use crate::csv::read_trajectory_csv;
use crate::pipeline::segment_with_degradation;
use crate::segment::{auto_sigma, delay_embed, spectral_clusters, SpectralConfig};
use crate::svg::{line_plot, Marker, Series, PALETTE};

pub const HELP: &str = "\
Usage: prompseg segment --input traj.csv [flags]

  --input PATH        trajectory CSV with header t,y (required)
  --n-clusters N      clusters for peak amplitudes / spectral labels (default 3)
  --seed N            clustering seed (default: $PROMPSEG_DEFAULT_SEED or 0)
  --method M          peaks | spectral (default peaks)
  --window N          delay-embedding window for spectral (default 10)
  --sigma S           spectral kernel scale: auto or a positive number (default auto)
  --spectral-cap N    max embedded rows fed to spectral clustering (default 2000)
  --out PATH          output JSON (default segmentation.json)
  --svg               also write a plot next to the output file
";

const KNOWN: &[&str] = &[
    "input",
    "n-clusters",
    "seed",
    "method",
    "window",
    "sigma",
    "spectral-cap",
    "out",
    "svg",
];

#[derive(Serialize)]
struct SpectralLabels {
    method: &'static str,
    window: usize,
    sigma: f64,
    n_clusters: usize,
    /// Start index (into the signal) of each labeled embedding row.
    indices: Vec<usize>,
    labels: Vec<usize>,
}

pub fn run(args: &[String]) -> Result<(), CmdError> {
    let opts = opts::parse(args, KNOWN, &["svg"])?;
    let input: PathBuf = opts.require("input")?;
    let n_clusters = opts::check(
        "n-clusters",
        opts.get_or("n-clusters", 3usize)?,
        |&k| k >= 1,
        "an integer >= 1",
    )?;
    let seed = resolve_seed(&opts)?;
    let method = opts.get_or("method", "peaks".to_string())?;
    let out: PathBuf = opts.get_or("out", PathBuf::from("segmentation.json"))?;

    let traj = read_trajectory_csv(&input)?;

    match method.as_str() {
        "peaks" => {
            let (seg, reduced) = segment_with_degradation(&traj.y, n_clusters, seed)?;
            if let Some(k) = reduced {
                eprintln!(
                    "warning: only {} significant peaks; reduced --n-clusters from {n_clusters} to {k}",
                    seg.peak_indices.len()
                );
            }
            write_file(&out, &to_json_pretty(&seg)?)?;
            if opts.has("svg") {
                let markers: Vec<Marker> = seg
                    .peak_indices
                    .iter()
                    .zip(&seg.peak_labels)
                    .map(|(&p, &l)| Marker {
                        x: traj.t[p],
                        y: traj.y[p],
                        color: PALETTE[1 + l % (PALETTE.len() - 1)].to_string(),
                    })
                    .collect();
                let svg = line_plot(
                    "significant peaks by cluster",
                    &[Series { label: "y", color: PALETTE[0], x: &traj.t, y: &traj.y }],
                    &[],
                    &markers,
                );
                write_file(&out.with_extension("svg"), &svg)?;
            }
            println!(
                "wrote {} ({} peaks, {} intervals)",
                out.display(),
                seg.peak_indices.len(),
                seg.intervals.len()
            );
        }
        "spectral" => {
            let window = opts::check(
                "window",
                opts.get_or("window", 10usize)?,
                |&m| m >= 1,
                "an integer >= 1",
            )?;
            let cap = opts::check(
                "spectral-cap",
                opts.get_or("spectral-cap", 2000usize)?,
                |&c| c >= 2,
                "an integer >= 2",
            )?;
            let sigma_raw = opts.get_or("sigma", "auto".to_string())?;

            let embedded = delay_embed(&traj.y, window)?;
            // Keep the eigenproblem tractable: stride-subsample over the cap.
            let total = embedded.rows();
            let stride = total.div_ceil(cap);
            let indices: Vec<usize> = (0..total).step_by(stride).collect();
            let features = crate::numerics::Matrix::from_fn(indices.len(), window, |i, j| {
                embedded[(indices[i], j)]
            });

            let sigma = if sigma_raw == "auto" {
                auto_sigma(&features)?
            } else {
                let s: f64 = sigma_raw
                    .parse()
                    .map_err(|_| CmdError::Usage(format!("invalid value '{sigma_raw}' for --sigma")))?;
                if s <= 0.0 {
                    return Err(CmdError::Usage(format!(
                        "invalid value for --sigma: expected a positive number, got {s}"
                    )));
                }
                s
            };
            let cfg = SpectralConfig {
                sigma: Some(sigma),
                n_clusters,
                embed_window: window,
            };
            let labels = spectral_clusters(&features, &cfg, seed)?;
            let payload = SpectralLabels {
                method: "spectral",
                window,
                sigma,
                n_clusters,
                indices: indices.clone(),
                labels: labels.clone(),
            };
            write_file(&out, &to_json_pretty(&payload)?)?;
            if opts.has("svg") {
                let markers: Vec<Marker> = indices
                    .iter()
                    .zip(&labels)
                    .map(|(&i, &l)| Marker {
                        x: traj.t[i],
                        y: traj.y[i],
                        color: PALETTE[1 + l % (PALETTE.len() - 1)].to_string(),
                    })
                    .collect();
                let svg = line_plot(
                    "spectral labels over delay-embedded windows",
                    &[Series { label: "y", color: PALETTE[0], x: &traj.t, y: &traj.y }],
                    &[],
                    &markers,
                );
                write_file(&out.with_extension("svg"), &svg)?;
            }
            println!(
                "wrote {} ({} labeled windows, sigma {sigma})",
                out.display(),
                labels.len()
            );
        }
        other => {
            return Err(CmdError::Usage(format!(
                "invalid value for --method: expected peaks or spectral, got '{other}'"
            )))
        }
    }
    Ok(())
}
