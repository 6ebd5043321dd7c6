//! `prompseg pipeline` — the full experiment for one seed or a seed sweep.

use std::path::PathBuf;

use super::generate::trajectory_config_from;
use super::{opts, resolve_seed, to_json_pretty, write_file, CmdError};
use crate::csv::to_csv;
use crate::pipeline::{run_pipeline, run_seed_sweep, PipelineConfig};
use crate::svg::{line_plot, Series, PALETTE};

pub const HELP: &str = "\
Usage: prompseg pipeline [flags]

  Trajectory flags as in 'prompseg generate' plus:
  --num-bases N     Gaussian bases for weight learning (default 10)
  --n-clusters N    clusters over peak amplitudes (default 3)
  --seed N          single-run seed (default: $PROMPSEG_DEFAULT_SEED or 0)
  --seeds A..B      inclusive seed range; writes summary.json instead
  --summary         with --seeds: keep only the aggregated summary (default)
  --out DIR         output directory (default .)
  --svg             also write an overlay plot (single-run mode)

Single-run outputs: report.json, reconstruction.csv, promp_global.json,
promp_segmented.json (+ overlay.svg with --svg).
Sweep output: summary.json with per-seed errors and median/IQR statistics.
";

const KNOWN: &[&str] = &[
    "seed",
    "seeds",
    "summary",
    "num-points",
    "num-obstacles",
    "noise-level",
    "t-start",
    "t-end",
    "obstacle-half-width",
    "num-bases",
    "n-clusters",
    "out",
    "svg",
];

pub(crate) fn pipeline_config_from(opts: &opts::Opts) -> Result<PipelineConfig, CmdError> {
    Ok(PipelineConfig {
        trajectory: trajectory_config_from(opts)?,
        num_bases: opts::check(
            "num-bases",
            opts.get_or("num-bases", 10usize)?,
            |&k| k >= 2,
            "an integer >= 2",
        )?,
        n_clusters: opts::check(
            "n-clusters",
            opts.get_or("n-clusters", 3usize)?,
            |&k| k >= 1,
            "an integer >= 1",
        )?,
    })
}

fn parse_seed_range(raw: &str) -> Result<Vec<u64>, CmdError> {
    let err = || {
        CmdError::Usage(format!(
            "invalid value '{raw}' for --seeds; expected an inclusive range like 1..100"
        ))
    };
    let (a, b) = raw.split_once("..").ok_or_else(err)?;
    let lo: u64 = a.trim().parse().map_err(|_| err())?;
    let hi: u64 = b.trim().parse().map_err(|_| err())?;
    if hi < lo {
        return Err(err());
    }
    Ok((lo..=hi).collect())
}

pub fn run(args: &[String]) -> Result<(), CmdError> {
    let opts = opts::parse(args, KNOWN, &["svg", "summary"])?;
    let cfg = pipeline_config_from(&opts)?;
    let out_dir: PathBuf = opts.get_or("out", PathBuf::from("."))?;

    if let Some(raw) = opts.raw("seeds") {
        if opts.raw("seed").is_some() {
            return Err(CmdError::Usage(
                "--seed and --seeds are mutually exclusive".into(),
            ));
        }
        let seeds = parse_seed_range(raw)?;
        let summary = run_seed_sweep(&cfg, &seeds)?;
        let path = out_dir.join("summary.json");
        write_file(&path, &to_json_pretty(&summary)?)?;
        println!(
            "wrote {} ({} seeds, median global MSE {:.6})",
            path.display(),
            summary.runs.len(),
            summary.median_mse_global
        );
        return Ok(());
    }
    if opts.has("summary") {
        return Err(CmdError::Usage("--summary requires --seeds".into()));
    }

    let seed = resolve_seed(&opts)?;
    let outcome = run_pipeline(&cfg, seed)?;
    if let Some(k) = outcome.reduced_clusters {
        eprintln!(
            "warning: only {} significant peaks; reduced --n-clusters from {} to {k}",
            outcome.report.num_peaks, cfg.n_clusters
        );
    }

    write_file(&out_dir.join("report.json"), &to_json_pretty(&outcome.report)?)?;
    let recon_csv = to_csv(
        &["t", "y_original", "y_global", "y_segmented"],
        &[
            &outcome.trajectory.t,
            &outcome.trajectory.y,
            &outcome.recon_global,
            &outcome.recon_segmented,
        ],
    );
    write_file(&out_dir.join("reconstruction.csv"), &recon_csv)?;
    write_file(
        &out_dir.join("promp_global.json"),
        &to_json_pretty(&outcome.promp_global)?,
    )?;
    write_file(
        &out_dir.join("promp_segmented.json"),
        &to_json_pretty(&outcome.promp_segmented)?,
    )?;

    if opts.has("svg") {
        let svg = line_plot(
            &format!("original vs reconstructed (seed {seed})"),
            &[
                Series {
                    label: "original",
                    color: PALETTE[0],
                    x: &outcome.trajectory.t,
                    y: &outcome.trajectory.y,
                },
                Series {
                    label: "global fit",
                    color: PALETTE[1],
                    x: &outcome.trajectory.t,
                    y: &outcome.recon_global,
                },
                Series {
                    label: "segmented fit",
                    color: PALETTE[2],
                    x: &outcome.trajectory.t,
                    y: &outcome.recon_segmented,
                },
            ],
            &[],
            &[],
        );
        write_file(&out_dir.join("overlay.svg"), &svg)?;
    }

    println!(
        "seed {seed}: {} peaks, MSE global {:.6}, segmented {:.6}",
        outcome.report.num_peaks, outcome.report.mse_global, outcome.report.mse_segmented
    );
    Ok(())
}
