//! `prompseg generate` — synthesize one perturbed trajectory.

use std::path::PathBuf;

use super::{opts, resolve_seed, to_json_pretty, write_file, CmdError};
use crate::csv::to_csv;
use crate::svg::{line_plot, Series, PALETTE};
use crate::trajgen::{generate_dynamic_trajectory, TrajectoryConfig};

pub const HELP: &str = "\
Usage: prompseg generate [flags]

  --seed N                 generator seed (default: $PROMPSEG_DEFAULT_SEED or 0)
  --num-points N           samples per trajectory (default 1000)
  --num-obstacles N        obstacle windows to draw (default 5)
  --noise-level F          additive noise std, >= 0 (default 0.1)
  --t-start F              grid start (default 0)
  --t-end F                grid end (default 4*pi)
  --obstacle-half-width N  obstacle half-width in samples (default 50)
  --format csv|json        output format (default csv)
  --out PATH               output file (default trajectory.csv)
  --svg                    also write a plot next to the output file
";

const KNOWN: &[&str] = &[
    "seed",
    "num-points",
    "num-obstacles",
    "noise-level",
    "t-start",
    "t-end",
    "obstacle-half-width",
    "format",
    "out",
    "svg",
];

pub(crate) fn trajectory_config_from(opts: &opts::Opts) -> Result<TrajectoryConfig, CmdError> {
    let defaults = TrajectoryConfig::default();
    let cfg = TrajectoryConfig {
        num_points: opts::check(
            "num-points",
            opts.get_or("num-points", defaults.num_points)?,
            |&n| n >= 2,
            "an integer >= 2",
        )?,
        num_obstacles: opts.get_or("num-obstacles", defaults.num_obstacles)?,
        noise_level: opts::check(
            "noise-level",
            opts.get_or("noise-level", defaults.noise_level)?,
            |&x| x >= 0.0,
            "a number >= 0",
        )?,
        t_start: opts.get_or("t-start", defaults.t_start)?,
        t_end: opts.get_or("t-end", defaults.t_end)?,
        obstacle_half_width: opts.get_or("obstacle-half-width", defaults.obstacle_half_width)?,
    };
    if !(cfg.t_end > cfg.t_start) {
        return Err(CmdError::Usage(format!(
            "invalid value for --t-end: must exceed --t-start ({} vs {})",
            cfg.t_end, cfg.t_start
        )));
    }
    Ok(cfg)
}

pub fn run(args: &[String]) -> Result<(), CmdError> {
    let opts = opts::parse(args, KNOWN, &["svg"])?;
    let cfg = trajectory_config_from(&opts)?;
    let seed = resolve_seed(&opts)?;
    let format = opts.get_or("format", "csv".to_string())?;
    if format != "csv" && format != "json" {
        return Err(CmdError::Usage(format!(
            "invalid value for --format: expected csv or json, got '{format}'"
        )));
    }
    let default_out = if format == "json" { "trajectory.json" } else { "trajectory.csv" };
    let out: PathBuf = opts.get_or("out", PathBuf::from(default_out))?;

    let traj = generate_dynamic_trajectory(&cfg, seed)?;

    let body = if format == "json" {
        to_json_pretty(&traj)?
    } else {
        to_csv(&["t", "y"], &[&traj.t, &traj.y])
    };
    write_file(&out, &body)?;

    if opts.has("svg") {
        let shaded: Vec<(f64, f64)> = traj
            .obstacle_centers
            .iter()
            .map(|&c| {
                let lo = c.saturating_sub(cfg.obstacle_half_width);
                let hi = (c + cfg.obstacle_half_width).min(traj.len() - 1);
                (traj.t[lo], traj.t[hi])
            })
            .collect();
        let svg = line_plot(
            &format!("dynamic trajectory (seed {seed})"),
            &[Series { label: "y", color: PALETTE[0], x: &traj.t, y: &traj.y }],
            &shaded,
            &[],
        );
        write_file(&out.with_extension("svg"), &svg)?;
    }
    println!(
        "wrote {} ({} samples, {} obstacles)",
        out.display(),
        traj.len(),
        traj.obstacle_centers.len()
    );
    Ok(())
}
