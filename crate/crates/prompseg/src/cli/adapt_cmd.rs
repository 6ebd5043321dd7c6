//! `prompseg adapt` — streaming adaptation experiment.

use std::path::PathBuf;

use super::{opts, resolve_seed, to_json_pretty, write_file, CmdError};
use crate::adaptation::{run_adaptation_stream, AdaptConfig};

pub const HELP: &str = "\
Usage: prompseg adapt [flags]

  --seed N          stream seed (default: $PROMPSEG_DEFAULT_SEED or 0)
  --num-points N    stream length (default 1000)
  --noise-level F   noise std of the training pass (default 0.1)
  --num-bases N     Gaussian bases (default 10)
  --batch N         samples between weight refits, >= 1 (default 25)
  --window N        recent samples fed to each refit (default 100)
  --decay F         exponential forgetting factor in (0, 1] (default 0.9)
  --ridge F         anchor regularization, >= 0 (default 0.01)
  --no-obstacle     replay the learned path with no disturbance
  --out DIR         output directory (default .)

Output: adapt_report.json comparing rolling MSE with and without adaptation.
";

const KNOWN: &[&str] = &[
    "seed",
    "num-points",
    "noise-level",
    "num-bases",
    "batch",
    "window",
    "decay",
    "ridge",
    "no-obstacle",
    "out",
];

pub fn run(args: &[String]) -> Result<(), CmdError> {
    let opts = opts::parse(args, KNOWN, &["no-obstacle"])?;
    let defaults = AdaptConfig::default();
    let cfg = AdaptConfig {
        num_points: opts::check(
            "num-points",
            opts.get_or("num-points", defaults.num_points)?,
            |&n| n >= 200,
            "an integer >= 200",
        )?,
        noise_level: opts::check(
            "noise-level",
            opts.get_or("noise-level", defaults.noise_level)?,
            |&x| x >= 0.0,
            "a number >= 0",
        )?,
        num_bases: opts::check(
            "num-bases",
            opts.get_or("num-bases", defaults.num_bases)?,
            |&k| k >= 2,
            "an integer >= 2",
        )?,
        batch: opts::check(
            "batch",
            opts.get_or("batch", defaults.batch)?,
            |&b| b >= 1,
            "an integer >= 1",
        )?,
        window: opts::check(
            "window",
            opts.get_or("window", defaults.window)?,
            |&w| w >= 1,
            "an integer >= 1",
        )?,
        decay: opts::check(
            "decay",
            opts.get_or("decay", defaults.decay)?,
            |&d| d > 0.0 && d <= 1.0,
            "a number in (0, 1]",
        )?,
        ridge: opts::check(
            "ridge",
            opts.get_or("ridge", defaults.ridge)?,
            |&r| r >= 0.0,
            "a number >= 0",
        )?,
        inject_obstacle: !opts.has("no-obstacle"),
        obstacle_half_width: defaults.obstacle_half_width,
    };
    let seed = resolve_seed(&opts)?;
    let out_dir: PathBuf = opts.get_or("out", PathBuf::from("."))?;

    let report = run_adaptation_stream(&cfg, seed)?;
    write_file(&out_dir.join("adapt_report.json"), &to_json_pretty(&report)?)?;

    match &report.obstacle {
        Some(obs) => println!(
            "obstacle at sample {} (x{:.4}): rolling MSE {:.6e} adapted vs {:.6e} frozen",
            obs.center, obs.multiplier, report.mse_adapt, report.mse_no_adapt
        ),
        None => println!(
            "no obstacle: weight drift {:.3e} (fixed point)",
            report.weight_drift
        ),
    }
    Ok(())
}
