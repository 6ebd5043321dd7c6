//! `prompseg condition` — learn per-context weight vectors, fit a GP over
//! them, and predict the trajectory for a new context with an uncertainty
//! band. The context variable is the obstacle multiplier of each training
//! run (one obstacle per run).

use std::path::PathBuf;

use serde::Serialize;

use super::{opts, to_json_pretty, write_file, CmdError};
use crate::basis::{gaussian_basis_matrix, BasisConfig};
use crate::csv::to_csv;
use crate::gp::{conditional_trajectory, gp_fit, gp_predict, GpConfig};
use crate::numerics::Matrix;
use crate::promp::learn_weights;
use crate::svg::{line_plot, Series, PALETTE};
use crate::trajgen::{generate_dynamic_trajectory, TrajectoryConfig};

pub const HELP: &str = "\
Usage: prompseg condition --train-seeds 1,2,3 --context C [flags]

  --train-seeds A,B,...   comma-separated seeds, at least two (required)
  --context C             context value to predict at (required)
  --num-points N          samples per trajectory (default 1000)
  --noise-level F         trajectory noise std (default 0.1)
  --num-bases N           Gaussian bases (default 10)
  --length-scale F        GP kernel length scale (default 1.0)
  --signal-var F          GP signal variance (default 1.0)
  --noise-var F           GP observation noise variance (default 1e-6)
  --out DIR               output directory (default .)
  --svg                   also write a band plot

Outputs: conditional.csv (t,mean,std) and gp_model.json (training contexts,
weight table, kernel config, and the prediction).
";

const KNOWN: &[&str] = &[
    "train-seeds",
    "context",
    "num-points",
    "noise-level",
    "num-bases",
    "length-scale",
    "signal-var",
    "noise-var",
    "out",
    "svg",
];

#[derive(Serialize)]
struct GpModelJson {
    contexts: Vec<Vec<f64>>,
    weight_table: Vec<Vec<f64>>,
    config: GpConfig,
    prediction: PredictionJson,
}

#[derive(Serialize)]
struct PredictionJson {
    context: f64,
    mean_weights: Vec<f64>,
    variance: f64,
}

pub fn run(args: &[String]) -> Result<(), CmdError> {
    let opts = opts::parse(args, KNOWN, &["svg"])?;
    let seeds_raw: String = opts.require("train-seeds")?;
    let seeds: Vec<u64> = seeds_raw
        .split(',')
        .map(|s| {
            s.trim().parse::<u64>().map_err(|_| {
                CmdError::Usage(format!(
                    "invalid value '{s}' in --train-seeds; expected unsigned integers"
                ))
            })
        })
        .collect::<Result<_, _>>()?;
    if seeds.len() < 2 {
        return Err(CmdError::Usage(format!(
            "--train-seeds needs at least 2 seeds, got {}",
            seeds.len()
        )));
    }
    let context: f64 = opts.require("context")?;
    let num_points = opts::check(
        "num-points",
        opts.get_or("num-points", 1000usize)?,
        |&n| n >= 2,
        "an integer >= 2",
    )?;
    let noise_level = opts::check(
        "noise-level",
        opts.get_or("noise-level", 0.1f64)?,
        |&x| x >= 0.0,
        "a number >= 0",
    )?;
    let num_bases = opts::check(
        "num-bases",
        opts.get_or("num-bases", 10usize)?,
        |&k| k >= 2,
        "an integer >= 2",
    )?;
    let gp_cfg = GpConfig::new(
        opts::check("length-scale", opts.get_or("length-scale", 1.0f64)?, |&x| x > 0.0, "a number > 0")?,
        opts::check("signal-var", opts.get_or("signal-var", 1.0f64)?, |&x| x > 0.0, "a number > 0")?,
        opts::check("noise-var", opts.get_or("noise-var", 1e-6f64)?, |&x| x >= 0.0, "a number >= 0")?,
    );
    let out_dir: PathBuf = opts.get_or("out", PathBuf::from("."))?;

    // One obstacle per run; its multiplier is the run's context.
    let traj_cfg = TrajectoryConfig {
        num_points,
        num_obstacles: 1,
        noise_level,
        ..TrajectoryConfig::default()
    };
    let mut t_grid: Option<Vec<f64>> = None;
    let mut contexts = Vec::with_capacity(seeds.len());
    let mut weight_rows: Vec<Vec<f64>> = Vec::with_capacity(seeds.len());
    let basis = BasisConfig::for_span(traj_cfg.t_start, traj_cfg.t_end, num_bases)
        .map_err(CmdError::from)?;
    for &seed in &seeds {
        let traj = generate_dynamic_trajectory(&traj_cfg, seed)?;
        let phi = gaussian_basis_matrix(&traj.t, &basis)?;
        let w = learn_weights(&phi, &traj.y)?;
        contexts.push(vec![traj.obstacle_multipliers[0]]);
        weight_rows.push(w);
        t_grid.get_or_insert(traj.t);
    }
    let t = t_grid.expect("at least two seeds");
    let context_matrix = Matrix::from_rows(&contexts)?;
    let weight_table = Matrix::from_rows(&weight_rows)?;

    let model = gp_fit(&context_matrix, &weight_table, &gp_cfg)?;
    let (mean_w, variance) = gp_predict(&model, &[context])?;
    let (mean_traj, std_traj) = conditional_trajectory(&model, &[context], &t, &basis)?;

    let csv = to_csv(&["t", "mean", "std"], &[&t, &mean_traj, &std_traj]);
    write_file(&out_dir.join("conditional.csv"), &csv)?;

    let model_json = GpModelJson {
        contexts: contexts.clone(),
        weight_table: weight_rows.clone(),
        config: gp_cfg,
        prediction: PredictionJson {
            context,
            mean_weights: mean_w,
            variance,
        },
    };
    write_file(&out_dir.join("gp_model.json"), &to_json_pretty(&model_json)?)?;

    if opts.has("svg") {
        let upper: Vec<f64> = mean_traj.iter().zip(&std_traj).map(|(m, s)| m + s).collect();
        let lower: Vec<f64> = mean_traj.iter().zip(&std_traj).map(|(m, s)| m - s).collect();
        let svg = line_plot(
            &format!("conditional trajectory at context {context}"),
            &[
                Series { label: "mean", color: PALETTE[0], x: &t, y: &mean_traj },
                Series { label: "+1 std", color: PALETTE[3], x: &t, y: &upper },
                Series { label: "-1 std", color: PALETTE[3], x: &t, y: &lower },
            ],
            &[],
            &[],
        );
        write_file(&out_dir.join("conditional.svg"), &svg)?;
    }

    for (seed, ctx) in seeds.iter().zip(&contexts) {
        println!("training seed {seed}: context {}", ctx[0]);
    }
    println!(
        "predicted at context {context}: variance {variance:.6e}, wrote {}",
        out_dir.join("conditional.csv").display()
    );
    Ok(())
}
