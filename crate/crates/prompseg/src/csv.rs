//! CSV reading/writing for trajectory-shaped artifacts.
//!
//! Numbers are written with Rust's shortest round-trip float formatting, so
//! a given dataset always serializes to identical bytes.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::trajgen::Trajectory;

/// Render columns to CSV text with `\n` line endings.
pub fn to_csv(header: &[&str], columns: &[&[f64]]) -> String {
    assert_eq!(header.len(), columns.len(), "header/column count mismatch");
    let rows = columns.first().map_or(0, |c| c.len());
    assert!(
        columns.iter().all(|c| c.len() == rows),
        "ragged CSV columns"
    );
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for i in 0..rows {
        for (j, col) in columns.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&format!("{}", col[i]));
        }
        out.push('\n');
    }
    out
}

/// Write a `t,y` trajectory CSV.
pub fn write_trajectory_csv(path: &Path, traj: &Trajectory) -> Result<()> {
    fs::write(path, to_csv(&["t", "y"], &[&traj.t, &traj.y]))?;
    Ok(())
}

/// Read a `t,y` CSV back into a trajectory (obstacle metadata is not part
/// of the CSV format and comes back empty).
pub fn read_trajectory_csv(path: &Path) -> Result<Trajectory> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidInput("empty CSV file".into()))?;
    let names: Vec<&str> = header.split(',').map(str::trim).collect();
    if names.len() < 2 || names[0] != "t" || names[1] != "y" {
        return Err(Error::InvalidInput(format!(
            "expected a CSV header starting with 't,y', got '{header}'"
        )));
    }
    let mut t = Vec::new();
    let mut y = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let (a, b) = match (fields.next(), fields.next()) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(Error::InvalidInput(format!(
                    "line {}: expected two comma-separated values",
                    lineno + 2
                )))
            }
        };
        let parse = |s: &str, what: &str| -> Result<f64> {
            s.trim().parse::<f64>().map_err(|_| {
                Error::InvalidInput(format!("line {}: bad {what} value '{s}'", lineno + 2))
            })
        };
        t.push(parse(a, "t")?);
        y.push(parse(b, "y")?);
    }
    if t.len() < 2 {
        return Err(Error::InvalidInput("trajectory CSV needs at least two rows".into()));
    }
    Ok(Trajectory {
        t,
        y,
        obstacle_centers: vec![],
        obstacle_multipliers: vec![],
    })
}
