//! Command-line front end. Every subcommand is a thin wrapper over library
//! calls plus file output; the binary in `src/main.rs` only forwards here.
//!
//! Exit codes: 0 success, 1 I/O or runtime failure, 2 usage/validation error.

mod adapt_cmd;
mod condition;
mod generate;
mod opts;
mod pipeline_cmd;
mod segment_cmd;

use crate::error::Error;
use opts::UsageError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable consulted when `--seed` is absent.
pub const DEFAULT_SEED_ENV: &str = "PROMPSEG_DEFAULT_SEED";

const USAGE: &str = "\
prompseg — trajectory segmentation and movement-primitive learning

Usage: prompseg <command> [flags]

Commands:
  generate   Write a perturbed synthetic trajectory (CSV/JSON, optional SVG)
  segment    Segment a trajectory CSV by significant peaks or spectral clustering
  pipeline   Generate -> segment -> learn -> reconstruct -> report
  condition  Fit a GP over per-context weights and predict a new context's path
  adapt      Streaming adaptation experiment with an injected obstacle

Run 'prompseg <command> --help' for the command's flags.
";

/// Entry point used by the binary; returns the process exit code.
pub fn run(args: &[String]) -> i32 {
    let Some(command) = args.first() else {
        eprint!("{USAGE}");
        return EXIT_USAGE;
    };
    let rest = &args[1..];
    if rest.iter().any(|a| a == "--help" || a == "-h") {
        print_command_help(command);
        return EXIT_OK;
    }
    let result = match command.as_str() {
        "generate" => generate::run(rest),
        "segment" => segment_cmd::run(rest),
        "pipeline" => pipeline_cmd::run(rest),
        "condition" => condition::run(rest),
        "adapt" => adapt_cmd::run(rest),
        "--help" | "-h" | "help" => {
            print!("{USAGE}");
            return EXIT_OK;
        }
        other => {
            eprintln!("unknown command '{other}'\n");
            eprint!("{USAGE}");
            return EXIT_USAGE;
        }
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(CmdError::Usage(e)) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
        Err(CmdError::Runtime(e)) => {
            eprintln!("error: {e}");
            EXIT_RUNTIME
        }
    }
}

fn print_command_help(command: &str) {
    match command {
        "generate" => print!("{}", generate::HELP),
        "segment" => print!("{}", segment_cmd::HELP),
        "pipeline" => print!("{}", pipeline_cmd::HELP),
        "condition" => print!("{}", condition::HELP),
        "adapt" => print!("{}", adapt_cmd::HELP),
        _ => print!("{USAGE}"),
    }
}

/// Command failure, split by exit code.
pub(crate) enum CmdError {
    Usage(String),
    Runtime(String),
}

impl From<UsageError> for CmdError {
    fn from(e: UsageError) -> Self {
        CmdError::Usage(e.0)
    }
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        CmdError::Runtime(e.to_string())
    }
}

/// Resolve the seed: `--seed` flag, then the environment default, then 0.
pub(crate) fn resolve_seed(opts: &opts::Opts) -> Result<u64, CmdError> {
    if let Some(raw) = opts.raw("seed") {
        return raw
            .parse()
            .map_err(|_| CmdError::Usage(format!("invalid value '{raw}' for --seed")));
    }
    match std::env::var(DEFAULT_SEED_ENV) {
        Ok(raw) => raw.parse().map_err(|_| {
            CmdError::Usage(format!(
                "invalid value '{raw}' in {DEFAULT_SEED_ENV}; expected an unsigned integer"
            ))
        }),
        Err(_) => Ok(0),
    }
}

/// Serialize a value as pretty JSON with a trailing newline.
pub(crate) fn to_json_pretty<T: serde::Serialize>(value: &T) -> Result<String, CmdError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CmdError::Runtime(format!("JSON serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

pub(crate) fn write_file(path: &std::path::Path, contents: &str) -> Result<(), CmdError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .map_err(|e| CmdError::Runtime(format!("cannot create {}: {e}", parent.display())))?;
        }
    }
    std::fs::write(path, contents)
        .map_err(|e| CmdError::Runtime(format!("cannot write {}: {e}", path.display())))
}
