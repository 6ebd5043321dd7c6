//! Tiny flag parser for the command-line front end. Keeps full control of
//! exit codes and error wording (usage problems must name the flag).

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

/// Parsed `--key value` / `--key=value` pairs plus boolean switches.
#[derive(Debug, Default)]
pub struct Opts {
    values: BTreeMap<String, String>,
    switches: BTreeSet<String>,
}

/// A usage-level problem; the CLI maps these to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn parse(args: &[String], known: &[&str], boolean: &[&str]) -> Result<Opts, UsageError> {
    let mut opts = Opts::default();
    let mut it = args.iter().peekable();
    while let Some(arg) = it.next() {
        let Some(stripped) = arg.strip_prefix("--") else {
            return Err(UsageError(format!("unexpected argument '{arg}'")));
        };
        let (key, inline) = match stripped.split_once('=') {
            Some((k, v)) => (k.to_string(), Some(v.to_string())),
            None => (stripped.to_string(), None),
        };
        if !known.contains(&key.as_str()) {
            return Err(UsageError(format!("unknown flag '--{key}'")));
        }
        if boolean.contains(&key.as_str()) {
            if inline.is_some() {
                return Err(UsageError(format!("flag '--{key}' takes no value")));
            }
            opts.switches.insert(key);
            continue;
        }
        let value = match inline {
            Some(v) => v,
            None => match it.next() {
                Some(v) => v.clone(),
                None => return Err(UsageError(format!("flag '--{key}' needs a value"))),
            },
        };
        opts.values.insert(key, value);
    }
    Ok(opts)
}

impl Opts {
    pub fn has(&self, key: &str) -> bool {
        self.switches.contains(key)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Parse an optional flag, falling back to a default.
    pub fn get_or<T: FromStr>(&self, key: &str, default: T) -> Result<T, UsageError> {
        match self.values.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| UsageError(format!("invalid value '{v}' for --{key}"))),
        }
    }

    /// Parse a required flag.
    pub fn require<T: FromStr>(&self, key: &str) -> Result<T, UsageError> {
        match self.values.get(key) {
            None => Err(UsageError(format!("missing required flag --{key}"))),
            Some(v) => v
                .parse()
                .map_err(|_| UsageError(format!("invalid value '{v}' for --{key}"))),
        }
    }
}

/// Validate a numeric flag with a predicate; the message names the flag.
pub fn check<T: PartialOrd + std::fmt::Display>(
    key: &str,
    value: T,
    ok: impl Fn(&T) -> bool,
    expect: &str,
) -> Result<T, UsageError> {
    if ok(&value) {
        Ok(value)
    } else {
        Err(UsageError(format!(
            "invalid value for --{key}: expected {expect}, got {value}"
        )))
    }
}
