//! Input, output and the mapping from failures to exit codes.

use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use micromacro::system::SystemFile;
use micromacro::{parse_rational, Error, System, Q};

/// Exit codes.
pub const EXIT_FAILS: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INPUT: u8 = 3;
pub const EXIT_SOLVER: u8 = 4;

/// A failure that ends the run with a nonzero exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Solver(_)) {
            EXIT_SOLVER
        } else {
            EXIT_INPUT
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Self::input(format!("cannot serialize output: {e}"))
    }
}

pub type Outcome<T> = Result<T, Failure>;

/// What a subcommand produced: the text to emit and whether the checked
/// property (if any) holds.
pub struct Report {
    pub text: String,
    pub holds: bool,
}

impl Report {
    pub fn ok(text: String) -> Self {
        Self { text, holds: true }
    }

    pub fn json<T: serde::Serialize>(value: &T) -> Outcome<Self> {
        Ok(Self::ok(to_json(value)?))
    }

    pub fn with_verdict(mut self, holds: bool) -> Self {
        self.holds = holds;
        self
    }
}

pub fn to_json<T: serde::Serialize>(value: &T) -> Outcome<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Reads a file, or stdin for `-`.
pub fn read_input(path: &str) -> Outcome<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::input(format!("cannot read stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {path}: {e}")))
    }
}

/// Parses and validates a System JSON document. Syntax and shape errors
/// carry serde's line and column.
pub fn load_system(path: &str) -> Outcome<System> {
    let text = read_input(path)?;
    let file: SystemFile =
        serde_json::from_str(&text).map_err(|e| Failure::input(format!("{path}: {e}")))?;
    System::from_file(file).map_err(|e| Failure::input(format!("{path}: {e}")))
}

pub fn system_json(sys: &System) -> Outcome<String> {
    to_json(&sys.to_file())
}

/// Writes to the output path, or stdout when there is none.
pub fn emit(text: &str, output: Option<&Path>) -> Outcome<()> {
    match output {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::input(format!("cannot write stdout: {e}")))
        }
    }
}

pub fn rational(s: &str) -> Outcome<Q> {
    parse_rational(s).map_err(|e| Failure::usage(e.to_string()))
}

/// Comma separated list of integers.
pub fn usize_list(s: &str) -> Outcome<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Failure::usage(format!("cannot parse {t:?} as a count")))
        })
        .collect()
}

/// Comma separated list of reals.
pub fn f64_list(s: &str) -> Outcome<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Failure::usage(format!("cannot parse {t:?} as a number")))
        })
        .collect()
}

/// Edge list `0-1,1-2`.
pub fn edge_list(s: &str) -> Outcome<Vec<(usize, usize)>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            let (a, b) = t
                .split_once('-')
                .ok_or_else(|| Failure::usage(format!("edge {t:?} is not of the form a-b")))?;
            let parse = |x: &str| {
                x.trim()
                    .parse()
                    .map_err(|_| Failure::usage(format!("bad edge endpoint {x:?}")))
            };
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

/// A real with 17 significant digits.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}
