//! Command implementations behind the `edgecolor` binary.
//!
//! Every command returns a serializable report and an exit status instead
//! of printing, so tests drive the same code paths as the binary.
//!
//! Exit statuses: 0 success, 1 a verification verdict that is negative,
//! 2 input error, 3 hypothesis violation, 4 pipeline failure.

mod bench;
mod color;
mod generate;
mod inspect;
mod verify;

use std::fs;
use std::path::Path;

use edgecolor::io::parse_simple_graph;
use edgecolor::SimpleGraph;
use serde::Serialize;

pub use bench::{cmd_bench, fnv1a, Aggregate, BenchEntry, BenchOptions, BenchReport, Percentiles};
pub use color::{cmd_color, color_graph, ColorDocument, ColorOptions, RunReport, StepError};
pub use generate::{cmd_generate, generate_graph, GenFamily, GenerateParams};
pub use inspect::{cmd_detect, cmd_oracle, DetectReport, OracleOptions, OracleReport};
pub use verify::{cmd_verify, verify_coloring, SaturationStats, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_PIPELINE: i32 = 4;

/// An error that stops a command before it can produce a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Input(String),
    Hypothesis(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Hypothesis(_) => EXIT_HYPOTHESIS,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Hypothesis(m) => write!(f, "hypothesis violated: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

pub(crate) fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub(crate) fn read_graph(path: &Path) -> Result<SimpleGraph, CliError> {
    let text = read_text(path)?;
    parse_simple_graph(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Writes `text` to `out`, or to stdout when `out` is `None`.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| CliError::Input(format!("stdout: {e}")))
        }
    }
}
