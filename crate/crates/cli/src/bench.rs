use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use edgecolor::io::parse_simple_graph;
use edgecolor::profile::ProfileName;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::color::{color_graph, ColorOptions, RunReport};
use crate::{CliError, EXIT_INPUT, EXIT_OK};

#[derive(Clone, Debug)]
pub struct BenchOptions {
    pub profile: ProfileName,
    pub epsilon: f64,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
    pub timing: bool,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions { profile: ProfileName::Desk, epsilon: 0.2, jobs: 0, timing: false }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchEntry {
    pub file: String,
    pub seed: u64,
    pub exit_code: i32,
    pub report: Option<RunReport>,
    /// Set when the file could not be read or parsed.
    pub input_error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Percentiles {
    pub p50: f64,
    pub p90: f64,
    pub p99: f64,
    pub max: f64,
}

impl Percentiles {
    /// Nearest-rank percentiles; `None` for an empty sample.
    pub fn of(mut xs: Vec<f64>) -> Option<Self> {
        if xs.is_empty() {
            return None;
        }
        xs.sort_by(f64::total_cmp);
        let rank = |q: f64| xs[((q * xs.len() as f64).ceil() as usize).clamp(1, xs.len()) - 1];
        Some(Percentiles { p50: rank(0.5), p90: rank(0.9), p99: rank(0.99), max: xs[xs.len() - 1] })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub instances: usize,
    pub successes: usize,
    pub success_rate: Option<f64>,
    /// Class verdicts, counted whether or not a coloring was produced.
    pub class_one: usize,
    pub class_two: usize,
    pub input_errors: usize,
    pub failures_by_step: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_seconds: Option<Percentiles>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub aggregate: Aggregate,
    pub instances: Vec<BenchEntry>,
}

/// 64-bit FNV-1a.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let read = fs::read_dir(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in read {
        let entry = entry.map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
        let path = entry.path();
        let hidden = entry.file_name().to_string_lossy().starts_with('.');
        if path.is_file() && !hidden {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn run_one(path: &Path, opts: &BenchOptions) -> BenchEntry {
    let file = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let seed = fnv1a(file.as_bytes());
    let failed = |msg: String| BenchEntry { file: file.clone(), seed, exit_code: EXIT_INPUT, report: None, input_error: Some(msg) };
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return failed(e.to_string()),
    };
    let g = match parse_simple_graph(&text) {
        Ok(g) => g,
        Err(e) => return failed(e.to_string()),
    };
    let copts = ColorOptions { epsilon: opts.epsilon, profile: opts.profile, seed, timing: opts.timing };
    match color_graph(&g, &copts) {
        Ok((doc, code)) => BenchEntry { file: file.clone(), seed, exit_code: code, report: Some(doc.report), input_error: None },
        Err(e) => BenchEntry { file: file.clone(), seed, exit_code: e.exit_code(), report: None, input_error: Some(e.to_string()) },
    }
}

fn aggregate(entries: &[BenchEntry], timing: bool) -> Aggregate {
    let mut agg = Aggregate { instances: entries.len(), ..Default::default() };
    let mut times = Vec::new();
    for e in entries {
        if e.exit_code == EXIT_OK {
            agg.successes += 1;
        }
        let Some(r) = &e.report else {
            agg.input_errors += 1;
            continue;
        };
        match r.class {
            Some(1) => agg.class_one += 1,
            Some(2) => agg.class_two += 1,
            _ => {}
        }
        if let Some(err) = &r.error {
            *agg.failures_by_step.entry(err.step.clone()).or_insert(0) += 1;
        }
        times.extend(r.wall_seconds);
    }
    if !entries.is_empty() {
        agg.success_rate = Some(agg.successes as f64 / entries.len() as f64);
    }
    if timing {
        agg.wall_seconds = Percentiles::of(times);
    }
    agg
}

/// `edgecolor bench`: colors every file of `dir` in parallel. Each
/// instance's seed is the FNV-1a hash of its file name, so results do not
/// depend on the worker count or scheduling.
pub fn cmd_bench(dir: &Path, opts: &BenchOptions) -> Result<BenchReport, CliError> {
    let files = corpus_files(dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| CliError::Input(format!("worker pool: {e}")))?;
    let entries: Vec<BenchEntry> = pool.install(|| files.par_iter().map(|p| run_one(p, opts)).collect());
    let aggregate = aggregate(&entries, opts.timing);
    Ok(BenchReport { aggregate, instances: entries })
}
