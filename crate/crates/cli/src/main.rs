use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use edgecolor::oracle::OracleBudget;
use edgecolor::profile::ProfileName;
use edgecolor_cli::{
    cmd_bench, cmd_color, cmd_detect, cmd_generate, cmd_oracle, cmd_verify, emit, to_json, BenchOptions, CliError, ColorOptions,
    GenFamily, GenerateParams, OracleOptions, EXIT_OK,
};

#[derive(Parser)]
#[command(name = "edgecolor", version, about = "Optimal edge coloring of dense even-order graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the class of a graph and color it optimally.
    Color {
        input: PathBuf,
        #[arg(long, default_value_t = 0.2)]
        epsilon: f64,
        #[arg(long, default_value = "desk")]
        profile: ProfileName,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON document here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include wall time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Generate an instance, or a corpus with --count and --out-dir.
    Generate {
        /// regular, two-light, wide-spread, random-dense or planted-overfull.
        family: GenFamily,
        /// Number of vertices (even).
        order: usize,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        deficiency: Option<usize>,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        min_degree: Option<usize>,
        #[arg(long)]
        light: Option<usize>,
        /// Edge probability for random-dense.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Check a coloring (text or JSON document) against a graph.
    Verify { graph: PathBuf, coloring: PathBuf },
    /// Color every file of a corpus directory.
    Bench {
        dir: PathBuf,
        #[arg(long, default_value = "desk")]
        profile: ProfileName,
        #[arg(long, default_value_t = 0.2)]
        epsilon: f64,
        /// Worker threads (0: one per core).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Look for an overfull or full subgraph G − v.
    DetectOverfull { input: PathBuf },
    /// Exact chromatic index of a small graph, compared with the driver.
    Oracle {
        input: PathBuf,
        #[arg(long, default_value_t = 14)]
        max_vertices: usize,
        #[arg(long, default_value_t = 10.0)]
        max_seconds: f64,
        /// Search without the counting bound.
        #[arg(long)]
        plain: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Color { input, epsilon, profile, seed, out, timing } => {
            let (doc, code) = cmd_color(&input, &ColorOptions { epsilon, profile, seed, timing })?;
            if let Some(err) = &doc.report.error {
                eprintln!("{}: {}", err.step, err.message);
            }
            emit(&to_json(&doc), out.as_deref())?;
            Ok(code)
        }
        Command::Generate { family, order, degree, deficiency, max_degree, min_degree, light, p, seed, out, count, out_dir } => {
            let params = GenerateParams { degree, deficiency, max_degree, min_degree, light, p };
            let (text, _) = cmd_generate(family, order, &params, seed, count, out_dir.as_deref())?;
            emit(&text, out.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Verify { graph, coloring } => {
            let (report, code) = cmd_verify(&graph, &coloring)?;
            if let Some(v) = &report.conflict {
                eprintln!("conflict: color {} appears twice at vertex {}", v.color, v.vertex);
            }
            emit(&to_json(&report), None)?;
            Ok(code)
        }
        Command::Bench { dir, profile, epsilon, jobs, timing, out } => {
            let report = cmd_bench(&dir, &BenchOptions { profile, epsilon, jobs, timing })?;
            emit(&to_json(&report), out.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::DetectOverfull { input } => {
            emit(&to_json(&cmd_detect(&input)?), None)?;
            Ok(EXIT_OK)
        }
        Command::Oracle { input, max_vertices, max_seconds, plain, seed } => {
            let budget = OracleBudget { max_vertices, max_seconds, counting_bound: !plain };
            let (report, code) = cmd_oracle(&input, &OracleOptions { budget, seed, ..Default::default() })?;
            emit(&to_json(&report), None)?;
            Ok(code)
        }
    }
}

fn main() -> ExitCode {
    let code = match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("edgecolor: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
