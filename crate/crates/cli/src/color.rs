use std::path::Path;
use std::time::Instant;

use edgecolor::driver::{chi_prime_dense, DriverError, ReductionTrace};
use edgecolor::io::write_coloring;
use edgecolor::overfull::DeficiencyView;
use edgecolor::pipeline::PipelineReport;
use edgecolor::profile::{ConstantsProfile, ProfileName};
use edgecolor::SimpleGraph;
use serde::{Deserialize, Serialize};

use crate::{read_graph, CliError, EXIT_HYPOTHESIS, EXIT_OK, EXIT_PIPELINE};

#[derive(Clone, Debug)]
pub struct ColorOptions {
    pub epsilon: f64,
    pub profile: ProfileName,
    pub seed: u64,
    /// Record wall time in the report. Off by default so that reports are
    /// byte-stable.
    pub timing: bool,
}

impl Default for ColorOptions {
    fn default() -> Self {
        ColorOptions { epsilon: 0.2, profile: ProfileName::Desk, seed: 0, timing: false }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepError {
    pub step: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub order: usize,
    pub max_degree: usize,
    pub min_degree: usize,
    /// `|V_δ|`.
    pub min_degree_vertices: usize,
    /// `|V_Δ|`.
    pub max_degree_vertices: usize,
    /// Tag of the condition the core graph was colored under, if any.
    pub condition: Option<String>,
    pub class: Option<u8>,
    pub palette: Option<u32>,
    /// `ok`, `hypothesis` or `pipeline`.
    pub status: String,
    pub error: Option<StepError>,
    pub trace: ReductionTrace,
    pub pipeline: Option<PipelineReport>,
    pub profile: ConstantsProfile,
    pub epsilon: f64,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_seconds: Option<f64>,
}

/// The output of `color`: the run report and, on success, the coloring in
/// the text format of [`edgecolor::io`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColorDocument {
    pub report: RunReport,
    pub coloring: Option<String>,
}

/// Runs the driver on `g` and returns the document with its exit status.
pub fn color_graph(g: &SimpleGraph, opts: &ColorOptions) -> Result<(ColorDocument, i32), CliError> {
    if g.order() == 0 {
        return Err(CliError::Hypothesis("the graph has no vertices".into()));
    }
    let profile = ConstantsProfile::named(opts.profile);
    let view = DeficiencyView::of(g);
    let start = Instant::now();
    let result = chi_prime_dense(g, opts.epsilon, &profile, opts.seed);
    let wall = opts.timing.then(|| start.elapsed().as_secs_f64());

    let mut report = RunReport {
        order: g.order(),
        max_degree: view.max_degree,
        min_degree: view.min_degree,
        min_degree_vertices: view.v_min.len(),
        max_degree_vertices: view.v_max.len(),
        condition: None,
        class: None,
        palette: None,
        status: "ok".into(),
        error: None,
        trace: ReductionTrace::default(),
        pipeline: None,
        profile,
        epsilon: opts.epsilon,
        seed: opts.seed,
        wall_seconds: wall,
    };
    match result {
        Ok(out) => {
            report.condition = out.trace.core_condition.clone();
            report.class = Some(out.class.number());
            report.palette = Some(out.coloring.palette());
            report.pipeline = out.core.map(|c| c.report);
            report.trace = out.trace;
            let coloring = write_coloring(&out.graph, &out.coloring);
            Ok((ColorDocument { report, coloring: Some(coloring) }, EXIT_OK))
        }
        Err(fail) => {
            let code = match fail.error {
                DriverError::Hypothesis(_) => EXIT_HYPOTHESIS,
                _ => EXIT_PIPELINE,
            };
            report.status = if code == EXIT_HYPOTHESIS { "hypothesis" } else { "pipeline" }.into();
            report.condition = fail.trace.core_condition.clone();
            report.class = fail.class.map(|c| c.number());
            report.error = Some(StepError { step: fail.error.step(), message: fail.error.to_string() });
            if let DriverError::Core { failure, .. } = &fail.error {
                report.pipeline = Some(failure.report.clone());
            }
            report.trace = fail.trace;
            Ok((ColorDocument { report, coloring: None }, code))
        }
    }
}

/// `edgecolor color`: reads an edge list and colors it.
pub fn cmd_color(input: &Path, opts: &ColorOptions) -> Result<(ColorDocument, i32), CliError> {
    let g = read_graph(input)?;
    color_graph(&g, opts)
}
