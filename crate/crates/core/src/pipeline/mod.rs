//! `Δ`-edge-coloring of dense even-order graphs in one of three structured
//! conditions.
//!
//! The vertex set is split into balanced halves `A`, `B`; `H` is the
//! bipartite graph of cross edges.
//!
//! 1. Color `G[A]` and `G[B]` with `k = max Δ(G[X]) + 1` colors, join
//!    strongly deficient same-side vertices that miss a common color,
//!    equalize both colorings and align their missing counts.
//! 2. Turn each of the `k` classes into a perfect matching of `G*` by
//!    exchanging short alternating paths of uncolored cross edges and
//!    same-side edges of that color. The same-side edges that lose their
//!    color form the residual graphs `R_A`, `R_B`.
//! 3. Color `R_A`, `R_B` with `ℓ` further colors and extend each new class
//!    by a perfect matching of the still-uncolored part of `H`.
//! 4. The uncolored cross edges form a bipartite graph of maximum degree
//!    `Δ − k − ℓ`, colored by König's method.

mod state;
mod step1;
mod step2;
mod step3;
mod step4;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{validate_proper, EdgeColoring};
use crate::graph::{Multigraph, SimpleGraph, VertexId};
use crate::overfull::DeficiencyView;
use crate::partition::{balanced_partition, polish, PartitionError};
use crate::profile::ConstantsProfile;

pub use state::{EdgeKind, SideState};
pub use step1::step1;
pub use step2::step2;
pub use step3::step3;
pub use step4::step4;

/// The structural hypothesis a graph is colored under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// Regular.
    Regular,
    /// Every vertex except `x` and `y` has degree `Δ`; `d(x) = d(y)`.
    TwoLight { x: VertexId, y: VertexId },
    /// A wide degree spread with many minimum-degree vertices and more than
    /// half of the vertices at `Δ`.
    WideSpread,
}

impl Condition {
    pub fn tag(&self) -> &'static str {
        match self {
            Condition::Regular => "a",
            Condition::TwoLight { .. } => "b",
            Condition::WideSpread => "c",
        }
    }

    /// The structural shape `g` has, ignoring the numeric thresholds.
    pub fn classify(g: &SimpleGraph) -> Option<Condition> {
        if g.order() == 0 {
            return None;
        }
        let view = DeficiencyView::of(g);
        if view.max_degree == view.min_degree {
            return Some(Condition::Regular);
        }
        let below: Vec<VertexId> = g.vertices().filter(|&v| view.deficiency[v] > 0).collect();
        if below.len() == 2 && g.degree(below[0]) == g.degree(below[1]) {
            return Some(Condition::TwoLight { x: below[0], y: below[1] });
        }
        if 2 * view.v_max.len() > g.order() {
            return Some(Condition::WideSpread);
        }
        None
    }

    /// The constraint pairs handed to the partition.
    fn split_pairs(&self, g: &SimpleGraph) -> Vec<(VertexId, VertexId)> {
        match *self {
            Condition::Regular => Vec::new(),
            Condition::TwoLight { x, y } => vec![(x, y)],
            Condition::WideSpread => {
                let view = DeficiencyView::of(g);
                let t = (g.order() - view.v_max.len()) / 2;
                let mut pool = view.v_min.clone();
                pool.extend(g.vertices().filter(|&v| view.deficiency[v] > 0 && g.degree(v) != view.min_degree));
                pool.chunks(2).take(t).map(|c| (c[0], c[1])).collect()
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub condition: String,
    /// Pipeline attempts made, including the successful one.
    pub attempts: usize,
    /// The error of every failed attempt, in order.
    pub failed_attempts: Vec<String>,
    pub partition_bound: usize,
    pub partition_imbalance: usize,
    pub partition_draws: usize,
    pub k: u32,
    pub s_size: usize,
    pub restricted_a: usize,
    pub restricted_b: usize,
    pub augmentation_edges: usize,
    pub equalize_rounds: usize,
    pub sides_swapped: bool,
    pub mcc_pairs_cross: usize,
    pub mcc_pairs_same_side: usize,
    pub relocations: usize,
    /// Cross pairs joined by an uncolored edge and colored directly.
    pub direct_pairs: usize,
    pub five_edge_paths: usize,
    pub seven_edge_paths: usize,
    pub searched_paths: usize,
    pub relaxed_paths: usize,
    pub residual_a_edges: usize,
    pub residual_b_edges: usize,
    pub residual_max_degree: usize,
    pub ell: u32,
    /// Complete step-3 extensions attempted, including the kept one.
    pub extension_trials: usize,
    /// Size of the cross-edge matching added for each extra color.
    pub extension_matchings: Vec<usize>,
    /// Total `|A_i*|` over the extra colors.
    pub deferred_vertices: usize,
    pub final_residual_degree: usize,
    /// Bounds that did not hold; fatal under a strict profile.
    pub diagnostics: Vec<String>,
}

impl PipelineReport {
    /// Records a violated bound, or fails when the profile is strict.
    pub(crate) fn bound(&mut self, strict: bool, err: impl FnOnce(String) -> PipelineError, msg: String) -> Result<(), PipelineError> {
        if strict {
            Err(err(msg))
        } else {
            self.diagnostics.push(msg);
            Ok(())
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error("hypothesis: {0}")]
    Hypothesis(String),
    #[error("partition: {0}")]
    Partition(#[from] PartitionError),
    #[error("step 1: {0}")]
    Step1(String),
    #[error("step 2: color {color}, pair ({u}, {v}): {msg}")]
    Step2 { color: u32, u: VertexId, v: VertexId, msg: String },
    #[error("step 2: {0}")]
    Step2Check(String),
    #[error("step 3: {0}")]
    Step3(String),
    #[error("step 4: {0}")]
    Step4(String),
}

impl PipelineError {
    pub fn step(&self) -> &'static str {
        match self {
            PipelineError::Hypothesis(_) => "hypothesis",
            PipelineError::Partition(_) => "partition",
            PipelineError::Step1(_) => "step1",
            PipelineError::Step2 { .. } | PipelineError::Step2Check(_) => "step2",
            PipelineError::Step3(_) => "step3",
            PipelineError::Step4(_) => "step4",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{error}")]
pub struct PipelineFailure {
    pub error: PipelineError,
    pub report: PipelineReport,
}

/// A `Δ(G)`-coloring of `G`, indexed like `Multigraph::from_simple(G)`.
#[derive(Clone, Debug)]
pub struct DenseColoring {
    pub graph: Multigraph,
    pub coloring: EdgeColoring,
    pub report: PipelineReport,
}

/// Checks `g` against `condition`. Structural mismatches always fail; the
/// numeric density thresholds fail only under a strict profile.
pub fn check_condition(g: &SimpleGraph, condition: Condition, profile: &ConstantsProfile, report: &mut PipelineReport) -> Result<(), PipelineError> {
    let order = g.order();
    if order == 0 || order % 2 == 1 {
        return Err(PipelineError::Hypothesis(format!("order {order} is not a positive even number")));
    }
    if g.universe() != order {
        return Err(PipelineError::Hypothesis("graph has masked vertices".into()));
    }
    let n = order / 2;
    let view = DeficiencyView::of(g);
    match condition {
        Condition::Regular => {
            if !g.is_regular() {
                return Err(PipelineError::Hypothesis("graph is not regular".into()));
            }
        }
        Condition::TwoLight { x, y } => {
            if x == y || x >= order || y >= order || g.degree(x) != g.degree(y) {
                return Err(PipelineError::Hypothesis(format!("({x}, {y}) are not two distinct vertices of equal degree")));
            }
            if g.vertices().any(|z| z != x && z != y && g.degree(z) != view.max_degree) {
                return Err(PipelineError::Hypothesis("a vertex other than the two light ones is below Δ".into()));
            }
        }
        Condition::WideSpread => {
            if view.v_max.len() < n + 1 {
                return Err(PipelineError::Hypothesis(format!("|V_Δ| = {} is below n + 1 = {}", view.v_max.len(), n + 1)));
            }
            let thr = profile.case_split.at(n);
            if ((view.max_degree - view.min_degree) as f64) < thr {
                report.bound(profile.strict, PipelineError::Hypothesis, format!("Δ − δ = {} is below {thr:.2}", view.max_degree - view.min_degree))?;
            }
            if (view.v_min.len() as f64) < thr {
                report.bound(profile.strict, PipelineError::Hypothesis, format!("|V_δ| = {} is below {thr:.2}", view.v_min.len()))?;
            }
        }
    }
    if view.min_degree <= n {
        report.bound(profile.strict, PipelineError::Hypothesis, format!("δ = {} is not above n = {n}", view.min_degree))?;
    }
    Ok(())
}

fn attempt_seed(seed: u64, attempt: u64) -> u64 {
    seed.wrapping_add(attempt.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

/// Colors `g` with `Δ(g)` colors under `condition`. Under a profile with
/// several pipeline attempts, a failed attempt is retried with a fresh
/// partition seed; the report lists every failed attempt by step.
pub fn color_dense(g: &SimpleGraph, condition: Condition, profile: &ConstantsProfile, seed: u64) -> Result<DenseColoring, PipelineFailure> {
    let mut base = PipelineReport { condition: condition.tag().to_string(), ..Default::default() };
    if let Err(error) = check_condition(g, condition, profile, &mut base) {
        return Err(PipelineFailure { error, report: base });
    }
    let mut failed = Vec::new();
    let mut last = None;
    let attempts = profile.pipeline_attempts.max(1);
    for attempt in 0..attempts {
        let mut report = base.clone();
        match run_once(g, condition, profile, attempt_seed(seed, attempt as u64), &mut report) {
            Ok((graph, coloring)) => {
                report.attempts = attempt + 1;
                report.failed_attempts = failed;
                return Ok(DenseColoring { graph, coloring, report });
            }
            Err(e) => {
                failed.push(e.to_string());
                last = Some((e, report));
            }
        }
    }
    let (error, mut report) = last.expect("at least one attempt");
    report.attempts = attempts;
    report.failed_attempts = failed;
    Err(PipelineFailure { error, report })
}

fn run_once(
    g: &SimpleGraph,
    condition: Condition,
    profile: &ConstantsProfile,
    seed: u64,
    report: &mut PipelineReport,
) -> Result<(Multigraph, EdgeColoring), PipelineError> {
    let n = g.order() / 2;
    let bound = profile.partition_bound(n, g.max_degree());
    report.partition_bound = bound;
    let pairs = condition.split_pairs(g);
    let mut part = balanced_partition(g, &pairs, bound, profile.partition_retries, seed)?;
    if profile.polish_partition {
        part = polish(g, &part, 32);
    }
    report.partition_imbalance = part.certificate;
    report.partition_draws = part.attempts;

    let mut state = step1(g, part, condition, profile, report)?;
    step2(&mut state, profile, report)?;
    step3(&mut state, profile, report)?;
    step4(&mut state, report)?;

    let graph = Multigraph::from_simple(g);
    let mut out = EdgeColoring::new(&graph, state.delta as u32);
    for e in 0..state.base_edges {
        let c = state.phi.color(e).expect("every edge colored after step 4");
        out.assign(e, c).map_err(|err| PipelineError::Step4(format!("restriction to G is improper: {err}")))?;
    }
    validate_proper(&graph, &out).map_err(|v| PipelineError::Step4(format!("color {} repeats at vertex {}", v.color, v.vertex)))?;
    Ok((graph, out))
}
