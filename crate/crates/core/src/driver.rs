//! The top-level chromatic-index procedure for dense graphs of even order.
//!
//! Class 2 is decided by the overfull test and colored with `Δ + 1` colors.
//! A class-1 graph is reduced to a graph the dense pipeline can color, while
//! the removed pieces take reserved colors above the core palette:
//!
//! - with a `Δ`-full subgraph, matchings are deleted until the graph is
//!   regular;
//! - two nonadjacent vertices below `Δ` are joined (added edges are dropped
//!   from the final coloring);
//! - with few minimum-degree vertices, perfect matchings avoiding them are
//!   peeled off, one color each, until the spread closes or only two light
//!   vertices remain;
//! - with a small spread, a multigraph realizing the deficiencies is split
//!   into small matchings, each routed through a spanning linear forest that
//!   takes two colors, leaving a regular graph.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::classic::realize_labeled;
use crate::classic::{dirac_hamiltonian_cycle, path_system, vizing_color};
use crate::coloring::{validate_proper, Color, EdgeColoring};
use crate::error::ClassicError;
use crate::graph::{Multigraph, SimpleGraph, VertexId};
use crate::overfull::{detect, regularize_via_full, DeficiencyView, OverfullStatus};
use crate::pipeline::{color_dense, Condition, PipelineFailure, PipelineReport};
use crate::profile::ConstantsProfile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphClass {
    One,
    Two,
}

impl GraphClass {
    pub fn number(self) -> u8 {
        match self {
            GraphClass::One => 1,
            GraphClass::Two => 2,
        }
    }
}

impl Serialize for GraphClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.number())
    }
}

/// Why a matching was removed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeelKind {
    /// Regularizing a graph with a `Δ`-full subgraph.
    Full,
    /// A perfect matching of the vertices outside `V_δ` (and possibly one
    /// middle-degree vertex).
    Peel,
    /// One half of a double peel, covering the named light vertex.
    Through(VertexId),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReductionStep {
    AddEdge {
        u: VertexId,
        v: VertexId,
    },
    Matching {
        peel: PeelKind,
        edges: Vec<(VertexId, VertexId)>,
        color: Color,
    },
    /// Summary of the deficiency multigraph and its split into matchings.
    Hakimi {
        deficiency: Vec<usize>,
        edges: usize,
        max_degree: usize,
        max_multiplicity: u32,
        matchings: usize,
        matching_cap: usize,
    },
    /// Paths joining the pairs of one matching and covering every vertex;
    /// path edges alternate between the two colors.
    LinearForest {
        pairs: Vec<(VertexId, VertexId)>,
        paths: Vec<Vec<VertexId>>,
        colors: [Color; 2],
    },
}

/// Ordered log of every transformation between the input and the core
/// graph handed to the pipeline.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    /// Branches taken, in order.
    pub route: Vec<String>,
    pub steps: Vec<ReductionStep>,
    /// Tag of the condition the core graph was colored under.
    pub core_condition: Option<String>,
    /// Thresholds that did not hold; fatal under a strict profile.
    pub diagnostics: Vec<String>,
}

fn key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    (u.min(v), u.max(v))
}

impl ReductionTrace {
    /// Applies `steps` to `g`: added edges are inserted and reserved edges
    /// removed.
    pub fn replay_steps(g: &SimpleGraph, steps: &[ReductionStep]) -> Result<SimpleGraph, String> {
        let mut cur = g.clone();
        let remove = |cur: &mut SimpleGraph, u: VertexId, v: VertexId| {
            if cur.remove_edge(u, v) {
                Ok(())
            } else {
                Err(format!("reserved edge {u}-{v} is not in the graph"))
            }
        };
        for step in steps {
            match step {
                ReductionStep::AddEdge { u, v } => {
                    if !cur.add_edge(*u, *v) {
                        return Err(format!("added edge {u}-{v} is already present"));
                    }
                }
                ReductionStep::Matching { edges, .. } => {
                    for &(u, v) in edges {
                        remove(&mut cur, u, v)?;
                    }
                }
                ReductionStep::Hakimi { .. } => {}
                ReductionStep::LinearForest { paths, .. } => {
                    for p in paths {
                        for w in p.windows(2) {
                            remove(&mut cur, w[0], w[1])?;
                        }
                    }
                }
            }
        }
        Ok(cur)
    }

    /// The graph the core coloring is for.
    pub fn replay(&self, g: &SimpleGraph) -> Result<SimpleGraph, String> {
        Self::replay_steps(g, &self.steps)
    }

    /// Every reserved edge with its color.
    pub fn reserved_edges(&self) -> Vec<(VertexId, VertexId, Color)> {
        let mut out = Vec::new();
        for step in &self.steps {
            match step {
                ReductionStep::Matching { edges, color, .. } => out.extend(edges.iter().map(|&(u, v)| (u, v, *color))),
                ReductionStep::LinearForest { paths, colors, .. } => {
                    for p in paths {
                        for (j, w) in p.windows(2).enumerate() {
                            out.push((w[0], w[1], colors[j % 2]));
                        }
                    }
                }
                _ => {}
            }
        }
        out
    }

    /// Reserved colors in step order; each matching contributes one, each
    /// forest two.
    pub fn reserved_colors(&self) -> Vec<Color> {
        let mut out = Vec::new();
        for step in &self.steps {
            match step {
                ReductionStep::Matching { color, .. } => out.push(*color),
                ReductionStep::LinearForest { colors, .. } => out.extend(colors),
                _ => {}
            }
        }
        out
    }

    /// Merges the reserved classes with a coloring of the core graph and
    /// restricts the result to the edges of `g`.
    pub fn recombine(&self, g: &SimpleGraph, core: &CoreColoring) -> Result<(Multigraph, EdgeColoring), String> {
        let palette = g.max_degree() as Color;
        let core_palette = core.coloring.palette();
        let mut seen = BTreeSet::new();
        for c in self.reserved_colors() {
            if c <= core_palette || c > palette {
                return Err(format!("reserved color {c} is outside ({core_palette}, {palette}]"));
            }
            if !seen.insert(c) {
                return Err(format!("reserved color {c} is used twice"));
            }
        }
        if core_palette as usize + seen.len() != palette as usize {
            return Err(format!("core palette {core_palette} and {} reserved colors do not add up to {palette}", seen.len()));
        }
        let mut colors: HashMap<(VertexId, VertexId), Color> = HashMap::new();
        let cm = Multigraph::from_simple(&core.graph);
        for (e, id) in cm.edges().iter().enumerate() {
            let c = core.coloring.color(e).ok_or_else(|| format!("core edge {}-{} is uncolored", id.u, id.v))?;
            colors.insert(key(id.u, id.v), c);
        }
        for (u, v, c) in self.reserved_edges() {
            if colors.insert(key(u, v), c).is_some() {
                return Err(format!("edge {u}-{v} is colored twice"));
            }
        }
        let graph = Multigraph::from_simple(g);
        let mut out = EdgeColoring::new(&graph, palette);
        for (e, id) in graph.edges().iter().enumerate() {
            let c = *colors.get(&key(id.u, id.v)).ok_or_else(|| format!("edge {}-{} received no color", id.u, id.v))?;
            out.assign(e, c).map_err(|err| err.to_string())?;
        }
        validate_proper(&graph, &out).map_err(|v| format!("color {} repeats at vertex {}", v.color, v.vertex))?;
        Ok((graph, out))
    }
}

/// The pipeline's coloring of the reduced graph.
#[derive(Clone, Debug)]
pub struct CoreColoring {
    pub graph: SimpleGraph,
    /// Indexed like `Multigraph::from_simple(&graph)`.
    pub coloring: EdgeColoring,
    pub report: PipelineReport,
}

#[derive(Clone, Debug)]
pub struct DriverOutcome {
    pub class: GraphClass,
    pub graph: Multigraph,
    /// `Δ` colors for class 1, `Δ + 1` for class 2.
    pub coloring: EdgeColoring,
    pub trace: ReductionTrace,
    pub core: Option<CoreColoring>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DriverError {
    #[error("hypothesis: {0}")]
    Hypothesis(String),
    #[error("{stage}: {msg}")]
    Reduction { stage: &'static str, msg: String },
    #[error("core ({condition}): {failure}")]
    Core { condition: String, failure: Box<PipelineFailure> },
    #[error("recombine: {0}")]
    Recombine(String),
}

impl DriverError {
    /// Name of the stage that failed, e.g. `case2` or `core/step2`.
    pub fn step(&self) -> String {
        match self {
            DriverError::Hypothesis(_) => "hypothesis".into(),
            DriverError::Reduction { stage, .. } => (*stage).into(),
            DriverError::Core { failure, .. } => format!("core/{}", failure.error.step()),
            DriverError::Recombine(_) => "recombine".into(),
        }
    }

    fn reduction(stage: &'static str, msg: impl ToString) -> Self {
        DriverError::Reduction { stage, msg: msg.to_string() }
    }
}

/// A failed run. The class is known whenever the input met the hypothesis,
/// even if no coloring could be built.
#[derive(Debug, Error, Clone)]
#[error("{error}")]
pub struct DriverFailure {
    pub class: Option<GraphClass>,
    pub error: DriverError,
    pub trace: ReductionTrace,
}

fn check_input(g: &SimpleGraph, epsilon: f64, profile: &ConstantsProfile, trace: &mut ReductionTrace) -> Result<(), DriverError> {
    let order = g.order();
    if order == 0 || order % 2 == 1 {
        return Err(DriverError::Hypothesis(format!("order {order} is not a positive even number")));
    }
    if g.universe() != order {
        return Err(DriverError::Hypothesis("graph has masked vertices".into()));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(DriverError::Hypothesis(format!("epsilon {epsilon} is not in (0, 1)")));
    }
    let n = order / 2;
    let delta_min = g.min_degree();
    if delta_min <= n {
        return Err(DriverError::Hypothesis(format!("minimum degree {delta_min} is not above n = {n}")));
    }
    let need = (1.0 + epsilon) * n as f64;
    if (delta_min as f64) < need {
        let msg = format!("minimum degree {delta_min} is below (1 + ε)n = {need:.2}");
        if profile.strict {
            return Err(DriverError::Hypothesis(msg));
        }
        trace.diagnostics.push(msg);
    }
    Ok(())
}

/// Decides the class of `g` and colors it optimally.
///
/// The run is a deterministic function of its arguments; `seed` only feeds
/// the pipeline's partition.
pub fn chi_prime_dense(g: &SimpleGraph, epsilon: f64, profile: &ConstantsProfile, seed: u64) -> Result<DriverOutcome, DriverFailure> {
    let mut trace = ReductionTrace::default();
    if let Err(error) = check_input(g, epsilon, profile, &mut trace) {
        return Err(DriverFailure { class: None, error, trace });
    }
    let verdict = match detect(g) {
        Ok(v) => v,
        Err(e) => return Err(DriverFailure { class: None, error: DriverError::Hypothesis(e.to_string()), trace }),
    };
    if verdict.status == OverfullStatus::OverfullFound {
        trace.route.push("overfull".into());
        let (graph, coloring) = vizing_color(g);
        return Ok(DriverOutcome { class: GraphClass::Two, graph, coloring, trace, core: None });
    }
    let built = reduce(g, epsilon, profile, seed, &mut trace).and_then(|core| {
        let (graph, coloring) = trace.recombine(g, &core).map_err(DriverError::Recombine)?;
        match trace.replay(g) {
            Ok(r) if r == core.graph => Ok((graph, coloring, core)),
            Ok(_) => Err(DriverError::Recombine("replaying the trace does not give the core graph".into())),
            Err(e) => Err(DriverError::Recombine(e)),
        }
    });
    match built {
        Ok((graph, coloring, core)) => Ok(DriverOutcome { class: GraphClass::One, graph, coloring, trace, core: Some(core) }),
        Err(error) => Err(DriverFailure { class: Some(GraphClass::One), error, trace }),
    }
}

fn reduce(g: &SimpleGraph, epsilon: f64, profile: &ConstantsProfile, seed: u64, trace: &mut ReductionTrace) -> Result<CoreColoring, DriverError> {
    let n = g.order() / 2;
    let threshold = profile.case_split.at(n);
    let mut cur = g.clone();
    loop {
        if cur.is_regular() {
            trace.route.push("regular".into());
            return core(&cur, Condition::Regular, profile, seed, trace);
        }
        let verdict = detect(&cur).map_err(|e| DriverError::reduction("reduce", e))?;
        match verdict.status {
            OverfullStatus::OverfullFound => {
                return Err(DriverError::reduction(
                    "reduce",
                    format!("reduced graph is overfull after deleting {}", verdict.witness.unwrap()),
                ));
            }
            OverfullStatus::FullFound => {
                regularize(&mut cur, trace)?;
                return core(&cur, Condition::Regular, profile, seed, trace);
            }
            OverfullStatus::None => {}
        }

        let sat = saturate_light_vertices(&cur);
        if !sat.added.is_empty() {
            trace.route.push("saturate".into());
            trace.steps.extend(sat.added.iter().map(|&(u, v)| ReductionStep::AddEdge { u, v }));
            cur = sat.graph;
        }
        if sat.full {
            regularize(&mut cur, trace)?;
            return core(&cur, Condition::Regular, profile, seed, trace);
        }
        if cur.is_regular() {
            continue;
        }

        let view = DeficiencyView::of(&cur);
        let spread = view.max_degree - view.min_degree;
        if view.v_min.len() as f64 >= threshold && spread as f64 >= threshold {
            trace.route.push("wide-spread".into());
            return core(&cur, Condition::WideSpread, profile, seed, trace);
        }
        if (spread as f64) < threshold {
            cur = case2_reduce(&cur, epsilon, profile, trace)?;
            return core(&cur, Condition::Regular, profile, seed, trace);
        }
        let (next, outcome) = case1_reduce(&cur, trace)?;
        cur = next;
        if let Case1Outcome::TwoLight { x, y } = outcome {
            return core(&cur, Condition::TwoLight { x, y }, profile, seed, trace);
        }
    }
}

fn core(g: &SimpleGraph, condition: Condition, profile: &ConstantsProfile, seed: u64, trace: &mut ReductionTrace) -> Result<CoreColoring, DriverError> {
    trace.core_condition = Some(condition.tag().to_string());
    match color_dense(g, condition, profile, seed) {
        Ok(out) => Ok(CoreColoring { graph: g.clone(), coloring: out.coloring, report: out.report }),
        Err(failure) => Err(DriverError::Core { condition: condition.tag().to_string(), failure: Box::new(failure) }),
    }
}

/// Replaces `cur` by a regular spanning subgraph, reserving one color per
/// deleted matching from the top of the palette down.
fn regularize(cur: &mut SimpleGraph, trace: &mut ReductionTrace) -> Result<(), DriverError> {
    trace.route.push("full".into());
    let reg = regularize_via_full(cur).map_err(|e| DriverError::reduction("full", e))?;
    let top = cur.max_degree() as Color;
    for (j, edges) in reg.matchings.into_iter().enumerate() {
        trace.steps.push(ReductionStep::Matching { peel: PeelKind::Full, edges, color: top - j as Color });
    }
    *cur = reg.regular;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Saturation {
    pub graph: SimpleGraph,
    /// Added edges in insertion order.
    pub added: Vec<(VertexId, VertexId)>,
    /// Whether the last addition created a `Δ`-full subgraph.
    pub full: bool,
}

/// Joins nonadjacent vertices of degree below `Δ`, lowest pair first, until
/// the light vertices form a clique or a `Δ`-full subgraph appears.
///
/// The input must have no overfull or full subgraph; each addition keeps
/// `Δ` and cannot create an overfull subgraph.
pub fn saturate_light_vertices(g: &SimpleGraph) -> Saturation {
    let delta = g.max_degree();
    let mut cur = g.clone();
    let mut added = Vec::new();
    loop {
        let light: Vec<VertexId> = cur.vertices().filter(|&v| cur.degree(v) < delta).collect();
        let pair = light
            .iter()
            .enumerate()
            .find_map(|(i, &u)| light[i + 1..].iter().find(|&&v| !cur.has_edge(u, v)).map(|&v| (u, v)));
        let Some((u, v)) = pair else {
            return Saturation { graph: cur, added, full: false };
        };
        cur.add_edge(u, v);
        added.push((u, v));
        debug_assert_eq!(cur.max_degree(), delta);
        if let Ok(verdict) = detect(&cur) {
            debug_assert_ne!(verdict.status, OverfullStatus::OverfullFound);
            if verdict.status == OverfullStatus::FullFound && !cur.is_regular() {
                return Saturation { graph: cur, added, full: true };
            }
        }
    }
}

/// Perfect matching of the live vertices of `h` from alternate edges of a
/// Hamiltonian cycle.
fn perfect_matching(h: &SimpleGraph) -> Result<Vec<(VertexId, VertexId)>, ClassicError> {
    let live: Vec<VertexId> = h.vertices().collect();
    match live.len() {
        0 => Ok(Vec::new()),
        2 if h.has_edge(live[0], live[1]) => Ok(vec![(live[0], live[1])]),
        n if n % 2 == 1 || n == 2 => Err(ClassicError::NoPerfectMatching { found: 0, needed: n / 2 }),
        _ => {
            let cycle = dirac_hamiltonian_cycle(h)?;
            Ok(cycle.chunks(2).map(|p| key(p[0], p[1])).collect())
        }
    }
}

/// Perfect matching of `h` containing `x x*` for the lowest neighbor `x*`
/// of `x`; the rest comes from `h − x − x*`, whose minimum degree does not
/// depend on `x`'s.
fn perfect_matching_through(h: &SimpleGraph, x: VertexId) -> Result<Vec<(VertexId, VertexId)>, ClassicError> {
    let xs = h.neighbors(x).next().ok_or(ClassicError::Hypothesis(format!("vertex {x} has no neighbor left")))?;
    let mut m = perfect_matching(&h.without(&[x, xs]))?;
    m.push(key(x, xs));
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case1Outcome {
    /// One matching was peeled; the result goes back through the driver.
    Peeled,
    /// Double peels left every vertex at `Δ` except two light ones.
    TwoLight { x: VertexId, y: VertexId },
}

/// Reduction when few vertices have minimum degree.
///
/// With `|V_δ|` even, or odd with a middle-degree vertex `v` (lowest index),
/// peels a perfect matching of `G − V_δ` (resp. `G − v − V_δ`): `Δ` drops by
/// one and `δ` stays. Otherwise `δ` and `Δ` have equal parity and, for two
/// light vertices `x`, `y`, each of `(Δ − δ)/2` rounds removes a perfect
/// matching of `G − (V_δ ∖ {x})` and one of `G − (V_δ ∖ {y})`, colored
/// `δ + 2i − 1` and `δ + 2i`; the result has `x` and `y` light and every
/// other vertex at degree `δ`.
pub fn case1_reduce(g: &SimpleGraph, trace: &mut ReductionTrace) -> Result<(SimpleGraph, Case1Outcome), DriverError> {
    let view = DeficiencyView::of(g);
    let (delta, dmin) = (view.max_degree, view.min_degree);
    let light = &view.v_min;
    let middle = g.vertices().find(|&v| g.degree(v) > dmin && g.degree(v) < delta);
    let mut cur = g.clone();
    if light.len() % 2 == 0 || middle.is_some() {
        let mut drop = light.clone();
        let route = match middle {
            Some(v) if light.len() % 2 == 1 => {
                drop.push(v);
                "case1-middle"
            }
            _ => "case1-even",
        };
        trace.route.push(route.into());
        let edges = perfect_matching(&g.without(&drop)).map_err(|e| DriverError::reduction("case1", e))?;
        for &(u, v) in &edges {
            cur.remove_edge(u, v);
        }
        trace.steps.push(ReductionStep::Matching { peel: PeelKind::Peel, edges, color: delta as Color });
        if cur.max_degree() + 1 != delta || cur.min_degree() != dmin {
            return Err(DriverError::reduction("case1", "peel did not lower Δ by one while keeping δ"));
        }
        return Ok((cur, Case1Outcome::Peeled));
    }

    trace.route.push("case1-double".into());
    if (delta - dmin) % 2 == 1 {
        return Err(DriverError::reduction("case1", format!("Δ = {delta} and δ = {dmin} differ in parity")));
    }
    if light.len() < 3 {
        return Err(DriverError::reduction("case1", format!("|V_δ| = {} is below 3", light.len())));
    }
    let (x, y) = (light[0], light[1]);
    let except = |keep: VertexId| -> Vec<VertexId> { light.iter().copied().filter(|&v| v != keep).collect() };
    let (drop_x, drop_y) = (except(x), except(y));
    for i in 1..=(delta - dmin) / 2 {
        for (end, drop, color) in [(x, &drop_x, dmin + 2 * i - 1), (y, &drop_y, dmin + 2 * i)] {
            let h = cur.without(drop);
            let found = if i == 1 { perfect_matching(&h) } else { perfect_matching_through(&h, end) };
            let edges = found.map_err(|e| DriverError::reduction("case1", format!("round {i}, matching through {end}: {e}")))?;
            for &(u, v) in &edges {
                cur.remove_edge(u, v);
            }
            trace.steps.push(ReductionStep::Matching { peel: PeelKind::Through(end), edges, color: color as Color });
        }
    }
    if Condition::classify(&cur) != Some(Condition::TwoLight { x, y }) {
        return Err(DriverError::reduction("case1", "double peels did not leave exactly two light vertices"));
    }
    Ok((cur, Case1Outcome::TwoLight { x, y }))
}

/// Splits the edges of `h` into matchings of at most `cap` edges, each a
/// maximal such matching of the edges left, scanning in index order.
fn split_into_matchings(h: &Multigraph, cap: usize) -> Vec<Vec<(VertexId, VertexId)>> {
    let mut rest: Vec<(VertexId, VertexId)> = h.edges().iter().map(|id| (id.u, id.v)).collect();
    let mut out = Vec::new();
    while !rest.is_empty() {
        let mut used = vec![false; h.vertex_count()];
        let mut taken = Vec::new();
        let mut keep = Vec::new();
        for (u, v) in rest {
            if taken.len() < cap && !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                taken.push((u, v));
            } else {
                keep.push((u, v));
            }
        }
        out.push(taken);
        rest = keep;
    }
    out
}

/// Reduction when the degree spread is small.
///
/// Realizes the deficiencies as a multigraph `H`, splits `E(H)` into `k`
/// matchings of at most `max(1, ⌊εn/5⌋)` edges (more under
/// `balanced_forests`) and, for each matching, removes a spanning linear
/// forest whose leaves are exactly its endpoints.
/// The remainder is `(Δ − 2k)`-regular; forest `i` takes colors
/// `Δ − 2k + 2i − 1` and `Δ − 2k + 2i`.
pub fn case2_reduce(g: &SimpleGraph, epsilon: f64, profile: &ConstantsProfile, trace: &mut ReductionTrace) -> Result<SimpleGraph, DriverError> {
    trace.route.push("case2".into());
    let n = g.order() / 2;
    let view = DeficiencyView::of(g);
    let delta = view.max_degree;
    let h = realize_labeled(&view.deficiency)
        .ok_or_else(|| DriverError::reduction("case2", "the deficiencies are not realizable by a multigraph"))?;
    let mut cap = ((epsilon * n as f64 / 5.0).floor() as usize).max(1);
    if profile.balanced_forests {
        // Forest i needs δ − 2(i − 1) ≥ n + 1.5(t − 1) + 1/2 for matchings of
        // t edges, and there are about |E(H)|/t forests.
        cap = cap.max((4.0 * h.edge_count() as f64 / 3.0).sqrt().ceil() as usize);
    }
    let matchings = split_into_matchings(&h, cap);
    let k = matchings.len();
    trace.steps.push(ReductionStep::Hakimi {
        deficiency: view.deficiency.clone(),
        edges: h.edge_count(),
        max_degree: h.max_degree(),
        max_multiplicity: h.max_multiplicity(),
        matchings: k,
        matching_cap: cap,
    });
    let k_cap = 5.0 * (n as f64).powf(6.0 / 7.0) / epsilon;
    if k as f64 > k_cap {
        let msg = format!("{k} matchings exceed 5n^(6/7)/ε = {k_cap:.1}");
        if profile.strict {
            return Err(DriverError::reduction("case2", msg));
        }
        trace.diagnostics.push(msg);
    }
    if 2 * k >= delta {
        return Err(DriverError::reduction("case2", format!("2k = {} leaves no room below Δ = {delta}", 2 * k)));
    }
    let mut cur = g.clone();
    let base = (delta - 2 * k) as Color;
    for (i, pairs) in matchings.into_iter().enumerate() {
        let system = path_system(&cur, &pairs).map_err(|e| DriverError::reduction("case2", format!("forest {}: {e}", i + 1)))?;
        for (u, v) in system.edges() {
            cur.remove_edge(u, v);
        }
        let c = base + 2 * i as Color;
        trace.steps.push(ReductionStep::LinearForest { pairs, paths: system.paths, colors: [c + 1, c + 2] });
    }
    if !cur.is_regular() || cur.max_degree() != delta - 2 * k {
        return Err(DriverError::reduction("case2", format!("remainder is not {}-regular", delta - 2 * k)));
    }
    Ok(cur)
}
