//! Coloring the residual graphs with `ℓ` extra colors and extending each new
//! class through cross edges.
//!
//! For an extra color `c`, let `A_c`, `B_c` be the vertices covered by
//! `c`-edges of `R_A`, `R_B`. When `|B_c| > |A_c|`, the difference is made
//! up by a set `A_c*` of vertices on `A` that are allowed to miss `c`: a
//! vertex may miss at most `Δ − d_{G*}(v)` extra colors, so that its final
//! residual degree stays within `Δ − k − ℓ`. The cross edges that are still
//! uncolored between `A ∖ (A_c ∪ A_c*)` and `B ∖ B_c` must then contain a
//! perfect matching, which is colored `c`.
//!
//! Under an adaptive profile the most constrained color is extended first,
//! `A_c*` is chosen together with the matching, and the matching is a
//! least-cost one that spares cross edges later colors could use. The
//! extension is tried on a copy of the state for each admissible `ℓ` and
//! several pairings of equally sized classes of `R_A` and `R_B`, with
//! perturbed costs; the first complete extension is kept.

use pathfinding::kuhn_munkres::kuhn_munkres_min;
use pathfinding::matrix::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classic::{color_with_repair, pm_with_degree_condition};
use crate::coloring::{equalize, Color, EdgeColoring};
use crate::graph::{EdgeIdx, Multigraph, SimpleGraph, VertexId};
use crate::partition::Side;
use crate::pipeline::{Condition, EdgeKind, PipelineError, PipelineReport, SideState};
use crate::profile::{ConstantsProfile, ProfileName};

/// Pairings of tied classes tried per value of `ℓ` under an adaptive profile.
const ALIGNMENTS: usize = 8;

/// `R_side` as a standalone multigraph, with the `G*` index of each edge.
fn residual(state: &SideState, side: Side) -> (Multigraph, Vec<EdgeIdx>) {
    let edges = state.residual_edges(side);
    let mut m = Multigraph::new(state.size());
    for &e in &edges {
        let id = state.gstar.edge(e);
        m.add_edge(id.u, id.v).expect("edge of G*");
    }
    (m, edges)
}

/// Candidate values of `ℓ`, smallest first.
fn ell_candidates(state: &SideState, profile: &ConstantsProfile, ra: &Multigraph, rb: &Multigraph) -> Vec<u32> {
    let literal = profile.extra_colors_at(state.n) as u32;
    if !profile.adaptive_extra_colors {
        return vec![literal];
    }
    let room = (state.delta as u32).saturating_sub(state.k);
    let need = ra.max_degree().max(rb.max_degree()) as u32;
    (need..=literal.min(room)).collect()
}

/// Colors both residual graphs with `ell` colors and equalizes them.
fn color_residuals(ra: &Multigraph, rb: &Multigraph, ell: u32) -> Option<(EdgeColoring, EdgeColoring)> {
    let mut ca = color_with_repair(ra, ell).ok()?;
    let mut cb = color_with_repair(rb, ell).ok()?;
    equalize(&mut ca);
    equalize(&mut cb);
    Some((ca, cb))
}

pub fn step3(state: &mut SideState, profile: &ConstantsProfile, report: &mut PipelineReport) -> Result<(), PipelineError> {
    let (ra, ea) = residual(state, Side::A);
    let (rb, eb) = residual(state, Side::B);
    let alignments = if profile.adaptive_extra_colors { ALIGNMENTS } else { 1 };
    let mut last = None;
    for ell in ell_candidates(state, profile, &ra, &rb) {
        let Some((ca, cb)) = color_residuals(&ra, &rb, ell) else { continue };
        if state.k + ell > state.delta as u32 {
            last = Some(PipelineError::Step3(format!("k + ℓ = {} exceeds Δ = {}; adjust the profile", state.k + ell, state.delta)));
            continue;
        }
        for shift in 0..alignments {
            report.extension_trials += 1;
            let mut trial = state.clone();
            let mut trial_report = report.clone();
            match extend(&mut trial, profile, &mut trial_report, ell, &ca, &cb, &ea, &eb, shift) {
                Ok(()) => {
                    *state = trial;
                    *report = trial_report;
                    return Ok(());
                }
                Err(e) => last = Some(e),
            }
        }
    }
    Err(last.unwrap_or_else(|| {
        PipelineError::Step3(format!(
            "residual graphs (Δ {} and {}) not colorable with the allowed extra colors",
            ra.max_degree(),
            rb.max_degree()
        ))
    }))
}

/// Renames the classes of `ca` so that rank `r` by size on `A` meets rank
/// `r` on `B`; within a run of equally sized classes on `B` the partners
/// are rotated by `shift`.
fn align(ca: &mut EdgeColoring, cb: &EdgeColoring, ell: u32, exact: bool, shift: usize) -> Result<(), PipelineError> {
    let (sa, sb) = (ca.class_sizes(), cb.class_sizes());
    let mut oa: Vec<usize> = (0..ell as usize).collect();
    let mut ob: Vec<usize> = (0..ell as usize).collect();
    oa.sort_by_key(|&c| (sa[c], c));
    ob.sort_by_key(|&c| (sb[c], c));
    let mut start = 0;
    while start < ob.len() {
        let end = (start..ob.len()).find(|&j| sb[ob[j]] != sb[ob[start]]).unwrap_or(ob.len());
        let run = end - start;
        ob[start..end].rotate_left(shift % run);
        start = end;
    }
    let mut perm = vec![0 as Color; ell as usize];
    for r in 0..ell as usize {
        let (x, y) = (sa[oa[r]], sb[ob[r]]);
        if x > y || (exact && x != y) {
            return Err(PipelineError::Step3(format!("extra classes cannot be aligned: rank {r} has {x} edges on A and {y} on B")));
        }
        perm[oa[r]] = ob[r] as Color + 1;
    }
    if ell > 0 {
        ca.rename_colors(&perm);
    }
    Ok(())
}

/// The still-uncolored cross edges between `x` and `y`.
fn open_cross_graph(state: &SideState, x: &[VertexId], y: &[VertexId]) -> SimpleGraph {
    let mut h = SimpleGraph::new(state.size());
    for &u in x {
        for &v in y {
            if state.open_cross(u, v).is_some() {
                h.add_edge(u, v);
            }
        }
    }
    h
}

const FORBIDDEN: i64 = 1 << 40;

/// Least-cost assignment of `x` to `y` plus `deficit` vertices of `x` left
/// unmatched, along open cross edges. `cost(u, v)` prices the edge `uv`;
/// `defer(u)` is the price of leaving `u` unmatched, `None` if it must be
/// matched. Returns the pairs and the unmatched vertices.
fn cheapest_extension(
    state: &SideState,
    x: &[VertexId],
    y: &[VertexId],
    deficit: usize,
    mut cost: impl FnMut(VertexId, VertexId) -> i64,
    defer: impl Fn(VertexId) -> Option<i64>,
) -> Option<(Vec<(VertexId, VertexId)>, Vec<VertexId>)> {
    if x.len() != y.len() + deficit {
        return None;
    }
    if x.is_empty() {
        return Some((Vec::new(), Vec::new()));
    }
    let mut weights = Matrix::new(x.len(), x.len(), FORBIDDEN);
    for (i, &u) in x.iter().enumerate() {
        for (j, &v) in y.iter().enumerate() {
            if state.open_cross(u, v).is_some() {
                weights[(i, j)] = cost(u, v);
            }
        }
        if let Some(p) = defer(u) {
            for j in y.len()..x.len() {
                weights[(i, j)] = p;
            }
        }
    }
    let (total, assignment) = kuhn_munkres_min(&weights);
    if total >= FORBIDDEN {
        return None;
    }
    let mut pairs = Vec::with_capacity(y.len());
    let mut deferred = Vec::with_capacity(deficit);
    for (i, &j) in assignment.iter().enumerate() {
        if j < y.len() {
            pairs.push((x[i], y[j]));
        } else {
            deferred.push(x[i]);
        }
    }
    pairs.sort_unstable();
    Some((pairs, deferred))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    state: &mut SideState,
    profile: &ConstantsProfile,
    report: &mut PipelineReport,
    ell: u32,
    ca: &EdgeColoring,
    cb: &EdgeColoring,
    ea: &[EdgeIdx],
    eb: &[EdgeIdx],
    shift: usize,
) -> Result<(), PipelineError> {
    let k = state.k;
    let exact = state.condition != Condition::WideSpread;
    state.ell = ell;
    report.ell = ell;
    report.extension_matchings.clear();
    report.deferred_vertices = 0;

    let mut ca = ca.clone();
    align(&mut ca, cb, ell, exact, shift)?;
    for (coloring, edges) in [(&ca, ea), (cb, eb)] {
        for (j, &e) in edges.iter().enumerate() {
            let c = coloring.color(j).expect("residual colorings are complete");
            state.phi.assign(e, k + c).map_err(|err| PipelineError::Step3(format!("placing residual colors: {err}")))?;
        }
    }

    let size = state.size();
    let covered = |c: Color, side: Side| -> Vec<bool> {
        let mut out = vec![false; size];
        for &v in state.members(side) {
            if let Some(e) = state.phi.edge_with(v, c) {
                if state.kind[e] == EdgeKind::Inside(side) {
                    out[v] = true;
                }
            }
        }
        out
    };
    let in_a: Vec<Vec<bool>> = (k + 1..=k + ell).map(|c| covered(c, Side::A)).collect();
    let in_b: Vec<Vec<bool>> = (k + 1..=k + ell).map(|c| covered(c, Side::B)).collect();
    let mut missed = vec![0usize; size];
    let mut remaining: Vec<Color> = (k + 1..=k + ell).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(shift as u64);
    while !remaining.is_empty() {
        let pos = if profile.adaptive_extra_colors {
            // The color with the fewest usable cross edges goes first.
            let usable = |c: Color| {
                let (ia, ib) = (&in_a[(c - k - 1) as usize], &in_b[(c - k - 1) as usize]);
                let y: Vec<VertexId> = state.part.b.iter().copied().filter(|&v| !ib[v]).collect();
                state.part.a.iter().filter(|&&u| !ia[u]).map(|&u| y.iter().filter(|&&v| state.open_cross(u, v).is_some()).count()).sum::<usize>()
            };
            (0..remaining.len()).min_by_key(|&i| (usable(remaining[i]), i)).expect("nonempty")
        } else {
            0
        };
        let c = remaining.remove(pos);
        let (in_ac, in_bc) = (&in_a[(c - k - 1) as usize], &in_b[(c - k - 1) as usize]);
        let size_a = in_ac.iter().filter(|&&b| b).count();
        let size_b = in_bc.iter().filter(|&&b| b).count();
        let deficit = size_b - size_a;
        let budget = |v: VertexId| (state.delta - state.gstar.degree(v)).saturating_sub(missed[v]);
        let may_miss = |v: VertexId| budget(v) > 0 && (profile.name != ProfileName::Paper || state.light[v]);
        let mut x: Vec<VertexId> = state.part.a.iter().copied().filter(|&v| !in_ac[v]).collect();
        let y: Vec<VertexId> = state.part.b.iter().copied().filter(|&v| !in_bc[v]).collect();
        let pairs = if profile.adaptive_extra_colors {
            // A_c* is chosen together with the matching, which spares the
            // cross edges that later colors can still use.
            let later: Vec<usize> = remaining.iter().map(|&d| (d - k - 1) as usize).collect();
            let noise = if shift > 0 { 8 } else { 0 };
            let (pairs, deferred) = cheapest_extension(state, &x, &y, deficit, |u, v| {
                let spare = later.iter().filter(|&&d| !in_a[d][u] && !in_b[d][v]).count() as i64;
                16 * spare + if noise > 0 { rng.gen_range(0..noise) } else { 0 }
            }, |u| may_miss(u).then_some(if state.light[u] { 0 } else { 4 }))
            .ok_or_else(|| PipelineError::Step3(format!("color {c}: no matching covers B ∖ B_c and the vertices of A that must see it")))?;
            deferred.iter().for_each(|&v| missed[v] += 1);
            pairs
        } else {
            let mut deferred = vec![false; size];
            if deficit > 0 {
                let mut pool: Vec<VertexId> = x.iter().copied().filter(|&v| may_miss(v)).collect();
                pool.sort_by_key(|&v| (!state.light[v], v));
                if pool.len() < deficit {
                    return Err(PipelineError::Step3(format!(
                        "color {c}: {deficit} vertices of A must miss it but only {} may",
                        pool.len()
                    )));
                }
                for &v in &pool[..deficit] {
                    deferred[v] = true;
                    missed[v] += 1;
                }
            }
            x.retain(|&v| !deferred[v]);
            let h = open_cross_graph(state, &x, &y);
            let min_deg = x.iter().chain(&y).map(|&v| h.degree(v)).min().unwrap_or(0);
            pm_with_degree_condition(&h, &x, &y, min_deg).map_err(|e| PipelineError::Step3(format!("color {c}: {e}")))?.pairs
        };
        report.deferred_vertices += deficit;
        for &(u, v) in &pairs {
            let e = state.open_cross(u, v).expect("matching uses open cross edges");
            state.phi.assign(e, c).map_err(|err| PipelineError::Step3(format!("color {c}: {err}")))?;
        }
        report.extension_matchings.push(pairs.len());
    }

    for v in 0..size {
        if state.part.side[v].is_none() {
            continue;
        }
        let absent = (k + 1..=k + ell).filter(|&c| state.phi.is_missing(v, c)).count();
        if absent != missed[v] {
            return Err(PipelineError::Step3(format!("vertex {v} misses {absent} extra colors, expected {}", missed[v])));
        }
        if absent > 0 && !state.light[v] {
            report.diagnostics.push(format!("vertex {v} outside V_δ misses {absent} extra colors"));
        }
    }
    if state.residual_edges(Side::A).len() + state.residual_edges(Side::B).len() > 0 {
        return Err(PipelineError::Step3("same-side edges remain uncolored".into()));
    }
    Ok(())
}
