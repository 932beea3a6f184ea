//! Coloring the remaining cross edges, a bipartite graph of maximum degree
//! `Δ − k − ℓ`, with the last colors.

use crate::classic::konig_color;
use crate::graph::Multigraph;
use crate::pipeline::{EdgeKind, PipelineError, PipelineReport, SideState};

pub fn step4(state: &mut SideState, report: &mut PipelineReport) -> Result<(), PipelineError> {
    let used = state.k + state.ell;
    let target = state.delta as i64 - used as i64;
    if target < 0 {
        return Err(PipelineError::Step4(format!("k + ℓ = {used} exceeds Δ = {}", state.delta)));
    }
    let rest: Vec<usize> = (0..state.gstar.edge_count()).filter(|&e| state.phi.color(e).is_none()).collect();
    if let Some(&e) = rest.iter().find(|&&e| state.kind[e] != EdgeKind::Cross) {
        return Err(PipelineError::Step4(format!("same-side edge {e} is uncolored")));
    }
    let mut r = Multigraph::new(state.size());
    for &e in &rest {
        let id = state.gstar.edge(e);
        r.add_edge(id.u, id.v).expect("edge of G*");
    }
    let delta_r = r.max_degree();
    report.final_residual_degree = delta_r;
    if delta_r as i64 != target {
        return Err(PipelineError::Step4(format!("Δ(R) = {delta_r} but Δ − k − ℓ = {target}")));
    }
    for v in 0..state.size() {
        let dv = r.degree(v);
        let full = state.gstar.degree(v) as i64 - used as i64;
        if state.part.side[v].is_some() && !state.light[v] && dv as i64 != full {
            report.diagnostics.push(format!("vertex {v} outside V_δ has residual degree {dv}, expected {full}"));
        }
    }
    let coloring = konig_color(&r).map_err(|e| PipelineError::Step4(e.to_string()))?;
    for (j, &e) in rest.iter().enumerate() {
        let c = coloring.color(j).expect("König colors every edge");
        state.phi.assign(e, used + c).map_err(|err| PipelineError::Step4(format!("final colors: {err}")))?;
    }
    Ok(())
}
