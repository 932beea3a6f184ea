//! Side colorings, same-side augmentation, equalization and alignment.

use crate::classic::misra_gries;
use crate::coloring::{equalize, EdgeColoring};
use crate::graph::{Multigraph, SimpleGraph, VertexId};
use crate::partition::PartitionAB;
use crate::pipeline::{Condition, PipelineError, PipelineReport, SideState};
use crate::profile::ConstantsProfile;

/// One side's multigraph and its `k`-coloring. Edges `0..base` come from
/// `G[X]`; the rest were added between deficient vertices.
struct SideColoring {
    graph: Multigraph,
    coloring: EdgeColoring,
    base: usize,
    added: Vec<(VertexId, VertexId)>,
}

impl SideColoring {
    fn new(g: &SimpleGraph, k: u32) -> Result<Self, PipelineError> {
        let graph = Multigraph::from_simple(g);
        let mut coloring = EdgeColoring::new(&graph, k);
        misra_gries(&graph, &mut coloring).map_err(|e| PipelineError::Step1(format!("side coloring: {e}")))?;
        let base = graph.edge_count();
        Ok(SideColoring { graph, coloring, base, added: Vec::new() })
    }

    /// Repeatedly joins the lowest pair of `members` that miss a common
    /// color, coloring the new edge with the lowest such color. A vertex
    /// already at degree `delta` in `G*` is never joined.
    fn augment(&mut self, g: &SimpleGraph, members: &[VertexId], delta: usize) {
        let mut extra = vec![0usize; g.universe()];
        loop {
            let mut found = None;
            'search: for (ix, &u) in members.iter().enumerate() {
                if g.degree(u) + extra[u] >= delta {
                    continue;
                }
                for &v in &members[ix + 1..] {
                    if g.degree(v) + extra[v] >= delta {
                        continue;
                    }
                    if let Some(c) = self.coloring.first_common_missing(u, v) {
                        found = Some((u, v, c));
                        break 'search;
                    }
                }
            }
            let Some((u, v, c)) = found else { break };
            let e = self.graph.add_edge(u, v).expect("distinct vertices");
            let e2 = self.coloring.push_edge(u, v);
            debug_assert_eq!(e, e2);
            self.coloring.assign(e, c).expect("common missing color");
            extra[u] += 1;
            extra[v] += 1;
            self.added.push((u, v));
        }
    }
}

/// Renames the colors of `a` so that, rank by rank, its class sizes match
/// (`exact`) or do not exceed those of `b`.
fn align(a: &mut EdgeColoring, b: &EdgeColoring, exact: bool) -> Result<(), String> {
    let (sa, sb) = (a.class_sizes(), b.class_sizes());
    let k = sa.len();
    let mut oa: Vec<usize> = (0..k).collect();
    let mut ob: Vec<usize> = (0..k).collect();
    oa.sort_by_key(|&c| (sa[c], c));
    ob.sort_by_key(|&c| (sb[c], c));
    let mut perm = vec![0u32; k];
    for r in 0..k {
        let (x, y) = (sa[oa[r]], sb[ob[r]]);
        if (exact && x != y) || x > y {
            return Err(format!("class sizes cannot be aligned: rank {r} has {x} edges on A and {y} on B"));
        }
        perm[oa[r]] = ob[r] as u32 + 1;
    }
    a.rename_colors(&perm);
    Ok(())
}

fn swap_sides(part: &mut PartitionAB) {
    std::mem::swap(&mut part.a, &mut part.b);
    for s in part.side.iter_mut().flatten() {
        *s = s.other();
    }
}

pub fn step1(
    g: &SimpleGraph,
    mut part: PartitionAB,
    condition: Condition,
    profile: &ConstantsProfile,
    report: &mut PipelineReport,
) -> Result<SideState, PipelineError> {
    let size = g.universe();
    let n = g.order() / 2;
    let delta = g.max_degree();
    let min_degree = g.min_degree();
    let s_threshold = profile.s_deficiency.at(n);
    let in_s: Vec<bool> = (0..size).map(|v| g.is_live(v) && ((delta - g.degree(v)) as f64) >= s_threshold).collect();
    report.s_size = in_s.iter().filter(|&&b| b).count();

    let ga = g.induced_on(&part.a);
    let gb = g.induced_on(&part.b);
    let k = ga.max_degree().max(gb.max_degree()) as u32 + 1;
    if k as usize > delta {
        return Err(PipelineError::Step1(format!("k = {k} exceeds Δ = {delta}")));
    }
    report.k = k;
    let mut sides = [SideColoring::new(&ga, k)?, SideColoring::new(&gb, k)?];
    for (side, members) in sides.iter_mut().zip([&part.a, &part.b]) {
        let s_members: Vec<VertexId> = members.iter().copied().filter(|&v| in_s[v]).collect();
        side.augment(g, &s_members, delta);
        report.augmentation_edges += side.added.len();
        report.equalize_rounds += equalize(&mut side.coloring).rounds;
    }

    if condition == Condition::WideSpread && sides[0].graph.edge_count() > sides[1].graph.edge_count() {
        sides.swap(0, 1);
        swap_sides(&mut part);
        report.sides_swapped = true;
    }
    let exact = condition != Condition::WideSpread;
    let (left, right) = sides.split_at_mut(1);
    align(&mut left[0].coloring, &right[0].coloring, exact).map_err(PipelineError::Step1)?;

    let missing_a: Vec<usize> = (1..=k).map(|i| sides[0].coloring.missing_among(i, part.a.iter().copied())).collect();
    let missing_b: Vec<usize> = (1..=k).map(|i| sides[1].coloring.missing_among(i, part.b.iter().copied())).collect();
    for i in 0..k as usize {
        if missing_a[i] % 2 != missing_b[i] % 2 {
            return Err(PipelineError::Step1(format!(
                "color {}: missing counts {} and {} differ in parity",
                i + 1,
                missing_a[i],
                missing_b[i]
            )));
        }
    }

    let nf = n as f64;
    let total_cap = 4.0 * nf.powf(5.0 / 3.0) - 2.0 * nf;
    let color_cap = 4.0 * nf.powf(2.0 / 3.0);
    for (label, side, members, missing) in [("A", &sides[0], &part.a, &missing_a), ("B", &sides[1], &part.b, &missing_b)] {
        let total: usize = members.iter().map(|&v| side.coloring.missing_count(v)).sum();
        if total as f64 > total_cap {
            report.bound(profile.strict, PipelineError::Step1, format!("side {label}: {total} missing colors exceed {total_cap:.1}"))?;
        }
        if let Some(&worst) = missing.iter().max() {
            if worst as f64 > color_cap {
                report.bound(profile.strict, PipelineError::Step1, format!("side {label}: a color is missing at {worst} vertices, above {color_cap:.1}"))?;
            }
        }
    }

    // Assemble G*: the edges of G in their own order, then the added edges.
    let mut gstar = Multigraph::from_simple(g);
    let base_edges = gstar.edge_count();
    let mut index = vec![u32::MAX; size * size];
    for (e, id) in gstar.edges().iter().enumerate() {
        index[id.u * size + id.v] = e as u32;
    }
    let mut added_start = [0usize; 2];
    for (s, side) in sides.iter().enumerate() {
        added_start[s] = gstar.edge_count();
        for &(u, v) in &side.added {
            gstar.add_edge(u, v).expect("distinct vertices");
        }
    }
    if gstar.max_degree() > delta {
        return Err(PipelineError::Step1(format!("augmentation raised Δ to {}", gstar.max_degree())));
    }
    let mut phi = EdgeColoring::new(&gstar, delta as u32);
    for (s, side) in sides.iter().enumerate() {
        for e in 0..side.graph.edge_count() {
            let global = if e < side.base {
                let id = side.graph.edge(e);
                index[id.u * size + id.v] as usize
            } else {
                added_start[s] + (e - side.base)
            };
            let c = side.coloring.color(e).expect("side colorings are complete");
            phi.assign(global, c).map_err(|err| PipelineError::Step1(format!("merging side colorings: {err}")))?;
        }
    }

    let slack = profile.s_side_slack.at(n);
    let mut restricted = vec![false; size];
    for (s, members) in [&part.a, &part.b].into_iter().enumerate() {
        for &v in members {
            if in_s[v] && (sides[s].graph.degree(v) as f64) <= k as f64 - slack {
                restricted[v] = true;
                if s == 0 {
                    report.restricted_a += 1;
                } else {
                    report.restricted_b += 1;
                }
            }
        }
    }
    let light: Vec<bool> = (0..size).map(|v| g.is_live(v) && g.degree(v) == min_degree).collect();
    let good_cap = profile.good_edge_cap.at(n);
    Ok(SideState::new(n, delta, condition, part, gstar, base_edges, phi, k, in_s, restricted, light, good_cap))
}
