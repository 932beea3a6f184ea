//! Extending the first `k` color classes into perfect matchings of `G*`.
//!
//! Vertices missing a color `i` are paired (cross pairs first, then the
//! leftovers on `A`, then on `B`). Restricted vertices are first moved off
//! their pairs through a length-two path. Every remaining pair is joined by
//! an alternating path of uncolored cross edges and good same-side
//! `i`-edges: five edges for a cross pair, seven for a same-side pair.
//! Exchanging the path gives both ends color `i` and uncolors the same-side
//! edges on it. Optionally, cross pairs are first re-paired along uncolored
//! cross edges, which are then colored `i` directly.

use std::collections::VecDeque;

use crate::classic::hopcroft_karp;
use crate::coloring::Color;
use crate::graph::{EdgeIdx, VertexId};
use crate::partition::Side;
use crate::pipeline::{EdgeKind, PipelineError, PipelineReport, SideState};
use crate::profile::ConstantsProfile;

pub fn step2(state: &mut SideState, profile: &ConstantsProfile, report: &mut PipelineReport) -> Result<(), PipelineError> {
    let k = state.k;
    let exact = state.condition != crate::pipeline::Condition::WideSpread;
    let mut pairs: Vec<Vec<(VertexId, VertexId)>> = vec![Vec::new(); k as usize + 1];
    for i in 1..=k {
        let ma: Vec<VertexId> = state.part.a.iter().copied().filter(|&v| state.phi.is_missing(v, i)).collect();
        let mb: Vec<VertexId> = state.part.b.iter().copied().filter(|&v| state.phi.is_missing(v, i)).collect();
        if ma.len() < mb.len() || (exact && ma.len() != mb.len()) || (ma.len() - mb.len()) % 2 == 1 {
            return Err(PipelineError::Step2Check(format!(
                "color {i} is missing at {} vertices of A and {} of B",
                ma.len(),
                mb.len()
            )));
        }
        let cross = mb.len();
        pairs[i as usize].extend(ma.iter().copied().zip(mb.iter().copied()));
        pairs[i as usize].extend(ma[cross..].chunks(2).map(|c| (c[0], c[1])));
        report.mcc_pairs_cross += cross;
        report.mcc_pairs_same_side += (ma.len() - cross) / 2;
    }

    let restricted: Vec<VertexId> = state
        .part
        .a
        .iter()
        .chain(&state.part.b)
        .copied()
        .filter(|&v| state.restricted[v])
        .collect();
    for u in restricted {
        let colors: Vec<Color> = state.phi.missing_colors(u).filter(|&c| c <= k).collect();
        for i in colors {
            let slot = pairs[i as usize].iter().position(|&(x, y)| x == u || y == u).expect("every missing color is paired");
            let partner = if pairs[i as usize][slot].0 == u { pairs[i as usize][slot].1 } else { pairs[i as usize][slot].0 };
            match relocation(state, u, i) {
                Some((y1, y2)) => {
                    state.exchange(&[u, y1, y2], i);
                    let pair = &mut pairs[i as usize][slot];
                    if pair.0 == u {
                        pair.0 = y2;
                    } else {
                        pair.1 = y2;
                    }
                    report.relocations += 1;
                }
                None => report.bound(
                    profile.strict,
                    |msg| PipelineError::Step2 { color: i, u, v: partner, msg },
                    format!("no relocation edge for restricted vertex {u} and color {i}"),
                )?,
            }
        }
    }

    for i in 1..=k {
        if profile.direct_pairs {
            repair_along_open_edges(state, &mut pairs[i as usize]);
        }
        for &(u, v) in &pairs[i as usize] {
            if profile.direct_pairs && state.side(u) != state.side(v) && state.open_cross(u, v).is_some() {
                state.exchange(&[u, v], i);
                report.direct_pairs += 1;
                continue;
            }
            let shaped = if state.side(u) != state.side(v) {
                five_edge_path(state, u, v, i, profile.balanced_paths).inspect(|_| report.five_edge_paths += 1)
            } else {
                seven_edge_path(state, u, v, i, profile.balanced_paths).inspect(|_| report.seven_edge_paths += 1)
            };
            let path = match shaped {
                Some(p) => p,
                None if profile.step2_search => match search(state, u, v, i, false) {
                    Some(p) => {
                        report.searched_paths += 1;
                        p
                    }
                    None => match search(state, u, v, i, true) {
                        Some(p) => {
                            report.relaxed_paths += 1;
                            p
                        }
                        None => {
                            return Err(PipelineError::Step2 { color: i, u, v, msg: "no alternating path".into() });
                        }
                    },
                },
                None => {
                    return Err(PipelineError::Step2 { color: i, u, v, msg: "no path of the required shape".into() });
                }
            };
            state.exchange(&path, i);
        }
        if let Some(v) = (0..state.size()).find(|&v| state.part.side[v].is_some() && state.phi.is_missing(v, i)) {
            return Err(PipelineError::Step2Check(format!("color {i} is still missing at vertex {v}")));
        }
    }
    check_bounds(state, profile, report)
}

/// Re-pairs the cross pairs so that as many as possible are joined by an
/// uncolored cross edge; the rest keep their order.
fn repair_along_open_edges(state: &SideState, pairs: &mut Vec<(VertexId, VertexId)>) {
    let (cross, same): (Vec<_>, Vec<_>) = pairs.iter().copied().partition(|&(u, v)| state.side(u) != state.side(v));
    let (xa, yb): (Vec<VertexId>, Vec<VertexId>) = cross.iter().map(|&(u, v)| if state.side(u) == Side::A { (u, v) } else { (v, u) }).unzip();
    let adj: Vec<Vec<usize>> = xa
        .iter()
        .map(|&u| yb.iter().enumerate().filter(|&(_, &v)| state.open_cross(u, v).is_some()).map(|(j, _)| j).collect())
        .collect();
    let mate = hopcroft_karp(&adj, yb.len());
    let mut taken = vec![false; yb.len()];
    let mut out = Vec::with_capacity(pairs.len());
    for (i, m) in mate.iter().enumerate() {
        if let Some(j) = *m {
            taken[j] = true;
            out.push((xa[i], yb[j]));
        }
    }
    let rest_b: Vec<VertexId> = (0..yb.len()).filter(|&j| !taken[j]).map(|j| yb[j]).collect();
    let rest_a = (0..xa.len()).filter(|&i| mate[i].is_none()).map(|i| xa[i]);
    out.extend(rest_a.zip(rest_b));
    out.extend(same);
    *pairs = out;
}

/// `x y1 y2` with `x y1` an uncolored cross edge and `y1 y2` a good
/// `i`-edge on the other side avoiding restricted vertices.
fn relocation(state: &SideState, x: VertexId, i: Color) -> Option<(VertexId, VertexId)> {
    let other = state.side(x).other();
    state.members(other).iter().copied().find_map(|y1| {
        state.open_cross(x, y1)?;
        let (_, y2) = state.usable_mate(y1, i, other, false)?;
        Some((y1, y2))
    })
}

/// Residual load a path would add to: the largest and the total residual
/// degree over the ends of its same-side edges.
fn load(state: &SideState, ends: &[VertexId]) -> (usize, usize) {
    let max = ends.iter().map(|&v| state.rdeg[v]).max().unwrap_or(0);
    (max, ends.iter().map(|&v| state.rdeg[v]).sum())
}

/// Keeps the least loaded candidate; earlier candidates win ties.
fn offer(best: &mut Option<((usize, usize), Vec<VertexId>)>, load: (usize, usize), path: Vec<VertexId>) {
    if best.as_ref().is_none_or(|(l, _)| load < *l) {
        *best = Some((load, path));
    }
}

/// `x y1 y2 x2 x1 y` for `x` and `y` on opposite sides: `x1 x2` is a good
/// `i`-edge on `x`'s side with `x1` openly adjacent to `y`, and `y1 y2` one
/// on `y`'s side with `y2` openly adjacent to `x2` and `y1` to `x`. Returns
/// the first such path, or the least loaded one when `balanced`.
fn five_edge_path(state: &SideState, x: VertexId, y: VertexId, i: Color, balanced: bool) -> Option<Vec<VertexId>> {
    let sx = state.side(x);
    let sy = sx.other();
    let mut best = None;
    for &x1 in state.members(sx) {
        if state.open_cross(y, x1).is_none() {
            continue;
        }
        let Some((_, x2)) = state.usable_mate(x1, i, sx, false) else { continue };
        for &y2 in state.members(sy) {
            if state.open_cross(x2, y2).is_none() {
                continue;
            }
            let Some((_, y1)) = state.usable_mate(y2, i, sy, false) else { continue };
            if state.open_cross(x, y1).is_some() {
                let path = vec![x, y1, y2, x2, x1, y];
                if !balanced {
                    return Some(path);
                }
                offer(&mut best, load(state, &[x1, x2, y1, y2]), path);
            }
        }
    }
    best.map(|(_, p)| p)
}

/// `a b1 b2 a2 a2' b2' b1' a'` for `a`, `a'` on one side: two good
/// `i`-edges `b1 b2`, `b1' b2'` on the other side and one, `a2 a2'`, on
/// theirs, linked by uncolored cross edges.
fn seven_edge_path(state: &SideState, a: VertexId, a_end: VertexId, i: Color, balanced: bool) -> Option<Vec<VertexId>> {
    let sa = state.side(a);
    let sb = sa.other();
    let mut best = None;
    for &b1e in state.members(sb) {
        if state.open_cross(a_end, b1e).is_none() {
            continue;
        }
        let Some((far, b2e)) = state.usable_mate(b1e, i, sb, false) else { continue };
        for &a2e in state.members(sa) {
            if state.open_cross(b2e, a2e).is_none() {
                continue;
            }
            let Some((_, a2)) = state.usable_mate(a2e, i, sa, false) else { continue };
            for &b2 in state.members(sb) {
                if state.open_cross(a2, b2).is_none() {
                    continue;
                }
                let Some((near, b1)) = state.usable_mate(b2, i, sb, false) else { continue };
                if near != far && state.open_cross(a, b1).is_some() {
                    let path = vec![a, b1, b2, a2, a2e, b2e, b1e, a_end];
                    if !balanced {
                        return Some(path);
                    }
                    offer(&mut best, load(state, &[b1, b2, a2, a2e, b2e, b1e]), path);
                }
            }
        }
    }
    best.map(|(_, p)| p)
}

/// The `i`-edge at `x` usable in a searched path: any cross edge, or a
/// same-side edge that is good and avoids restricted vertices (anything
/// when `relaxed`).
fn search_mate(state: &SideState, x: VertexId, i: Color, relaxed: bool) -> Option<(EdgeIdx, VertexId)> {
    let e = state.phi.edge_with(x, i)?;
    let y = state.gstar.edge(e).other(x);
    match state.kind[e] {
        EdgeKind::Cross => Some((e, y)),
        EdgeKind::Inside(_) if relaxed => Some((e, y)),
        EdgeKind::Inside(side) => state.usable_mate(x, i, side, false),
    }
}

/// Shortest alternating path from `u` to `v` by breadth-first search over
/// the vertices reached through an `i`-edge.
fn search(state: &SideState, u: VertexId, v: VertexId, i: Color, relaxed: bool) -> Option<Vec<VertexId>> {
    const NONE: usize = usize::MAX;
    let size = state.size();
    let mut visited = vec![false; size];
    let mut back = vec![NONE; size];
    visited[u] = true;
    let mut queue = VecDeque::from([u]);
    while let Some(y) = queue.pop_front() {
        let other = state.side(y).other();
        for &z in state.members(other) {
            if state.open_cross(y, z).is_none() {
                continue;
            }
            if z == v {
                let mut path = vec![v, y];
                let mut cur = y;
                while cur != u {
                    let z_prev = back[cur];
                    let y_prev = back[z_prev];
                    path.push(z_prev);
                    path.push(y_prev);
                    cur = y_prev;
                }
                path.reverse();
                return Some(path);
            }
            if visited[z] {
                continue;
            }
            let Some((_, w)) = search_mate(state, z, i, relaxed) else { continue };
            if visited[w] {
                continue;
            }
            visited[z] = true;
            visited[w] = true;
            back[z] = y;
            back[w] = z;
            queue.push_back(w);
        }
    }
    None
}

fn check_bounds(state: &SideState, profile: &ConstantsProfile, report: &mut PipelineReport) -> Result<(), PipelineError> {
    let n = state.n;
    let ra = state.residual_edges(Side::A).len();
    let rb = state.residual_edges(Side::B).len();
    report.residual_a_edges = ra;
    report.residual_b_edges = rb;
    report.residual_max_degree = state.max_residual_degree();
    let size_cap = profile.residual_size_cap.at(n);
    for (label, r) in [("A", ra), ("B", rb)] {
        if r as f64 >= size_cap {
            report.bound(profile.strict, PipelineError::Step2Check, format!("R_{label} has {r} edges, not below {size_cap:.1}"))?;
        }
    }
    let balanced = match state.condition {
        crate::pipeline::Condition::WideSpread => ra <= rb,
        _ => ra == rb,
    };
    if !balanced {
        return Err(PipelineError::Step2Check(format!("residual sizes {ra} (A) and {rb} (B) are out of balance")));
    }
    if report.residual_max_degree as f64 >= state.good_cap + 1.0 {
        report.bound(
            profile.strict,
            PipelineError::Step2Check,
            format!("residual degree {} reaches {:.2}", report.residual_max_degree, state.good_cap + 1.0),
        )?;
    }
    let cross_cap = 2.0 * (n as f64).powf(5.0 / 6.0);
    if let Some(v) = (0..state.size())
        .filter(|&v| state.part.side[v].is_some() && !state.restricted[v])
        .find(|&v| state.colored_cross_degree(v) as f64 >= cross_cap)
    {
        report.bound(
            profile.strict,
            PipelineError::Step2Check,
            format!("vertex {v} has {} colored cross edges, not below {cross_cap:.1}", state.colored_cross_degree(v)),
        )?;
    }
    Ok(())
}
