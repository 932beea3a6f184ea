//! Bipartite matchings.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::ClassicError;
use crate::graph::{SimpleGraph, VertexId};

const FREE: usize = usize::MAX;

/// Maximum matching of the bipartite graph whose left vertex `l` is joined to
/// the right vertices `adj[l]`. Returns `mate[l]`.
pub fn hopcroft_karp(adj: &[Vec<usize>], n_right: usize) -> Vec<Option<usize>> {
    let n_left = adj.len();
    let mut mate_l = vec![FREE; n_left];
    let mut mate_r = vec![FREE; n_right];
    let mut dist = vec![0usize; n_left];
    loop {
        // BFS layering from free left vertices.
        let mut queue = VecDeque::new();
        for l in 0..n_left {
            if mate_l[l] == FREE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let m = mate_r[r];
                if m == FREE {
                    found = true;
                } else if dist[m] == usize::MAX {
                    dist[m] = dist[l] + 1;
                    queue.push_back(m);
                }
            }
        }
        if !found {
            break;
        }
        let mut it = vec![0usize; n_left];
        for l in 0..n_left {
            if mate_l[l] == FREE {
                augment(l, adj, &mut mate_l, &mut mate_r, &mut dist, &mut it);
            }
        }
    }
    mate_l.into_iter().map(|r| (r != FREE).then_some(r)).collect()
}

fn augment(
    root: usize,
    adj: &[Vec<usize>],
    mate_l: &mut [usize],
    mate_r: &mut [usize],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    // Iterative DFS along the BFS layers; `adj[x][it[x]]` is the edge taken
    // out of each left vertex on the stack.
    let mut stack = vec![root];
    while let Some(&l) = stack.last() {
        if it[l] == adj[l].len() {
            dist[l] = usize::MAX;
            stack.pop();
            if let Some(&p) = stack.last() {
                it[p] += 1;
            }
            continue;
        }
        let r = adj[l][it[l]];
        let m = mate_r[r];
        if m == FREE {
            for &x in &stack {
                let rx = adj[x][it[x]];
                mate_l[x] = rx;
                mate_r[rx] = x;
            }
            return true;
        }
        if dist[m] != usize::MAX && dist[m] == dist[l] + 1 {
            stack.push(m);
        } else {
            it[l] += 1;
        }
    }
    false
}

/// Maximum matching of `h` between `x` and `y` as `(x_i, y_j)` pairs.
pub fn maximum_matching(h: &SimpleGraph, x: &[VertexId], y: &[VertexId]) -> Vec<(VertexId, VertexId)> {
    let mut index_of_y = vec![usize::MAX; h.universe()];
    for (j, &v) in y.iter().enumerate() {
        index_of_y[v] = j;
    }
    let adj: Vec<Vec<usize>> = x
        .iter()
        .map(|&u| h.neighbors(u).filter_map(|v| (index_of_y[v] != usize::MAX).then_some(index_of_y[v])).collect())
        .collect();
    hopcroft_karp(&adj, y.len())
        .into_iter()
        .enumerate()
        .filter_map(|(i, r)| r.map(|j| (x[i], y[j])))
        .collect()
}

/// Which construction produced a perfect matching.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchingRoute {
    /// Low-degree vertices matched greedily, the rest by augmenting paths.
    TwoPhase,
    /// Degree hypotheses failed or the greedy phase got stuck; a plain
    /// maximum matching of the whole graph was used.
    Fallback,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectMatching {
    pub pairs: Vec<(VertexId, VertexId)>,
    pub route: MatchingRoute,
}

/// Perfect matching of the bipartite graph `h[x, y]` with `|x| = |y|`.
///
/// When `δ ≥ t` and at most `t/2` vertices have degree below `(n' + t/2)/2`,
/// the low-degree set `W` is matched greedily first and the remainder, which
/// then satisfies Hall's condition, by augmenting paths. Otherwise, or if the
/// greedy phase gets stuck, a maximum matching of the whole graph is taken.
pub fn pm_with_degree_condition(
    h: &SimpleGraph,
    x: &[VertexId],
    y: &[VertexId],
    t: usize,
) -> Result<PerfectMatching, ClassicError> {
    let np = x.len();
    if y.len() != np {
        return Err(ClassicError::Hypothesis(format!("sides differ in size: {} vs {}", x.len(), y.len())));
    }
    if np == 0 {
        return Ok(PerfectMatching { pairs: Vec::new(), route: MatchingRoute::TwoPhase });
    }
    let mut side_x = FixedBitSet::with_capacity(h.universe());
    let mut side_y = FixedBitSet::with_capacity(h.universe());
    x.iter().for_each(|&v| side_x.insert(v));
    y.iter().for_each(|&v| side_y.insert(v));
    let deg = |v: VertexId| {
        if side_x.contains(v) {
            h.degree_into(v, &side_y)
        } else {
            h.degree_into(v, &side_x)
        }
    };
    let all: Vec<VertexId> = x.iter().chain(y).copied().collect();
    let min_deg = all.iter().map(|&v| deg(v)).min().unwrap();
    let low: Vec<VertexId> = all.iter().copied().filter(|&v| 4 * deg(v) < 2 * np + t).collect();
    if t >= 1 && min_deg >= t && 2 * low.len() <= t {
        if let Some(pairs) = two_phase(h, x, y, &side_x, &side_y, &low) {
            return Ok(PerfectMatching { pairs, route: MatchingRoute::TwoPhase });
        }
    }
    let pairs = maximum_matching(h, x, y);
    if pairs.len() == np {
        Ok(PerfectMatching { pairs, route: MatchingRoute::Fallback })
    } else {
        Err(ClassicError::NoPerfectMatching { found: pairs.len(), needed: np })
    }
}

fn two_phase(
    h: &SimpleGraph,
    x: &[VertexId],
    y: &[VertexId],
    side_x: &FixedBitSet,
    side_y: &FixedBitSet,
    low: &[VertexId],
) -> Option<Vec<(VertexId, VertexId)>> {
    let mut matched = FixedBitSet::with_capacity(h.universe());
    let mut low_set = FixedBitSet::with_capacity(h.universe());
    low.iter().for_each(|&v| low_set.insert(v));
    let mut pairs = Vec::new();
    let mut sorted_low = low.to_vec();
    sorted_low.sort_unstable();
    for w in sorted_low {
        if matched.contains(w) {
            continue;
        }
        let other = if side_x.contains(w) { side_y } else { side_x };
        let candidates: Vec<VertexId> = h.neighbor_set(w).intersection(other).filter(|&v| !matched.contains(v)).collect();
        let pick = candidates.iter().copied().find(|&v| !low_set.contains(v)).or(candidates.first().copied())?;
        matched.insert(w);
        matched.insert(pick);
        pairs.push(if side_x.contains(w) { (w, pick) } else { (pick, w) });
    }
    let rx: Vec<VertexId> = x.iter().copied().filter(|&v| !matched.contains(v)).collect();
    let ry: Vec<VertexId> = y.iter().copied().filter(|&v| !matched.contains(v)).collect();
    let rest = maximum_matching(h, &rx, &ry);
    if rest.len() != rx.len() {
        return None;
    }
    pairs.extend(rest);
    pairs.sort_unstable();
    Some(pairs)
}
