//! Hamiltonian cycles and paths in graphs meeting Dirac's degree bound.
//!
//! Only live vertices of the (possibly masked) graph take part.

use fixedbitset::FixedBitSet;

use crate::error::ClassicError;
use crate::graph::{SimpleGraph, VertexId};

/// Hamiltonian cycle of `g` by rotation–extension.
///
/// Grows a path greedily at both ends; once it is maximal, the degree bound
/// gives a crossing pair `p₀ ~ p_{i+1}`, `p_i ~ p_last` that closes it into a
/// cycle, and connectivity supplies an outside neighbor to restart from.
/// Ties always go to the lowest vertex index.
pub fn dirac_hamiltonian_cycle(g: &SimpleGraph) -> Result<Vec<VertexId>, ClassicError> {
    let n = g.order();
    if n < 3 {
        return Err(ClassicError::Hypothesis(format!("need at least 3 vertices, got {n}")));
    }
    if 2 * g.min_degree() < n {
        return Err(ClassicError::Hypothesis(format!(
            "minimum degree {} below half of {n}",
            g.min_degree()
        )));
    }
    let mut in_path = FixedBitSet::with_capacity(g.universe());
    let start = g.vertices().next().unwrap();
    let mut path = vec![start];
    in_path.insert(start);
    loop {
        extend_end(g, &mut path, &mut in_path);
        path.reverse();
        extend_end(g, &mut path, &mut in_path);

        let cycle = close_cycle(g, path);
        if cycle.len() == n {
            return Ok(cycle);
        }
        let (j, w) = cycle
            .iter()
            .enumerate()
            .find_map(|(j, &c)| first_outside(g, c, &in_path).map(|w| (j, w)))
            .expect("Dirac graphs are connected");
        path = Vec::with_capacity(cycle.len() + 1);
        path.push(w);
        path.extend(cycle[j..].iter().chain(&cycle[..j]).copied());
        in_path.insert(w);
    }
}

fn first_outside(g: &SimpleGraph, v: VertexId, in_path: &FixedBitSet) -> Option<VertexId> {
    g.neighbor_set(v).ones().find(|&w| !in_path.contains(w))
}

fn extend_end(g: &SimpleGraph, path: &mut Vec<VertexId>, in_path: &mut FixedBitSet) {
    while let Some(w) = first_outside(g, *path.last().unwrap(), in_path) {
        in_path.insert(w);
        path.push(w);
    }
}

/// Turns a maximal path into a cycle on the same vertex set.
fn close_cycle(g: &SimpleGraph, mut path: Vec<VertexId>) -> Vec<VertexId> {
    let m = path.len();
    let (first, last) = (path[0], path[m - 1]);
    if g.has_edge(first, last) {
        return path;
    }
    let i = (0..m - 1)
        .find(|&i| g.has_edge(first, path[i + 1]) && g.has_edge(path[i], last))
        .expect("degree bound forces a crossing pair");
    path[i + 1..].reverse();
    path
}

/// Spanning path of `g` from `a` to `b`.
///
/// Takes a Hamiltonian cycle, keeps the longer `a`–`b` arc `Q1` and absorbs
/// the other arc `Q2 = c … d` piecewise: either `c` and `d` have neighbors
/// `c₁`, `d₁` on `Q1` spanning fewer than `|Q2|` interior vertices, so `Q2`
/// is spliced in and that interior becomes the new `Q2`; or an end of `Q2`
/// has two consecutive neighbors on `Q1` and is inserted between them.
pub fn hamiltonian_path_between(g: &SimpleGraph, a: VertexId, b: VertexId) -> Result<Vec<VertexId>, ClassicError> {
    if a == b {
        return Err(ClassicError::Hypothesis("path endpoints must be distinct".into()));
    }
    if !g.is_live(a) || !g.is_live(b) {
        return Err(ClassicError::Hypothesis("path endpoints must be live vertices".into()));
    }
    let n = g.order();
    if n == 2 {
        return if g.has_edge(a, b) {
            Ok(vec![a, b])
        } else {
            Err(ClassicError::Hypothesis("two nonadjacent endpoints".into()))
        };
    }
    if 2 * g.min_degree() < n + 1 {
        return Err(ClassicError::Hypothesis(format!(
            "minimum degree {} below (n + 1) / 2 for n = {n}",
            g.min_degree()
        )));
    }
    let cycle = dirac_hamiltonian_cycle(g)?;
    let pa = cycle.iter().position(|&v| v == a).unwrap();
    let rotated: Vec<VertexId> = cycle[pa..].iter().chain(&cycle[..pa]).copied().collect();
    let pb = rotated.iter().position(|&v| v == b).unwrap();
    // Forward arc a..=b and backward arc a, rotated[n-1], ..., b.
    let forward: Vec<VertexId> = rotated[..=pb].to_vec();
    let mut backward: Vec<VertexId> = vec![a];
    backward.extend(rotated[pb..].iter().rev().copied());
    let (mut q1, other) = if forward.len() >= backward.len() { (forward, backward) } else { (backward, forward) };
    let mut q2: Vec<VertexId> = other[1..other.len() - 1].to_vec();

    let mut rounds = 0;
    while !q2.is_empty() {
        rounds += 1;
        if rounds > n + 1 {
            return Err(ClassicError::AbsorptionStuck { remaining: q2.len() });
        }
        if !absorb_span(g, &mut q1, &mut q2) && !absorb_end(g, &mut q1, &mut q2) {
            return Err(ClassicError::AbsorptionStuck { remaining: q2.len() });
        }
    }
    Ok(q1)
}

fn positions_of_neighbors(g: &SimpleGraph, v: VertexId, q1: &[VertexId]) -> Vec<usize> {
    q1.iter().enumerate().filter(|(_, &w)| g.has_edge(v, w)).map(|(i, _)| i).collect()
}

/// Case (a): splice all of `Q2` between `c₁` and `d₁`.
fn absorb_span(g: &SimpleGraph, q1: &mut Vec<VertexId>, q2: &mut Vec<VertexId>) -> bool {
    let p = q2.len();
    let (c, d) = (q2[0], q2[p - 1]);
    let nc = positions_of_neighbors(g, c, q1);
    let nd = positions_of_neighbors(g, d, q1);
    // Smallest interior first, then leftmost.
    let mut best: Option<((usize, usize), usize, usize)> = None;
    for &i in &nc {
        for &j in &nd {
            if i == j || i.abs_diff(j) - 1 >= p {
                continue;
            }
            let key = (i.abs_diff(j) - 1, i.min(j));
            if best.map_or(true, |(b, _, _)| key < b) {
                best = Some((key, i, j));
            }
        }
    }
    let Some((_, i, j)) = best else { return false };
    let (lo, hi, seg): (usize, usize, Vec<VertexId>) =
        if i < j { (i, j, q2.clone()) } else { (j, i, q2.iter().rev().copied().collect()) };
    let interior: Vec<VertexId> = q1[lo + 1..hi].to_vec();
    let mut next = q1[..=lo].to_vec();
    next.extend(seg);
    next.extend_from_slice(&q1[hi..]);
    *q1 = next;
    *q2 = interior;
    true
}

/// Case (b): insert an end of `Q2` between two consecutive neighbors.
fn absorb_end(g: &SimpleGraph, q1: &mut Vec<VertexId>, q2: &mut Vec<VertexId>) -> bool {
    let p = q2.len();
    for (end, pos) in [(q2[0], 0), (q2[p - 1], p - 1)] {
        if let Some(i) = (0..q1.len() - 1).find(|&i| g.has_edge(end, q1[i]) && g.has_edge(end, q1[i + 1])) {
            q1.insert(i + 1, end);
            q2.remove(pos);
            return true;
        }
    }
    false
}
