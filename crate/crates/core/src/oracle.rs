//! Exact answers for tiny graphs: the chromatic index by backtracking and
//! every overfull odd vertex subset by enumeration.
//!
//! The search colors one edge at a time, always the uncolored edge with the
//! fewest available colors, and opens a new color only at the lowest unused
//! index. With the counting bound switched on, a node is also abandoned when
//! the uncolored edges inside `V` or inside some `V − v` outnumber what the
//! remaining colors can still absorb there: a color adds at most half of the
//! vertices that miss it and have an uncolored edge to another such vertex.
//! The bound is sound for any graph.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Color, EdgeColoring};
use crate::graph::{Multigraph, SimpleGraph, VertexId};

/// Colors fit in one `u64` mask with bit `c` for color `c`.
const MAX_PALETTE: u32 = 62;

/// Nodes between two clock reads.
const CLOCK_EVERY: u64 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleBudget {
    pub max_vertices: usize,
    /// Wall-clock limit per instance.
    pub max_seconds: f64,
    /// Prune with the counting bound described in the module docs.
    pub counting_bound: bool,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_vertices: 14, max_seconds: 10.0, counting_bound: true }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("{vertices} vertices exceed the oracle limit of {max}")]
    TooLarge { vertices: usize, max: usize },
    #[error("a palette of {0} colors is beyond the search")]
    PaletteTooLarge(u32),
    #[error("timed out after {nodes} search nodes ({seconds:.2} s)")]
    Timeout { nodes: u64, seconds: f64 },
}

#[derive(Clone, Debug)]
pub struct ChromaticIndex {
    pub value: u32,
    /// A coloring with `value` colors found by the search.
    pub coloring: EdgeColoring,
    /// Search nodes over all palettes tried.
    pub nodes: u64,
}

/// `χ'(g)`, trying `Δ`, `Δ + 1`, … colors in turn.
pub fn exact_chromatic_index(g: &Multigraph, budget: &OracleBudget) -> Result<ChromaticIndex, OracleError> {
    let vertices = g.vertex_count();
    if vertices > budget.max_vertices {
        return Err(OracleError::TooLarge { vertices, max: budget.max_vertices });
    }
    let start = Instant::now();
    let deadline = start + Duration::from_secs_f64(budget.max_seconds.max(0.0));
    let mut nodes = 0;
    let mut k = g.max_degree() as u32;
    loop {
        if k > MAX_PALETTE {
            return Err(OracleError::PaletteTooLarge(k));
        }
        let mut search = Search::new(g, k, budget.counting_bound, deadline);
        let found = search.run();
        nodes += search.nodes;
        match found {
            Some(true) => {
                let mut coloring = EdgeColoring::new(g, k);
                for (e, &c) in search.color.iter().enumerate() {
                    coloring.assign(e, c).expect("search colorings are proper");
                }
                return Ok(ChromaticIndex { value: k, coloring, nodes });
            }
            Some(false) => k += 1,
            None => return Err(OracleError::Timeout { nodes, seconds: start.elapsed().as_secs_f64() }),
        }
    }
}

struct Search {
    ends: Vec<(VertexId, VertexId)>,
    full: u64,
    /// Colors present at each vertex.
    used: Vec<u64>,
    /// Uncolored edges at each vertex.
    open: Vec<usize>,
    color: Vec<Color>,
    uncolored: usize,
    highest: u32,
    counting: bool,
    deadline: Instant,
    nodes: u64,
    timed_out: bool,
}

impl Search {
    fn new(g: &Multigraph, k: u32, counting: bool, deadline: Instant) -> Self {
        let ends: Vec<(VertexId, VertexId)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
        let mut open = vec![0; g.vertex_count()];
        for &(u, v) in &ends {
            open[u] += 1;
            open[v] += 1;
        }
        Search {
            full: ((1u64 << (k + 1)) - 1) & !1,
            used: vec![0; g.vertex_count()],
            open,
            color: vec![0; ends.len()],
            uncolored: ends.len(),
            ends,
            highest: 0,
            counting,
            deadline,
            nodes: 0,
            timed_out: false,
        }
    }

    /// `Some(found)`, or `None` on timeout.
    fn run(&mut self) -> Option<bool> {
        let found = self.feasible() && self.extend();
        (!self.timed_out).then_some(found)
    }

    fn domain(&self, e: usize) -> u64 {
        let (u, v) = self.ends[e];
        let fresh = (self.highest + 1).min(MAX_PALETTE);
        let opened = ((1u64 << (fresh + 1)) - 1) & !1;
        self.full & opened & !(self.used[u] | self.used[v])
    }

    /// Necessary conditions for completing the current partial coloring.
    fn feasible(&self) -> bool {
        let free = |v: VertexId| (self.full & !self.used[v]).count_ones() as usize;
        if (0..self.used.len()).any(|v| free(v) < self.open[v]) {
            return false;
        }
        if !self.counting {
            return true;
        }
        // `open_to[v]`: colors that can still reach `v` along an open edge.
        let mut open_to = vec![0u64; self.used.len()];
        for (e, &(u, v)) in self.ends.iter().enumerate() {
            if self.color[e] == 0 {
                let both = self.full & !(self.used[u] | self.used[v]);
                open_to[u] |= both;
                open_to[v] |= both;
            }
        }
        let mut reachable = [0usize; MAX_PALETTE as usize + 1];
        for &m in &open_to {
            let mut colors = m;
            while colors != 0 {
                reachable[colors.trailing_zeros() as usize] += 1;
                colors &= colors - 1;
            }
        }
        let room = |skip: Option<VertexId>| -> usize {
            let mut total = 0;
            let mut colors = self.full;
            while colors != 0 {
                let c = colors.trailing_zeros() as usize;
                colors &= colors - 1;
                let lost = skip.is_some_and(|v| open_to[v] & (1 << c) != 0);
                total += (reachable[c] - lost as usize) / 2;
            }
            total
        };
        if room(None) < self.uncolored {
            return false;
        }
        (0..self.used.len()).all(|v| room(Some(v)) >= self.uncolored - self.open[v])
    }

    fn extend(&mut self) -> bool {
        if self.uncolored == 0 {
            return true;
        }
        self.nodes += 1;
        if self.nodes % CLOCK_EVERY == 0 && Instant::now() > self.deadline {
            self.timed_out = true;
        }
        if self.timed_out {
            return false;
        }
        let mut best: Option<(u32, usize, usize)> = None;
        for e in 0..self.ends.len() {
            if self.color[e] != 0 {
                continue;
            }
            let size = self.domain(e).count_ones();
            if size == 0 {
                return false;
            }
            let (u, v) = self.ends[e];
            let weight = self.open[u] + self.open[v];
            if best.is_none_or(|(s, w, _)| size < s || (size == s && weight > w)) {
                best = Some((size, weight, e));
            }
        }
        let (_, _, e) = best.expect("an uncolored edge exists");
        let (u, v) = self.ends[e];
        let mut choices = self.domain(e);
        while choices != 0 {
            let c = choices.trailing_zeros();
            choices &= choices - 1;
            let saved = self.highest;
            self.color[e] = c;
            self.used[u] |= 1 << c;
            self.used[v] |= 1 << c;
            self.open[u] -= 1;
            self.open[v] -= 1;
            self.uncolored -= 1;
            self.highest = self.highest.max(c);
            if self.feasible() && self.extend() {
                return true;
            }
            self.highest = saved;
            self.uncolored += 1;
            self.open[u] += 1;
            self.open[v] += 1;
            self.used[u] &= !(1 << c);
            self.used[v] &= !(1 << c);
            self.color[e] = 0;
            if self.timed_out {
                return false;
            }
        }
        false
    }
}

/// Every odd vertex set `S` with `e(G[S]) > delta_ref · ⌊|S|/2⌋`, each
/// sorted, in increasing order of their bitmasks over the live vertices.
pub fn exhaustive_overfull_scan(g: &SimpleGraph, delta_ref: usize, budget: &OracleBudget) -> Result<Vec<Vec<VertexId>>, OracleError> {
    let live: Vec<VertexId> = g.vertices().collect();
    if live.len() > budget.max_vertices || live.len() >= 32 {
        return Err(OracleError::TooLarge { vertices: live.len(), max: budget.max_vertices.min(31) });
    }
    let adj: Vec<u32> = live
        .iter()
        .map(|&u| live.iter().enumerate().filter(|&(_, &v)| g.has_edge(u, v)).fold(0u32, |m, (j, _)| m | 1 << j))
        .collect();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << live.len()) {
        let size = mask.count_ones() as usize;
        if size % 2 == 0 {
            continue;
        }
        let twice: u32 = (0..live.len()).filter(|&i| mask & (1 << i) != 0).map(|i| (adj[i] & mask).count_ones()).sum();
        if twice as usize / 2 > delta_ref * (size / 2) {
            out.push((0..live.len()).filter(|&i| mask & (1 << i) != 0).map(|i| live[i]).collect());
        }
    }
    Ok(out)
}
