//! Balanced bipartition `(A, B)` with prescribed split pairs and per-vertex
//! degree balance.
//!
//! The constraint pairs are extended to a pairing of all vertices, and one
//! fair coin per pair decides which end goes to `A`. Equal sides and split
//! pairs hold by construction; the degree balance
//! `max_v |d_A(v) − d_B(v)|` is checked and the coins are redrawn until it
//! meets the bound. If every draw misses, a local search flips pairs starting
//! from the best draw.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{SimpleGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartitionRoute {
    CoinFlip,
    LocalSearch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionAB {
    /// Indexed by vertex id; `None` for masked vertices.
    pub side: Vec<Option<Side>>,
    pub a: Vec<VertexId>,
    pub b: Vec<VertexId>,
    /// The constraint pairs `N`, as given.
    pub pairs: Vec<(VertexId, VertexId)>,
    /// `max_v |d_A(v) − d_B(v)|`.
    pub certificate: usize,
    /// Coin-flip draws consumed, including the successful one.
    pub attempts: usize,
    pub route: PartitionRoute,
}

impl PartitionAB {
    pub fn side_of(&self, v: VertexId) -> Side {
        self.side[v].expect("vertex of the partitioned graph")
    }

    pub fn in_a(&self, v: VertexId) -> bool {
        self.side[v] == Some(Side::A)
    }

    /// `d_A(v) − d_B(v)` recounted from the graph.
    pub fn imbalance(&self, g: &SimpleGraph, v: VertexId) -> i64 {
        g.neighbors(v)
            .map(|w| match self.side[w] {
                Some(Side::A) => 1,
                Some(Side::B) => -1,
                None => 0,
            })
            .sum()
    }

    pub fn recount_certificate(&self, g: &SimpleGraph) -> usize {
        g.vertices().map(|v| self.imbalance(g, v).unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Checks equal sides, split pairs and the balance bound from scratch.
    pub fn check(&self, g: &SimpleGraph, bound: usize) -> Result<(), String> {
        if self.a.len() != self.b.len() {
            return Err(format!("sides have {} and {} vertices", self.a.len(), self.b.len()));
        }
        if self.a.len() + self.b.len() != g.order() {
            return Err("sides do not cover the vertex set".into());
        }
        for &(x, y) in &self.pairs {
            if self.side[x] == self.side[y] {
                return Err(format!("pair ({x}, {y}) lies on one side"));
            }
        }
        let cert = self.recount_certificate(g);
        if cert != self.certificate {
            return Err(format!("certificate {} but recount gives {cert}", self.certificate));
        }
        if cert > bound {
            return Err(format!("imbalance {cert} exceeds bound {bound}"));
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("invalid constraint pairs: {0}")]
    InvalidPairs(String),
    #[error("no partition met the balance bound {bound}; best imbalance {}", best.certificate)]
    BoundNotMet { bound: usize, best: Box<PartitionAB> },
}

/// Partition of `g` (even order) splitting every pair in `pairs`, with
/// `|d_A(v) − d_B(v)| ≤ bound` for all `v`. Deterministic given `seed`.
pub fn balanced_partition(
    g: &SimpleGraph,
    pairs: &[(VertexId, VertexId)],
    bound: usize,
    retries: usize,
    seed: u64,
) -> Result<PartitionAB, PartitionError> {
    let pairing = full_pairing(g, pairs)?;
    let mut best: Option<(Balance, Vec<bool>, usize)> = None;
    for attempt in 0..retries.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(attempt_seed(seed, attempt as u64));
        let flips: Vec<bool> = pairing.iter().map(|_| rng.gen_bool(0.5)).collect();
        let state = Balance::new(g, &pairing, &flips);
        if state.max_abs() <= bound {
            return Ok(build(g, pairs, &pairing, &flips, attempt + 1, PartitionRoute::CoinFlip));
        }
        if best.as_ref().is_none_or(|(b, _, _)| state.key() < b.key()) {
            best = Some((state, flips, attempt));
        }
    }
    let (mut state, mut flips, _) = best.expect("at least one attempt");
    local_search(g, &pairing, &mut flips, &mut state, None);
    let out = build(g, pairs, &pairing, &flips, retries.max(1), PartitionRoute::LocalSearch);
    if out.certificate <= bound {
        Ok(out)
    } else {
        Err(PartitionError::BoundNotMet { bound, best: Box::new(out) })
    }
}

/// Further pair flips that lower `(max imbalance, Σ imbalance²)` while the
/// bound keeps holding. Equal sides and split pairs are untouched.
pub fn polish(g: &SimpleGraph, p: &PartitionAB, max_rounds: usize) -> PartitionAB {
    let pairing = full_pairing(g, &p.pairs).expect("pairs were valid when the partition was built");
    let mut flips: Vec<bool> = pairing.iter().map(|&(x, _)| !p.in_a(x)).collect();
    let mut state = Balance::new(g, &pairing, &flips);
    local_search(g, &pairing, &mut flips, &mut state, Some(max_rounds));
    build(g, &p.pairs, &pairing, &flips, p.attempts, p.route)
}

fn attempt_seed(seed: u64, attempt: u64) -> u64 {
    seed ^ attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17)
}

/// `pairs` followed by the remaining vertices paired in ascending order.
fn full_pairing(g: &SimpleGraph, pairs: &[(VertexId, VertexId)]) -> Result<Vec<(VertexId, VertexId)>, PartitionError> {
    if g.order() % 2 == 1 {
        return Err(PartitionError::InvalidPairs(format!("order {} is odd", g.order())));
    }
    let mut used = vec![false; g.universe()];
    for &(x, y) in pairs {
        for v in [x, y] {
            if v >= g.universe() || !g.is_live(v) {
                return Err(PartitionError::InvalidPairs(format!("{v} is not a vertex")));
            }
            if std::mem::replace(&mut used[v], true) {
                return Err(PartitionError::InvalidPairs(format!("{v} appears twice")));
            }
        }
    }
    let rest: Vec<VertexId> = g.vertices().filter(|&v| !used[v]).collect();
    let mut out = pairs.to_vec();
    out.extend(rest.chunks(2).map(|c| (c[0], c[1])));
    Ok(out)
}

/// Running `d_A(v) − d_B(v)` for every vertex.
struct Balance {
    diff: Vec<i64>,
}

impl Balance {
    fn new(g: &SimpleGraph, pairing: &[(VertexId, VertexId)], flips: &[bool]) -> Self {
        let mut sign = vec![0i64; g.universe()];
        for (&(x, y), &f) in pairing.iter().zip(flips) {
            let (a, b) = if f { (y, x) } else { (x, y) };
            sign[a] = 1;
            sign[b] = -1;
        }
        let mut diff = vec![0i64; g.universe()];
        for v in g.vertices() {
            diff[v] = g.neighbors(v).map(|w| sign[w]).sum();
        }
        Balance { diff }
    }

    fn max_abs(&self) -> usize {
        self.diff.iter().map(|d| d.unsigned_abs() as usize).max().unwrap_or(0)
    }

    fn key(&self) -> (usize, i64) {
        (self.max_abs(), self.diff.iter().map(|d| d * d).sum())
    }

    /// Moves `to_b` from `A` to `B` and `to_a` from `B` to `A`.
    fn flip(&mut self, g: &SimpleGraph, to_b: VertexId, to_a: VertexId) {
        for w in g.neighbors(to_b) {
            self.diff[w] -= 2;
        }
        for w in g.neighbors(to_a) {
            self.diff[w] += 2;
        }
    }
}

fn a_end(pair: (VertexId, VertexId), flipped: bool) -> (VertexId, VertexId) {
    if flipped {
        (pair.1, pair.0)
    } else {
        pair
    }
}

/// First-improvement descent over single pair flips.
fn local_search(
    g: &SimpleGraph,
    pairing: &[(VertexId, VertexId)],
    flips: &mut [bool],
    state: &mut Balance,
    max_rounds: Option<usize>,
) {
    let mut rounds = 0;
    loop {
        let mut improved = false;
        for (i, &pair) in pairing.iter().enumerate() {
            let before = state.key();
            let (in_a, in_b) = a_end(pair, flips[i]);
            state.flip(g, in_a, in_b);
            if state.key() < before {
                flips[i] = !flips[i];
                improved = true;
            } else {
                state.flip(g, in_b, in_a);
            }
        }
        rounds += 1;
        if !improved || max_rounds.is_some_and(|m| rounds >= m) {
            break;
        }
    }
}

fn build(
    g: &SimpleGraph,
    pairs: &[(VertexId, VertexId)],
    pairing: &[(VertexId, VertexId)],
    flips: &[bool],
    attempts: usize,
    route: PartitionRoute,
) -> PartitionAB {
    let mut side = vec![None; g.universe()];
    for (&pair, &f) in pairing.iter().zip(flips) {
        let (x, y) = a_end(pair, f);
        side[x] = Some(Side::A);
        side[y] = Some(Side::B);
    }
    let a: Vec<VertexId> = g.vertices().filter(|&v| side[v] == Some(Side::A)).collect();
    let b: Vec<VertexId> = g.vertices().filter(|&v| side[v] == Some(Side::B)).collect();
    let mut out = PartitionAB { side, a, b, pairs: pairs.to_vec(), certificate: 0, attempts, route };
    out.certificate = out.recount_certificate(g);
    out
}
