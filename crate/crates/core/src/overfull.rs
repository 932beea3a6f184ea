//! Deficiency accounting and overfull / full subgraph detection for dense
//! graphs of even order.
//!
//! When `δ(G) > |V|/2` and `|V|` is even, any induced proper subgraph that is
//! `Δ(G)`-overfull or `Δ(G)`-full is `G − v` for a minimum-degree vertex `v`,
//! so detection reduces to one deficiency computation per such vertex.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classic::dirac_hamiltonian_cycle;
use crate::error::ClassicError;
use crate::graph::{SimpleGraph, VertexId};

/// `def(v) = Δ(G) − d(v)` for every live vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeficiencyView {
    pub max_degree: usize,
    pub min_degree: usize,
    /// Indexed by vertex id; masked vertices read 0.
    pub deficiency: Vec<usize>,
    pub total: usize,
    /// `V_Δ`, ascending.
    pub v_max: Vec<VertexId>,
    /// `V_δ`, ascending.
    pub v_min: Vec<VertexId>,
}

impl DeficiencyView {
    pub fn of(g: &SimpleGraph) -> Self {
        let max_degree = g.max_degree();
        let min_degree = g.min_degree();
        let mut deficiency = vec![0; g.universe()];
        let mut v_max = Vec::new();
        let mut v_min = Vec::new();
        for v in g.vertices() {
            let d = g.degree(v);
            deficiency[v] = max_degree - d;
            if d == max_degree {
                v_max.push(v);
            }
            if d == min_degree {
                v_min.push(v);
            }
        }
        let total = deficiency.iter().sum();
        DeficiencyView { max_degree, min_degree, deficiency, total, v_max, v_min }
    }

    /// `df(G − v)` measured against `Δ(G)`: every neighbor of `v` loses one
    /// degree and `v`'s own deficiency leaves the sum.
    pub fn df_without(&self, g: &SimpleGraph, v: VertexId) -> usize {
        g.degree(v) + self.total - self.deficiency[v]
    }
}

/// `e(h) > Δ·⌊|V(h)|/2⌋`.
pub fn is_overfull(h: &SimpleGraph, delta_ref: usize) -> bool {
    h.edge_count() > delta_ref * (h.order() / 2)
}

/// `e(h) = Δ·⌊|V(h)|/2⌋` with `|V(h)|` odd.
pub fn is_full(h: &SimpleGraph, delta_ref: usize) -> bool {
    h.order() % 2 == 1 && h.edge_count() == delta_ref * (h.order() / 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OverfullStatus {
    OverfullFound,
    FullFound,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverfullVerdict {
    pub status: OverfullStatus,
    /// The vertex `v` with `G − v` overfull or full.
    pub witness: Option<VertexId>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OverfullError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("graph has no Δ-full subgraph")]
    NotFull,
    #[error("regularization step failed: {0}")]
    Classic(#[from] ClassicError),
}

/// Checks `G − v` for every `v ∈ V_δ`: overfull iff `df(G − v) < Δ`, full
/// iff `df(G − v) = Δ`. Returns the lowest-index overfull witness, else the
/// lowest-index full witness.
pub fn detect(g: &SimpleGraph) -> Result<OverfullVerdict, OverfullError> {
    let n = g.order();
    if n % 2 == 1 {
        return Err(OverfullError::Precondition(format!("order {n} is odd")));
    }
    if 2 * g.min_degree() <= n {
        return Err(OverfullError::Precondition(format!(
            "minimum degree {} is not above half the order {n}",
            g.min_degree()
        )));
    }
    let view = DeficiencyView::of(g);
    let delta = view.max_degree;
    let mut full = None;
    for &v in &view.v_min {
        let df = view.df_without(g, v);
        if df < delta {
            return Ok(OverfullVerdict { status: OverfullStatus::OverfullFound, witness: Some(v) });
        }
        if df == delta && full.is_none() {
            full = Some(v);
        }
    }
    Ok(match full {
        Some(v) => OverfullVerdict { status: OverfullStatus::FullFound, witness: Some(v) },
        None => OverfullVerdict { status: OverfullStatus::None, witness: None },
    })
}

/// Result of peeling matchings off a graph with a `Δ`-full subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regularization {
    /// The `δ(G)`-regular spanning subgraph.
    pub regular: SimpleGraph,
    /// `M_1 … M_g` in removal order; `M_i` misses exactly `x` and the
    /// lightest other vertex at the time of removal.
    pub matchings: Vec<Vec<(VertexId, VertexId)>>,
    /// The vertex `x` with `G − x` full.
    pub anchor: VertexId,
}

/// Deletes `Δ − δ` matchings to reach a `δ`-regular spanning subgraph.
///
/// Each round takes `y`, the minimum-degree vertex other than `x` (lowest
/// index on ties), and removes the perfect matching formed by alternate edges
/// of a Hamiltonian cycle of `G − x − y`. This keeps `δ`, lowers `Δ` by one
/// and keeps `G − x` full.
pub fn regularize_via_full(g: &SimpleGraph) -> Result<Regularization, OverfullError> {
    let verdict = detect(g)?;
    if verdict.status != OverfullStatus::FullFound {
        return Err(OverfullError::NotFull);
    }
    let x = verdict.witness.unwrap();
    let delta0 = g.min_degree();
    let mut cur = g.clone();
    let mut matchings = Vec::new();
    while cur.max_degree() > cur.min_degree() {
        let y = cur
            .vertices()
            .filter(|&v| v != x)
            .min_by_key(|&v| (cur.degree(v), v))
            .expect("at least two vertices");
        let rest = cur.without(&[x, y]);
        let cycle = dirac_hamiltonian_cycle(&rest)?;
        let m: Vec<(VertexId, VertexId)> = cycle.chunks(2).map(|p| (p[0].min(p[1]), p[0].max(p[1]))).collect();
        let before_max = cur.max_degree();
        for &(u, v) in &m {
            cur.remove_edge(u, v);
        }
        debug_assert_eq!(cur.min_degree(), delta0);
        debug_assert_eq!(cur.max_degree() + 1, before_max);
        debug_assert!(cur.max_degree() == cur.min_degree() || {
            let view = DeficiencyView::of(&cur);
            view.df_without(&cur, x) == view.max_degree
        });
        matchings.push(m);
    }
    Ok(Regularization { regular: cur, matchings, anchor: x })
}
