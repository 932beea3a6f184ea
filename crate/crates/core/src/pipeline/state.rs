//! Working state shared by the four steps.

use crate::coloring::{Color, EdgeColoring};
use crate::graph::{EdgeIdx, Multigraph, VertexId};
use crate::partition::{PartitionAB, Side};
use crate::pipeline::Condition;

const NO_EDGE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// Both ends on one side (an edge of `G*_A` or `G*_B`).
    Inside(Side),
    /// One end on each side (an edge of `H`).
    Cross,
}

/// `G*` with its partial coloring over `[1, Δ]`.
///
/// Edge indices `0..base_edges` are the edges of `G` in the order of
/// `Multigraph::from_simple(G)`; later indices are the same-side edges added
/// in step 1.
#[derive(Clone, Debug)]
pub struct SideState {
    pub n: usize,
    pub delta: usize,
    pub condition: Condition,
    pub part: PartitionAB,
    pub gstar: Multigraph,
    pub base_edges: usize,
    pub kind: Vec<EdgeKind>,
    pub phi: EdgeColoring,
    pub k: u32,
    /// Extra colors chosen in step 3 (0 before it runs).
    pub ell: u32,
    /// `S`: deficiency at or above the profile threshold.
    pub in_s: Vec<bool>,
    /// `S_A ∪ S_B`: never interior to an exchanged path.
    pub restricted: Vec<bool>,
    /// `V_δ` of the input graph.
    pub light: Vec<bool>,
    /// Degree in `R_A ∪ R_B` (uncolored same-side edges).
    pub rdeg: Vec<usize>,
    /// An edge is good while both ends have residual degree below this.
    pub good_cap: f64,
    cross: Vec<u32>,
}

impl SideState {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn new(
        n: usize,
        delta: usize,
        condition: Condition,
        part: PartitionAB,
        gstar: Multigraph,
        base_edges: usize,
        phi: EdgeColoring,
        k: u32,
        in_s: Vec<bool>,
        restricted: Vec<bool>,
        light: Vec<bool>,
        good_cap: f64,
    ) -> Self {
        let size = gstar.vertex_count();
        let mut kind = Vec::with_capacity(gstar.edge_count());
        let mut cross = vec![NO_EDGE; size * size];
        for (e, id) in gstar.edges().iter().enumerate() {
            let (su, sv) = (part.side_of(id.u), part.side_of(id.v));
            if su == sv {
                kind.push(EdgeKind::Inside(su));
            } else {
                kind.push(EdgeKind::Cross);
                cross[id.u * size + id.v] = e as u32;
                cross[id.v * size + id.u] = e as u32;
            }
        }
        SideState {
            n,
            delta,
            condition,
            part,
            gstar,
            base_edges,
            kind,
            phi,
            k,
            ell: 0,
            in_s,
            restricted,
            light,
            rdeg: vec![0; size],
            good_cap,
            cross,
        }
    }

    pub fn size(&self) -> usize {
        self.gstar.vertex_count()
    }

    pub fn side(&self, v: VertexId) -> Side {
        self.part.side_of(v)
    }

    pub fn members(&self, side: Side) -> &[VertexId] {
        match side {
            Side::A => &self.part.a,
            Side::B => &self.part.b,
        }
    }

    pub fn cross_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeIdx> {
        match self.cross[u * self.size() + v] {
            NO_EDGE => None,
            e => Some(e as EdgeIdx),
        }
    }

    /// The uncolored cross edge `uv`, if there is one.
    pub fn open_cross(&self, u: VertexId, v: VertexId) -> Option<EdgeIdx> {
        self.cross_edge(u, v).filter(|&e| self.phi.color(e).is_none())
    }

    /// Uncolored same-side edges of `side` (the residual graph `R_side`).
    pub fn residual_edges(&self, side: Side) -> Vec<EdgeIdx> {
        (0..self.gstar.edge_count())
            .filter(|&e| self.kind[e] == EdgeKind::Inside(side) && self.phi.color(e).is_none())
            .collect()
    }

    /// Colored cross edges at `v`.
    pub fn colored_cross_degree(&self, v: VertexId) -> usize {
        self.gstar
            .incident(v)
            .iter()
            .filter(|&&e| self.kind[e] == EdgeKind::Cross && self.phi.color(e).is_some())
            .count()
    }

    fn below_cap(&self, v: VertexId) -> bool {
        (self.rdeg[v] as f64) < self.good_cap
    }

    /// The `i`-colored edge at `x` if it lies inside `side`, avoids `S_A ∪
    /// S_B`, and (unless `relaxed`) is good. Returns the edge and its other
    /// end.
    pub fn usable_mate(&self, x: VertexId, i: Color, side: Side, relaxed: bool) -> Option<(EdgeIdx, VertexId)> {
        let e = self.phi.edge_with(x, i)?;
        if self.kind[e] != EdgeKind::Inside(side) {
            return None;
        }
        let y = self.gstar.edge(e).other(x);
        if self.restricted[x] || self.restricted[y] {
            return None;
        }
        if !relaxed && !(self.below_cap(x) && self.below_cap(y)) {
            return None;
        }
        Some((e, y))
    }

    /// Exchanges the alternating path `path[0] path[1] …`: its first, third,
    /// … edges are uncolored cross edges and receive `i`; its second, fourth,
    /// … edges carry `i` and are uncolored. Same-side edges that lose their
    /// color join the residual graphs.
    pub fn exchange(&mut self, path: &[VertexId], i: Color) {
        let mut to_color = Vec::new();
        let mut to_clear = Vec::new();
        for (pos, w) in path.windows(2).enumerate() {
            if pos % 2 == 0 {
                to_color.push(self.open_cross(w[0], w[1]).expect("uncolored cross edge on the path"));
            } else {
                let e = self.phi.edge_with(w[0], i).expect("colored edge on the path");
                debug_assert_eq!(self.gstar.edge(e).other(w[0]), w[1]);
                to_clear.push(e);
            }
        }
        for e in to_clear {
            self.phi.unassign(e);
            if let EdgeKind::Inside(_) = self.kind[e] {
                let id = self.gstar.edge(e);
                self.rdeg[id.u] += 1;
                self.rdeg[id.v] += 1;
            }
        }
        for e in to_color {
            self.phi.assign(e, i).expect("path exchange keeps the coloring proper");
        }
    }

    pub fn max_residual_degree(&self) -> usize {
        self.rdeg.iter().copied().max().unwrap_or(0)
    }
}
