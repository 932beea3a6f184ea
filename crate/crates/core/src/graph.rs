//! Dense simple graphs and small-multiplicity multigraphs.
//!
//! [`SimpleGraph`] keeps one adjacency bitset per vertex so that
//! neighborhood intersections cost `O(n / 64)`. Vertices are never removed
//! physically: taking an induced subgraph masks the dropped vertices, so a
//! [`VertexId`] keeps meaning the same vertex across every reduction.
//!
//! [`Multigraph`] stores an explicit edge list with a per-pair multiplicity
//! counter. Parallel edges are told apart by their copy index.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::GraphError;

/// Dense vertex index in `[0, universe)`.
pub type VertexId = usize;

/// Position of an edge in a [`Multigraph`] edge list.
pub type EdgeIdx = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    universe: usize,
    alive: FixedBitSet,
    rows: Vec<FixedBitSet>,
    edge_count: usize,
}

impl SimpleGraph {
    /// Edgeless graph on `n` live vertices.
    pub fn new(n: usize) -> Self {
        let mut alive = FixedBitSet::with_capacity(n);
        alive.insert_range(..);
        SimpleGraph {
            universe: n,
            alive,
            rows: vec![FixedBitSet::with_capacity(n); n],
            edge_count: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = SimpleGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = SimpleGraph::new(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n);
        }
        g
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut g = SimpleGraph::new(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if !g.add_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        Ok(g)
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v >= self.universe {
            Err(GraphError::VertexOutOfRange { vertex: v, universe: self.universe })
        } else {
            Ok(())
        }
    }

    #[inline]
    fn assert_live(&self, v: VertexId) {
        assert!(
            v < self.universe && self.alive.contains(v),
            "vertex {v} is not a live vertex of this graph"
        );
    }

    /// Size of the id space, including masked vertices.
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Number of live vertices.
    pub fn order(&self) -> usize {
        self.alive.count_ones(..)
    }

    pub fn is_live(&self, v: VertexId) -> bool {
        v < self.universe && self.alive.contains(v)
    }

    pub fn live_set(&self) -> &FixedBitSet {
        &self.alive
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.alive.ones()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.universe && v < self.universe && self.rows[u].contains(v)
    }

    /// Inserts `uv`; returns false if it was already present.
    ///
    /// Panics on loops or masked endpoints.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        self.assert_live(u);
        self.assert_live(v);
        assert_ne!(u, v, "loops are not allowed");
        if self.rows[u].contains(v) {
            return false;
        }
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        self.edge_count += 1;
        true
    }

    /// Removes `uv`; returns false if it was absent.
    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        self.rows[u].set(v, false);
        self.rows[v].set(u, false);
        self.edge_count -= 1;
        true
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.assert_live(v);
        self.rows[v].count_ones(..)
    }

    pub fn neighbor_set(&self, v: VertexId) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.rows[v].ones()
    }

    pub fn common_neighbor_count(&self, u: VertexId, v: VertexId) -> usize {
        self.rows[u].intersection_count(&self.rows[v])
    }

    /// Neighbors of `v` inside `set`.
    pub fn degree_into(&self, v: VertexId, set: &FixedBitSet) -> usize {
        self.rows[v].intersection_count(set)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.alive
            .ones()
            .flat_map(move |u| self.rows[u].ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn degrees(&self) -> Vec<(VertexId, usize)> {
        self.vertices().map(|v| (v, self.degree(v))).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.max_degree() == self.min_degree()
    }

    /// Subgraph induced on the live vertices of `keep`; the rest are masked.
    pub fn induced_subgraph(&self, keep: &FixedBitSet) -> SimpleGraph {
        let mut alive = self.alive.clone();
        alive.intersect_with(keep);
        let mut rows = Vec::with_capacity(self.universe);
        let mut twice_edges = 0;
        for v in 0..self.universe {
            if alive.contains(v) {
                let mut row = self.rows[v].clone();
                row.intersect_with(&alive);
                twice_edges += row.count_ones(..);
                rows.push(row);
            } else {
                rows.push(FixedBitSet::with_capacity(self.universe));
            }
        }
        SimpleGraph { universe: self.universe, alive, rows, edge_count: twice_edges / 2 }
    }

    /// Induced subgraph on the listed vertices.
    pub fn induced_on(&self, keep: &[VertexId]) -> SimpleGraph {
        self.induced_subgraph(&self.vertex_set(keep))
    }

    /// `G - S`.
    pub fn without(&self, drop: &[VertexId]) -> SimpleGraph {
        let mut keep = self.alive.clone();
        for &v in drop {
            keep.set(v, false);
        }
        self.induced_subgraph(&keep)
    }

    pub fn vertex_set(&self, vs: &[VertexId]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.universe);
        for &v in vs {
            s.insert(v);
        }
        s
    }

    /// `G[A, B]`: vertex set `A ∪ B`, edges with one end on each side.
    pub fn bipartite_between(&self, a: &[VertexId], b: &[VertexId]) -> Result<SimpleGraph, GraphError> {
        let sa = self.vertex_set(a);
        let sb = self.vertex_set(b);
        if let Some(v) = sa.intersection(&sb).next() {
            return Err(GraphError::OverlappingSides(v));
        }
        let mut alive = sa.clone();
        alive.union_with(&sb);
        alive.intersect_with(&self.alive);
        let mut rows = vec![FixedBitSet::with_capacity(self.universe); self.universe];
        let mut edge_count = 0;
        for u in sa.ones().filter(|&u| self.alive.contains(u)) {
            let mut row = self.rows[u].clone();
            row.intersect_with(&sb);
            row.intersect_with(&self.alive);
            for v in row.ones() {
                rows[v].insert(u);
                edge_count += 1;
            }
            rows[u] = row;
        }
        Ok(SimpleGraph { universe: self.universe, alive, rows, edge_count })
    }

    pub fn complement(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.universe);
        g.alive = self.alive.clone();
        for u in self.vertices() {
            let mut row = self.alive.clone();
            row.difference_with(&self.rows[u]);
            row.set(u, false);
            g.rows[u] = row;
        }
        let twice: usize = g.vertices().map(|v| g.rows[v].count_ones(..)).sum();
        g.edge_count = twice / 2;
        g
    }

    pub fn degree_sum(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).sum()
    }
}

/// One edge of a [`Multigraph`]: endpoints with `u < v` and the index of
/// this copy among the parallel `uv` edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId {
    pub u: VertexId,
    pub v: VertexId,
    pub copy: u32,
}

impl EdgeId {
    pub fn other(&self, w: VertexId) -> VertexId {
        if w == self.u {
            self.v
        } else {
            debug_assert_eq!(w, self.v);
            self.u
        }
    }

    pub fn touches(&self, w: VertexId) -> bool {
        self.u == w || self.v == w
    }
}

/// Loop-free multigraph with an explicit edge list.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<EdgeId>,
    incidence: Vec<Vec<EdgeIdx>>,
    mult: HashMap<(VertexId, VertexId), u32>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph { n, edges: Vec::new(), incidence: vec![Vec::new(); n], mult: HashMap::new() }
    }

    pub fn from_simple(g: &SimpleGraph) -> Self {
        let mut m = Multigraph::new(g.universe());
        for (u, v) in g.edges() {
            m.add_edge(u, v).expect("simple graph edge");
        }
        m
    }

    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut m = Multigraph::new(n);
        for &(u, v) in edges {
            m.add_edge(u, v)?;
        }
        Ok(m)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeIdx, GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, universe: self.n });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        let key = (u.min(v), u.max(v));
        let copies = self.mult.entry(key).or_insert(0);
        let id = EdgeId { u: key.0, v: key.1, copy: *copies };
        *copies += 1;
        let idx = self.edges.len();
        self.edges.push(id);
        self.incidence[u].push(idx);
        self.incidence[v].push(idx);
        Ok(idx)
    }

    pub fn edge(&self, e: EdgeIdx) -> EdgeId {
        self.edges[e]
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeIdx] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        assert!(v < self.n, "vertex {v} out of range");
        self.incidence[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> u32 {
        self.mult.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    /// `μ(G)`, the largest pairwise multiplicity.
    pub fn max_multiplicity(&self) -> u32 {
        self.mult.values().copied().max().unwrap_or(0)
    }

    pub fn find_edge(&self, u: VertexId, v: VertexId, copy: u32) -> Option<EdgeIdx> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let (a, b) = (u.min(v), u.max(v));
        self.incidence[a]
            .iter()
            .copied()
            .find(|&e| self.edges[e] == EdgeId { u: a, v: b, copy })
    }

    /// Proper 2-coloring of the vertices that carry edges, if one exists.
    /// Isolated vertices are put on side `false`.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                let sx = side[x].unwrap();
                for &e in &self.incidence[x] {
                    let y = self.edges[e].other(x);
                    match side[y] {
                        None => {
                            side[y] = Some(!sx);
                            stack.push(y);
                        }
                        Some(sy) if sy == sx => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap_or(false)).collect())
    }
}
