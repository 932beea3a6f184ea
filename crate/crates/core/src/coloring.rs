//! Partial proper edge colorings with per-vertex missing-color bookkeeping.
//!
//! Colors are `1..=palette`; `0` never names a color. For every vertex the
//! coloring keeps a table from color to the incident edge carrying it and a
//! bitset of missing colors, so "which edge at `v` has color `c`" and "is `c`
//! missing at both `u` and `v`" are constant-time queries.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::ColoringError;
use crate::graph::{EdgeIdx, Multigraph, VertexId};

pub type Color = u32;

const NO_EDGE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    palette: u32,
    n: usize,
    ends: Vec<(VertexId, VertexId)>,
    color: Vec<Color>,
    slot: Vec<u32>,
    missing: Vec<FixedBitSet>,
}

impl EdgeColoring {
    /// Empty coloring of the edges of `g` over `[1, palette]`.
    pub fn new(g: &Multigraph, palette: u32) -> Self {
        let n = g.vertex_count();
        let mut c = EdgeColoring {
            palette,
            n,
            ends: Vec::with_capacity(g.edge_count()),
            color: Vec::with_capacity(g.edge_count()),
            slot: vec![NO_EDGE; n * (palette as usize + 1)],
            missing: Vec::with_capacity(n),
        };
        let mut all = FixedBitSet::with_capacity(palette as usize + 1);
        all.insert_range(1..);
        c.missing = vec![all; n];
        for e in g.edges() {
            c.ends.push((e.u, e.v));
            c.color.push(0);
        }
        c
    }

    /// Registers a new uncolored edge; it must mirror an edge just added to
    /// the underlying multigraph so that indices stay aligned.
    pub fn push_edge(&mut self, u: VertexId, v: VertexId) -> EdgeIdx {
        assert!(u < self.n && v < self.n && u != v);
        self.ends.push((u.min(v), u.max(v)));
        self.color.push(0);
        self.ends.len() - 1
    }

    /// Same assignment over a larger palette.
    pub fn widened(&self, palette: u32) -> EdgeColoring {
        assert!(palette >= self.palette);
        let mut out = EdgeColoring {
            palette,
            n: self.n,
            ends: self.ends.clone(),
            color: vec![0; self.ends.len()],
            slot: vec![NO_EDGE; self.n * (palette as usize + 1)],
            missing: Vec::new(),
        };
        let mut all = FixedBitSet::with_capacity(palette as usize + 1);
        all.insert_range(1..);
        out.missing = vec![all; self.n];
        for (e, &c) in self.color.iter().enumerate() {
            if c != 0 {
                out.assign(e, c).expect("widening keeps properness");
            }
        }
        out
    }

    pub fn palette(&self) -> u32 {
        self.palette
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn ends(&self, e: EdgeIdx) -> (VertexId, VertexId) {
        self.ends[e]
    }

    pub fn color(&self, e: EdgeIdx) -> Option<Color> {
        match self.color[e] {
            0 => None,
            c => Some(c),
        }
    }

    #[inline]
    fn slot_index(&self, v: VertexId, c: Color) -> usize {
        v * (self.palette as usize + 1) + c as usize
    }

    /// The edge at `v` colored `c`, if any.
    pub fn edge_with(&self, v: VertexId, c: Color) -> Option<EdgeIdx> {
        match self.slot[self.slot_index(v, c)] {
            NO_EDGE => None,
            e => Some(e as EdgeIdx),
        }
    }

    pub fn is_missing(&self, v: VertexId, c: Color) -> bool {
        self.missing[v].contains(c as usize)
    }

    /// `φ̄(v)` as a bitset indexed by color (bit 0 unused).
    pub fn missing(&self, v: VertexId) -> &FixedBitSet {
        &self.missing[v]
    }

    pub fn missing_colors(&self, v: VertexId) -> impl Iterator<Item = Color> + '_ {
        self.missing[v].ones().map(|c| c as Color)
    }

    pub fn missing_count(&self, v: VertexId) -> usize {
        self.missing[v].count_ones(..)
    }

    /// Lowest color missing at both `u` and `v`.
    pub fn first_common_missing(&self, u: VertexId, v: VertexId) -> Option<Color> {
        self.missing[u].intersection(&self.missing[v]).next().map(|c| c as Color)
    }

    pub fn assign(&mut self, e: EdgeIdx, c: Color) -> Result<(), ColoringError> {
        if c == 0 || c > self.palette {
            return Err(ColoringError::ColorOutOfRange { color: c, palette: self.palette });
        }
        if self.color[e] != 0 {
            return Err(ColoringError::AlreadyColored(e));
        }
        let (u, v) = self.ends[e];
        for w in [u, v] {
            if !self.missing[w].contains(c as usize) {
                return Err(ColoringError::ColorPresent { vertex: w, color: c });
            }
        }
        self.color[e] = c;
        for w in [u, v] {
            self.missing[w].set(c as usize, false);
            let s = self.slot_index(w, c);
            self.slot[s] = e as u32;
        }
        Ok(())
    }

    pub fn unassign(&mut self, e: EdgeIdx) -> Option<Color> {
        let c = self.color[e];
        if c == 0 {
            return None;
        }
        self.color[e] = 0;
        let (u, v) = self.ends[e];
        for w in [u, v] {
            self.missing[w].insert(c as usize);
            let s = self.slot_index(w, c);
            self.slot[s] = NO_EDGE;
        }
        Some(c)
    }

    pub fn colored_count(&self) -> usize {
        self.color.iter().filter(|&&c| c != 0).count()
    }

    pub fn is_complete(&self) -> bool {
        self.color.iter().all(|&c| c != 0)
    }

    pub fn uncolored_edges(&self) -> impl Iterator<Item = EdgeIdx> + '_ {
        self.color.iter().enumerate().filter(|(_, &c)| c == 0).map(|(e, _)| e)
    }

    pub fn edges_of_color(&self, c: Color) -> impl Iterator<Item = EdgeIdx> + '_ {
        self.color.iter().enumerate().filter(move |(_, &x)| x == c).map(|(e, _)| e)
    }

    /// Number of edges in each class; entry `c - 1` is class `c`.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.palette as usize];
        for &c in &self.color {
            if c != 0 {
                sizes[c as usize - 1] += 1;
            }
        }
        sizes
    }

    /// Number of colors in use.
    pub fn used_colors(&self) -> usize {
        self.class_sizes().iter().filter(|&&s| s > 0).count()
    }

    /// `|φ̄⁻¹_X(c)|` for the vertex set `X`.
    pub fn missing_among<I: IntoIterator<Item = VertexId>>(&self, c: Color, xs: I) -> usize {
        xs.into_iter().filter(|&v| self.is_missing(v, c)).count()
    }

    /// The component of the `(i, j)`-subgraph containing `start`, as edges
    /// in walk order.
    pub fn alternating_component(&self, start: VertexId, i: Color, j: Color) -> Vec<EdgeIdx> {
        let mut out = Vec::new();
        let mut seen_vertex = FixedBitSet::with_capacity(self.n);
        let mut queue = VecDeque::from([start]);
        seen_vertex.insert(start);
        let mut seen_edge = std::collections::HashSet::new();
        while let Some(x) = queue.pop_front() {
            for c in [i, j] {
                if let Some(e) = self.edge_with(x, c) {
                    if seen_edge.insert(e) {
                        out.push(e);
                        let (a, b) = self.ends[e];
                        let y = if a == x { b } else { a };
                        if !seen_vertex.put(y) {
                            queue.push_back(y);
                        }
                    }
                }
            }
        }
        out
    }

    /// Exchanges `i` and `j` on the listed edges, which must form a whole
    /// `(i, j)`-component (or a union of them).
    pub fn swap_on(&mut self, edges: &[EdgeIdx], i: Color, j: Color) {
        let old: Vec<Color> = edges.iter().map(|&e| self.unassign(e).expect("colored edge")).collect();
        for (&e, &c) in edges.iter().zip(&old) {
            let new = if c == i { j } else { debug_assert_eq!(c, j); i };
            self.assign(e, new).expect("Kempe swap keeps the coloring proper");
        }
    }

    /// Swaps `i` and `j` on the `(i, j)`-component containing `start`.
    /// Returns the number of recolored edges.
    pub fn kempe_swap(&mut self, start: VertexId, i: Color, j: Color) -> usize {
        if i == j {
            return 0;
        }
        let comp = self.alternating_component(start, i, j);
        self.swap_on(&comp, i, j);
        comp.len()
    }

    /// Applies `new = perm[old - 1]` to every colored edge. `perm` must be a
    /// permutation of `1..=palette`.
    pub fn rename_colors(&mut self, perm: &[Color]) {
        assert_eq!(perm.len(), self.palette as usize);
        let old: Vec<(EdgeIdx, Color)> = (0..self.ends.len())
            .filter_map(|e| self.color(e).map(|c| (e, c)))
            .collect();
        for &(e, _) in &old {
            self.unassign(e);
        }
        for (e, c) in old {
            self.assign(e, perm[c as usize - 1]).expect("renaming is a bijection");
        }
    }

    /// Recounts the incremental tables from the raw assignment.
    pub fn check_consistency(&self) -> Result<(), String> {
        let mut seen = vec![FixedBitSet::with_capacity(self.palette as usize + 1); self.n];
        for (e, &c) in self.color.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (u, v) = self.ends[e];
            for w in [u, v] {
                if seen[w].put(c as usize) {
                    return Err(format!("color {c} twice at vertex {w}"));
                }
                if self.edge_with(w, c) != Some(e) {
                    return Err(format!("slot table stale at vertex {w} color {c}"));
                }
            }
        }
        for v in 0..self.n {
            for c in 1..=self.palette {
                let present = seen[v].contains(c as usize);
                if present == self.is_missing(v, c) {
                    return Err(format!("missing set stale at vertex {v} color {c}"));
                }
                if !present && self.edge_with(v, c).is_some() {
                    return Err(format!("slot table stale at vertex {v} color {c}"));
                }
            }
        }
        Ok(())
    }
}

/// First properness violation found by [`validate_proper`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub vertex: VertexId,
    pub color: Color,
}

/// Checks an arbitrary edge-to-color assignment for `g` by direct recount.
/// `colors[e]` is the color of edge `e`, if any.
pub fn validate_assignment(g: &Multigraph, colors: &[Option<Color>]) -> Result<(), Violation> {
    assert_eq!(colors.len(), g.edge_count(), "assignment must cover the edge list");
    for v in 0..g.vertex_count() {
        let mut seen = std::collections::HashSet::new();
        for &e in g.incident(v) {
            if let Some(c) = colors[e] {
                if !seen.insert(c) {
                    return Err(Violation { vertex: v, color: c });
                }
            }
        }
    }
    Ok(())
}

/// Properness of `c` on `g`, recomputed from scratch rather than read from
/// the coloring's own tables.
pub fn validate_proper(g: &Multigraph, c: &EdgeColoring) -> Result<(), Violation> {
    let colors: Vec<Option<Color>> = (0..g.edge_count()).map(|e| c.color(e)).collect();
    validate_assignment(g, &colors)
}

/// Per-color class sizes and missing counts over a vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorClassStats {
    /// Entry `c - 1` is the number of edges colored `c`.
    pub class_sizes: Vec<usize>,
    /// Entry `c - 1` is the number of vertices of the set missing `c`.
    pub missing_counts: Vec<usize>,
}

impl ColorClassStats {
    pub fn of(c: &EdgeColoring, vertices: &[VertexId]) -> Self {
        let class_sizes = c.class_sizes();
        let missing_counts = (1..=c.palette()).map(|col| c.missing_among(col, vertices.iter().copied())).collect();
        ColorClassStats { class_sizes, missing_counts }
    }
}

/// Kempe rounds performed by [`equalize`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualizeStats {
    pub rounds: usize,
}

/// Rebalances class sizes so that any two differ by at most one.
///
/// Each round takes the largest class `j` and the smallest class `i` (ties by
/// smaller color) and swaps a component of the `(i, j)`-subgraph that is a
/// path beginning and ending with `j`-edges.
pub fn equalize(c: &mut EdgeColoring) -> EqualizeStats {
    let k = c.palette() as usize;
    if k == 0 {
        return EqualizeStats::default();
    }
    let mut sizes = c.class_sizes();
    let limit = k * k * c.vertex_count().max(1);
    let mut rounds = 0;
    loop {
        let mut i = 0;
        let mut j = 0;
        for col in 0..k {
            if sizes[col] < sizes[i] {
                i = col;
            }
            if sizes[col] > sizes[j] {
                j = col;
            }
        }
        if sizes[j] <= sizes[i] + 1 {
            break;
        }
        let (ci, cj) = (i as Color + 1, j as Color + 1);
        let path = find_majority_path(c, ci, cj).expect("an (i,j)-path with more j-edges exists");
        c.swap_on(&path, ci, cj);
        sizes[i] += 1;
        sizes[j] -= 1;
        rounds += 1;
        assert!(rounds <= limit, "equalization exceeded k^2 |V| rounds");
    }
    EqualizeStats { rounds }
}

/// An `(i, j)`-component with one more `j`-edge than `i`-edges, scanning
/// `j`-edges by index.
fn find_majority_path(c: &EdgeColoring, i: Color, j: Color) -> Option<Vec<EdgeIdx>> {
    let mut visited = vec![false; c.edge_count()];
    for e in 0..c.edge_count() {
        if c.color[e] != j || visited[e] {
            continue;
        }
        let comp = c.alternating_component(c.ends[e].0, i, j);
        let mut balance = 0i64;
        for &f in &comp {
            visited[f] = true;
            balance += if c.color[f] == j { 1 } else { -1 };
        }
        if balance == 1 {
            return Some(comp);
        }
    }
    None
}

/// Parity Lemma check: for every color `i ≤ Δ(g)`, the number of vertices
/// missing `i` has the parity of `|V(g)|`.
pub fn parity_check(g: &Multigraph, c: &EdgeColoring) -> bool {
    let n = g.vertex_count();
    let delta = g.max_degree().min(c.palette() as usize);
    (1..=delta as Color).all(|i| c.missing_among(i, 0..n) % 2 == n % 2)
}
