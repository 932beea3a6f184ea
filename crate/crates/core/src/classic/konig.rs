//! `Δ`-edge-coloring of bipartite multigraphs.

use crate::coloring::EdgeColoring;
use crate::error::ClassicError;
use crate::graph::Multigraph;

/// Colors `g` with exactly `Δ(g)` colors.
///
/// Edges are colored one at a time: with `α` free at `u` and `β` free at `v`,
/// either `α` is also free at `v`, or the `(α, β)`-chain from `v` is swapped.
/// In a bipartite graph that chain cannot reach `u`, so `α` becomes free at
/// both ends.
pub fn konig_color(g: &Multigraph) -> Result<EdgeColoring, ClassicError> {
    konig_color_with(g, |_| true)
}

/// König coloring restricted to the edges selected by `keep`; other edges
/// stay uncolored. The palette is the maximum degree of the selected edges.
pub fn konig_color_with(g: &Multigraph, keep: impl Fn(usize) -> bool) -> Result<EdgeColoring, ClassicError> {
    let mut sub = Multigraph::new(g.vertex_count());
    let mut back = Vec::new();
    for (e, id) in g.edges().iter().enumerate() {
        if keep(e) {
            sub.add_edge(id.u, id.v).expect("edge of g");
            back.push(e);
        }
    }
    if sub.bipartition().is_none() {
        return Err(ClassicError::NotBipartite);
    }
    let delta = sub.max_degree() as u32;
    let mut c = EdgeColoring::new(&sub, delta);
    for e in 0..sub.edge_count() {
        let id = sub.edge(e);
        let alpha = c.missing_colors(id.u).next().expect("u has a free color");
        if !c.is_missing(id.v, alpha) {
            let beta = c.missing_colors(id.v).next().expect("v has a free color");
            c.kempe_swap(id.v, alpha, beta);
        }
        c.assign(e, alpha).expect("bipartite chains avoid u");
    }
    let mut out = EdgeColoring::new(g, delta);
    for (se, &e) in back.iter().enumerate() {
        out.assign(e, c.color(se).unwrap()).expect("copied coloring is proper");
    }
    Ok(out)
}
