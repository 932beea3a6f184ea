//! `Δ + 1` edge coloring of simple graphs by fan rotation (Misra–Gries).

use fixedbitset::FixedBitSet;

use crate::coloring::{Color, EdgeColoring};
use crate::error::ClassicError;
use crate::graph::{EdgeIdx, Multigraph, SimpleGraph, VertexId};

/// Colors every uncolored edge of `g`, recoloring colored edges as needed.
/// Requires `g` without parallel edges and a palette of at least `Δ(g) + 1`.
pub fn misra_gries(g: &Multigraph, c: &mut EdgeColoring) -> Result<(), ClassicError> {
    if g.max_multiplicity() > 1 {
        return Err(ClassicError::Hypothesis("fan rotation needs a simple graph".into()));
    }
    if (c.palette() as usize) < g.max_degree() + 1 {
        return Err(ClassicError::Hypothesis(format!(
            "palette {} below Δ + 1 = {}",
            c.palette(),
            g.max_degree() + 1
        )));
    }
    for e in 0..g.edge_count() {
        if c.color(e).is_none() {
            color_edge(g, c, e);
        }
    }
    Ok(())
}

fn edge_between(g: &Multigraph, u: VertexId, x: VertexId) -> EdgeIdx {
    g.find_edge(u, x, 0).expect("fan vertices are neighbors")
}

fn color_edge(g: &Multigraph, c: &mut EdgeColoring, e: EdgeIdx) {
    let id = g.edge(e);
    let (u, v) = (id.u, id.v);

    let mut fan = vec![v];
    let mut in_fan = FixedBitSet::with_capacity(g.vertex_count());
    in_fan.insert(v);
    'grow: loop {
        let last = *fan.last().unwrap();
        for col in c.missing_colors(last).collect::<Vec<_>>() {
            if let Some(f) = c.edge_with(u, col) {
                let (a, b) = c.ends(f);
                let x = if a == u { b } else { a };
                if !in_fan.put(x) {
                    fan.push(x);
                    continue 'grow;
                }
            }
        }
        break;
    }

    let cu = c.missing_colors(u).next().expect("u has a free color");
    let d = c.missing_colors(*fan.last().unwrap()).next().expect("fan end has a free color");
    if cu != d && !c.is_missing(u, d) {
        c.kempe_swap(u, cu, d);
    }

    let w = (0..fan.len())
        .find(|&j| c.is_missing(fan[j], d) && is_fan_prefix(g, c, u, &fan[..=j]))
        .expect("Misra–Gries guarantees a rotatable prefix");

    let edges: Vec<EdgeIdx> = fan[..=w].iter().map(|&x| edge_between(g, u, x)).collect();
    let shifted: Vec<Color> = edges[1..].iter().map(|&f| c.color(f).unwrap()).collect();
    for &f in &edges[1..] {
        c.unassign(f);
    }
    for (j, &col) in shifted.iter().enumerate() {
        c.assign(edges[j], col).expect("rotation stays proper");
    }
    c.assign(edges[w], d).expect("d is free at u and at the pivot");
}

/// A fan at `u`: the first edge is uncolored, and each later edge carries a
/// color missing at the previous fan vertex.
fn is_fan_prefix(g: &Multigraph, c: &EdgeColoring, u: VertexId, fan: &[VertexId]) -> bool {
    fan.windows(2).all(|w| match c.color(edge_between(g, u, w[1])) {
        Some(col) => c.is_missing(w[0], col),
        None => false,
    })
}

/// Proper coloring of `g` over the palette `[1, Δ(g) + 1]`.
pub fn vizing_color(g: &SimpleGraph) -> (Multigraph, EdgeColoring) {
    let m = Multigraph::from_simple(g);
    let mut c = EdgeColoring::new(&m, g.max_degree() as u32 + 1);
    misra_gries(&m, &mut c).expect("simple graph with Δ + 1 colors");
    (m, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::validate_proper;

    fn petersen() -> SimpleGraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        SimpleGraph::from_edges(10, &edges).unwrap()
    }

    #[test]
    fn small_graphs() {
        let (m, c) = vizing_color(&SimpleGraph::cycle(5));
        assert!(c.is_complete());
        assert!(validate_proper(&m, &c).is_ok());
        assert_eq!(c.used_colors(), 3);

        let (m, c) = vizing_color(&SimpleGraph::complete(4));
        assert!(validate_proper(&m, &c).is_ok());
        assert!(c.used_colors() <= 4);

        let (m, c) = vizing_color(&petersen());
        assert!(c.is_complete());
        assert!(validate_proper(&m, &c).is_ok());
        assert_eq!(c.used_colors(), 4);
    }

    #[test]
    fn complete_graphs() {
        for n in 2..12 {
            let g = SimpleGraph::complete(n);
            let (m, c) = vizing_color(&g);
            assert!(c.is_complete());
            assert!(validate_proper(&m, &c).is_ok());
            c.check_consistency().unwrap();
        }
    }
}
