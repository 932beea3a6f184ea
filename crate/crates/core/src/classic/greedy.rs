//! Greedy multigraph coloring, optionally repaired by Kempe swaps.

use crate::coloring::{Color, EdgeColoring};
use crate::error::ClassicError;
use crate::graph::{EdgeIdx, Multigraph};

/// Colors edges in index order with the lowest color free at both ends.
/// Always succeeds when `k ≥ 2Δ(g) − 1`.
pub fn greedy_multigraph_color(g: &Multigraph, k: u32) -> Result<EdgeColoring, ClassicError> {
    let mut c = EdgeColoring::new(g, k);
    for e in 0..g.edge_count() {
        let id = g.edge(e);
        match c.first_common_missing(id.u, id.v) {
            Some(col) => c.assign(e, col).expect("common missing color"),
            None => return Err(ClassicError::GreedyStuck { edge: e, palette: k }),
        }
    }
    Ok(c)
}

/// Greedy coloring that, when an edge has no common free color, tries
/// `(α, β)` Kempe swaps at either endpoint to create one. Needs `k > Δ(g) - 1`
/// to have any free colors at all; success is not guaranteed below `2Δ − 1`.
pub fn color_with_repair(g: &Multigraph, k: u32) -> Result<EdgeColoring, ClassicError> {
    let mut c = EdgeColoring::new(g, k);
    for e in 0..g.edge_count() {
        if !color_one(g, &mut c, e) {
            return Err(ClassicError::GreedyStuck { edge: e, palette: k });
        }
    }
    Ok(c)
}

fn color_one(g: &Multigraph, c: &mut EdgeColoring, e: EdgeIdx) -> bool {
    let id = g.edge(e);
    if let Some(col) = c.first_common_missing(id.u, id.v) {
        c.assign(e, col).expect("common missing color");
        return true;
    }
    for (x, y) in [(id.u, id.v), (id.v, id.u)] {
        let at_x: Vec<Color> = c.missing_colors(x).collect();
        let at_y: Vec<Color> = c.missing_colors(y).collect();
        for &alpha in &at_x {
            for &beta in &at_y {
                // Flip the (α, β)-chain at y so that α becomes free there.
                let comp = c.alternating_component(y, alpha, beta);
                if comp.iter().any(|&f| {
                    let (a, b) = c.ends(f);
                    a == x || b == x
                }) {
                    continue;
                }
                c.swap_on(&comp, alpha, beta);
                debug_assert!(c.is_missing(y, alpha) && c.is_missing(x, alpha));
                c.assign(e, alpha).expect("α free at both ends after the swap");
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::validate_proper;
    use crate::graph::SimpleGraph;

    #[test]
    fn examples() {
        let double = Multigraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        let c = greedy_multigraph_color(&double, 3).unwrap();
        assert_ne!(c.color(0), c.color(1));

        let c6 = Multigraph::from_simple(&SimpleGraph::cycle(6));
        let c = greedy_multigraph_color(&c6, 3).unwrap();
        assert!(c.is_complete() && validate_proper(&c6, &c).is_ok());

        let empty = Multigraph::new(4);
        assert_eq!(greedy_multigraph_color(&empty, 0).unwrap().edge_count(), 0);
    }

    #[test]
    fn repair_reaches_delta_plus_one_on_small_graphs() {
        let k6 = Multigraph::from_simple(&SimpleGraph::complete(6));
        let c = color_with_repair(&k6, 6).unwrap();
        assert!(c.is_complete() && validate_proper(&k6, &c).is_ok());
    }
}
