//! Spanning systems of vertex-disjoint paths with prescribed endpoints.

use fixedbitset::FixedBitSet;

use crate::classic::hamilton::hamiltonian_path_between;
use crate::error::ClassicError;
use crate::graph::{SimpleGraph, VertexId};

/// Vertex-disjoint paths; path `i` runs from `pairs[i].0` to `pairs[i].1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSystem {
    pub paths: Vec<Vec<VertexId>>,
}

impl PathSystem {
    /// Path edges as `(u, v)` pairs in path order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.paths.iter().flat_map(|p| p.windows(2).map(|w| (w[0], w[1])))
    }
}

/// Paths `P_1 … P_t` covering every live vertex of `g`, `P_i` joining
/// `pairs[i]`. All but the last are `a c b` through the lowest-index unused
/// common neighbor `c`; the last is a Hamiltonian path of what remains.
pub fn path_system(g: &SimpleGraph, pairs: &[(VertexId, VertexId)]) -> Result<PathSystem, ClassicError> {
    if pairs.is_empty() {
        return Err(ClassicError::Hypothesis("a spanning path system needs at least one pair".into()));
    }
    let mut used = FixedBitSet::with_capacity(g.universe());
    for &(a, b) in pairs {
        for v in [a, b] {
            if !g.is_live(v) {
                return Err(ClassicError::Hypothesis(format!("endpoint {v} is not a live vertex")));
            }
            if used.put(v) {
                return Err(ClassicError::Hypothesis(format!("endpoint {v} appears in two pairs")));
            }
        }
        if a == b {
            return Err(ClassicError::Hypothesis("pair endpoints must be distinct".into()));
        }
    }
    let t = pairs.len();
    let mut paths = Vec::with_capacity(t);
    let mut removed = Vec::new();
    for &(a, b) in &pairs[..t - 1] {
        let c = g
            .neighbor_set(a)
            .intersection(g.neighbor_set(b))
            .find(|&c| !used.contains(c))
            .ok_or(ClassicError::NoCommonNeighbor(a, b))?;
        used.insert(c);
        paths.push(vec![a, c, b]);
        removed.extend([a, c, b]);
    }
    let (at, bt) = pairs[t - 1];
    let rest = g.without(&removed);
    paths.push(hamiltonian_path_between(&rest, at, bt)?);
    Ok(PathSystem { paths })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(g: &SimpleGraph, pairs: &[(VertexId, VertexId)], ps: &PathSystem) {
        let mut seen = FixedBitSet::with_capacity(g.universe());
        assert_eq!(ps.paths.len(), pairs.len());
        for (p, &(a, b)) in ps.paths.iter().zip(pairs) {
            assert_eq!((p[0], *p.last().unwrap()), (a, b));
            for &v in p {
                assert!(!seen.put(v));
            }
            assert!(p.windows(2).all(|w| g.has_edge(w[0], w[1])));
        }
        assert_eq!(seen.count_ones(..), g.order());
    }

    #[test]
    fn examples() {
        let k6 = SimpleGraph::complete(6);
        let ps = path_system(&k6, &[(0, 5)]).unwrap();
        check(&k6, &[(0, 5)], &ps);
        assert_eq!(ps.paths[0].len(), 6);

        let k8 = SimpleGraph::complete(8);
        let pairs = [(0, 1), (2, 3)];
        let ps = path_system(&k8, &pairs).unwrap();
        check(&k8, &pairs, &ps);
        assert_eq!(ps.paths[0].len(), 3);
        assert_eq!(ps.paths[1].len(), 5);

        assert!(path_system(&k8, &[]).is_err());
    }
}
