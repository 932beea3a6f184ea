//! Loop-free multigraph realization of degree sequences.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::Multigraph;

/// Nonincreasing sequence of nonnegative degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    pub fn new(mut d: Vec<usize>) -> Self {
        d.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence(d)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Closed-form test: the sum is even and the largest entry is at most the
/// sum of the others.
pub fn is_multigraphic(d: &[usize]) -> bool {
    let sum: usize = d.iter().sum();
    let max = d.iter().copied().max().unwrap_or(0);
    sum % 2 == 0 && max <= sum - max
}

/// Multigraph on vertices `0..n` with `d(i) = d[i]`, or `None` if none exists.
///
/// Repeatedly joins the two vertices of largest remaining demand (ties to
/// the lower index); the realizability condition is preserved by each step.
pub fn realize_labeled(d: &[usize]) -> Option<Multigraph> {
    if !is_multigraphic(d) {
        return None;
    }
    let mut g = Multigraph::new(d.len());
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> =
        d.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, &x)| (x, Reverse(i))).collect();
    while let Some((d1, Reverse(u))) = heap.pop() {
        let (d2, Reverse(v)) = heap.pop().expect("realizability leaves a partner");
        g.add_edge(u, v).expect("distinct vertices");
        if d1 > 1 {
            heap.push((d1 - 1, Reverse(u)));
        }
        if d2 > 1 {
            heap.push((d2 - 1, Reverse(v)));
        }
    }
    Some(g)
}

/// Realization of a sorted sequence; vertex `i` gets degree `d.as_slice()[i]`.
pub fn hakimi_realize(d: &DegreeSequence) -> Option<Multigraph> {
    realize_labeled(d.as_slice())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let g = hakimi_realize(&DegreeSequence::new(vec![3, 3, 2, 2])).unwrap();
        assert_eq!((0..4).map(|v| g.degree(v)).collect::<Vec<_>>(), vec![3, 3, 2, 2]);
        assert!(hakimi_realize(&DegreeSequence::new(vec![5, 1, 1, 1])).is_none());
        let g = hakimi_realize(&DegreeSequence::new(vec![2, 2])).unwrap();
        assert_eq!(g.multiplicity(0, 1), 2);
        assert!(hakimi_realize(&DegreeSequence::new(vec![1, 1, 1])).is_none());
        assert_eq!(hakimi_realize(&DegreeSequence::new(vec![])).unwrap().edge_count(), 0);
    }
}
