//! Randomized invariants of the building blocks, shared by the property
//! tests and the acceptance run. Graphs are drawn from a seeded generator
//! inside each case so that shrinking acts on the seed and the size
//! parameters.

use edgecolor::classic::{
    dirac_hamiltonian_cycle, greedy_multigraph_color, hakimi_realize, is_multigraphic, konig_color, path_system,
    pm_with_degree_condition, realize_labeled, vizing_color, DegreeSequence,
};
use edgecolor::coloring::{equalize, parity_check, validate_proper};
use edgecolor::oracle::{exact_chromatic_index, OracleBudget};
use edgecolor::partition::{balanced_partition, PartitionError};
use edgecolor::{ConstantsProfile, EdgeColoring, Multigraph, SimpleGraph, VertexId};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), TestCaseError>;

/// Runs `check` on `cases` inputs from a fixed-seed generator.
fn run<S: Strategy>(cases: u32, strategy: S, check: impl Fn(S::Value) -> Check) -> Result<(), String> {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, check).map_err(|e| e.to_string())
}

fn random_multigraph(n: usize, m: usize, seed: u64) -> Multigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Multigraph::new(n);
    if n >= 2 {
        for _ in 0..m {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

fn random_simple(n: usize, p: f64, seed: u64) -> SimpleGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = SimpleGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// A random graph topped up with random edges until `δ ≥ min_degree`.
fn with_min_degree(n: usize, p: f64, min_degree: usize, seed: u64) -> SimpleGraph {
    let mut g = random_simple(n, p, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9E37_79B9);
    for v in 0..n {
        let mut others: Vec<VertexId> = (0..n).filter(|&w| w != v && !g.has_edge(v, w)).collect();
        others.shuffle(&mut rng);
        while g.degree(v) < min_degree {
            let w = others.pop().expect("room for more neighbors");
            g.add_edge(v, w);
        }
    }
    g
}

fn full_greedy(g: &Multigraph) -> EdgeColoring {
    let k = (2 * g.max_degree()).saturating_sub(1).max(1) as u32;
    greedy_multigraph_color(g, k).unwrap()
}

/// Exhaustive multigraph realizability for short sequences.
fn realizable_by_search(d: &mut [usize]) -> bool {
    let Some(u) = d.iter().position(|&x| x > 0) else { return true };
    for v in u + 1..d.len() {
        if d[v] > 0 {
            d[u] -= 1;
            d[v] -= 1;
            let ok = realizable_by_search(d);
            d[u] += 1;
            d[v] += 1;
            if ok {
                return true;
            }
        }
    }
    false
}


pub fn equalize_leaves_class_sizes_within_one(cases: u32) -> Result<(), String> {
    run(cases, (2usize..12, 0usize..40, any::<u64>()), |(n, m, seed)| {
        let g = random_multigraph(n, m, seed);
        let mut c = full_greedy(&g);
        equalize(&mut c);
        prop_assert!(c.is_complete());
        prop_assert!(validate_proper(&g, &c).is_ok());
        let sizes = c.class_sizes();
        let (lo, hi) = (sizes.iter().min().copied().unwrap_or(0), sizes.iter().max().copied().unwrap_or(0));
        prop_assert!(hi - lo <= 1, "sizes {:?}", sizes);
        Ok(())
    })
}

pub fn kempe_swap_keeps_properness(cases: u32) -> Result<(), String> {
    run(cases, (2usize..12, 1usize..40, any::<u64>(), any::<(u32, u32, usize)>()), |(n, m, seed, pick)| {
        let g = random_multigraph(n, m, seed);
        let mut c = full_greedy(&g);
        let before = c.clone();
        let k = c.palette();
        let (i, j, v) = (1 + pick.0 % k, 1 + pick.1 % k, pick.2 % n);
        c.kempe_swap(v, i, j);
        prop_assert!(validate_proper(&g, &c).is_ok());
        prop_assert_eq!(c.colored_count(), before.colored_count());
        c.kempe_swap(v, i, j);
        prop_assert_eq!(c, before);
        Ok(())
    })
}

pub fn complete_colorings_satisfy_the_parity_lemma(cases: u32) -> Result<(), String> {
    run(cases, (2usize..14, 0.2f64..1.0, any::<u64>()), |(n, p, seed)| {
        let g = random_simple(n, p, seed);
        let (m, c) = vizing_color(&g);
        prop_assert!(c.is_complete());
        prop_assert!(parity_check(&m, &c));
        let mut e = c.clone();
        equalize(&mut e);
        prop_assert!(parity_check(&m, &e));
        // The lemma itself, recounted: |V| − 2|class i| vertices miss i.
        for (i, &size) in c.class_sizes().iter().enumerate() {
            prop_assert_eq!(c.missing_among(i as u32 + 1, 0..n), n - 2 * size);
        }
        Ok(())
    })
}

pub fn konig_uses_exactly_max_degree(cases: u32) -> Result<(), String> {
    run(cases, (1usize..8, 1usize..8, 0usize..40, any::<u64>()), |(a, b, m, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = Multigraph::new(a + b);
        for _ in 0..m {
            g.add_edge(rng.gen_range(0..a), a + rng.gen_range(0..b)).unwrap();
        }
        let c = konig_color(&g).unwrap();
        prop_assert_eq!(c.palette() as usize, g.max_degree());
        prop_assert!(c.is_complete());
        prop_assert!(validate_proper(&g, &c).is_ok());
        prop_assert!(parity_check(&g, &c));
        Ok(())
    })
}

pub fn hakimi_realizes_exactly_the_feasible_sequences(cases: u32) -> Result<(), String> {
    run(cases, prop::collection::vec(0usize..9, 0..10), |d| {
        let sum: usize = d.iter().sum();
        let max = d.iter().copied().max().unwrap_or(0);
        let closed_form = sum % 2 == 0 && 2 * max <= sum;
        prop_assert_eq!(is_multigraphic(&d), closed_form);
        match realize_labeled(&d) {
            Some(g) => {
                prop_assert!(closed_form);
                for (v, &x) in d.iter().enumerate() {
                    prop_assert_eq!(g.degree(v), x);
                }
            }
            None => prop_assert!(!closed_form),
        }
        let sorted = DegreeSequence::new(d.clone());
        let h = hakimi_realize(&sorted);
        prop_assert_eq!(h.is_some(), closed_form);
        if let Some(h) = h {
            for (v, &x) in sorted.as_slice().iter().enumerate() {
                prop_assert_eq!(h.degree(v), x);
            }
        }
        Ok(())
    })
}

pub fn hakimi_condition_matches_exhaustive_search(cases: u32) -> Result<(), String> {
    run(cases, prop::collection::vec(0usize..5, 0..6), |d| {
        let mut work = d.clone();
        prop_assert_eq!(is_multigraphic(&d), realizable_by_search(&mut work));
        Ok(())
    })
}

pub fn dirac_cycles_are_hamiltonian(cases: u32) -> Result<(), String> {
    run(cases, (3usize..30, 0.0f64..1.0, any::<u64>()), |(n, p, seed)| {
        let g = with_min_degree(n, p, n.div_ceil(2), seed);
        let cycle = dirac_hamiltonian_cycle(&g).unwrap();
        prop_assert_eq!(cycle.len(), n);
        let mut seen = vec![false; n];
        for &v in &cycle {
            prop_assert!(!seen[v]);
            seen[v] = true;
        }
        for i in 0..n {
            prop_assert!(g.has_edge(cycle[i], cycle[(i + 1) % n]));
        }
        Ok(())
    })
}

pub fn path_systems_are_disjoint_spanning_and_correctly_ended(cases: u32) -> Result<(), String> {
    run(cases, (1usize..4, 0usize..12, 0.0f64..1.0, any::<u64>()), |(t, extra, p, seed)| {
        let n = 2 * t + 3 + extra;
        let g = with_min_degree(n, p, (n / 2 + 2 * t + 1).min(n - 1), seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(17));
        let mut vs: Vec<VertexId> = (0..n).collect();
        vs.shuffle(&mut rng);
        let pairs: Vec<(VertexId, VertexId)> = (0..t).map(|i| (vs[2 * i], vs[2 * i + 1])).collect();
        let ps = path_system(&g, &pairs).unwrap();
        prop_assert_eq!(ps.paths.len(), t);
        let mut seen = vec![false; n];
        for (path, &(a, b)) in ps.paths.iter().zip(&pairs) {
            prop_assert_eq!(path[0], a);
            prop_assert_eq!(*path.last().unwrap(), b);
            for &v in path {
                prop_assert!(!seen[v], "vertex {} on two paths", v);
                seen[v] = true;
            }
            for w in path.windows(2) {
                prop_assert!(g.has_edge(w[0], w[1]));
            }
        }
        prop_assert!(seen.iter().all(|&s| s));
        Ok(())
    })
}

pub fn dense_bipartite_graphs_get_saturating_matchings(cases: u32) -> Result<(), String> {
    run(cases, (1usize..16, 0.0f64..1.0, any::<u64>()), |(m, p, seed)| {
        // Every vertex sees at least half of the other side, so Hall holds.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<VertexId> = (0..m).collect();
        let y: Vec<VertexId> = (m..2 * m).collect();
        let mut h = SimpleGraph::new(2 * m);
        for &u in &x {
            for &v in &y {
                if rng.gen_bool(p) {
                    h.add_edge(u, v);
                }
            }
        }
        let need = m.div_ceil(2);
        for side in [&x, &y] {
            let other = if side[0] < m { &y } else { &x };
            for &u in side.iter() {
                let mut cand: Vec<VertexId> = other.iter().copied().filter(|&v| !h.has_edge(u, v)).collect();
                cand.shuffle(&mut rng);
                while h.degree(u) < need {
                    h.add_edge(u, cand.pop().unwrap());
                }
            }
        }
        let t = h.min_degree();
        let pm = pm_with_degree_condition(&h, &x, &y, t).unwrap();
        prop_assert_eq!(pm.pairs.len(), m);
        let mut seen = vec![false; 2 * m];
        for &(a, b) in &pm.pairs {
            prop_assert!(a < m && b >= m && h.has_edge(a, b));
            prop_assert!(!seen[a] && !seen[b]);
            seen[a] = true;
            seen[b] = true;
        }
        Ok(())
    })
}

pub fn partitions_split_pairs_and_respect_the_bound(cases: u32) -> Result<(), String> {
    run(cases, (3usize..16, 0.5f64..1.0, 0usize..4, any::<u64>()), |(half, p, pair_count, seed)| {
        let n = 2 * half;
        let g = with_min_degree(n, p, half + 1, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(5));
        let mut vs: Vec<VertexId> = (0..n).collect();
        vs.shuffle(&mut rng);
        let pairs: Vec<(VertexId, VertexId)> = (0..pair_count.min(half)).map(|i| (vs[2 * i], vs[2 * i + 1])).collect();
        let bound = ConstantsProfile::desk().partition_bound(half, g.max_degree());
        let check_shape = |a: &[VertexId], b: &[VertexId], side: &dyn Fn(VertexId) -> bool| {
            a.len() == b.len() && a.len() + b.len() == n && pairs.iter().all(|&(u, v)| side(u) != side(v))
        };
        match balanced_partition(&g, &pairs, bound, 8, seed) {
            Ok(part) => {
                prop_assert!(check_shape(&part.a, &part.b, &|v| part.in_a(v)));
                prop_assert!(part.recount_certificate(&g) <= bound);
                prop_assert!(part.check(&g, bound).is_ok());
            }
            Err(PartitionError::BoundNotMet { best, .. }) => {
                prop_assert!(check_shape(&best.a, &best.b, &|v| best.in_a(v)));
                prop_assert!(best.recount_certificate(&g) > bound);
            }
            Err(e) => prop_assert!(false, "{}", e),
        }
        Ok(())
    })
}

pub fn counting_bound_never_changes_the_chromatic_index(cases: u32) -> Result<(), String> {
    run(cases, (2usize..9, 0usize..16, any::<u64>()), |(n, m, seed)| {
        let g = random_multigraph(n, m, seed);
        let plain = OracleBudget { counting_bound: false, ..OracleBudget::default() };
        let pruned = OracleBudget::default();
        let a = exact_chromatic_index(&g, &plain).unwrap();
        let b = exact_chromatic_index(&g, &pruned).unwrap();
        prop_assert_eq!(a.value, b.value);
        prop_assert!(validate_proper(&g, &b.coloring).is_ok());
        prop_assert!(b.coloring.is_complete());
        let mu = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).map(|(u, v)| g.multiplicity(u, v)).max().unwrap_or(0) as usize;
        prop_assert!(b.value as usize >= g.max_degree() && b.value as usize <= g.max_degree() + mu);
        Ok(())
    })
}

/// Every suite with its name, in a fixed order.
pub const SUITES: &[(&str, fn(u32) -> Result<(), String>)] = &[
    ("equalize gap at most one", equalize_leaves_class_sizes_within_one),
    ("kempe swap keeps properness", kempe_swap_keeps_properness),
    ("parity lemma", complete_colorings_satisfy_the_parity_lemma),
    ("konig palette equals max degree", konig_uses_exactly_max_degree),
    ("hakimi exactness and closed form", hakimi_realizes_exactly_the_feasible_sequences),
    ("hakimi closed form vs search", hakimi_condition_matches_exhaustive_search),
    ("dirac hamiltonian cycles", dirac_cycles_are_hamiltonian),
    ("path systems", path_systems_are_disjoint_spanning_and_correctly_ended),
    ("saturating matchings", dense_bipartite_graphs_get_saturating_matchings),
    ("partition shape and bound", partitions_split_pairs_and_respect_the_bound),
];
