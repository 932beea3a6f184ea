//! Property tests for the building blocks; the checks live in
//! `invariants` so the acceptance run can repeat them.

#[allow(dead_code)]
mod invariants;

use invariants::*;

const CASES: u32 = 10_000;

fn check(result: Result<(), String>) {
    if let Err(e) = result {
        panic!("{e}");
    }
}

#[test]
fn equalize_gap() {
    check(equalize_leaves_class_sizes_within_one(CASES));
}

#[test]
fn kempe_swap() {
    check(kempe_swap_keeps_properness(CASES));
}

#[test]
fn parity_lemma() {
    check(complete_colorings_satisfy_the_parity_lemma(CASES));
}

#[test]
fn konig_palette() {
    check(konig_uses_exactly_max_degree(CASES));
}

#[test]
fn hakimi_exactness() {
    check(hakimi_realizes_exactly_the_feasible_sequences(CASES));
}

#[test]
fn hakimi_against_search() {
    check(hakimi_condition_matches_exhaustive_search(CASES));
}

#[test]
fn dirac_cycles() {
    check(dirac_cycles_are_hamiltonian(CASES));
}

#[test]
fn path_systems() {
    check(path_systems_are_disjoint_spanning_and_correctly_ended(CASES));
}

#[test]
fn saturating_matchings() {
    check(dense_bipartite_graphs_get_saturating_matchings(CASES));
}

#[test]
fn partition_shape() {
    check(partitions_split_pairs_and_respect_the_bound(CASES));
}

#[test]
fn counting_bound() {
    check(counting_bound_never_changes_the_chromatic_index(2_000));
}
