//! Classical subroutines: edge colorings with `Δ + 1` and `Δ` colors,
//! degree-sequence realization, Hamiltonian cycles and paths, bipartite
//! matchings and spanning path systems.

pub mod greedy;
pub mod hakimi;
pub mod hamilton;
pub mod konig;
pub mod matching;
pub mod paths;
pub mod vizing;

pub use greedy::{color_with_repair, greedy_multigraph_color};
pub use hakimi::{hakimi_realize, is_multigraphic, realize_labeled, DegreeSequence};
pub use hamilton::{dirac_hamiltonian_cycle, hamiltonian_path_between};
pub use konig::konig_color;
pub use matching::{hopcroft_karp, maximum_matching, pm_with_degree_condition, MatchingRoute, PerfectMatching};
pub use paths::{path_system, PathSystem};
pub use vizing::{misra_gries, vizing_color};
