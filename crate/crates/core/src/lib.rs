//! Edge coloring of dense graphs of even order.
//!
//! Given a simple graph on `2n` vertices with minimum degree comfortably
//! above `n`, the engine decides whether the chromatic index equals the
//! maximum degree `Δ` (class 1) or `Δ + 1` (class 2) and produces a matching
//! coloring. Class 2 is detected through a single-vertex-deletion overfull
//! test; class-1 colorings are built by reducing to one of three structured
//! conditions and running a partition-based construction that extends color
//! classes into perfect matchings.
//!
//! Module map:
//! - [`graph`], [`coloring`], [`io`]: data structures and text formats.
//! - [`classic`]: Vizing, König, Hakimi, Dirac cycles, matchings, path systems.
//! - [`overfull`]: deficiency accounting, detection, regularization.
//! - [`partition`], [`pipeline`]: the balanced split and the four-step builder.
//! - [`driver`]: the top-level decision and reduction logic.
//! - [`oracle`]: exact small-instance ground truth.
//! - [`generate`]: instance families used by tests and benchmarks.

pub mod classic;
pub mod coloring;
pub mod driver;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod overfull;
pub mod partition;
pub mod pipeline;
pub mod profile;

pub use coloring::{Color, EdgeColoring};
pub use graph::{EdgeId, EdgeIdx, Multigraph, SimpleGraph, VertexId};
pub use profile::ConstantsProfile;
