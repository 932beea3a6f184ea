use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {universe} vertices")]
    VertexOutOfRange { vertex: VertexId, universe: usize },
    #[error("loop at vertex {0}")]
    Loop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertex {0} lies on both sides")]
    OverlappingSides(VertexId),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCount { declared: usize, found: usize },
    #[error("missing `p <vertices> <edges>` header")]
    MissingHeader,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("color {color} is outside the palette [1, {palette}]")]
    ColorOutOfRange { color: u32, palette: u32 },
    #[error("color {color} is already present at vertex {vertex}")]
    ColorPresent { vertex: VertexId, color: u32 },
    #[error("edge {0} is already colored")]
    AlreadyColored(usize),
}

/// Failure of one of the classical subroutines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassicError {
    #[error("hypothesis unmet: {0}")]
    Hypothesis(String),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("greedy coloring got stuck at edge {edge} with palette {palette}")]
    GreedyStuck { edge: usize, palette: u32 },
    #[error("no fresh common neighbor for pair ({0}, {1})")]
    NoCommonNeighbor(VertexId, VertexId),
    #[error("path absorption stuck with {remaining} vertices outside the path")]
    AbsorptionStuck { remaining: usize },
    #[error("no perfect matching: maximum matching has {found} of {needed} edges")]
    NoPerfectMatching { found: usize, needed: usize },
}
