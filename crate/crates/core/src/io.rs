//! Text formats.
//!
//! Graphs: a header `p <vertices> <edges>` followed by one `e <u> <v>` line
//! per edge copy, 0-indexed. Lines starting with `#` and blank lines are
//! ignored.
//!
//! Colorings: one `c <u> <v> <copy> <color>` line per colored edge plus a
//! trailer `k <palette>`.

use std::fmt::Write as _;

use crate::coloring::{Color, EdgeColoring};
use crate::error::{GraphError, ParseError};
use crate::graph::{Multigraph, SimpleGraph, VertexId};

fn fields(line: &str) -> Vec<&str> {
    line.split_whitespace().collect()
}

fn number<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| ParseError::Syntax { line, msg: format!("expected a nonnegative integer, got `{tok}`") })
}

fn significant(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses an edge list into `(vertex count, edge copies)`.
pub fn parse_edge_list(text: &str) -> Result<(usize, Vec<(VertexId, VertexId)>), ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (line, l) in significant(text) {
        let f = fields(l);
        match f.as_slice() {
            ["p", n, m] if header.is_none() => header = Some((number(n, line)?, number(m, line)?)),
            ["p", ..] => return Err(ParseError::Syntax { line, msg: "malformed or repeated header".into() }),
            ["e", u, v] => {
                let (n, _) = header.ok_or(ParseError::MissingHeader)?;
                let (u, v): (usize, usize) = (number(u, line)?, number(v, line)?);
                for w in [u, v] {
                    if w >= n {
                        return Err(ParseError::Graph {
                            line,
                            source: GraphError::VertexOutOfRange { vertex: w, universe: n },
                        });
                    }
                }
                if u == v {
                    return Err(ParseError::Graph { line, source: GraphError::Loop(u) });
                }
                edges.push((u, v));
            }
            _ => return Err(ParseError::Syntax { line, msg: format!("unrecognized line `{l}`") }),
        }
    }
    let (n, m) = header.ok_or(ParseError::MissingHeader)?;
    if m != edges.len() {
        return Err(ParseError::EdgeCount { declared: m, found: edges.len() });
    }
    Ok((n, edges))
}

/// Parses a simple graph, rejecting repeated pairs.
pub fn parse_simple_graph(text: &str) -> Result<SimpleGraph, ParseError> {
    let (n, edges) = parse_edge_list(text)?;
    let mut g = SimpleGraph::new(n);
    for (u, v) in edges {
        if !g.add_edge(u, v) {
            // Line numbers are lost after collection; report the pair.
            return Err(ParseError::Graph { line: 0, source: GraphError::DuplicateEdge(u.min(v), u.max(v)) });
        }
    }
    Ok(g)
}

pub fn parse_multigraph(text: &str) -> Result<Multigraph, ParseError> {
    let (n, edges) = parse_edge_list(text)?;
    Multigraph::from_edges(n, &edges).map_err(|source| ParseError::Graph { line: 0, source })
}

pub fn write_simple_graph(g: &SimpleGraph) -> String {
    let mut out = String::new();
    writeln!(out, "p {} {}", g.universe(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

pub fn write_multigraph(g: &Multigraph) -> String {
    let mut out = String::new();
    writeln!(out, "p {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for e in g.edges() {
        writeln!(out, "e {} {}", e.u, e.v).unwrap();
    }
    out
}

/// One line of a coloring file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ColoredEdge {
    pub u: VertexId,
    pub v: VertexId,
    pub copy: u32,
    pub color: Color,
}

/// Coloring lines sorted by `(u, v, copy)`, followed by the palette trailer.
pub fn write_coloring(g: &Multigraph, c: &EdgeColoring) -> String {
    let mut lines: Vec<ColoredEdge> = g
        .edges()
        .iter()
        .enumerate()
        .filter_map(|(e, id)| c.color(e).map(|color| ColoredEdge { u: id.u, v: id.v, copy: id.copy, color }))
        .collect();
    lines.sort();
    let mut out = String::new();
    for l in lines {
        writeln!(out, "c {} {} {} {}", l.u, l.v, l.copy, l.color).unwrap();
    }
    writeln!(out, "k {}", c.palette()).unwrap();
    out
}

/// Parses a coloring file into its lines and declared palette.
pub fn parse_coloring(text: &str) -> Result<(Vec<ColoredEdge>, u32), ParseError> {
    let mut lines = Vec::new();
    let mut palette = None;
    for (line, l) in significant(text) {
        match fields(l).as_slice() {
            ["c", u, v, copy, color] => {
                let (u, v): (usize, usize) = (number(u, line)?, number(v, line)?);
                lines.push(ColoredEdge {
                    u: u.min(v),
                    v: u.max(v),
                    copy: number(copy, line)?,
                    color: number(color, line)?,
                });
            }
            ["k", k] if palette.is_none() => palette = Some(number(k, line)?),
            _ => return Err(ParseError::Syntax { line, msg: format!("unrecognized line `{l}`") }),
        }
    }
    let palette = palette.ok_or(ParseError::Syntax { line: 0, msg: "missing `k <palette>` trailer".into() })?;
    Ok((lines, palette))
}
