use std::collections::BTreeSet;
use std::path::Path;

use edgecolor::coloring::{validate_assignment, Violation};
use edgecolor::io::{parse_coloring, parse_multigraph};
use edgecolor::{Color, Multigraph};
use serde::{Deserialize, Serialize};

use crate::color::ColorDocument;
use crate::{read_text, CliError, EXIT_OK, EXIT_REJECTED};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationStats {
    /// Colors whose class is a perfect matching.
    pub perfect_matching_classes: usize,
    /// Entry `c - 1` counts the vertices missing color `c`.
    pub missing_per_color: Vec<usize>,
    /// Vertices that see every color of the palette.
    pub saturated_vertices: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    /// Proper, complete and within the declared palette.
    pub ok: bool,
    pub proper: bool,
    pub complete: bool,
    pub palette: u32,
    pub colors_used: usize,
    pub edges: usize,
    pub uncolored_edges: usize,
    /// Lines whose color lies outside `[1, palette]`.
    pub out_of_palette: usize,
    pub conflict: Option<Violation>,
    /// Entry `c - 1` is the size of color class `c`.
    pub class_sizes: Vec<usize>,
    pub saturation: SaturationStats,
}

fn coloring_text(text: &str) -> Result<String, CliError> {
    if !text.trim_start().starts_with('{') {
        return Ok(text.to_string());
    }
    let doc: ColorDocument = serde_json::from_str(text).map_err(|e| CliError::Input(format!("coloring document: {e}")))?;
    doc.coloring.ok_or_else(|| CliError::Input("the document records a failed run and carries no coloring".into()))
}

/// Checks a coloring, given as text or as a `color` document, against `g`
/// by direct recount.
pub fn verify_coloring(g: &Multigraph, text: &str) -> Result<(VerifyReport, i32), CliError> {
    let text = coloring_text(text)?;
    let (lines, palette) = parse_coloring(&text).map_err(|e| CliError::Input(format!("coloring: {e}")))?;
    let mut colors: Vec<Option<Color>> = vec![None; g.edge_count()];
    for l in &lines {
        let e = g.find_edge(l.u, l.v, l.copy).ok_or_else(|| {
            CliError::Input(format!("coloring names edge {}-{} (copy {}), which is not in the graph", l.u, l.v, l.copy))
        })?;
        if colors[e].replace(l.color).is_some() {
            return Err(CliError::Input(format!("edge {}-{} (copy {}) is colored twice", l.u, l.v, l.copy)));
        }
    }

    let out_of_palette = colors.iter().flatten().filter(|&&c| c == 0 || c > palette).count();
    let conflict = validate_assignment(g, &colors).err();
    let uncolored = colors.iter().filter(|c| c.is_none()).count();
    let mut class_sizes = vec![0usize; palette as usize];
    for &c in colors.iter().flatten() {
        if (1..=palette).contains(&c) {
            class_sizes[c as usize - 1] += 1;
        }
    }
    let used: BTreeSet<Color> = colors.iter().flatten().copied().collect();

    let n = g.vertex_count();
    let mut seen = vec![vec![false; palette as usize]; n];
    for (e, c) in colors.iter().enumerate() {
        if let Some(c) = *c {
            if (1..=palette).contains(&c) {
                let id = g.edge(e);
                seen[id.u][c as usize - 1] = true;
                seen[id.v][c as usize - 1] = true;
            }
        }
    }
    let missing_per_color: Vec<usize> = (0..palette as usize).map(|c| seen.iter().filter(|s| !s[c]).count()).collect();
    let saturation = SaturationStats {
        perfect_matching_classes: missing_per_color.iter().filter(|&&m| m == 0).count(),
        saturated_vertices: seen.iter().filter(|s| s.iter().all(|&b| b)).count(),
        missing_per_color,
    };

    let proper = conflict.is_none();
    let complete = uncolored == 0;
    let ok = proper && complete && out_of_palette == 0;
    let report = VerifyReport {
        ok,
        proper,
        complete,
        palette,
        colors_used: used.len(),
        edges: g.edge_count(),
        uncolored_edges: uncolored,
        out_of_palette,
        conflict,
        class_sizes,
        saturation,
    };
    Ok((report, if ok { EXIT_OK } else { EXIT_REJECTED }))
}

/// `edgecolor verify`.
pub fn cmd_verify(graph: &Path, coloring: &Path) -> Result<(VerifyReport, i32), CliError> {
    let g = parse_multigraph(&read_text(graph)?).map_err(|e| CliError::Input(format!("{}: {e}", graph.display())))?;
    verify_coloring(&g, &read_text(coloring)?)
}
