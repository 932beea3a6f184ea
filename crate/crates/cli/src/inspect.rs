use std::path::Path;

use edgecolor::driver::chi_prime_dense;
use edgecolor::oracle::{exact_chromatic_index, OracleBudget, OracleError};
use edgecolor::overfull::{detect, DeficiencyView, OverfullStatus};
use edgecolor::profile::{ConstantsProfile, ProfileName};
use edgecolor::{Multigraph, VertexId};
use serde::{Deserialize, Serialize};

use crate::{read_graph, CliError, EXIT_OK, EXIT_PIPELINE, EXIT_REJECTED};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectReport {
    pub order: usize,
    pub max_degree: usize,
    pub min_degree: usize,
    pub status: OverfullStatus,
    pub witness: Option<VertexId>,
    /// `df(G − v)` for the witness.
    pub witness_deficiency: Option<usize>,
    /// Class 2 exactly when an overfull subgraph exists.
    pub class: u8,
}

/// `edgecolor detect-overfull`.
pub fn cmd_detect(input: &Path) -> Result<DetectReport, CliError> {
    let g = read_graph(input)?;
    let verdict = detect(&g).map_err(|e| CliError::Hypothesis(e.to_string()))?;
    let view = DeficiencyView::of(&g);
    Ok(DetectReport {
        order: g.order(),
        max_degree: view.max_degree,
        min_degree: view.min_degree,
        status: verdict.status,
        witness: verdict.witness,
        witness_deficiency: verdict.witness.map(|v| view.df_without(&g, v)),
        class: if verdict.status == OverfullStatus::OverfullFound { 2 } else { 1 },
    })
}

#[derive(Clone, Debug)]
pub struct OracleOptions {
    pub budget: OracleBudget,
    pub epsilon: f64,
    pub seed: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { budget: OracleBudget::default(), epsilon: 0.2, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub order: usize,
    pub max_degree: usize,
    pub chromatic_index: Option<u32>,
    pub class: Option<u8>,
    pub search_nodes: u64,
    /// Why the search stopped without an answer.
    pub error: Option<String>,
    /// The driver's verdict, when the input meets its hypothesis.
    pub driver_class: Option<u8>,
    pub agree: Option<bool>,
    pub budget: OracleBudget,
}

/// `edgecolor oracle`: exact chromatic index by search, cross-checked
/// against the driver. Exit 1 on disagreement, 4 when the search budget
/// runs out.
pub fn cmd_oracle(input: &Path, opts: &OracleOptions) -> Result<(OracleReport, i32), CliError> {
    let g = read_graph(input)?;
    let base = OracleReport {
        order: g.order(),
        max_degree: g.max_degree(),
        chromatic_index: None,
        class: None,
        search_nodes: 0,
        error: None,
        driver_class: None,
        agree: None,
        budget: opts.budget,
    };
    let ci = match exact_chromatic_index(&Multigraph::from_simple(&g), &opts.budget) {
        Ok(ci) => ci,
        Err(e @ OracleError::TooLarge { .. }) => return Err(CliError::Input(e.to_string())),
        Err(e) => {
            let nodes = if let OracleError::Timeout { nodes, .. } = e { nodes } else { 0 };
            return Ok((OracleReport { search_nodes: nodes, error: Some(e.to_string()), ..base }, EXIT_PIPELINE));
        }
    };
    let class = if ci.value as usize == g.max_degree() { 1 } else { 2 };
    let driver_class = match chi_prime_dense(&g, opts.epsilon, &ConstantsProfile::named(ProfileName::Desk), opts.seed) {
        Ok(out) => Some(out.class.number()),
        Err(f) => f.class.map(|c| c.number()),
    };
    let agree = driver_class.map(|d| d == class);
    let report = OracleReport {
        chromatic_index: Some(ci.value),
        class: Some(class),
        search_nodes: ci.nodes,
        driver_class,
        agree,
        ..base
    };
    let code = if agree == Some(false) { EXIT_REJECTED } else { EXIT_OK };
    Ok((report, code))
}
