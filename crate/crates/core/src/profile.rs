//! Threshold constants for the construction, as functions of `n` (half the
//! number of vertices).
//!
//! The `paper` profile uses the asymptotic constants literally; they are
//! vacuous or infeasible for graphs with a few hundred vertices. The `desk`
//! profile keeps the same shapes with multipliers sized for small graphs,
//! records bound violations as diagnostics instead of failing, and allows the
//! number of extra colors in the third step to adapt to the residual graphs.

use serde::{Deserialize, Serialize};

/// `mult · n^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Threshold {
    pub mult: f64,
    pub exp: f64,
}

impl Threshold {
    pub const fn new(mult: f64, exp: f64) -> Self {
        Threshold { mult, exp }
    }

    pub fn at(&self, n: usize) -> f64 {
        self.mult * (n as f64).powf(self.exp)
    }

    /// `⌊mult · n^exp⌋`, tolerant of `powf` landing just below an integer.
    pub fn floor_at(&self, n: usize) -> usize {
        (self.at(n) + 1e-9).floor() as usize
    }

    /// `⌈mult · n^exp⌉`, tolerant of `powf` landing just above an integer.
    pub fn ceil_at(&self, n: usize) -> usize {
        (self.at(n) - 1e-9).ceil().max(0.0) as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileName {
    Paper,
    Desk,
}

impl std::str::FromStr for ProfileName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "paper" => Ok(ProfileName::Paper),
            "desk" => Ok(ProfileName::Desk),
            other => Err(format!("unknown profile `{other}` (expected `paper` or `desk`)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantsProfile {
    pub name: ProfileName,
    /// Deficiency at which a vertex joins `S` (`7 n^{2/3}`).
    pub s_deficiency: Threshold,
    /// `S_A` holds `S`-vertices of side degree at most `k` minus this
    /// (`2 n^{2/3}`).
    pub s_side_slack: Threshold,
    /// Residual degree below which an edge is still good (`n^{5/6}`).
    pub good_edge_cap: Threshold,
    /// Bound on residual side edges (`12 n^{5/3}`).
    pub residual_size_cap: Threshold,
    /// Number of extra colors in step 3 (`⌈2 n^{5/6}⌉`).
    pub extra_colors: Threshold,
    /// Case split in the driver and the wide-spread hypothesis (`n^{6/7}`),
    /// applied to both `|V_δ|` and `Δ − δ`.
    pub case_split: Threshold,
    /// Partition balance bound `n^{2/3}`; the bound on `|d_A − d_B|` is
    /// `⌊n^{2/3}⌋ − 1`.
    pub partition_balance: Threshold,
    /// Independent coin-flip attempts before local search.
    pub partition_retries: usize,
    /// Fail on violated bookkeeping bounds instead of recording them.
    pub strict: bool,
    /// Allow step 3 to use fewer extra colors when the residual graphs are
    /// colorable with fewer.
    pub adaptive_extra_colors: bool,
    /// Allow alternating-path search when the fixed path shapes of step 2
    /// find no candidate.
    pub step2_search: bool,
    /// Among the step-2 paths of the fixed shapes, take one whose same-side
    /// edges have the least loaded endpoints instead of the first found.
    pub balanced_paths: bool,
    /// Pair the cross vertices missing a color along uncolored cross edges
    /// where possible and color those edges directly.
    pub direct_pairs: bool,
    /// Run pair-flip local search on an accepted partition to lower the
    /// imbalance further.
    pub polish_partition: bool,
    /// Raise the size of the deficiency matchings in the small-spread
    /// reduction to about `√(4|E(H)|/3)`, trading fewer forests for longer
    /// short-path prefixes.
    pub balanced_forests: bool,
    /// Whole-pipeline attempts, each with a fresh partition seed.
    pub pipeline_attempts: usize,
}

impl ConstantsProfile {
    pub fn paper() -> Self {
        ConstantsProfile {
            name: ProfileName::Paper,
            s_deficiency: Threshold::new(7.0, 2.0 / 3.0),
            s_side_slack: Threshold::new(2.0, 2.0 / 3.0),
            good_edge_cap: Threshold::new(1.0, 5.0 / 6.0),
            residual_size_cap: Threshold::new(12.0, 5.0 / 3.0),
            extra_colors: Threshold::new(2.0, 5.0 / 6.0),
            case_split: Threshold::new(1.0, 6.0 / 7.0),
            partition_balance: Threshold::new(1.0, 2.0 / 3.0),
            partition_retries: 64,
            strict: true,
            adaptive_extra_colors: false,
            step2_search: false,
            balanced_paths: false,
            direct_pairs: false,
            polish_partition: false,
            balanced_forests: false,
            pipeline_attempts: 1,
        }
    }

    pub fn desk() -> Self {
        ConstantsProfile {
            name: ProfileName::Desk,
            s_deficiency: Threshold::new(1.0, 2.0 / 3.0),
            s_side_slack: Threshold::new(0.5, 2.0 / 3.0),
            good_edge_cap: Threshold::new(1.0, 5.0 / 6.0),
            residual_size_cap: Threshold::new(12.0, 5.0 / 3.0),
            extra_colors: Threshold::new(2.0, 5.0 / 6.0),
            case_split: Threshold::new(0.5, 6.0 / 7.0),
            partition_balance: Threshold::new(1.0, 2.0 / 3.0),
            partition_retries: 64,
            strict: false,
            adaptive_extra_colors: true,
            step2_search: true,
            balanced_paths: true,
            direct_pairs: true,
            polish_partition: true,
            balanced_forests: true,
            pipeline_attempts: 8,
        }
    }

    pub fn named(name: ProfileName) -> Self {
        match name {
            ProfileName::Paper => Self::paper(),
            ProfileName::Desk => Self::desk(),
        }
    }

    /// Largest allowed `|d_A(v) − d_B(v)|` for a graph on `2n` vertices with
    /// maximum degree `delta`.
    pub fn partition_bound(&self, n: usize, delta: usize) -> usize {
        let literal = self.partition_balance.floor_at(n).saturating_sub(1);
        match self.name {
            ProfileName::Paper => literal,
            ProfileName::Desk => {
                let spread = 3.0 * ((delta as f64) * ((2 * n) as f64).ln()).sqrt().ceil();
                literal.max(spread as usize)
            }
        }
    }

    /// `⌈mult · n^exp⌉` for the step-3 color count.
    pub fn extra_colors_at(&self, n: usize) -> usize {
        self.extra_colors.ceil_at(n)
    }
}
