//! Machine-readable run results.

use std::fmt;

use serde::{Deserialize, Serialize};

use vulnkit::Weight;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Vi,
    Wvi,
    Coc,
    Wcoc,
}

impl Problem {
    pub fn is_integrity(self) -> bool {
        matches!(self, Problem::Vi | Problem::Wvi)
    }

    pub fn is_unit(self) -> bool {
        matches!(self, Problem::Vi | Problem::Coc)
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::Vi => "vi",
            Problem::Wvi => "wvi",
            Problem::Coc => "coc",
            Problem::Wcoc => "wcoc",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Oracle,
    Branch,
    KernelBranch,
    Interval,
    Split,
    Complete,
    Auto,
    /// Certificate check rather than a solver.
    #[value(skip)]
    Verify,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Oracle => "oracle",
            Algorithm::Branch => "branch",
            Algorithm::KernelBranch => "kernel-branch",
            Algorithm::Interval => "interval",
            Algorithm::Split => "split",
            Algorithm::Complete => "complete",
            Algorithm::Auto => "auto",
            Algorithm::Verify => "verify",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
}

impl Verdict {
    pub fn from_bool(yes: bool) -> Self {
        if yes {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
        })
    }
}

/// `w(X)` and `w_cc(G - X)` for the reported deletion set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Objective {
    #[serde(rename = "wX")]
    pub w_x: Weight,
    pub wcc: Weight,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Stats {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes_expanded: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_depth: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_bound_rejected: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_vertices: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_steps: Option<usize>,
    /// Exact optimum (`iota` or minimum `k`) when the solver computes it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimum: Option<Weight>,
    /// The accepted `k + l = p` split of an interval vertex integrity run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split_k: Option<Weight>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split_l: Option<Weight>,
}

impl Stats {
    pub fn is_empty(&self) -> bool {
        *self == Stats::default()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunResult {
    pub schema: u32,
    pub problem: Problem,
    pub algorithm: Algorithm,
    pub verdict: Verdict,
    /// 1-based original ids.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    /// Absent when there is no deletion set to evaluate.
    pub objective: Option<Objective>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<Stats>,
    pub wall_time_ms: f64,
}

impl RunResult {
    pub fn to_text(&self) -> String {
        let mut lines = vec![
            format!("problem {}", self.problem),
            format!("algorithm {}", self.algorithm),
            format!("verdict {}", self.verdict),
        ];
        if let Some(w) = &self.witness {
            let ids: Vec<String> = w.iter().map(|v| v.to_string()).collect();
            lines.push(format!("witness {}", ids.join(" ")).trim_end().to_string());
        }
        if let Some(o) = &self.objective {
            lines.push(format!("objective wX={} wcc={}", o.w_x, o.wcc));
        }
        if let Some(s) = &self.stats {
            let json = serde_json::to_value(s).expect("stats serialize");
            if let Some(map) = json.as_object() {
                for (key, value) in map {
                    lines.push(format!("stat {key}={value}"));
                }
            }
        }
        lines.push(format!("time_ms {:.3}", self.wall_time_ms));
        lines.join("\n")
    }
}
