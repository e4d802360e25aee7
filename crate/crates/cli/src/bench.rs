//! Seeded cross-check corpus for the `bench` subcommand.

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use vulnkit::branch::{solve_wcoc_branch, solve_wvi_branch, wcoc_node_bound};
use vulnkit::generate;
use vulnkit::interval::{solve_vi_interval, solve_wcoc_interval, IntervalModel};
use vulnkit::kernel::{
    kernelize_wcoc, kernelize_wvi, solve_wcoc_kernel_branch, solve_wvi_kernel_branch,
    wcoc_kernel_bound, KernelOutcome,
};
use vulnkit::{verify_wcoc, verify_wvi, Oracle, Weight, WeightedGraph};

use crate::report::Problem;

#[derive(Debug, Clone, Copy)]
pub struct BenchConfig {
    pub count: usize,
    pub seed: u64,
    pub max_n: usize,
    pub max_weight: Weight,
    /// `None` alternates between wvi and wcoc.
    pub problem: Option<Problem>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AlgorithmVerdict {
    pub algorithm: &'static str,
    pub yes: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchItem {
    pub index: usize,
    pub seed: u64,
    pub problem: Problem,
    pub interval: bool,
    pub n: usize,
    pub m: usize,
    pub params: String,
    pub verdicts: Vec<AlgorithmVerdict>,
    /// Every algorithm returned the same verdict.
    pub agree: bool,
    /// Failed witnesses and exceeded kernel or search-tree bounds.
    pub violations: Vec<String>,
    pub wall_time_ms: f64,
}

impl BenchItem {
    pub fn ok(&self) -> bool {
        self.agree && self.violations.is_empty()
    }

    pub fn to_text(&self) -> String {
        let verdicts: Vec<String> = self
            .verdicts
            .iter()
            .map(|v| format!("{}={}", v.algorithm, if v.yes { "yes" } else { "no" }))
            .collect();
        let mut line = format!(
            "item {} seed={} {} n={} m={}{} {} {} {}",
            self.index,
            self.seed,
            self.problem,
            self.n,
            self.m,
            if self.interval { " interval" } else { "" },
            self.params,
            verdicts.join(" "),
            if self.ok() { "ok" } else { "MISMATCH" },
        );
        for v in &self.violations {
            line.push_str("\n  violation: ");
            line.push_str(v);
        }
        line
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchSummary {
    pub items: usize,
    pub agreeing: usize,
    pub violations: usize,
    pub oracle_checked: usize,
}

impl BenchSummary {
    pub fn of(items: &[BenchItem]) -> Self {
        BenchSummary {
            items: items.len(),
            agreeing: items.iter().filter(|i| i.agree).count(),
            violations: items.iter().map(|i| i.violations.len()).sum(),
            oracle_checked: items
                .iter()
                .filter(|i| i.verdicts.iter().any(|v| v.algorithm == "oracle"))
                .count(),
        }
    }

    pub fn ok(&self) -> bool {
        self.agreeing == self.items && self.violations == 0
    }
}

struct Case {
    g: WeightedGraph,
    model: Option<IntervalModel>,
}

fn make_case(seed: u64, cfg: &BenchConfig) -> (Case, generate::InstanceRng) {
    let mut rng = generate::rng(seed);
    let n = rng.gen_range(1..=cfg.max_n.max(1));
    let weights = 1..=cfg.max_weight.max(1);
    let case = if rng.gen_bool(0.5) {
        let span = (2 * n as i64).max(2);
        let (g, model) = generate::random_interval_instance(&mut rng, n, span, 5, weights);
        Case { g, model: Some(model) }
    } else {
        let density = rng.gen_range(0.1..0.6);
        Case {
            g: generate::random_graph(&mut rng, n, density, weights),
            model: None,
        }
    };
    (case, rng)
}

fn run_item(index: usize, cfg: &BenchConfig, oracle: &Oracle) -> BenchItem {
    let seed = cfg.seed.wrapping_add(index as u64);
    let (case, mut rng) = make_case(seed, cfg);
    let problem = cfg.problem.unwrap_or(if index.is_multiple_of(2) {
        Problem::Wvi
    } else {
        Problem::Wcoc
    });
    let g = &case.g;
    let start = Instant::now();
    let mut verdicts = Vec::new();
    let mut violations = Vec::new();

    let params = if problem.is_integrity() {
        let p = rng.gen_range(0..=10);
        let mut record = |name: &'static str, witness: Option<Vec<usize>>| {
            if let Some(x) = &witness {
                if let Err(r) = verify_wvi(g, p, x) {
                    violations.push(format!("{name} witness rejected: {r}"));
                }
            }
            verdicts.push(AlgorithmVerdict {
                algorithm: name,
                yes: witness.is_some(),
            });
        };
        if let Ok(sol) = oracle.wvi(g) {
            record("oracle", (sol.iota <= p).then_some(sol.witness));
        }
        let direct = solve_wvi_branch(g, p);
        let depth = direct.stats.max_depth;
        record("branch", direct.witness);
        record("kernel-branch", solve_wvi_kernel_branch(g, p).witness);
        if let Some(model) = &case.model {
            let out = solve_vi_interval(g, model, p).expect("generated model matches");
            record("interval", out.map(|s| s.witness));
        }
        if u64::from(depth) > p {
            violations.push(format!("search depth {depth} exceeds p={p}"));
        }
        if let KernelOutcome::Reduced { graph, .. } = kernelize_wvi(g, p) {
            let bound = p.checked_pow(3).unwrap_or(u64::MAX);
            if graph.len() as u64 > bound {
                violations.push(format!("kernel has {} vertices, bound {bound}", graph.len()));
            }
            if graph.weights().iter().any(|&w| w > p) {
                violations.push(format!("kernel vertex heavier than p={p}"));
            }
        }
        format!("p={p}")
    } else {
        let k = rng.gen_range(0..=6);
        let l = rng.gen_range(0..=6);
        let mut record = |name: &'static str, witness: Option<Vec<usize>>| {
            if let Some(x) = &witness {
                if let Err(r) = verify_wcoc(g, k, l, x) {
                    violations.push(format!("{name} witness rejected: {r}"));
                }
            }
            verdicts.push(AlgorithmVerdict {
                algorithm: name,
                yes: witness.is_some(),
            });
        };
        if let Ok(sol) = oracle.wcoc(g, l) {
            record("oracle", (sol.kmin <= k).then_some(sol.witness));
        }
        let direct = solve_wcoc_branch(g, k, l).expect("small parameters");
        let stats = direct.stats;
        record("branch", direct.witness);
        record(
            "kernel-branch",
            solve_wcoc_kernel_branch(g, k, l).expect("small parameters").witness,
        );
        if let Some(model) = &case.model {
            record(
                "interval",
                solve_wcoc_interval(g, model, k, l).expect("generated model matches"),
            );
        }
        let nodes = wcoc_node_bound(k, l).unwrap_or(u64::MAX);
        if stats.nodes_expanded > nodes {
            violations.push(format!("{} search nodes, bound {nodes}", stats.nodes_expanded));
        }
        if u64::from(stats.max_depth) > k {
            violations.push(format!("search depth {} exceeds k={k}", stats.max_depth));
        }
        if let Ok(KernelOutcome::Reduced { graph, .. }) = kernelize_wcoc(g, k, l) {
            let bound = wcoc_kernel_bound(k, l).unwrap_or(u64::MAX);
            if graph.len() as u64 > bound {
                violations.push(format!("kernel has {} vertices, bound {bound}", graph.len()));
            }
            if graph.weights().iter().any(|&w| w > k + l) {
                violations.push(format!("kernel vertex heavier than k+l={}", k + l));
            }
        }
        format!("k={k} l={l}")
    };

    let agree = verdicts.windows(2).all(|w| w[0].yes == w[1].yes);
    BenchItem {
        index,
        seed,
        problem,
        interval: case.model.is_some(),
        n: g.len(),
        m: g.edge_count(),
        params,
        verdicts,
        agree,
        violations,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Runs the corpus in parallel; items come back in index order.
pub fn run_bench(cfg: &BenchConfig, oracle: &Oracle) -> Vec<BenchItem> {
    (0..cfg.count)
        .into_par_iter()
        .map(|i| run_item(i, cfg, oracle))
        .collect()
}
