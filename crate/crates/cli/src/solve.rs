//! Solver dispatch for `solve`, `verify` and `kernelize`.

use std::time::Instant;

use vulnkit::branch::{solve_wcoc_branch, solve_wvi_branch, SearchStats};
use vulnkit::interval::{solve_coc_interval_fast, solve_vi_interval, solve_wcoc_interval};
use vulnkit::kernel::{kernelize_wcoc, kernelize_wvi, solve_wcoc_kernel_branch, solve_wvi_kernel_branch, KernelOutcome, KernelStep, KernelTrace};
use vulnkit::special::{solve_vi_split, solve_wcoc_complete, solve_wvi_complete};
use vulnkit::{verify_wcoc, verify_wvi, Certificate, Oracle, Rejection, Weight, WeightedGraph};

use crate::format::{FileParams, Instance};
use crate::report::{Algorithm, Objective, Problem, RunResult, Stats, Verdict, SCHEMA_VERSION};

pub const ORACLE_LIMIT_VAR: &str = "VULNKIT_ORACLE_LIMIT";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] crate::format::ParseError),
    #[error(transparent)]
    Solver(#[from] vulnkit::Error),
    /// A certificate or cross-check did not hold.
    #[error("{0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Check(_) => 1,
        }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn precondition(message: impl Into<String>) -> CliError {
    CliError::Solver(vulnkit::Error::Precondition(message.into()))
}

/// Reads the oracle limit from `VULNKIT_ORACLE_LIMIT`, if set.
pub fn oracle_from_env() -> Result<Oracle, CliError> {
    match std::env::var(ORACLE_LIMIT_VAR) {
        Ok(raw) => raw
            .trim()
            .parse()
            .map(Oracle::new)
            .map_err(|_| usage(format!("{ORACLE_LIMIT_VAR} must be a non-negative integer, got '{raw}'"))),
        Err(_) => Ok(Oracle::default()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    Integrity { p: Weight },
    Order { k: Weight, l: Weight },
}

/// Command-line values win over `param` lines of the file.
pub fn resolve_budget(
    problem: Problem,
    p: Option<Weight>,
    k: Option<Weight>,
    l: Option<Weight>,
    file: FileParams,
) -> Result<Budget, CliError> {
    if problem.is_integrity() {
        if k.is_some() || l.is_some() {
            return Err(usage(format!("-k and -l do not apply to {problem}; use -p")));
        }
        let p = p
            .or(file.p)
            .ok_or_else(|| usage(format!("{problem} needs -p (or a 'param p' line)")))?;
        Ok(Budget::Integrity { p })
    } else {
        if p.is_some() {
            return Err(usage(format!("-p does not apply to {problem}; use -k and -l")));
        }
        let k = k
            .or(file.k)
            .ok_or_else(|| usage(format!("{problem} needs -k (or a 'param k' line)")))?;
        let l = l
            .or(file.l)
            .ok_or_else(|| usage(format!("{problem} needs -l (or a 'param l' line)")))?;
        Ok(Budget::Order { k, l })
    }
}

/// The solver `auto` resolves to for this instance.
pub fn pick_algorithm(instance: &Instance, problem: Problem) -> Algorithm {
    let g = &instance.graph;
    if g.is_complete() {
        Algorithm::Complete
    } else if problem == Problem::Vi && g.is_unit_weight() && g.split_partition().is_some() {
        Algorithm::Split
    } else if instance.model.is_some() {
        Algorithm::Interval
    } else {
        Algorithm::KernelBranch
    }
}

fn search_stats(s: SearchStats) -> Stats {
    Stats {
        nodes_expanded: Some(s.nodes_expanded),
        max_depth: Some(s.max_depth),
        edge_bound_rejected: Some(s.edge_bound_rejected),
        ..Stats::default()
    }
}

struct Answer {
    witness: Option<Vec<usize>>,
    stats: Stats,
}

fn run_algorithm(
    instance: &Instance,
    budget: Budget,
    problem: Problem,
    algorithm: Algorithm,
    oracle: &Oracle,
) -> Result<Answer, CliError> {
    let g = &instance.graph;
    let answer = match (algorithm, budget) {
        (Algorithm::Oracle, Budget::Integrity { p }) => {
            let sol = oracle.wvi(g)?;
            Answer {
                witness: (sol.iota <= p).then_some(sol.witness),
                stats: Stats {
                    optimum: Some(sol.iota),
                    ..Stats::default()
                },
            }
        }
        (Algorithm::Oracle, Budget::Order { k, l }) => {
            let sol = oracle.wcoc(g, l)?;
            Answer {
                witness: (sol.kmin <= k).then_some(sol.witness),
                stats: Stats {
                    optimum: Some(sol.kmin),
                    ..Stats::default()
                },
            }
        }
        (Algorithm::Branch, Budget::Integrity { p }) => {
            let out = solve_wvi_branch(g, p);
            Answer {
                witness: out.witness,
                stats: search_stats(out.stats),
            }
        }
        (Algorithm::Branch, Budget::Order { k, l }) => {
            let out = solve_wcoc_branch(g, k, l)?;
            Answer {
                witness: out.witness,
                stats: search_stats(out.stats),
            }
        }
        (Algorithm::KernelBranch, budget) => {
            let out = match budget {
                Budget::Integrity { p } => solve_wvi_kernel_branch(g, p),
                Budget::Order { k, l } => solve_wcoc_kernel_branch(g, k, l)?,
            };
            let mut stats = out.stats.map(search_stats).unwrap_or_default();
            stats.kernel_vertices = Some(out.trace.kernel_len);
            stats.kernel_steps = Some(out.trace.steps.len());
            Answer {
                witness: out.witness,
                stats,
            }
        }
        (Algorithm::Interval, budget) => {
            let model = instance
                .model
                .as_ref()
                .ok_or_else(|| precondition("the interval solver needs intervals on every 'v' line"))?;
            match budget {
                Budget::Integrity { p } => match solve_vi_interval(g, model, p)? {
                    Some(split) => Answer {
                        witness: Some(split.witness),
                        stats: Stats {
                            split_k: Some(split.k),
                            split_l: Some(split.l),
                            ..Stats::default()
                        },
                    },
                    None => Answer {
                        witness: None,
                        stats: Stats::default(),
                    },
                },
                Budget::Order { k, l } if problem == Problem::Coc => {
                    let out = solve_coc_interval_fast(g, model, k, l, true)?;
                    Answer {
                        witness: out.witness,
                        stats: Stats {
                            optimum: out.count,
                            ..Stats::default()
                        },
                    }
                }
                Budget::Order { k, l } => Answer {
                    witness: solve_wcoc_interval(g, model, k, l)?,
                    stats: Stats::default(),
                },
            }
        }
        (Algorithm::Split, Budget::Integrity { p }) if problem == Problem::Vi => {
            let sol = solve_vi_split(g)?;
            Answer {
                witness: (sol.iota <= p).then_some(sol.witness),
                stats: Stats {
                    optimum: Some(sol.iota),
                    ..Stats::default()
                },
            }
        }
        (Algorithm::Split, _) => {
            return Err(precondition(format!("the split solver handles vi only, not {problem}")));
        }
        (Algorithm::Complete, Budget::Integrity { p }) => {
            let sol = solve_wvi_complete(g)?;
            Answer {
                witness: (sol.iota <= p).then_some(sol.witness),
                stats: Stats {
                    optimum: Some(sol.iota),
                    ..Stats::default()
                },
            }
        }
        (Algorithm::Complete, Budget::Order { k, l }) => Answer {
            witness: solve_wcoc_complete(g, k, l)?,
            stats: Stats::default(),
        },
        (Algorithm::Auto | Algorithm::Verify, _) => unreachable!("resolved by the caller"),
    };
    Ok(answer)
}

fn certify(g: &WeightedGraph, budget: Budget, x: &[usize]) -> Result<Certificate, Rejection> {
    match budget {
        Budget::Integrity { p } => verify_wvi(g, p, x),
        Budget::Order { k, l } => verify_wcoc(g, k, l, x),
    }
}

fn check_problem_weights(g: &WeightedGraph, problem: Problem) -> Result<(), CliError> {
    if problem.is_unit() {
        g.check_unit_weight()?;
    }
    Ok(())
}

fn one_based(x: &[usize]) -> Vec<usize> {
    x.iter().map(|v| v + 1).collect()
}

/// Runs one solver. Witnesses are re-verified before they are reported.
pub fn solve(
    instance: &Instance,
    problem: Problem,
    algorithm: Algorithm,
    budget: Budget,
    oracle: &Oracle,
    include_witness: bool,
) -> Result<RunResult, CliError> {
    check_problem_weights(&instance.graph, problem)?;
    let algorithm = match algorithm {
        Algorithm::Auto => pick_algorithm(instance, problem),
        Algorithm::Verify => return Err(usage("verify is not a solver")),
        a => a,
    };
    let start = Instant::now();
    let answer = run_algorithm(instance, budget, problem, algorithm, oracle)?;
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;

    let objective = match &answer.witness {
        Some(x) => {
            let cert = certify(&instance.graph, budget, x).map_err(|r| {
                CliError::Check(format!("{algorithm} returned a witness that fails verification: {r}"))
            })?;
            Some(Objective {
                w_x: cert.deleted_weight,
                wcc: cert.wcc,
            })
        }
        None => None,
    };
    Ok(RunResult {
        schema: SCHEMA_VERSION,
        problem,
        algorithm,
        verdict: Verdict::from_bool(answer.witness.is_some()),
        witness: answer.witness.filter(|_| include_witness).map(|x| one_based(&x)),
        objective,
        stats: (!answer.stats.is_empty()).then_some(answer.stats),
        wall_time_ms,
    })
}

/// Parses a 1-based id list separated by commas or whitespace.
pub fn parse_id_list(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .ok()
                .filter(|&v| v >= 1)
                .ok_or_else(|| usage(format!("invalid vertex id '{t}' (ids are 1-based)")))
        })
        .collect()
}

/// Checks a certificate given in 1-based ids. A rejected certificate is a
/// `no` verdict; ids outside the graph are a usage error.
pub fn verify(
    instance: &Instance,
    problem: Problem,
    budget: Budget,
    witness: &[usize],
) -> Result<(RunResult, Option<String>), CliError> {
    check_problem_weights(&instance.graph, problem)?;
    let n = instance.graph.len();
    if let Some(&v) = witness.iter().find(|&&v| v == 0 || v > n) {
        return Err(usage(format!("witness id {v} outside 1..={n}")));
    }
    let x: Vec<usize> = witness.iter().map(|v| v - 1).collect();
    let start = Instant::now();
    let outcome = certify(&instance.graph, budget, &x);
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    let (cert, reason) = match outcome {
        Ok(cert) => (Some(cert), None),
        Err(r) => (r.certificate.clone(), Some(r.to_string())),
    };
    let mut sorted = witness.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let result = RunResult {
        schema: SCHEMA_VERSION,
        problem,
        algorithm: Algorithm::Verify,
        verdict: Verdict::from_bool(reason.is_none()),
        witness: Some(sorted),
        objective: cert.map(|c| Objective {
            w_x: c.deleted_weight,
            wcc: c.wcc,
        }),
        stats: None,
        wall_time_ms,
    };
    Ok((result, reason))
}

/// Step descriptions with vertices named by their 1-based original ids.
fn describe_steps(trace: &KernelTrace) -> Vec<String> {
    let mut map: Vec<usize> = (0..trace.original_len).collect();
    let mut lines = Vec::new();
    for (i, step) in trace.steps.iter().enumerate() {
        let text = match step {
            KernelStep::ForcedVertex { reduction, weight } => {
                format!("force vertex {} (weight {weight})", map[reduction.removed[0]] + 1)
            }
            KernelStep::TrivialNo { vertex, weight, budget } => format!(
                "trivial no: vertex {} of weight {weight} exceeds budget {budget}",
                map[*vertex] + 1
            ),
            other => other.to_string(),
        };
        lines.push(format!("step {}: {text}", i + 1));
        if let Some(r) = step.reduction() {
            map = r.origin.iter().map(|&v| map[v]).collect();
        }
    }
    lines
}

/// A kernelization run: summary lines plus the kernel when one remains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelReport {
    pub summary: Vec<String>,
    pub verdict: Option<Verdict>,
    pub kernel: Option<Instance>,
}

pub fn kernelize(instance: &Instance, problem: Problem, budget: Budget) -> Result<KernelReport, CliError> {
    check_problem_weights(&instance.graph, problem)?;
    let g = &instance.graph;
    let outcome = match budget {
        Budget::Integrity { p } => kernelize_wvi(g, p),
        Budget::Order { k, l } => kernelize_wcoc(g, k, l)?,
    };
    let trace = outcome.trace();
    let mut summary = vec![match budget {
        Budget::Integrity { p } => format!("{problem} kernel, p={p}"),
        Budget::Order { k, l } => format!("{problem} kernel, k={k} l={l}"),
    }];
    summary.extend(describe_steps(trace));
    summary.push(format!("vertices {} -> {}", trace.original_len, trace.kernel_len));
    let (verdict, kernel) = match &outcome {
        KernelOutcome::Reduced { graph, budget: b, trace } => {
            let origin = trace.origin();
            let params = match budget {
                Budget::Integrity { .. } => FileParams {
                    p: Some(*b),
                    ..FileParams::default()
                },
                Budget::Order { l, .. } => FileParams {
                    k: Some(*b),
                    l: Some(l),
                    ..FileParams::default()
                },
            };
            let ids: Vec<String> = origin.iter().map(|v| (v + 1).to_string()).collect();
            summary.push(format!("original ids: {}", ids.join(" ")));
            let kernel = Instance {
                graph: graph.clone(),
                model: instance.model.as_ref().map(|m| m.restrict(&origin)),
                params,
            };
            (None, Some(kernel))
        }
        KernelOutcome::Yes { witness, .. } => {
            let ids: Vec<String> = one_based(witness).iter().map(|v| v.to_string()).collect();
            summary.push(format!("decided yes, witness: {}", ids.join(" ")));
            (Some(Verdict::Yes), None)
        }
        KernelOutcome::No { .. } => {
            summary.push("decided no".to_string());
            (Some(Verdict::No), None)
        }
    };
    Ok(KernelReport {
        summary,
        verdict,
        kernel,
    })
}
