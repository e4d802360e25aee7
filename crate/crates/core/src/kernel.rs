//! Polynomial kernels for weighted vertex integrity (at most `p^3`
//! vertices) and weighted component order connectivity (at most
//! `k l (k + l) + k` vertices).
//!
//! Every rule application is recorded in a [`KernelTrace`] so that a
//! solution of the kernel can be lifted back to the original graph.

use std::fmt;

use crate::branch::{solve_wcoc_branch, solve_wvi_branch, SearchStats};
use crate::error::{Error, Result};
use crate::graph::{Weight, WeightedGraph};
use crate::oracle::Oracle;

/// Vertices removed by one rule, in the ids of the graph the rule saw,
/// together with `origin[new] = old` for the surviving vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub removed: Vec<usize>,
    pub origin: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelStep {
    /// Weight-0 vertices deleted; they join any lifted witness for free.
    DropZeroWeight(Reduction),
    /// Only the `p + 1` heaviest components kept.
    KeepHeaviest(Reduction),
    /// Components of weight at most `l` deleted.
    DropLightComponents(Reduction),
    /// A vertex with too heavy a closed neighborhood, charged to the budget.
    ForcedVertex { reduction: Reduction, weight: Weight },
    /// The reduced instance was small enough to decide outright.
    SolvedDirectly { yes: bool },
    /// A forced vertex was heavier than the remaining budget.
    TrivialNo { vertex: usize, weight: Weight, budget: Weight },
    /// More vertices remain than the kernel bound allows.
    SizeReject { bound: u64, size: usize },
}

impl KernelStep {
    /// The deletion this step performed, if any.
    pub fn reduction(&self) -> Option<&Reduction> {
        match self {
            KernelStep::DropZeroWeight(r)
            | KernelStep::KeepHeaviest(r)
            | KernelStep::DropLightComponents(r)
            | KernelStep::ForcedVertex { reduction: r, .. } => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for KernelStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelStep::DropZeroWeight(r) => write!(f, "drop {} zero-weight vertices", r.removed.len()),
            KernelStep::KeepHeaviest(r) => {
                write!(f, "keep heaviest components, drop {} vertices", r.removed.len())
            }
            KernelStep::DropLightComponents(r) => {
                write!(f, "drop light components, {} vertices", r.removed.len())
            }
            KernelStep::ForcedVertex { reduction, weight } => {
                write!(f, "force vertex {} (weight {weight})", reduction.removed[0])
            }
            KernelStep::SolvedDirectly { yes } => {
                write!(f, "solved directly: {}", if *yes { "yes" } else { "no" })
            }
            KernelStep::TrivialNo { vertex, weight, budget } => {
                write!(f, "trivial no: vertex {vertex} of weight {weight} exceeds budget {budget}")
            }
            KernelStep::SizeReject { bound, size } => {
                write!(f, "size reject: {size} vertices exceed bound {bound}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KernelTrace {
    pub steps: Vec<KernelStep>,
    pub original_len: usize,
    /// Vertex count of the last graph in the sequence.
    pub kernel_len: usize,
}

impl KernelTrace {
    fn new(n: usize) -> Self {
        KernelTrace {
            steps: Vec::new(),
            original_len: n,
            kernel_len: n,
        }
    }

    fn push(&mut self, step: KernelStep) {
        if let Some(r) = step.reduction() {
            self.kernel_len = r.origin.len();
        }
        self.steps.push(step);
    }

    /// Total weight charged by forced vertices.
    pub fn charged(&self) -> Weight {
        self.steps
            .iter()
            .map(|s| match s {
                KernelStep::ForcedVertex { weight, .. } => *weight,
                _ => 0,
            })
            .sum()
    }

    /// Reapplies the recorded deletions to `g`.
    pub fn replay(&self, g: &WeightedGraph) -> Result<WeightedGraph> {
        let mut cur = g.clone();
        for r in self.steps.iter().filter_map(KernelStep::reduction) {
            cur = cur.delete(&r.removed)?.graph;
        }
        Ok(cur)
    }

    /// `origin[v]` is the original id of kernel vertex `v`.
    pub fn origin(&self) -> Vec<usize> {
        let mut map: Vec<usize> = (0..self.original_len).collect();
        for r in self.steps.iter().filter_map(KernelStep::reduction) {
            map = r.origin.iter().map(|&v| map[v]).collect();
        }
        map
    }

    /// Maps a kernel solution back to the original graph, adding every
    /// forced vertex and every dropped weight-0 vertex.
    pub fn lift_witness(&self, x: &[usize]) -> Result<Vec<usize>> {
        for &v in x {
            if v >= self.kernel_len {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.kernel_len,
                });
            }
        }
        let mut set = x.to_vec();
        for step in self.steps.iter().rev() {
            let Some(r) = step.reduction() else { continue };
            set = set.iter().map(|&v| r.origin[v]).collect();
            if matches!(
                step,
                KernelStep::DropZeroWeight(_) | KernelStep::ForcedVertex { .. }
            ) {
                set.extend_from_slice(&r.removed);
            }
        }
        set.sort_unstable();
        set.dedup();
        Ok(set)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelOutcome {
    /// An equivalent instance with the reduced budget (`p'` or `k'`).
    Reduced {
        graph: WeightedGraph,
        budget: Weight,
        trace: KernelTrace,
    },
    /// Decided yes during kernelization; the witness is in original ids.
    Yes { witness: Vec<usize>, trace: KernelTrace },
    No { trace: KernelTrace },
}

impl KernelOutcome {
    pub fn trace(&self) -> &KernelTrace {
        match self {
            KernelOutcome::Reduced { trace, .. }
            | KernelOutcome::Yes { trace, .. }
            | KernelOutcome::No { trace } => trace,
        }
    }
}

struct Reducer {
    g: WeightedGraph,
    trace: KernelTrace,
}

impl Reducer {
    fn new(g: &WeightedGraph) -> Self {
        Reducer {
            g: g.clone(),
            trace: KernelTrace::new(g.len()),
        }
    }

    fn remove(&mut self, removed: Vec<usize>) -> Reduction {
        let sub = self.g.delete(&removed).expect("ids come from the current graph");
        self.g = sub.graph;
        Reduction {
            removed,
            origin: sub.origin,
        }
    }

    fn drop_zero_weight(&mut self) {
        let zero: Vec<usize> = (0..self.g.len()).filter(|&v| self.g.weight(v) == 0).collect();
        if !zero.is_empty() {
            let r = self.remove(zero);
            self.trace.push(KernelStep::DropZeroWeight(r));
        }
    }

    /// First vertex whose closed neighborhood outweighs `limit`; either
    /// deletes it and charges `budget`, or reports that it cannot be paid.
    /// Returns `None` when no vertex qualifies.
    fn force_heavy_vertex(&mut self, limit: Weight, budget: &mut Weight) -> Option<bool> {
        let v = (0..self.g.len()).find(|&v| self.g.closed_neighborhood_weight(v) > limit)?;
        let weight = self.g.weight(v);
        if weight > *budget {
            self.trace.push(KernelStep::TrivialNo {
                vertex: v,
                weight,
                budget: *budget,
            });
            return Some(false);
        }
        *budget -= weight;
        let reduction = self.remove(vec![v]);
        self.trace.push(KernelStep::ForcedVertex { reduction, weight });
        Some(true)
    }

    fn keep_heaviest(&mut self, keep: Weight) -> bool {
        let mut comps = self.g.components();
        if (comps.len() as u128) <= keep as u128 + 1 {
            return false;
        }
        // components come ordered by smallest id, and the sort is stable
        comps.sort_by_key(|c| std::cmp::Reverse(self.g.weight_of(c)));
        let mut removed: Vec<usize> = comps[keep as usize + 1..].concat();
        removed.sort_unstable();
        let r = self.remove(removed);
        self.trace.push(KernelStep::KeepHeaviest(r));
        true
    }

    fn drop_light_components(&mut self, l: Weight) -> bool {
        let mut removed: Vec<usize> = self
            .g
            .components()
            .into_iter()
            .filter(|c| self.g.weight_of(c) <= l)
            .flatten()
            .collect();
        if removed.is_empty() {
            return false;
        }
        removed.sort_unstable();
        let r = self.remove(removed);
        self.trace.push(KernelStep::DropLightComponents(r));
        true
    }

    fn size_check(mut self, bound: Option<u64>, budget: Weight) -> KernelOutcome {
        let size = self.g.len();
        if let Some(bound) = bound {
            if size as u128 > bound as u128 {
                self.trace.push(KernelStep::SizeReject { bound, size });
                return KernelOutcome::No { trace: self.trace };
            }
        }
        KernelOutcome::Reduced {
            graph: self.g,
            budget,
            trace: self.trace,
        }
    }
}

/// Kernel for weighted vertex integrity with parameter `p`.
pub fn kernelize_wvi(g: &WeightedGraph, p: Weight) -> KernelOutcome {
    let mut red = Reducer::new(g);
    let mut budget = p;
    red.drop_zero_weight();
    loop {
        let kept = red.keep_heaviest(budget);
        match red.force_heavy_vertex(budget, &mut budget) {
            Some(false) => return KernelOutcome::No { trace: red.trace },
            Some(true) => continue,
            None if kept => continue,
            None => break,
        }
    }
    if budget <= 1 {
        // every closed neighborhood weighs at most 1 and at most two
        // components remain, so the graph has at most two vertices
        let sol = Oracle::default().wvi(&red.g).expect("at most two vertices remain");
        let yes = sol.iota <= budget;
        red.trace.push(KernelStep::SolvedDirectly { yes });
        let kernel_len = red.g.len();
        red.trace.kernel_len = kernel_len;
        return if yes {
            let witness = red.trace.lift_witness(&sol.witness).expect("oracle ids are local");
            KernelOutcome::Yes {
                witness,
                trace: red.trace,
            }
        } else {
            KernelOutcome::No { trace: red.trace }
        };
    }
    let bound = p.checked_pow(3);
    red.size_check(bound, budget)
}

/// Kernel for weighted component order connectivity with parameters
/// `k` and `l`; `l` never changes.
pub fn kernelize_wcoc(g: &WeightedGraph, k: Weight, l: Weight) -> Result<KernelOutcome> {
    k.checked_add(l).ok_or(Error::ParameterOverflow)?;
    let mut red = Reducer::new(g);
    let mut budget = k;
    red.drop_zero_weight();
    loop {
        match red.force_heavy_vertex(budget + l, &mut budget) {
            Some(false) => return Ok(KernelOutcome::No { trace: red.trace }),
            Some(true) => continue,
            None => {}
        }
        if !red.drop_light_components(l) {
            break;
        }
    }
    let bound = wcoc_kernel_bound(k, l);
    Ok(red.size_check(bound, budget))
}

/// `k l (k + l) + k`, or `None` on overflow.
pub fn wcoc_kernel_bound(k: Weight, l: Weight) -> Option<u64> {
    k.checked_mul(l)?
        .checked_mul(k.checked_add(l)?)?
        .checked_add(k)
}

/// Result of kernelizing and then running the search tree on the kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineOutcome {
    /// Deletion set in original ids when the answer is yes.
    pub witness: Option<Vec<usize>>,
    pub trace: KernelTrace,
    /// Present when the search actually ran.
    pub stats: Option<SearchStats>,
}

pub fn solve_wvi_kernel_branch(g: &WeightedGraph, p: Weight) -> PipelineOutcome {
    match kernelize_wvi(g, p) {
        KernelOutcome::Reduced { graph, budget, trace } => {
            let out = solve_wvi_branch(&graph, budget);
            let witness = out
                .witness
                .map(|x| trace.lift_witness(&x).expect("branch ids are local"));
            PipelineOutcome {
                witness,
                trace,
                stats: Some(out.stats),
            }
        }
        KernelOutcome::Yes { witness, trace } => PipelineOutcome {
            witness: Some(witness),
            trace,
            stats: None,
        },
        KernelOutcome::No { trace } => PipelineOutcome {
            witness: None,
            trace,
            stats: None,
        },
    }
}

pub fn solve_wcoc_kernel_branch(g: &WeightedGraph, k: Weight, l: Weight) -> Result<PipelineOutcome> {
    Ok(match kernelize_wcoc(g, k, l)? {
        KernelOutcome::Reduced { graph, budget, trace } => {
            let out = solve_wcoc_branch(&graph, budget, l)?;
            let witness = out
                .witness
                .map(|x| trace.lift_witness(&x).expect("branch ids are local"));
            PipelineOutcome {
                witness,
                trace,
                stats: Some(out.stats),
            }
        }
        KernelOutcome::Yes { witness, trace } => PipelineOutcome {
            witness: Some(witness),
            trace,
            stats: None,
        },
        KernelOutcome::No { trace } => PipelineOutcome {
            witness: None,
            trace,
            stats: None,
        },
    })
}
