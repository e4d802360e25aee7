//! Bounded search trees for weighted vertex integrity and weighted
//! component order connectivity.
//!
//! Both solvers repeatedly look for a small connected vertex set `U` that is
//! too heavy to survive; any solution must delete a vertex of `U`, so the
//! search branches on each of them. Every vertex weight is at least one
//! after preprocessing, so the parameter drops on every branch.

use crate::error::{Error, Result};
use crate::graph::{Weight, WeightedGraph};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub max_depth: u32,
    /// The edge-count bound rejected the instance before any search.
    pub edge_bound_rejected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchOutcome {
    /// Deletion set in original ids when the answer is yes.
    pub witness: Option<Vec<usize>>,
    pub stats: SearchStats,
}

impl BranchOutcome {
    pub fn is_yes(&self) -> bool {
        self.witness.is_some()
    }
}

/// Upper bound on search-tree nodes for the component order connectivity
/// branching: `((l+1)^(k+1) - 1) / l`, which is `k + 1` when `l = 0`.
/// `None` when it does not fit in `u64`.
pub fn wcoc_node_bound(k: Weight, l: Weight) -> Option<u64> {
    if l == 0 {
        return k.checked_add(1);
    }
    let exp = u32::try_from(k.checked_add(1)?).ok()?;
    let power = l.checked_add(1)?.checked_pow(exp)?;
    Some((power - 1) / l)
}

/// A vertex set of at most `size_cap` vertices inducing a connected subgraph
/// of weight at least `weight_floor`, grown depth-first from the smallest
/// vertex of each component in turn. `None` when no component is heavy
/// enough.
pub fn find_heavy_connected_set(
    g: &WeightedGraph,
    size_cap: usize,
    weight_floor: Weight,
) -> Result<Option<Vec<usize>>> {
    if let Some(v) = (0..g.len()).find(|&v| g.weight(v) == 0) {
        return Err(Error::ZeroWeight(v));
    }
    let alive = vec![true; g.len()];
    Ok(Searcher::new(g).heavy_set(&alive, size_cap, weight_floor))
}

struct Searcher<'g> {
    g: &'g WeightedGraph,
    stats: SearchStats,
}

impl<'g> Searcher<'g> {
    fn new(g: &'g WeightedGraph) -> Self {
        Searcher {
            g,
            stats: SearchStats::default(),
        }
    }

    fn heavy_set(&self, alive: &[bool], size_cap: usize, weight_floor: Weight) -> Option<Vec<usize>> {
        let g = self.g;
        let mut seen = vec![false; g.len()];
        for root in 0..g.len() {
            if !alive[root] || seen[root] {
                continue;
            }
            // preorder DFS with neighbors in increasing id order
            let mut picked = Vec::new();
            let mut weight = 0;
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            seen[root] = true;
            picked.push(root);
            weight += g.weight(root);
            while weight < weight_floor {
                let Some(top) = stack.last_mut() else { break };
                let (u, pos) = *top;
                match g.neighbors(u)[pos..].iter().position(|&v| alive[v] && !seen[v]) {
                    Some(off) => {
                        let v = g.neighbors(u)[pos + off];
                        top.1 = pos + off + 1;
                        seen[v] = true;
                        picked.push(v);
                        weight += g.weight(v);
                        stack.push((v, 0));
                    }
                    None => {
                        stack.pop();
                    }
                }
            }
            if weight >= weight_floor && picked.len() <= size_cap {
                picked.sort_unstable();
                return Some(picked);
            }
            // the rest of this component is unreachable from the other roots
            // only through `seen`, so mark it all before moving on
            let mut rest: Vec<usize> = stack.iter().map(|&(u, _)| u).collect();
            while let Some(u) = rest.pop() {
                for &v in g.neighbors(u) {
                    if alive[v] && !seen[v] {
                        seen[v] = true;
                        rest.push(v);
                    }
                }
            }
        }
        None
    }

    /// Depth-first search; `budget` is the remaining parameter (`p` or `k`),
    /// `cap`/`floor` the heavy-set shape for the current problem.
    fn search(
        &mut self,
        alive: &mut Vec<bool>,
        budget: Weight,
        shape: Shape,
        depth: u32,
        path: &mut Vec<usize>,
    ) -> bool {
        self.stats.nodes_expanded += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let (cap, floor) = shape.at(budget);
        let Some(u) = self.heavy_set(alive, cap, floor) else {
            return true;
        };
        for v in u {
            let Some(rest) = budget.checked_sub(self.g.weight(v)) else {
                continue;
            };
            alive[v] = false;
            path.push(v);
            if self.search(alive, rest, shape, depth + 1, path) {
                return true;
            }
            path.pop();
            alive[v] = true;
        }
        false
    }
}

#[derive(Debug, Clone, Copy)]
enum Shape {
    /// Components must weigh at most the remaining `p`.
    Integrity,
    /// Components must weigh at most the fixed `l`.
    Order(Weight),
}

impl Shape {
    fn at(self, budget: Weight) -> (usize, Weight) {
        let bound = match self {
            Shape::Integrity => budget,
            Shape::Order(l) => l,
        };
        let floor = bound.saturating_add(1);
        (usize::try_from(floor).unwrap_or(usize::MAX), floor)
    }
}

fn run(g: &WeightedGraph, budget: Weight, shape: Shape, edge_slack: Weight) -> BranchOutcome {
    let zero: Vec<usize> = (0..g.len()).filter(|&v| g.weight(v) == 0).collect();
    let cleaned = g.delete(&zero).expect("ids come from the graph");
    let h = &cleaned.graph;

    // a yes-instance has treewidth below `edge_slack`, hence at most
    // (edge_slack - 1) * n edges
    let n = h.len() as u128;
    let allowed = (edge_slack as u128).checked_sub(1).map_or(0, |s| s * n);
    let too_dense = h.edge_count() as u128 > allowed || (edge_slack == 0 && n > 0);
    let mut searcher = Searcher::new(h);
    if too_dense {
        searcher.stats.edge_bound_rejected = true;
        return BranchOutcome {
            witness: None,
            stats: searcher.stats,
        };
    }
    let mut alive = vec![true; h.len()];
    let mut path = Vec::new();
    let found = searcher.search(&mut alive, budget, shape, 0, &mut path);
    let witness = found.then(|| {
        let mut x = cleaned.to_parent(&path);
        x.extend_from_slice(&zero);
        x.sort_unstable();
        x
    });
    BranchOutcome {
        witness,
        stats: searcher.stats,
    }
}

/// Weighted vertex integrity: is there `X` with `w(X) + w_cc(G - X) <= p`?
pub fn solve_wvi_branch(g: &WeightedGraph, p: Weight) -> BranchOutcome {
    run(g, p, Shape::Integrity, p)
}

/// Weighted component order connectivity: is there `X` with `w(X) <= k`
/// and `w_cc(G - X) <= l`?
pub fn solve_wcoc_branch(g: &WeightedGraph, k: Weight, l: Weight) -> Result<BranchOutcome> {
    let slack = k.checked_add(l).ok_or(Error::ParameterOverflow)?;
    Ok(run(g, k, Shape::Order(l), slack))
}
