//! Pseudo-polynomial subset-sum selections.

use crate::error::{Error, Result};
use crate::graph::Weight;

/// Reachability table over sums `0..=cap` with enough bookkeeping to
/// reconstruct one subset per reachable sum.
struct Reach {
    /// Item that first reached each sum; `usize::MAX` when unreached.
    item: Vec<usize>,
}

impl Reach {
    fn build(weights: &[Weight], cap: usize, mut on_overflow: impl FnMut(usize, usize)) -> Self {
        const NONE: usize = usize::MAX;
        let mut item = vec![NONE; cap + 1];
        // sum 0 is reached by the empty set; mark it with a sentinel that no
        // item index can take
        item[0] = NONE - 1;
        for (idx, &w) in weights.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let w = w as usize;
            for c in (0..=cap).rev() {
                if item[c] == NONE || item[c] == idx {
                    continue;
                }
                let next = c + w;
                if next <= cap {
                    if item[next] == NONE {
                        item[next] = idx;
                    }
                } else {
                    on_overflow(c, idx);
                }
            }
        }
        Reach { item }
    }

    fn reachable(&self, c: usize) -> bool {
        self.item[c] != usize::MAX
    }

    fn subset(&self, weights: &[Weight], mut c: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while c > 0 {
            let idx = self.item[c];
            out.push(idx);
            c -= weights[idx] as usize;
        }
        out.sort_unstable();
        out
    }
}

fn table_size(x: Weight) -> Result<usize> {
    usize::try_from(x).map_err(|_| Error::ParameterOverflow)
}

/// Index set of minimum total weight among those with total `>= target`.
/// Runs in `O(target * r)`. A target of 0 yields the empty set.
pub fn minsup(weights: &[Weight], target: Weight) -> Result<Vec<usize>> {
    let total: Weight = weights.iter().sum();
    if target > total {
        return Err(Error::InfeasibleTarget { target, total });
    }
    if target == 0 {
        return Ok(Vec::new());
    }
    let cap = table_size(target - 1)?;
    // best overshoot: (sum, base sum below target, item that crossed it)
    let mut best: Option<(Weight, usize, usize)> = None;
    let reach = Reach::build(weights, cap, |c, idx| {
        let sum = c as Weight + weights[idx];
        if best.is_none_or(|(b, _, _)| sum < b) {
            best = Some((sum, c, idx));
        }
    });
    // sums below the target are reachable only through prefixes that never
    // cross it; every subset with sum >= target has such a prefix plus one
    // crossing item, so the recorded overshoot is optimal
    let (_, base, idx) = best.expect("target <= total, so some subset crosses it");
    debug_assert!(reach.reachable(base));
    let mut out = reach.subset(weights, base);
    out.push(idx);
    out.sort_unstable();
    Ok(out)
}

/// Index set of maximum total weight among those with total `<= cap`.
pub fn maxinf(weights: &[Weight], cap: Weight) -> Result<Vec<usize>> {
    let total: Weight = weights.iter().sum();
    if cap >= total {
        return Ok((0..weights.len()).filter(|&i| weights[i] > 0).collect());
    }
    let cap = table_size(cap)?;
    let reach = Reach::build(weights, cap, |_, _| {});
    let best = (0..=cap).rev().find(|&c| reach.reachable(c)).unwrap_or(0);
    Ok(reach.subset(weights, best))
}

/// Complement of an index set within `0..len`.
pub fn complement(indices: &[usize], len: usize) -> Vec<usize> {
    let mut inside = vec![false; len];
    for &i in indices {
        inside[i] = true;
    }
    (0..len).filter(|&i| !inside[i]).collect()
}
