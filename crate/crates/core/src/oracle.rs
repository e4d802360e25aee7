//! Brute-force ground truth by subset enumeration.
//!
//! Subsets are ranked by cardinality, then lexicographically by their sorted
//! vertex lists; whenever several subsets are optimal the first one in that
//! order is returned.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{Weight, WeightedGraph};

pub const DEFAULT_LIMIT: usize = 20;
const HARD_LIMIT: usize = 63;

/// Minimum of `w(X) + w_cc(G - X)` and the first set attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IotaSolution {
    pub iota: Weight,
    pub witness: Vec<usize>,
}

/// Minimum `w(X)` subject to `w_cc(G - X) <= l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocMinimum {
    pub kmin: Weight,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    limit: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            limit: DEFAULT_LIMIT,
        }
    }
}

impl Oracle {
    /// Limits above 63 are clamped; masks are 64-bit.
    pub fn new(limit: usize) -> Self {
        Oracle {
            limit: limit.min(HARD_LIMIT),
        }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    fn prepare<'g>(&self, g: &'g WeightedGraph) -> Result<Masks<'g>> {
        if g.len() > self.limit {
            return Err(Error::InstanceTooLarge {
                n: g.len(),
                limit: self.limit,
            });
        }
        Ok(Masks::new(g))
    }

    pub fn wvi(&self, g: &WeightedGraph) -> Result<IotaSolution> {
        let m = self.prepare(g)?;
        let mut best: Option<(Weight, u64)> = None;
        for x in m.all_subsets() {
            let value = m.weight(x) + m.wcc(m.full & !x);
            let better = match best {
                None => true,
                Some((bv, bx)) => value < bv || (value == bv && canonical_cmp(x, bx) == Ordering::Less),
            };
            if better {
                best = Some((value, x));
            }
        }
        let (iota, x) = best.expect("the empty set is always a candidate");
        Ok(IotaSolution {
            iota,
            witness: to_vec(x),
        })
    }

    pub fn wcoc(&self, g: &WeightedGraph, l: Weight) -> Result<CocMinimum> {
        let m = self.prepare(g)?;
        let mut best: Option<(Weight, u64)> = None;
        for x in m.all_subsets() {
            if m.wcc(m.full & !x) > l {
                continue;
            }
            let value = m.weight(x);
            let better = match best {
                None => true,
                Some((bv, bx)) => value < bv || (value == bv && canonical_cmp(x, bx) == Ordering::Less),
            };
            if better {
                best = Some((value, x));
            }
        }
        let (kmin, x) = best.expect("deleting every vertex is always feasible");
        Ok(CocMinimum {
            kmin,
            witness: to_vec(x),
        })
    }

    /// `profile[t]` is the minimum `w(X)` with `w_cc(G - X) <= t`, for
    /// `t = 0..=w(V)`. One pass over all subsets.
    pub fn coc_profile(&self, g: &WeightedGraph) -> Result<Vec<Weight>> {
        let m = self.prepare(g)?;
        let total = usize::try_from(g.total_weight()).map_err(|_| Error::ParameterOverflow)?;
        let mut best = vec![Weight::MAX; total + 1];
        for x in m.all_subsets() {
            let c = m.wcc(m.full & !x) as usize;
            best[c] = best[c].min(m.weight(x));
        }
        for t in 1..=total {
            best[t] = best[t].min(best[t - 1]);
        }
        Ok(best)
    }

    /// Every subset attaining `iota(G)`, in canonical order.
    pub fn iota_sets(&self, g: &WeightedGraph) -> Result<Vec<Vec<usize>>> {
        let m = self.prepare(g)?;
        let iota = self.wvi(g)?.iota;
        let mut sets: Vec<u64> = m
            .all_subsets()
            .filter(|&x| m.weight(x) + m.wcc(m.full & !x) == iota)
            .collect();
        sets.sort_by(|&a, &b| canonical_cmp(a, b));
        Ok(sets.into_iter().map(to_vec).collect())
    }

    pub fn max_clique(&self, g: &WeightedGraph) -> Result<usize> {
        let m = self.prepare(g)?;
        Ok(m.all_subsets()
            .filter(|&x| m.is_clique(x))
            .map(|x| x.count_ones() as usize)
            .max()
            .unwrap_or(0))
    }

    /// Whether some `A' ⊆ A`, `B' ⊆ B` with `|A'| = |B'| = k` induce a
    /// complete bipartite graph.
    pub fn balanced_biclique(
        &self,
        g: &WeightedGraph,
        part_a: &[usize],
        part_b: &[usize],
        k: usize,
    ) -> Result<bool> {
        check_bipartition(g, part_a, part_b)?;
        let m = self.prepare(g)?;
        if k == 0 {
            return Ok(true);
        }
        let b_mask = to_mask(part_b);
        let found = itertools::Itertools::combinations(part_a.iter().copied(), k).any(|side| {
            let common = side.iter().fold(b_mask, |acc, &a| acc & m.adj[a]);
            common.count_ones() as usize >= k
        });
        Ok(found)
    }

    /// Minimum cardinality vertex cover; weights are ignored.
    pub fn vertex_cover(&self, g: &WeightedGraph) -> Result<usize> {
        let m = self.prepare(g)?;
        let edges: Vec<(usize, usize)> = g.edges().collect();
        Ok(m.all_subsets()
            .filter(|&x| edges.iter().all(|&(u, v)| (x >> u | x >> v) & 1 == 1))
            .map(|x| x.count_ones() as usize)
            .min()
            .unwrap_or(0))
    }
}

/// Vertex integrity of a disjoint union from the order connectivity
/// profiles of its parts: `min_t t + sum_i profile_i[t]`, where a profile
/// is read as 0 beyond its end.
pub fn iota_from_profiles(profiles: &[Vec<Weight>]) -> Weight {
    let top = profiles.iter().map(|p| p.len()).max().unwrap_or(1).max(1);
    (0..top)
        .map(|t| {
            let cost: Weight = profiles.iter().map(|p| p.get(t).copied().unwrap_or(0)).sum();
            t as Weight + cost
        })
        .min()
        .expect("at least one threshold")
}

/// Checks that `(a, b)` partitions `V(G)` into two independent sets.
pub fn check_bipartition(g: &WeightedGraph, a: &[usize], b: &[usize]) -> Result<()> {
    let mut side = vec![None; g.len()];
    for (label, part) in [(0u8, a), (1u8, b)] {
        for &v in part {
            g.check_vertex(v)?;
            if side[v].replace(label).is_some() {
                return Err(Error::InvalidBipartition(format!(
                    "vertex {v} listed twice"
                )));
            }
        }
    }
    if let Some(v) = side.iter().position(|s| s.is_none()) {
        return Err(Error::InvalidBipartition(format!(
            "vertex {v} is on neither side"
        )));
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| side[u] == side[v]) {
        return Err(Error::InvalidBipartition(format!(
            "edge {u}-{v} lies inside one side"
        )));
    }
    Ok(())
}

/// Bitmask view of a small graph.
struct Masks<'g> {
    g: &'g WeightedGraph,
    adj: Vec<u64>,
    full: u64,
    unit: bool,
}

impl<'g> Masks<'g> {
    fn new(g: &'g WeightedGraph) -> Self {
        let adj = (0..g.len()).map(|v| to_mask(g.neighbors(v))).collect();
        let full = if g.is_empty() {
            0
        } else {
            u64::MAX >> (64 - g.len())
        };
        Masks {
            g,
            adj,
            full,
            unit: g.is_unit_weight(),
        }
    }

    fn all_subsets(&self) -> impl Iterator<Item = u64> {
        let full = self.full;
        // full + 1 overflows only for n = 64, which the limit excludes
        0..=full
    }

    fn weight(&self, set: u64) -> Weight {
        if self.unit {
            return Weight::from(set.count_ones());
        }
        bits(set).map(|v| self.g.weight(v)).sum()
    }

    fn wcc(&self, mut rest: u64) -> Weight {
        let mut best = 0;
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & rest & !comp;
                comp |= frontier;
            }
            rest &= !comp;
            best = best.max(self.weight(comp));
        }
        best
    }

    fn is_clique(&self, set: u64) -> bool {
        bits(set).all(|v| set & !(1 << v) & !self.adj[v] == 0)
    }
}

fn bits(mut set: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let v = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(v)
        }
    })
}

fn to_mask(set: &[usize]) -> u64 {
    set.iter().fold(0, |acc, &v| acc | 1 << v)
}

fn to_vec(set: u64) -> Vec<usize> {
    bits(set).collect()
}

/// Cardinality first, then lexicographic on the sorted members.
fn canonical_cmp(a: u64, b: u64) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| {
        let diff = a ^ b;
        if diff == 0 {
            Ordering::Equal
        } else if a >> diff.trailing_zeros() & 1 == 1 {
            // a holds the smallest differing element
            Ordering::Less
        } else {
            Ordering::Greater
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k(n: usize) -> WeightedGraph {
        WeightedGraph::complete(vec![1; n]).unwrap()
    }

    #[test]
    fn canonical_order_is_cardinality_then_lex() {
        let mut all: Vec<u64> = (0..16).collect();
        all.sort_by(|&a, &b| canonical_cmp(a, b));
        let lists: Vec<Vec<usize>> = all.into_iter().map(to_vec).collect();
        let mut expected: Vec<Vec<usize>> = Vec::new();
        for size in 0..=4 {
            expected.extend(itertools::Itertools::combinations(0..4usize, size));
        }
        assert_eq!(lists, expected);
    }

    #[test]
    fn wvi_examples() {
        let o = Oracle::default();
        assert_eq!(o.wvi(&k(3)).unwrap().iota, 3);
        let sol = o.wvi(&WeightedGraph::path(3)).unwrap();
        assert_eq!(sol.iota, 2);
        assert_eq!(sol.witness, vec![1]);
        assert_eq!(o.wvi(&WeightedGraph::edgeless(vec![7]).unwrap()).unwrap().iota, 7);
        assert_eq!(o.wvi(&WeightedGraph::unit(0, []).unwrap()).unwrap().iota, 0);
    }

    #[test]
    fn wcoc_examples() {
        let o = Oracle::default();
        let sol = o.wcoc(&WeightedGraph::path(3), 1).unwrap();
        assert_eq!((sol.kmin, sol.witness), (1, vec![1]));
        assert_eq!(o.wcoc(&WeightedGraph::unit(4, []).unwrap(), 1).unwrap().kmin, 0);
        assert_eq!(o.wcoc(&k(4), 1).unwrap().kmin, 3);
    }

    #[test]
    fn iota_set_examples() {
        let o = Oracle::default();
        let single = WeightedGraph::edgeless(vec![1]).unwrap();
        assert_eq!(o.iota_sets(&single).unwrap(), vec![vec![], vec![0]]);
        assert_eq!(o.iota_sets(&k(2)).unwrap().len(), 4);
        // P3: only {1} reaches 2; {0,1} and {0} both cost 3
        assert_eq!(o.iota_sets(&WeightedGraph::path(3)).unwrap(), vec![vec![1]]);
    }

    #[test]
    fn clique_cover_biclique_examples() {
        let o = Oracle::default();
        assert_eq!(o.max_clique(&k(3)).unwrap(), 3);
        assert_eq!(o.max_clique(&WeightedGraph::cycle(5)).unwrap(), 2);
        assert_eq!(o.max_clique(&WeightedGraph::unit(3, []).unwrap()).unwrap(), 1);

        let k22 = WeightedGraph::unit(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(o.balanced_biclique(&k22, &[0, 1], &[2, 3], 2).unwrap());
        let p4 = WeightedGraph::path(4);
        assert!(!o.balanced_biclique(&p4, &[0, 2], &[1, 3], 2).unwrap());
        assert!(o.balanced_biclique(&p4, &[0, 2], &[1, 3], 0).unwrap());
        assert!(o.balanced_biclique(&p4, &[0, 1], &[2, 3], 1).is_err());

        assert_eq!(o.vertex_cover(&WeightedGraph::path(2)).unwrap(), 1);
        assert_eq!(o.vertex_cover(&k(3)).unwrap(), 2);
        assert_eq!(o.vertex_cover(&WeightedGraph::unit(3, []).unwrap()).unwrap(), 0);
    }

    #[test]
    fn limit_is_enforced() {
        let o = Oracle::new(4);
        assert_eq!(
            o.wvi(&WeightedGraph::path(5)).unwrap_err(),
            Error::InstanceTooLarge { n: 5, limit: 4 }
        );
    }

    proptest! {
        #[test]
        fn deleting_a_vertex_never_raises_iota(
            n in 1usize..8,
            seed in any::<u64>(),
        ) {
            let g = crate::generate::random_graph(&mut crate::generate::rng(seed), n, 0.4, 1..=3);
            let o = Oracle::default();
            let iota = o.wvi(&g).unwrap().iota;
            for v in 0..n {
                let sub = g.delete(&[v]).unwrap().graph;
                prop_assert!(o.wvi(&sub).unwrap().iota <= iota);
            }
        }

        #[test]
        fn profiles_combine_to_iota(n in 1usize..9, seed in any::<u64>()) {
            let g = crate::generate::random_graph(&mut crate::generate::rng(seed), n, 0.25, 1..=3);
            let o = Oracle::default();
            let parts: Vec<Vec<Weight>> = g
                .components()
                .iter()
                .map(|c| o.coc_profile(&g.induced(c).unwrap().graph).unwrap())
                .collect();
            prop_assert_eq!(iota_from_profiles(&parts), o.wvi(&g).unwrap().iota);
            let whole = o.coc_profile(&g).unwrap();
            for (t, &kmin) in whole.iter().enumerate() {
                prop_assert_eq!(kmin, o.wcoc(&g, t as Weight).unwrap().kmin);
            }
        }
    }
}
