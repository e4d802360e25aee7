//! Direct solvers for split graphs and complete graphs.

use crate::error::{Error, Result};
use crate::graph::{Weight, WeightedGraph};
use crate::interval::minsup;
use crate::oracle::IotaSolution;

fn check_complete(g: &WeightedGraph) -> Result<()> {
    match g.missing_edge() {
        Some((u, v)) => Err(Error::NotComplete(u, v)),
        None => Ok(()),
    }
}

/// Vertex integrity of a unit-weight split graph in linear time.
///
/// Vertices on the independent side are simplicial, so some optimal
/// deletion set lies inside the clique `C`. Deleting all of `C` costs
/// `|C| + [I != ∅]`; keeping exactly one `u ∈ C` costs `|C| + |N(u) ∩ I|`,
/// and keeping more clique vertices never helps.
pub fn solve_vi_split(g: &WeightedGraph) -> Result<IotaSolution> {
    g.check_unit_weight()?;
    let split = g.split_partition().ok_or(Error::NotSplit)?;
    let c = split.clique.len() as Weight;
    let mut best = IotaSolution {
        iota: c + Weight::from(!split.independent.is_empty()),
        witness: split.clique.clone(),
    };
    let mut on_clique = vec![false; g.len()];
    for &u in &split.clique {
        on_clique[u] = true;
    }
    for &u in &split.clique {
        let outside = g.neighbors(u).iter().filter(|&&v| !on_clique[v]).count() as Weight;
        if c + outside < best.iota {
            best = IotaSolution {
                iota: c + outside,
                witness: split.clique.iter().copied().filter(|&v| v != u).collect(),
            };
        }
    }
    Ok(best)
}

/// On a complete graph every deletion set leaves a single clique, so
/// `w(X) + w_cc(G - X) = w(V)` for all `X`; the empty set is returned.
pub fn solve_wvi_complete(g: &WeightedGraph) -> Result<IotaSolution> {
    check_complete(g)?;
    Ok(IotaSolution {
        iota: g.total_weight(),
        witness: Vec::new(),
    })
}

/// Weighted component order connectivity on a complete graph: feasible
/// iff some `X` has `w(V) - l <= w(X) <= k`, decided by a subset-sum table
/// of size `O(min(k, w(V)) n)`.
pub fn solve_wcoc_complete(g: &WeightedGraph, k: Weight, l: Weight) -> Result<Option<Vec<usize>>> {
    check_complete(g)?;
    let target = g.total_weight().saturating_sub(l);
    if target > k {
        return Ok(None);
    }
    let x = minsup(g.weights(), target)?;
    Ok((g.weight_of(&x) <= k).then_some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::graph::verify_wcoc;
    use crate::oracle::Oracle;

    #[test]
    fn split_examples() {
        let sol = solve_vi_split(&WeightedGraph::star(3)).unwrap();
        assert_eq!((sol.iota, sol.witness), (2, vec![0]));
        for n in 1..=6 {
            let k = WeightedGraph::complete(vec![1; n]).unwrap();
            assert_eq!(solve_vi_split(&k).unwrap().iota, n as Weight);
        }
        let sol = solve_vi_split(&WeightedGraph::unit(4, []).unwrap()).unwrap();
        assert_eq!((sol.iota, sol.witness), (1, vec![]));
        assert_eq!(solve_vi_split(&WeightedGraph::unit(0, []).unwrap()).unwrap().iota, 0);
    }

    #[test]
    fn split_errors() {
        assert_eq!(solve_vi_split(&WeightedGraph::cycle(4)), Err(Error::NotSplit));
        let weighted = WeightedGraph::complete(vec![1, 2]).unwrap();
        assert!(matches!(
            solve_vi_split(&weighted),
            Err(Error::NonUnitWeight { vertex: 1, weight: 2 })
        ));
    }

    #[test]
    fn split_matches_oracle() {
        let o = Oracle::default();
        for seed in 0..120 {
            let mut rng = generate::rng(seed);
            let g = generate::random_split_graph(&mut rng, 1 + seed as usize % 9, 0.4);
            let got = solve_vi_split(&g).unwrap();
            assert_eq!(got.iota, o.wvi(&g).unwrap().iota, "{g:?}");
            assert_eq!(crate::graph::Certificate::evaluate(&g, &got.witness).unwrap().integrity(), got.iota);
        }
    }

    #[test]
    fn complete_wvi_examples() {
        let g = WeightedGraph::complete(vec![1, 2, 3]).unwrap();
        assert_eq!(solve_wvi_complete(&g).unwrap().iota, 6);
        assert_eq!(solve_wvi_complete(&WeightedGraph::complete(vec![9]).unwrap()).unwrap().iota, 9);
        assert_eq!(solve_wvi_complete(&WeightedGraph::complete(vec![1, 1]).unwrap()).unwrap().iota, 2);
        assert_eq!(
            solve_wvi_complete(&WeightedGraph::path(3)),
            Err(Error::NotComplete(0, 2))
        );
    }

    #[test]
    fn complete_wcoc_examples() {
        let g = WeightedGraph::complete(vec![1, 2, 3]).unwrap();
        let x = solve_wcoc_complete(&g, 3, 3).unwrap().unwrap();
        assert_eq!(g.weight_of(&x), 3);
        assert!(verify_wcoc(&g, 3, 3, &x).is_ok());
        let k2 = WeightedGraph::complete(vec![1, 1]).unwrap();
        assert_eq!(solve_wcoc_complete(&k2, 0, 2).unwrap(), Some(vec![]));
        let k3 = WeightedGraph::complete(vec![1, 1, 1]).unwrap();
        assert_eq!(solve_wcoc_complete(&k3, 0, 2).unwrap(), None);
    }

    #[test]
    fn complete_wcoc_matches_oracle() {
        use rand::Rng;
        let o = Oracle::default();
        for seed in 0..80 {
            let mut rng = generate::rng(seed);
            let n = rng.gen_range(1..=9);
            let w: Vec<Weight> = (0..n).map(|_| rng.gen_range(1..=8)).collect();
            let g = WeightedGraph::complete(w).unwrap();
            let l = rng.gen_range(0..=g.total_weight());
            let kmin = o.wcoc(&g, l).unwrap().kmin;
            for k in kmin.saturating_sub(1)..=kmin + 1 {
                let got = solve_wcoc_complete(&g, k, l).unwrap();
                assert_eq!(got.is_some(), kmin <= k);
                if let Some(x) = got {
                    assert!(verify_wcoc(&g, k, l, &x).is_ok());
                }
            }
        }
    }
}
