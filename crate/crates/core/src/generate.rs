//! Seeded random instances for tests and benchmarks.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Weight, WeightedGraph};
use crate::interval::IntervalModel;

pub type InstanceRng = ChaCha8Rng;

pub fn rng(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_weights(rng: &mut InstanceRng, n: usize, weights: &RangeInclusive<Weight>) -> Vec<Weight> {
    (0..n).map(|_| rng.gen_range(weights.clone())).collect()
}

/// Erdős–Rényi graph with independent edge probability `density`.
pub fn random_graph(
    rng: &mut InstanceRng,
    n: usize,
    density: f64,
    weights: RangeInclusive<Weight>,
) -> WeightedGraph {
    let w = random_weights(rng, n, &weights);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    WeightedGraph::new(w, edges).expect("generated edges are simple")
}

/// Random closed intervals with integer endpoints in `0..span` and lengths
/// in `0..=max_len`.
pub fn random_interval_model(
    rng: &mut InstanceRng,
    n: usize,
    span: i64,
    max_len: i64,
) -> IntervalModel {
    let intervals = (0..n)
        .map(|_| {
            let lo = rng.gen_range(0..span.max(1));
            (lo, lo + rng.gen_range(0..=max_len))
        })
        .collect();
    IntervalModel::new(intervals).expect("lo <= hi by construction")
}

/// Interval model together with its intersection graph.
pub fn random_interval_instance(
    rng: &mut InstanceRng,
    n: usize,
    span: i64,
    max_len: i64,
    weights: RangeInclusive<Weight>,
) -> (WeightedGraph, IntervalModel) {
    let model = random_interval_model(rng, n, span, max_len);
    let w = random_weights(rng, n, &weights);
    let g = model.intersection_graph(w).expect("weights fit");
    (g, model)
}

/// Random split graph: a clique of random size, the remaining vertices
/// independent, each attached to a random subset of the clique. Vertex
/// ids are shuffled so the clique is not a prefix.
pub fn random_split_graph(rng: &mut InstanceRng, n: usize, attach: f64) -> WeightedGraph {
    let clique_size = rng.gen_range(0..=n);
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    let (clique, independent) = ids.split_at(clique_size);
    let mut edges = Vec::new();
    for (i, &a) in clique.iter().enumerate() {
        for &b in &clique[i + 1..] {
            edges.push((a, b));
        }
    }
    for &v in independent {
        for &c in clique {
            if rng.gen_bool(attach) {
                edges.push((v, c));
            }
        }
    }
    WeightedGraph::unit(n, edges).expect("generated edges are simple")
}

/// Random bipartite graph with sides `0..a` and `a..a+b`.
pub fn random_bipartite(
    rng: &mut InstanceRng,
    a: usize,
    b: usize,
    density: f64,
) -> (WeightedGraph, Vec<usize>, Vec<usize>) {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    let g = WeightedGraph::unit(a + b, edges).expect("generated edges are simple");
    (g, (0..a).collect(), (a..a + b).collect())
}

/// Every unit-weight graph on `n` vertices (`2^(n(n-1)/2)` of them).
pub fn all_graphs(n: usize) -> impl Iterator<Item = WeightedGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let count = 1u64 << pairs.len();
    (0..count).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        WeightedGraph::unit(n, edges).expect("distinct pairs")
    })
}
