use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Weight, WeightedGraph};

/// Closed interval `[lo, hi]` on the integer line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo.max(other.lo) <= self.hi.min(other.hi)
    }
}

/// One interval per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalModel {
    intervals: Vec<Interval>,
}

impl IntervalModel {
    pub fn new(intervals: Vec<(i64, i64)>) -> Result<Self> {
        let intervals = intervals
            .into_iter()
            .enumerate()
            .map(|(vertex, (lo, hi))| {
                if lo > hi {
                    Err(Error::InvalidInterval { vertex, lo, hi })
                } else {
                    Ok(Interval { lo, hi })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntervalModel { intervals })
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn interval(&self, v: usize) -> Interval {
        self.intervals[v]
    }

    /// Intersecting pairs `(u, v)`, `u < v`, sorted.
    pub fn intersecting_pairs(&self) -> Vec<(usize, usize)> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&v| (self.intervals[v].lo, v));
        let mut pairs = Vec::new();
        for (pos, &u) in order.iter().enumerate() {
            let hi = self.intervals[u].hi;
            for &v in order[pos + 1..].iter().take_while(|&&v| self.intervals[v].lo <= hi) {
                pairs.push((u.min(v), u.max(v)));
            }
        }
        pairs.sort_unstable();
        pairs
    }

    pub fn intersection_graph(&self, weights: Vec<Weight>) -> Result<WeightedGraph> {
        if weights.len() != self.len() {
            return Err(Error::ModelLength {
                model: self.len(),
                graph: weights.len(),
            });
        }
        WeightedGraph::new(weights, self.intersecting_pairs())
    }

    /// Fails with the lexicographically first pair on which the model's
    /// intersection graph and `g` disagree.
    pub fn check_matches(&self, g: &WeightedGraph) -> Result<()> {
        if self.len() != g.len() {
            return Err(Error::ModelLength {
                model: self.len(),
                graph: g.len(),
            });
        }
        let mut model_pairs = self.intersecting_pairs().into_iter().peekable();
        let mut graph_pairs = g.edges().peekable();
        loop {
            match (model_pairs.peek().copied(), graph_pairs.peek().copied()) {
                (None, None) => return Ok(()),
                (Some(a), Some(b)) if a == b => {
                    model_pairs.next();
                    graph_pairs.next();
                }
                (Some(a), Some(b)) if a < b => return Err(mismatch(a, false)),
                (Some(a), None) => return Err(mismatch(a, false)),
                (_, Some(b)) => return Err(mismatch(b, true)),
            }
        }
    }

    /// Model of an induced subgraph, `origin[new] = old`.
    pub fn restrict(&self, origin: &[usize]) -> IntervalModel {
        IntervalModel {
            intervals: origin.iter().map(|&v| self.intervals[v]).collect(),
        }
    }
}

fn mismatch((u, v): (usize, usize), in_graph: bool) -> Error {
    Error::ModelMismatch { u, v, in_graph }
}

/// Maximal cliques `K_1..K_t` in clique-path order, padded with empty
/// `K_0` and `K_{t+1}`, and separators `S_i = K_i ∩ K_{i+1}` for `i = 0..=t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliquePath {
    cliques: Vec<Vec<usize>>,
    separators: Vec<Vec<usize>>,
    first: Vec<usize>,
    last: Vec<usize>,
}

impl CliquePath {
    /// Checks the model against `g`, then sweeps it.
    pub fn build(model: &IntervalModel, g: &WeightedGraph) -> Result<Self> {
        model.check_matches(g)?;
        Ok(Self::from_model(model))
    }

    /// Sweeps the endpoints left to right, starts before ends at equal
    /// coordinates. The active set is a maximal clique exactly when an end
    /// event follows at least one start since the previous emission.
    pub fn from_model(model: &IntervalModel) -> Self {
        let n = model.len();
        let mut events: Vec<(i64, u8, usize)> = Vec::with_capacity(2 * n);
        for (v, iv) in model.intervals().iter().enumerate() {
            events.push((iv.lo, 0, v));
            events.push((iv.hi, 1, v));
        }
        events.sort_unstable();

        let mut cliques = vec![Vec::new()];
        let mut active = BTreeSet::new();
        let mut grown = false;
        for (_, kind, v) in events {
            if kind == 0 {
                active.insert(v);
                grown = true;
            } else {
                if grown {
                    cliques.push(active.iter().copied().collect());
                    grown = false;
                }
                active.remove(&v);
            }
        }
        cliques.push(Vec::new());

        let t = cliques.len() - 2;
        let mut first = vec![usize::MAX; n];
        let mut last = vec![0; n];
        for (i, k) in cliques.iter().enumerate() {
            for &v in k {
                first[v] = first[v].min(i);
                last[v] = last[v].max(i);
            }
        }
        let separators = (0..=t)
            .map(|i| {
                cliques[i]
                    .iter()
                    .copied()
                    .filter(|&v| last[v] > i)
                    .collect()
            })
            .collect();
        CliquePath {
            cliques,
            separators,
            first,
            last,
        }
    }

    /// Number of maximal cliques.
    pub fn t(&self) -> usize {
        self.cliques.len() - 2
    }

    /// `K_i` for `0 <= i <= t + 1`.
    pub fn clique(&self, i: usize) -> &[usize] {
        &self.cliques[i]
    }

    /// `S_i` for `0 <= i <= t`.
    pub fn separator(&self, i: usize) -> &[usize] {
        &self.separators[i]
    }

    /// Index of the first clique containing `v`.
    pub fn first_clique(&self, v: usize) -> usize {
        self.first[v]
    }

    /// `L(v)`: index of the last clique containing `v`.
    pub fn last_clique(&self, v: usize) -> usize {
        self.last[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.first.len()
    }

    /// `V_{i,j} = (K_{i+1} ∪ ... ∪ K_j) \ (S_i ∪ S_j)`, sorted.
    pub fn between_set(&self, i: usize, j: usize) -> Result<Vec<usize>> {
        if i >= j || j > self.t() {
            return Err(Error::Precondition(format!(
                "between_set needs 0 <= i < j <= t = {}, got i = {i}, j = {j}",
                self.t()
            )));
        }
        let mut excluded = vec![false; self.vertex_count()];
        for &v in self.separators[i].iter().chain(&self.separators[j]) {
            excluded[v] = true;
        }
        let mut out: Vec<usize> = self.cliques[i + 1..=j]
            .iter()
            .flatten()
            .copied()
            .filter(|&v| !excluded[v])
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Vertices grouped by the index of their first clique.
    pub(crate) fn starting_at(&self) -> Vec<Vec<usize>> {
        let mut buckets = vec![Vec::new(); self.cliques.len()];
        for v in 0..self.vertex_count() {
            buckets[self.first[v]].push(v);
        }
        buckets
    }
}
