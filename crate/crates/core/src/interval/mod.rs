//! Component order connectivity on interval graphs by dynamic programming
//! over the clique path, plus vertex integrity through the `k + l = p`
//! decomposition.
//!
//! Notation follows the usual clique-path conventions: `K_0..K_{t+1}` are
//! the maximal cliques padded with empty sets, `S_i = K_i ∩ K_{i+1}` and
//! `V_{i,j}` is the set of vertices strictly between `S_i` and `S_j`.
//! A vertex `v` lies in `V_{i,j}` exactly when every clique containing it
//! has index in `i+1..=j`, so `V_{i,j}` grows as `i` decreases.

mod model;
pub mod subset_sum;

pub use model::{CliquePath, Interval, IntervalModel};
pub use subset_sum::{maxinf, minsup};

use crate::error::{Error, Result};
use crate::graph::{Weight, WeightedGraph};

/// How `Y_{i,j}` is chosen inside `V_{i,j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetRoute {
    /// Lightest subset of weight at least `w(V_{i,j}) - l`.
    MinSup,
    /// Complement of the heaviest subset of weight at most `l`.
    MaxInf,
}

impl SubsetRoute {
    /// The cheaper table for the given parameters.
    pub fn for_params(k: Weight, l: Weight) -> Self {
        if k <= l {
            SubsetRoute::MinSup
        } else {
            SubsetRoute::MaxInf
        }
    }

    /// Indices of the deleted part `Y` among `weights`.
    pub fn select(self, weights: &[Weight], l: Weight) -> Result<Vec<usize>> {
        let total: Weight = weights.iter().sum();
        match self {
            SubsetRoute::MinSup => minsup(weights, total.saturating_sub(l)),
            SubsetRoute::MaxInf => {
                let kept = maxinf(weights, l.min(total))?;
                Ok(subset_sum::complement(&kept, weights.len()))
            }
        }
    }
}

/// Final state of the weighted table. `dpt[q]` is the cheapest deletion set
/// of `G_q` containing `S_q`, capped at `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpState {
    pub dpt: Vec<Weight>,
    /// For each improved `j`: the minimizing `i` and `Y_{i,j}`.
    pub choice: Vec<Option<(usize, Vec<usize>)>>,
}

/// Interval instance after dropping zero-weight vertices.
#[derive(Debug, Clone)]
pub struct PreparedInterval {
    pub graph: WeightedGraph,
    /// `origin[new] = old`.
    pub origin: Vec<usize>,
    pub zero_weight: Vec<usize>,
    pub path: CliquePath,
}

impl PreparedInterval {
    pub fn new(g: &WeightedGraph, model: &IntervalModel) -> Result<Self> {
        model.check_matches(g)?;
        let zero_weight: Vec<usize> = (0..g.len()).filter(|&v| g.weight(v) == 0).collect();
        let sub = g.delete(&zero_weight)?;
        let path = CliquePath::from_model(&model.restrict(&sub.origin));
        Ok(PreparedInterval {
            graph: sub.graph,
            origin: sub.origin,
            zero_weight,
            path,
        })
    }

    /// Runs the table with an explicit subset route.
    pub fn table(&self, k: Weight, l: Weight, route: SubsetRoute) -> Result<DpState> {
        let g = &self.graph;
        let cp = &self.path;
        let t = cp.t();
        let cap = k.checked_add(1).ok_or(Error::ParameterOverflow)?;
        let guard = k.checked_add(l).ok_or(Error::ParameterOverflow)?;
        let starts = cp.starting_at();

        let mut dpt = vec![cap; t + 1];
        dpt[0] = 0;
        let mut choice = vec![None; t + 1];
        for j in 1..=t {
            // S_j bucketed by first clique; a vertex of S_j is outside S_i iff
            // its first clique comes after i
            let mut sep_by_first: Vec<(usize, Weight)> = cp
                .separator(j)
                .iter()
                .map(|&v| (cp.first_clique(v), g.weight(v)))
                .collect();
            sep_by_first.sort_unstable_by_key(|e| std::cmp::Reverse(e.0));
            let mut sep_cursor = 0;
            let mut sep_diff: Weight = 0;

            let mut between: Vec<usize> = Vec::new();
            let mut between_weight: Weight = 0;
            for i in (0..j).rev() {
                for &v in &starts[i + 1] {
                    if cp.last_clique(v) <= j {
                        between.push(v);
                        between_weight += g.weight(v);
                    }
                }
                while sep_cursor < sep_by_first.len() && sep_by_first[sep_cursor].0 > i {
                    sep_diff += sep_by_first[sep_cursor].1;
                    sep_cursor += 1;
                }
                // w(V_{i,j}) only grows from here on
                if between_weight > guard {
                    break;
                }
                let weights: Vec<Weight> = between.iter().map(|&v| g.weight(v)).collect();
                let picked = route.select(&weights, l)?;
                let y_weight: Weight = picked.iter().map(|&p| weights[p]).sum();
                let candidate = dpt[i] + y_weight + sep_diff;
                if candidate < dpt[j] {
                    dpt[j] = candidate;
                    let mut y: Vec<usize> = picked.iter().map(|&p| between[p]).collect();
                    y.sort_unstable();
                    choice[j] = Some((i, y));
                }
            }
        }
        Ok(DpState { dpt, choice })
    }

    /// `X_q = X_r ∪ S_q ∪ Y_{r,q}` along the back-pointers from `t`, in ids
    /// of the prepared graph.
    fn chain(&self, state: &DpState) -> Vec<usize> {
        let mut x = Vec::new();
        let mut q = self.path.t();
        while q > 0 {
            let (r, y) = state.choice[q]
                .as_ref()
                .expect("a finite entry always has a back-pointer");
            x.extend_from_slice(self.path.separator(q));
            x.extend_from_slice(y);
            q = *r;
        }
        x
    }

    fn lift(&self, local: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = local.iter().map(|&v| self.origin[v]).collect();
        out.extend_from_slice(&self.zero_weight);
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn solve(&self, k: Weight, l: Weight, route: SubsetRoute) -> Result<Option<Vec<usize>>> {
        let state = self.table(k, l, route)?;
        let t = self.path.t();
        if state.dpt[t] > k {
            return Ok(None);
        }
        Ok(Some(self.lift(&self.chain(&state))))
    }
}

/// Weighted component order connectivity on an interval graph. Returns a
/// deletion set of weight at most `k` leaving components of weight at most
/// `l`, or `None` if no such set exists.
pub fn solve_wcoc_interval(
    g: &WeightedGraph,
    model: &IntervalModel,
    k: Weight,
    l: Weight,
) -> Result<Option<Vec<usize>>> {
    PreparedInterval::new(g, model)?.solve(k, l, SubsetRoute::for_params(k, l))
}

/// Vertex integrity on an interval graph: tries every split `k + l = p`
/// with `k = 0, 1, ...` and returns the first accepted one with its witness.
pub fn solve_vi_interval(
    g: &WeightedGraph,
    model: &IntervalModel,
    p: Weight,
) -> Result<Option<ViSplit>> {
    let prepared = PreparedInterval::new(g, model)?;
    // any l >= w(V) accepts with X = ∅, so larger l add nothing
    let top = p.min(g.total_weight());
    for l in (0..=top).rev() {
        let k = p - l;
        if let Some(witness) = prepared.solve(k, l, SubsetRoute::for_params(k, l))? {
            return Ok(Some(ViSplit { k, l, witness }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViSplit {
    pub k: Weight,
    pub l: Weight,
    pub witness: Vec<usize>,
}

/// `|V_{i,j}|` and `|S_j \ S_i|` for one pair of the unit-weight table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairCounts {
    pub between: usize,
    pub sep_diff: usize,
}

/// Visits every pair `0 <= i < j <= t` (by increasing `j`, then decreasing
/// `i`) with its counts, in `O(n + t^2)` total beyond the clique path.
///
/// Uses `|V_{i,j}| = |K_{i+1} ∪ .. ∪ K_j| - |S_i| - |S_j| + |S_i ∩ S_j|`,
/// `|S_j \ S_i| = |S_j| - |S_i ∩ S_j|`, the prefix-union identity
/// `|K_{i+1} ∪ .. ∪ K_j| = |K_0 ∪ .. ∪ K_j| - |K_0 ∪ .. ∪ K_i| + |S_i|`, and
/// `|S_i ∩ S_j| = |S_i ∩ S_{j-1}| - |{v ∈ S_i : L(v) = j}|`.
pub fn for_each_unit_pair(cp: &CliquePath, mut visit: impl FnMut(usize, usize, PairCounts)) {
    let t = cp.t();
    let n = cp.vertex_count();
    let sep: Vec<usize> = (0..=t).map(|i| cp.separator(i).len()).collect();

    // prefix_union[i] = |K_0 ∪ .. ∪ K_i|
    let mut first_count = vec![0usize; t + 2];
    let mut ending_at = vec![Vec::new(); t + 2];
    for v in 0..n {
        first_count[cp.first_clique(v)] += 1;
        ending_at[cp.last_clique(v)].push(v);
    }
    let mut prefix_union = vec![0usize; t + 1];
    let mut acc = 0;
    for i in 0..=t {
        acc += first_count[i];
        prefix_union[i] = acc;
    }

    // inter[i] = |S_i ∩ S_j| for the current j
    let mut inter = vec![0usize; t + 1];
    for j in 1..=t {
        inter[j - 1] = sep[j - 1];
        for &v in &ending_at[j] {
            // v ∈ S_i exactly for first(v) <= i < L(v) = j
            for slot in &mut inter[cp.first_clique(v)..j] {
                *slot -= 1;
            }
        }
        for i in (0..j).rev() {
            let union = prefix_union[j] - prefix_union[i] + sep[i];
            visit(
                i,
                j,
                PairCounts {
                    between: union + inter[i] - sep[i] - sep[j],
                    sep_diff: sep[j] - inter[i],
                },
            );
        }
    }
}

/// Materialized `|V_{i,j}|` and `|S_j \ S_i|`, indexed `[j][i]` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitTables {
    pub between: Vec<Vec<usize>>,
    pub sep_diff: Vec<Vec<usize>>,
}

impl UnitTables {
    pub fn compute(cp: &CliquePath) -> Self {
        let t = cp.t();
        let mut between: Vec<Vec<usize>> = (0..=t).map(|j| vec![0; j]).collect();
        let mut sep_diff = between.clone();
        for_each_unit_pair(cp, |i, j, c| {
            between[j][i] = c.between;
            sep_diff[j][i] = c.sep_diff;
        });
        UnitTables { between, sep_diff }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FastOutcome {
    pub yes: bool,
    /// Minimum number of deletions when it is at most `k`.
    pub count: Option<Weight>,
    /// Present only when requested and the answer is yes.
    pub witness: Option<Vec<usize>>,
}

/// Unweighted component order connectivity on an interval graph in
/// `O(n^2)` time: the inner step only needs how many vertices of `V_{i,j}`
/// to delete, not which.
pub fn solve_coc_interval_fast(
    g: &WeightedGraph,
    model: &IntervalModel,
    k: Weight,
    l: Weight,
    materialize: bool,
) -> Result<FastOutcome> {
    g.check_unit_weight()?;
    let cp = CliquePath::build(model, g)?;
    let t = cp.t();
    let cap = k.checked_add(1).ok_or(Error::ParameterOverflow)?;
    let mut dpt = vec![cap; t + 1];
    dpt[0] = 0;
    let mut back = vec![usize::MAX; t + 1];
    for_each_unit_pair(&cp, |i, j, c| {
        let excess = (c.between as Weight).saturating_sub(l);
        let candidate = dpt[i].saturating_add(excess).saturating_add(c.sep_diff as Weight);
        if candidate < dpt[j] {
            dpt[j] = candidate;
            back[j] = i;
        }
    });
    if dpt[t] > k {
        return Ok(FastOutcome {
            yes: false,
            count: None,
            witness: None,
        });
    }
    let witness = materialize.then(|| {
        let mut x = Vec::new();
        let mut q = t;
        while q > 0 {
            let r = back[q];
            let between = cp.between_set(r, q).expect("r < q <= t");
            let excess = between.len().saturating_sub(l as usize);
            x.extend_from_slice(cp.separator(q));
            x.extend_from_slice(&between[..excess]);
            q = r;
        }
        x.sort_unstable();
        x
    });
    Ok(FastOutcome {
        yes: true,
        count: Some(dpt[t]),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::graph::verify_wcoc;
    use crate::oracle::Oracle;

    fn path_model(n: usize) -> IntervalModel {
        IntervalModel::new((0..n as i64).map(|i| (i, i + 1)).collect()).unwrap()
    }

    fn clique_model(n: usize) -> IntervalModel {
        IntervalModel::new((0..n as i64).map(|i| (i, i + n as i64)).collect()).unwrap()
    }

    #[test]
    fn weighted_examples() {
        let p3 = WeightedGraph::path(3);
        let x = solve_wcoc_interval(&p3, &path_model(3), 1, 1).unwrap().unwrap();
        assert_eq!(x, vec![1]);

        let k3 = WeightedGraph::complete(vec![1; 3]).unwrap();
        let x = solve_wcoc_interval(&k3, &clique_model(3), 0, 3).unwrap().unwrap();
        assert!(x.is_empty());

        let p5 = WeightedGraph::path(5);
        let x = solve_wcoc_interval(&p5, &path_model(5), 1, 2).unwrap().unwrap();
        assert_eq!(x, vec![2]);
        assert!(solve_wcoc_interval(&p5, &path_model(5), 0, 2).unwrap().is_none());
    }

    #[test]
    fn zero_weight_vertices_join_the_witness() {
        let g = WeightedGraph::new(vec![1, 0, 1], [(0, 1), (1, 2)]).unwrap();
        let x = solve_wcoc_interval(&g, &path_model(3), 0, 1).unwrap().unwrap();
        assert_eq!(x, vec![1]);
        assert!(verify_wcoc(&g, 0, 1, &x).is_ok());
    }

    #[test]
    fn mismatched_model_is_rejected() {
        let g = WeightedGraph::path(3);
        assert!(matches!(
            solve_wcoc_interval(&g, &clique_model(3), 1, 1),
            Err(Error::ModelMismatch { .. })
        ));
    }

    #[test]
    fn fast_examples() {
        let p3 = WeightedGraph::path(3);
        let out = solve_coc_interval_fast(&p3, &path_model(3), 1, 1, true).unwrap();
        assert_eq!((out.yes, out.count), (true, Some(1)));
        assert!(verify_wcoc(&p3, 1, 1, out.witness.as_ref().unwrap()).is_ok());

        // two deletions leave 7 vertices in at most 3 pieces, so pieces of
        // order 3 are unavoidable
        let p9 = WeightedGraph::path(9);
        assert_eq!(Oracle::default().wcoc(&p9, 2).unwrap().kmin, 3);
        let out = solve_coc_interval_fast(&p9, &path_model(9), 2, 2, true).unwrap();
        assert!(!out.yes);
        let out = solve_coc_interval_fast(&p9, &path_model(9), 2, 3, true).unwrap();
        assert_eq!((out.yes, out.count), (true, Some(2)));
        assert!(verify_wcoc(&p9, 2, 3, out.witness.as_ref().unwrap()).is_ok());

        let k5 = WeightedGraph::complete(vec![1; 5]).unwrap();
        let out = solve_coc_interval_fast(&k5, &clique_model(5), 1, 3, false).unwrap();
        assert!(!out.yes);
        let weighted = WeightedGraph::new(vec![1, 2, 1], [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            solve_coc_interval_fast(&weighted, &path_model(3), 1, 1, false),
            Err(Error::NonUnitWeight { vertex: 1, weight: 2 })
        ));
    }

    #[test]
    fn vi_examples() {
        let p3 = WeightedGraph::path(3);
        let s = solve_vi_interval(&p3, &path_model(3), 2).unwrap().unwrap();
        assert_eq!((s.k, s.l, s.witness), (1, 1, vec![1]));
        let k3 = WeightedGraph::complete(vec![1; 3]).unwrap();
        assert!(solve_vi_interval(&k3, &clique_model(3), 2).unwrap().is_none());
        let one = WeightedGraph::edgeless(vec![1]).unwrap();
        let s = solve_vi_interval(&one, &path_model(1), 1).unwrap().unwrap();
        assert_eq!((s.k, s.l), (0, 1));
    }

    #[test]
    fn routes_pick_equal_weight_subsets() {
        for seed in 0..150 {
            let mut rng = generate::rng(seed);
            let (g, m) = generate::random_interval_instance(&mut rng, 10, 14, 5, 1..=4);
            let cp = CliquePath::build(&m, &g).unwrap();
            for l in 0..6 {
                for j in 1..=cp.t() {
                    for i in 0..j {
                        let v = cp.between_set(i, j).unwrap();
                        let w: Vec<Weight> = v.iter().map(|&x| g.weight(x)).collect();
                        let a = SubsetRoute::MinSup.select(&w, l).unwrap();
                        let b = SubsetRoute::MaxInf.select(&w, l).unwrap();
                        let wa: Weight = a.iter().map(|&p| w[p]).sum();
                        let wb: Weight = b.iter().map(|&p| w[p]).sum();
                        assert_eq!(wa, wb, "seed {seed} pair ({i},{j}) l={l}");
                    }
                }
            }
        }
    }

    #[test]
    fn incremental_between_sets_match_the_formula() {
        for seed in 0..100 {
            let mut rng = generate::rng(1000 + seed);
            let (g, m) = generate::random_interval_instance(&mut rng, 12, 16, 5, 1..=1);
            let cp = CliquePath::build(&m, &g).unwrap();
            let starts = cp.starting_at();
            for j in 1..=cp.t() {
                let mut acc: Vec<usize> = Vec::new();
                for i in (0..j).rev() {
                    acc.extend(starts[i + 1].iter().filter(|&&v| cp.last_clique(v) <= j));
                    let mut sorted = acc.clone();
                    sorted.sort_unstable();
                    assert_eq!(sorted, cp.between_set(i, j).unwrap());
                }
            }
        }
    }

    /// `k_q` by enumerating deletion sets of `G_q` that contain `S_q`.
    fn brute_force_kq(prep: &PreparedInterval, q: usize, l: Weight) -> Weight {
        let cp = &prep.path;
        let mut vq: Vec<usize> = (0..=q).flat_map(|i| cp.clique(i).to_vec()).collect();
        vq.sort_unstable();
        vq.dedup();
        let gq = prep.graph.induced(&vq).unwrap();
        let local = gq.local_ids(prep.graph.len());
        let sep: Vec<usize> = cp.separator(q).iter().map(|&v| local[v].unwrap()).collect();
        let n = gq.graph.len();
        let mut best = Weight::MAX;
        for mask in 0u32..1 << n {
            if sep.iter().any(|&s| mask >> s & 1 == 0) {
                continue;
            }
            let x: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if gq.graph.delete(&x).unwrap().graph.wcc() <= l {
                best = best.min(gq.graph.weight_of(&x));
            }
        }
        best
    }

    #[test]
    fn table_entries_reach_optimality() {
        for seed in 0..120 {
            let mut rng = generate::rng(5000 + seed);
            let (g, m) = generate::random_interval_instance(&mut rng, 9, 12, 4, 1..=3);
            let prep = PreparedInterval::new(&g, &m).unwrap();
            let (k, l) = (seed % 5, seed % 4 + 1);
            for route in [SubsetRoute::MinSup, SubsetRoute::MaxInf] {
                let state = prep.table(k, l, route).unwrap();
                for q in 0..=prep.path.t() {
                    let kq = brute_force_kq(&prep, q, l);
                    assert!(state.dpt[q] <= k + 1);
                    assert_eq!(state.dpt[q], kq.min(k + 1), "seed {seed} q {q}");
                }
            }
        }
    }

    #[test]
    fn weighted_dp_agrees_with_oracle() {
        let oracle = Oracle::default();
        for seed in 0..150 {
            let mut rng = generate::rng(9000 + seed);
            let (g, m) = generate::random_interval_instance(&mut rng, 10, 15, 5, 0..=4);
            let l = seed % 6;
            let kmin = oracle.wcoc(&g, l).unwrap().kmin;
            for k in 0..=6 {
                let got = solve_wcoc_interval(&g, &m, k, l).unwrap();
                assert_eq!(got.is_some(), kmin <= k, "seed {seed} k {k} l {l}");
                if let Some(x) = got {
                    assert!(verify_wcoc(&g, k, l, &x).is_ok());
                }
            }
        }
    }

    #[test]
    fn unit_tables_match_explicit_sets() {
        for seed in 0..100 {
            let mut rng = generate::rng(300 + seed);
            let (g, m) = generate::random_interval_instance(&mut rng, 30, 40, 8, 1..=1);
            let cp = CliquePath::build(&m, &g).unwrap();
            let tables = UnitTables::compute(&cp);
            for j in 1..=cp.t() {
                for i in 0..j {
                    assert_eq!(tables.between[j][i], cp.between_set(i, j).unwrap().len());
                    let si = cp.separator(i);
                    let diff = cp.separator(j).iter().filter(|v| !si.contains(v)).count();
                    assert_eq!(tables.sep_diff[j][i], diff);
                }
            }
        }
    }
}
