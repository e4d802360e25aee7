//! Vertex-weighted simple graphs, component analysis and certificate checks.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Vertex weights and problem parameters.
pub type Weight = u64;

/// Upper bound on the total vertex weight of a graph. Keeping it well below
/// `u64::MAX` lets any sum of two subset weights be formed without overflow.
pub const MAX_TOTAL_WEIGHT: Weight = u64::MAX / 4;

/// Simple undirected graph on vertices `0..n` with non-negative integer
/// weights. Immutable once built; deletion produces a new graph.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    weights: Vec<Weight>,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    total: Weight,
}

impl fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightedGraph")
            .field("weights", &self.weights)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl WeightedGraph {
    pub fn new<I>(weights: Vec<Weight>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = weights.len();
        let mut total: Weight = 0;
        for &w in &weights {
            total = total
                .checked_add(w)
                .filter(|&t| t <= MAX_TOTAL_WEIGHT)
                .ok_or(Error::WeightOverflow)?;
        }
        let mut adj = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            edge_count += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(WeightedGraph {
            weights,
            adj,
            edge_count,
            total,
        })
    }

    /// Unit-weight graph on `n` vertices.
    pub fn unit<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::new(vec![1; n], edges)
    }

    pub fn edgeless(weights: Vec<Weight>) -> Result<Self> {
        Self::new(weights, std::iter::empty())
    }

    pub fn complete(weights: Vec<Weight>) -> Result<Self> {
        let n = weights.len();
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::new(weights, edges)
    }

    /// Unit-weight path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::unit(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    /// Unit-weight cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::unit(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle edges are valid")
    }

    /// Unit-weight star with center 0.
    pub fn star(leaves: usize) -> Self {
        Self::unit(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star edges are valid")
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn weight(&self, v: usize) -> Weight {
        self.weights[v]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn total_weight(&self) -> Weight {
        self.total
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.len() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.len(),
            })
        }
    }

    /// Summed weight of a vertex set. Ids must be in range and distinct.
    pub fn weight_of(&self, set: &[usize]) -> Weight {
        set.iter().map(|&v| self.weights[v]).sum()
    }

    /// `w(N[v])`.
    pub fn closed_neighborhood_weight(&self, v: usize) -> Weight {
        self.weights[v] + self.adj[v].iter().map(|&u| self.weights[u]).sum::<Weight>()
    }

    pub fn is_unit_weight(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn check_unit_weight(&self) -> Result<()> {
        match self.weights.iter().position(|&w| w != 1) {
            None => Ok(()),
            Some(v) => Err(Error::NonUnitWeight {
                vertex: v,
                weight: self.weights[v],
            }),
        }
    }

    /// First non-adjacent pair, if any.
    pub fn missing_edge(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n).find_map(|u| {
            if self.adj[u].len() == n - 1 {
                return None;
            }
            (0..n).find(|&v| v != u && !self.has_edge(u, v)).map(|v| (u.min(v), u.max(v)))
        })
    }

    pub fn is_complete(&self) -> bool {
        self.missing_edge().is_none()
    }

    /// Connected components, each sorted, ordered by smallest vertex id.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Weight of a heaviest component; 0 for the empty graph.
    pub fn wcc(&self) -> Weight {
        self.components()
            .iter()
            .map(|c| self.weight_of(c))
            .max()
            .unwrap_or(0)
    }

    /// `G - X`, together with the map from new ids back to ids of `self`.
    pub fn delete(&self, x: &[usize]) -> Result<Subgraph> {
        let mut removed = vec![false; self.len()];
        for &v in x {
            self.check_vertex(v)?;
            removed[v] = true;
        }
        Ok(self.retain(|v| !removed[v]))
    }

    /// Induced subgraph on the given vertices.
    pub fn induced(&self, keep: &[usize]) -> Result<Subgraph> {
        let mut kept = vec![false; self.len()];
        for &v in keep {
            self.check_vertex(v)?;
            kept[v] = true;
        }
        Ok(self.retain(|v| kept[v]))
    }

    fn retain(&self, keep: impl Fn(usize) -> bool) -> Subgraph {
        let origin: Vec<usize> = (0..self.len()).filter(|&v| keep(v)).collect();
        let mut local = vec![usize::MAX; self.len()];
        for (new, &old) in origin.iter().enumerate() {
            local[old] = new;
        }
        let weights = origin.iter().map(|&v| self.weights[v]).collect::<Vec<_>>();
        let mut adj = vec![Vec::new(); origin.len()];
        let mut edge_count = 0;
        for (new, &old) in origin.iter().enumerate() {
            adj[new] = self.adj[old]
                .iter()
                .filter(|&&u| local[u] != usize::MAX)
                .map(|&u| local[u])
                .collect();
            edge_count += adj[new].len();
        }
        let total = weights.iter().sum();
        Subgraph {
            graph: WeightedGraph {
                weights,
                adj,
                edge_count: edge_count / 2,
                total,
            },
            origin,
        }
    }

    /// Same vertices and edges with different weights.
    pub fn with_weights(&self, weights: Vec<Weight>) -> Result<Self> {
        if weights.len() != self.len() {
            return Err(Error::Precondition(format!(
                "expected {} weights, got {}",
                self.len(),
                weights.len()
            )));
        }
        Self::new(weights, self.edges())
    }

    /// Complement graph, weights kept.
    pub fn complement(&self) -> Self {
        let n = self.len();
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v))
            .collect();
        Self::new(self.weights.clone(), edges).expect("complement of a valid graph is valid")
    }

    /// Whether `N(v)` is a clique.
    pub fn is_simplicial(&self, v: usize) -> Result<bool> {
        self.check_vertex(v)?;
        let nb = &self.adj[v];
        Ok(nb
            .iter()
            .enumerate()
            .all(|(i, &a)| nb[i + 1..].iter().all(|&b| self.has_edge(a, b))))
    }

    /// Split partition from the degree-sequence criterion: with degrees
    /// sorted non-increasingly, `m = max{i : d_i >= i - 1}` and the graph is
    /// split iff `sum_{i<=m} d_i = m(m-1) + sum_{i>m} d_i`. The clique side
    /// is the `m` highest-degree vertices (ties by id), less one vertex with
    /// no neighbor on the independent side when such a vertex exists and
    /// that side is non-empty.
    pub fn split_partition(&self) -> Option<SplitPartition> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(self.degree(v)), v));
        let m = (1..=n)
            .filter(|&i| self.degree(order[i - 1]) + 1 >= i)
            .max()
            .unwrap_or(0);
        let head: usize = order[..m].iter().map(|&v| self.degree(v)).sum();
        let tail: usize = order[m..].iter().map(|&v| self.degree(v)).sum();
        if head != m * m.saturating_sub(1) + tail {
            return None;
        }
        let mut clique = order[..m].to_vec();
        let mut independent = order[m..].to_vec();
        // a clique vertex without neighbors in I can be moved across; do so
        // once, so that for instance a star keeps only its center in C
        if !independent.is_empty() {
            let in_i = |v: &usize| independent.contains(v);
            if let Some(pos) = clique
                .iter()
                .rposition(|&u| !self.neighbors(u).iter().any(in_i))
            {
                independent.push(clique.remove(pos));
            }
        }
        clique.sort_unstable();
        independent.sort_unstable();
        let partition = SplitPartition {
            clique,
            independent,
        };
        debug_assert!(partition.is_valid_for(self));
        Some(partition)
    }
}

/// Result of deleting vertices: the new graph plus `origin[new] = old`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: WeightedGraph,
    pub origin: Vec<usize>,
}

impl Subgraph {
    /// Maps local ids to ids of the parent graph.
    pub fn to_parent(&self, set: &[usize]) -> Vec<usize> {
        set.iter().map(|&v| self.origin[v]).collect()
    }

    /// `old -> new` map over the parent's vertices.
    pub fn local_ids(&self, parent_len: usize) -> Vec<Option<usize>> {
        let mut local = vec![None; parent_len];
        for (new, &old) in self.origin.iter().enumerate() {
            local[old] = Some(new);
        }
        local
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPartition {
    pub clique: Vec<usize>,
    pub independent: Vec<usize>,
}

impl SplitPartition {
    pub fn is_valid_for(&self, g: &WeightedGraph) -> bool {
        let mut seen = vec![0u8; g.len()];
        for &v in self.clique.iter().chain(&self.independent) {
            if v >= g.len() {
                return false;
            }
            seen[v] += 1;
        }
        if seen.iter().any(|&c| c != 1) {
            return false;
        }
        let clique_ok = self
            .clique
            .iter()
            .enumerate()
            .all(|(i, &a)| self.clique[i + 1..].iter().all(|&b| g.has_edge(a, b)));
        let indep_ok = self
            .independent
            .iter()
            .enumerate()
            .all(|(i, &a)| self.independent[i + 1..].iter().all(|&b| !g.has_edge(a, b)));
        clique_ok && indep_ok
    }
}

/// A deletion set together with its recomputed objective values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub deleted: Vec<usize>,
    /// `w(X)`.
    pub deleted_weight: Weight,
    /// `w_cc(G - X)`.
    pub wcc: Weight,
}

impl Certificate {
    /// Evaluates `X` on `g`. Duplicates in `x` are ignored.
    pub fn evaluate(g: &WeightedGraph, x: &[usize]) -> Result<Self> {
        let deleted: Vec<usize> = x.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let rest = g.delete(&deleted)?;
        Ok(Certificate {
            deleted_weight: g.weight_of(&deleted),
            wcc: rest.graph.wcc(),
            deleted,
        })
    }

    /// `w(X) + w_cc(G - X)`.
    pub fn integrity(&self) -> Weight {
        self.deleted_weight + self.wcc
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    UnknownVertex(usize),
    /// `w(X) + w_cc(G - X) > p`.
    Integrity { value: Weight, bound: Weight },
    /// `w(X) > k`.
    Budget { value: Weight, bound: Weight },
    /// `w_cc(G - X) > l`.
    ComponentWeight { value: Weight, bound: Weight },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownVertex(v) => write!(f, "vertex {v} does not exist"),
            Violation::Integrity { value, bound } => {
                write!(f, "w(X) + w_cc(G-X) = {value} exceeds p = {bound}")
            }
            Violation::Budget { value, bound } => write!(f, "w(X) = {value} exceeds k = {bound}"),
            Violation::ComponentWeight { value, bound } => {
                write!(f, "w_cc(G-X) = {value} exceeds l = {bound}")
            }
        }
    }
}

/// Why a certificate was refused; carries the recomputed values when the
/// vertex set itself was well-formed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub certificate: Option<Certificate>,
    pub violations: Vec<Violation>,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

impl std::error::Error for Rejection {}

fn evaluate_or_reject(g: &WeightedGraph, x: &[usize]) -> std::result::Result<Certificate, Rejection> {
    if let Some(&v) = x.iter().find(|&&v| v >= g.len()) {
        return Err(Rejection {
            certificate: None,
            violations: vec![Violation::UnknownVertex(v)],
        });
    }
    Ok(Certificate::evaluate(g, x).expect("ids checked above"))
}

/// Accepts `X` iff `w(X) + w_cc(G - X) <= p`.
pub fn verify_wvi(
    g: &WeightedGraph,
    p: Weight,
    x: &[usize],
) -> std::result::Result<Certificate, Rejection> {
    let cert = evaluate_or_reject(g, x)?;
    if cert.integrity() <= p {
        Ok(cert)
    } else {
        Err(Rejection {
            violations: vec![Violation::Integrity {
                value: cert.integrity(),
                bound: p,
            }],
            certificate: Some(cert),
        })
    }
}

/// Accepts `X` iff `w(X) <= k` and `w_cc(G - X) <= l`.
pub fn verify_wcoc(
    g: &WeightedGraph,
    k: Weight,
    l: Weight,
    x: &[usize],
) -> std::result::Result<Certificate, Rejection> {
    let cert = evaluate_or_reject(g, x)?;
    let mut violations = Vec::new();
    if cert.deleted_weight > k {
        violations.push(Violation::Budget {
            value: cert.deleted_weight,
            bound: k,
        });
    }
    if cert.wcc > l {
        violations.push(Violation::ComponentWeight {
            value: cert.wcc,
            bound: l,
        });
    }
    if violations.is_empty() {
        Ok(cert)
    } else {
        Err(Rejection {
            certificate: Some(cert),
            violations,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p3() -> WeightedGraph {
        WeightedGraph::path(3)
    }

    #[test]
    fn rejects_malformed_edges() {
        assert_eq!(
            WeightedGraph::unit(2, [(0, 0)]).unwrap_err(),
            Error::SelfLoop(0)
        );
        assert_eq!(
            WeightedGraph::unit(2, [(0, 1), (1, 0)]).unwrap_err(),
            Error::DuplicateEdge(0, 1)
        );
        assert_eq!(
            WeightedGraph::unit(2, [(0, 2)]).unwrap_err(),
            Error::VertexOutOfRange { vertex: 2, n: 2 }
        );
        assert_eq!(
            WeightedGraph::edgeless(vec![MAX_TOTAL_WEIGHT, 1]).unwrap_err(),
            Error::WeightOverflow
        );
    }

    #[test]
    fn components_examples() {
        assert!(WeightedGraph::unit(0, []).unwrap().components().is_empty());
        assert_eq!(
            WeightedGraph::unit(3, []).unwrap().components(),
            vec![vec![0], vec![1], vec![2]]
        );
        let g = WeightedGraph::unit(4, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn wcc_examples() {
        assert_eq!(WeightedGraph::unit(0, []).unwrap().wcc(), 0);
        assert_eq!(WeightedGraph::edgeless(vec![5]).unwrap().wcc(), 5);
        let g = WeightedGraph::new(vec![1, 2, 3], [(0, 1)]).unwrap();
        assert_eq!(g.wcc(), 3);
    }

    #[test]
    fn delete_examples() {
        let g = p3();
        assert_eq!(g.delete(&[]).unwrap().graph, g);
        let tri = WeightedGraph::complete(vec![1; 3]).unwrap();
        let sub = tri.delete(&[1]).unwrap();
        assert_eq!(sub.graph, WeightedGraph::path(2));
        assert_eq!(sub.origin, vec![0, 2]);
        let sub = g.delete(&[1]).unwrap();
        assert_eq!(sub.graph, WeightedGraph::unit(2, []).unwrap());
        assert!(g.delete(&[3]).is_err());
    }

    #[test]
    fn simplicial_examples() {
        let g = p3();
        assert!(g.is_simplicial(0).unwrap());
        assert!(!g.is_simplicial(1).unwrap());
        let k4 = WeightedGraph::complete(vec![1; 4]).unwrap();
        assert!((0..4).all(|v| k4.is_simplicial(v).unwrap()));
        assert!(g.is_simplicial(9).is_err());
    }

    #[test]
    fn split_examples() {
        let star = WeightedGraph::star(3);
        let sp = star.split_partition().unwrap();
        assert_eq!(sp.clique, vec![0]);
        assert_eq!(sp.independent, vec![1, 2, 3]);
        let k3 = WeightedGraph::complete(vec![1; 3]).unwrap();
        let sp = k3.split_partition().unwrap();
        assert_eq!(sp.clique, vec![0, 1, 2]);
        assert!(sp.independent.is_empty());
        assert!(WeightedGraph::cycle(4).split_partition().is_none());
        assert!(WeightedGraph::cycle(5).split_partition().is_none());
    }

    #[test]
    fn verify_examples() {
        let g = p3();
        assert_eq!(verify_wvi(&g, 2, &[1]).unwrap().integrity(), 2);
        let rej = verify_wvi(&g, 1, &[1]).unwrap_err();
        assert_eq!(
            rej.violations,
            vec![Violation::Integrity { value: 2, bound: 1 }]
        );
        assert!(verify_wvi(&g, g.total_weight(), &[]).is_ok());

        assert!(verify_wcoc(&g, 1, 1, &[1]).is_ok());
        let rej = verify_wcoc(&g, 0, 1, &[]).unwrap_err();
        assert_eq!(
            rej.violations,
            vec![Violation::ComponentWeight { value: 3, bound: 1 }]
        );
        let rej = verify_wcoc(&g, 0, 0, &[0]).unwrap_err();
        assert_eq!(rej.violations.len(), 2);
        assert!(verify_wcoc(&WeightedGraph::unit(4, []).unwrap(), 0, 1, &[]).is_ok());
        assert_eq!(
            verify_wvi(&g, 5, &[7]).unwrap_err().violations,
            vec![Violation::UnknownVertex(7)]
        );
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = WeightedGraph> {
        (0..=max_n).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            (
                proptest::collection::vec(0u64..5, n),
                proptest::collection::vec(any::<bool>(), pairs),
            )
                .prop_map(move |(w, mask)| {
                    let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                    let edges = all.zip(mask).filter(|(_, b)| *b).map(|(e, _)| e);
                    WeightedGraph::new(w, edges.collect::<Vec<_>>()).unwrap()
                })
        })
    }

    fn exhaustive_split(g: &WeightedGraph) -> bool {
        let n = g.len();
        (0u32..1 << n).any(|mask| {
            let clique: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let independent: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 0).collect();
            SplitPartition {
                clique,
                independent,
            }
            .is_valid_for(g)
        })
    }

    proptest! {
        #[test]
        fn components_partition_vertices(g in arb_graph(10)) {
            let comps = g.components();
            let mut owner = vec![usize::MAX; g.len()];
            for (i, c) in comps.iter().enumerate() {
                for &v in c {
                    prop_assert_eq!(owner[v], usize::MAX);
                    owner[v] = i;
                }
                let sub = g.induced(c).unwrap();
                prop_assert_eq!(sub.graph.components().len(), 1);
            }
            prop_assert!(owner.iter().all(|&o| o != usize::MAX));
            for (u, v) in g.edges() {
                prop_assert_eq!(owner[u], owner[v]);
            }
        }

        #[test]
        fn deletion_never_grows_wcc(g in arb_graph(10), mask in any::<u16>()) {
            let x: Vec<usize> = (0..g.len()).filter(|&v| mask >> v & 1 == 1).collect();
            prop_assert!(g.delete(&x).unwrap().graph.wcc() <= g.wcc());
        }

        #[test]
        fn split_matches_exhaustive_search(g in arb_graph(7)) {
            let found = g.split_partition();
            prop_assert_eq!(found.is_some(), exhaustive_split(&g));
            if let Some(sp) = found {
                prop_assert!(sp.is_valid_for(&g));
            }
        }

        #[test]
        fn verify_matches_definition(g in arb_graph(9), mask in any::<u16>(), p in 0u64..20) {
            let x: Vec<usize> = (0..g.len()).filter(|&v| mask >> v & 1 == 1).collect();
            let keep: Vec<usize> = (0..g.len()).filter(|&v| mask >> v & 1 == 0).collect();
            // recompute through the induced-subgraph route
            let rest = g.induced(&keep).unwrap().graph;
            let objective = x.iter().map(|&v| g.weight(v)).sum::<u64>() + rest.wcc();
            prop_assert_eq!(verify_wvi(&g, p, &x).is_ok(), objective <= p);
        }
    }
}
