//! Instance generators for the hardness constructions: Clique, Balanced
//! Complete Bipartite Subgraph and Partition mapped to vertex integrity and
//! component order connectivity on restricted graph classes.
//!
//! All generators compute their parameters with checked arithmetic and
//! report violated preconditions as [`Error::Precondition`].

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{SplitPartition, Weight, WeightedGraph};
use crate::oracle::{check_bipartition, Oracle};

/// Problem parameters carried by a generated instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Params {
    /// Vertex integrity at most `p`.
    Integrity { p: Weight },
    /// Order connectivity with budget `k` and component bound `l`.
    Order { k: Weight, l: Weight },
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Params::Integrity { p } => write!(f, "p={p}"),
            Params::Order { k, l } => write!(f, "k={k} l={l}"),
        }
    }
}

/// Known structure of a generated graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Split(SplitPartition),
    /// Two cliques covering the vertex set.
    CoBipartite { a: Vec<usize>, b: Vec<usize> },
    /// A split graph plus a disjoint clique (chordal).
    SplitPlusClique { split: SplitPartition, clique: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedInstance {
    pub graph: WeightedGraph,
    pub params: Params,
    /// Construction name.
    pub construction: &'static str,
    /// Description of the source instance.
    pub source: String,
    /// Remarks such as degenerate cases.
    pub notes: Vec<String>,
    pub structure: Structure,
}

fn binom2(k: u64) -> Result<u64> {
    k.checked_mul(k.saturating_sub(1))
        .map(|x| x / 2)
        .ok_or(Error::ParameterOverflow)
}

fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

fn describe(g: &WeightedGraph) -> String {
    format!("n={} m={}", g.len(), g.edge_count())
}

/// Incidence split graph: a clique on `0..n` (one vertex per vertex of
/// `g`) and an independent vertex `n + i` for the `i`-th edge in
/// lexicographic order, adjacent to both endpoints. Unit weights.
pub fn incidence_split_graph(g: &WeightedGraph) -> (WeightedGraph, SplitPartition) {
    let n = g.len();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    for (i, (u, v)) in g.edges().enumerate() {
        edges.push((u, n + i));
        edges.push((v, n + i));
    }
    let total = n + g.edge_count();
    let gstar = WeightedGraph::unit(total, edges).expect("incidence edges are simple");
    let partition = SplitPartition {
        clique: (0..n).collect(),
        independent: (n..total).collect(),
    };
    (gstar, partition)
}

/// Clique to component order connectivity on split graphs:
/// `(G*, k, n + m - C(k,2) - k)`, for `1 <= k < n`.
///
/// The component bound must account for the `k` deleted clique vertices:
/// with `l = n + m - C(k,2)` the path on four vertices and `k = 3` would
/// map to a yes-instance (delete three clique vertices, leaving components
/// of order at most 2) although it has no triangle.
pub fn reduce_clique_to_coc_split(g: &WeightedGraph, k: usize) -> Result<ReducedInstance> {
    let n = g.len();
    if k == 0 || k >= n {
        return Err(precondition(format!("need 1 <= k < n, got k={k}, n={n}")));
    }
    let size = (n + g.edge_count()) as u64;
    let l = size
        .checked_sub(binom2(k as u64)?)
        .and_then(|x| x.checked_sub(k as u64))
        .ok_or_else(|| precondition("n + m - C(k,2) - k is negative"))?;
    let (graph, partition) = incidence_split_graph(g);
    Ok(ReducedInstance {
        graph,
        params: Params::Order { k: k as Weight, l },
        construction: "clique-coc-split",
        source: format!("clique {} k={k}", describe(g)),
        notes: Vec::new(),
        structure: Structure::Split(partition),
    })
}

fn check_clique_source(g: &WeightedGraph, k: usize, allow_k_eq_n: bool) -> Result<(u64, u64)> {
    let n = g.len();
    let ok = if allow_k_eq_n { k <= n } else { k < n };
    if !ok {
        return Err(precondition(format!(
            "need k {} n, got k={k}, n={n}",
            if allow_k_eq_n { "<=" } else { "<" }
        )));
    }
    let pairs = binom2(k as u64)?;
    let m = g.edge_count() as u64;
    if pairs > m {
        return Err(precondition(format!("need C(k,2) <= m, got {pairs} > {m}")));
    }
    let p = n as u64 + m - pairs;
    Ok((p, p - k as u64))
}

/// Clique to weighted vertex integrity on split graphs: `G*` plus an
/// isolated vertex `z` of weight `n + m - C(k,2) - k`, with
/// `p = n + m - C(k,2)`. Requires `k < n` and `C(k,2) <= m`.
pub fn reduce_clique_to_wvi_split(g: &WeightedGraph, k: usize) -> Result<ReducedInstance> {
    let (p, wz) = check_clique_source(g, k, false)?;
    let (gstar, mut partition) = incidence_split_graph(g);
    let z = gstar.len();
    let mut weights = gstar.weights().to_vec();
    weights.push(wz);
    let graph = WeightedGraph::new(weights, gstar.edges()).expect("weights are small");
    partition.independent.push(z);
    Ok(ReducedInstance {
        graph,
        params: Params::Integrity { p },
        construction: "clique-wvi-split",
        source: format!("clique {} k={k}", describe(g)),
        notes: Vec::new(),
        structure: Structure::Split(partition),
    })
}

/// Clique to unweighted vertex integrity on chordal graphs: `G*` plus a
/// disjoint clique on `n + m - C(k,2) - k` vertices, `p = n + m - C(k,2)`.
///
/// Equivalence holds for `k < n`; `k = n` is accepted and noted, as is an
/// empty added clique.
pub fn reduce_clique_to_vi_chordal(g: &WeightedGraph, k: usize) -> Result<ReducedInstance> {
    let (p, extra) = check_clique_source(g, k, true)?;
    let (gstar, partition) = incidence_split_graph(g);
    let base = gstar.len();
    let extra = usize::try_from(extra).map_err(|_| Error::ParameterOverflow)?;
    let clique: Vec<usize> = (base..base + extra).collect();
    let mut edges: Vec<(usize, usize)> = gstar.edges().collect();
    for (i, &a) in clique.iter().enumerate() {
        for &b in &clique[i + 1..] {
            edges.push((a, b));
        }
    }
    let graph = WeightedGraph::unit(base + extra, edges).expect("edges are simple");
    let mut notes = Vec::new();
    if k == g.len() {
        notes.push("k = n: outside the range where the equivalence is claimed".to_string());
    }
    if extra == 0 {
        notes.push("degenerate: the added clique is empty".to_string());
    }
    Ok(ReducedInstance {
        graph,
        params: Params::Integrity { p },
        construction: "clique-vi-chordal",
        source: format!("clique {} k={k}", describe(g)),
        notes,
        structure: Structure::SplitPlusClique {
            split: partition,
            clique,
        },
    })
}

/// Balanced complete bipartite subgraph to vertex integrity on
/// co-bipartite graphs: the complement of `g` with `p = n - k`.
pub fn reduce_bcbs_to_vi_cobipartite(
    g: &WeightedGraph,
    part_a: &[usize],
    part_b: &[usize],
    k: usize,
) -> Result<ReducedInstance> {
    check_bipartition(g, part_a, part_b)?;
    let n = g.len();
    if k == 0 || k > n {
        return Err(precondition(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    let mut a = part_a.to_vec();
    let mut b = part_b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    Ok(ReducedInstance {
        graph: g.complement().with_weights(vec![1; n])?,
        params: Params::Integrity { p: (n - k) as Weight },
        construction: "bcbs-cobipartite",
        source: format!("biclique {} |A|={} |B|={} k={k}", describe(g), a.len(), b.len()),
        notes: Vec::new(),
        structure: Structure::CoBipartite { a, b },
    })
}

/// Partition to weighted component order connectivity on complete graphs:
/// `K_n` with `w(v_i) = a_i` and `k = l = sum / 2`.
pub fn reduce_partition_to_wcoc_complete(values: &[Weight]) -> Result<ReducedInstance> {
    if let Some(i) = values.iter().position(|&a| a == 0) {
        return Err(precondition(format!("value {} is not positive", i + 1)));
    }
    let graph = WeightedGraph::complete(values.to_vec())?;
    let total = graph.total_weight();
    if total % 2 == 1 {
        return Err(precondition(format!("total {total} is odd")));
    }
    let half = total / 2;
    Ok(ReducedInstance {
        params: Params::Order { k: half, l: half },
        construction: "partition-complete",
        source: format!("partition of {} values, total {total}", values.len()),
        notes: Vec::new(),
        structure: Structure::Split(SplitPartition {
            clique: (0..graph.len()).collect(),
            independent: Vec::new(),
        }),
        graph,
    })
}

/// Clique to component order connectivity parameterized by `l`: the graph
/// with an independent vertex per vertex of `g` (ids `0..n`), a clique on
/// one vertex per edge (ids `n..n+m`, lexicographic edge order) and
/// incidence edges; `k = m - C(q,2)`, `l = C(q,2) + q`.
pub fn reduce_clique_to_coc_ell(g: &WeightedGraph, q: usize) -> Result<ReducedInstance> {
    if q == 0 {
        return Err(precondition("need q >= 1"));
    }
    let pairs = binom2(q as u64)?;
    let m = g.edge_count() as u64;
    if pairs > m {
        return Err(precondition(format!("need C(q,2) <= m, got {pairs} > {m}")));
    }
    let n = g.len();
    let total = n + g.edge_count();
    let mut edges = Vec::new();
    for i in n..total {
        for j in i + 1..total {
            edges.push((i, j));
        }
    }
    for (i, (u, v)) in g.edges().enumerate() {
        edges.push((u, n + i));
        edges.push((v, n + i));
    }
    let graph = WeightedGraph::unit(total, edges).expect("edges are simple");
    Ok(ReducedInstance {
        graph,
        params: Params::Order {
            k: m - pairs,
            l: pairs + q as u64,
        },
        construction: "clique-coc-ell",
        source: format!("clique {} q={q}", describe(g)),
        notes: Vec::new(),
        structure: Structure::Split(SplitPartition {
            clique: (n..total).collect(),
            independent: (0..n).collect(),
        }),
    })
}

/// Checks by enumeration over subsets of the clique side of `G*` that the
/// following agree: (i) `g` has a `k`-clique; (ii) some `X ⊆ C*` with
/// `|X| <= k` has `|X| + n(G* - X) <= n + m - C(k,2)`; (iii) some such `X`
/// has `n(G* - X) <= n + m - C(k,2) - k`. Here `n(H)` is the order of a
/// largest component of `H`.
pub fn check_incidence_lemma(g: &WeightedGraph, k: usize, oracle: &Oracle) -> Result<bool> {
    let n = g.len();
    if k >= n {
        return Err(precondition(format!("need k < n, got k={k}, n={n}")));
    }
    if n > oracle.limit() {
        return Err(Error::InstanceTooLarge {
            n,
            limit: oracle.limit(),
        });
    }
    let has_clique = oracle.max_clique(g)? >= k;
    let (gstar, _) = incidence_split_graph(g);
    let bound = (n + g.edge_count()) as i128 - binom2(k as u64)? as i128;
    let mut second = false;
    let mut third = false;
    for size in 0..=k {
        for x in itertools::Itertools::combinations(0..n, size) {
            let largest = gstar.delete(&x)?.graph.wcc() as i128;
            second |= size as i128 + largest <= bound;
            third |= largest <= bound - k as i128;
        }
    }
    Ok(has_clique == second && second == third)
}
