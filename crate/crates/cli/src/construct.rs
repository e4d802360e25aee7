//! Instance generation for the `gen` subcommand.

use vulnkit::reductions::{
    incidence_split_graph, reduce_bcbs_to_vi_cobipartite, reduce_clique_to_coc_ell,
    reduce_clique_to_coc_split, reduce_clique_to_vi_chordal, reduce_clique_to_wvi_split,
    reduce_partition_to_wcoc_complete, Params, ReducedInstance,
};
use vulnkit::{Weight, WeightedGraph};

use crate::format::{FileParams, Instance};
use crate::solve::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Construction {
    /// Incidence split graph of the source graph.
    Incidence,
    /// Clique to unweighted order connectivity on split graphs.
    CliqueCocSplit,
    /// Clique to weighted vertex integrity on split graphs.
    CliqueWviSplit,
    /// Clique to unweighted vertex integrity on chordal graphs.
    CliqueViChordal,
    /// Balanced biclique to vertex integrity on co-bipartite graphs.
    BcbsCobipartite,
    /// Partition to weighted order connectivity on complete graphs.
    PartitionComplete,
    /// Clique to order connectivity with the component bound as parameter.
    CliqueCocEll,
}

/// What a construction consumes besides its name.
#[derive(Debug, Clone, Default)]
pub struct SourceArgs {
    pub graph: Option<WeightedGraph>,
    /// Clique or biclique size.
    pub k: Option<usize>,
    pub values: Option<Vec<Weight>>,
    /// 0-based side of the bipartition; the rest is the other side.
    pub part_a: Option<Vec<usize>>,
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

/// Two-colouring by breadth-first search; `None` if `g` has an odd cycle.
pub fn two_colouring(g: &WeightedGraph) -> Option<Vec<usize>> {
    let mut side: Vec<Option<bool>> = vec![None; g.len()];
    for root in 0..g.len() {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(false);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let su = side[u].expect("queued vertices are coloured");
            for &v in g.neighbors(u) {
                match side[v] {
                    None => {
                        side[v] = Some(!su);
                        queue.push_back(v);
                    }
                    Some(sv) if sv == su => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some((0..g.len()).filter(|&v| side[v] == Some(false)).collect())
}

fn header(inst: &ReducedInstance) -> Vec<String> {
    let mut lines = vec![
        format!("construction {}", inst.construction),
        format!("source {}", inst.source),
        format!("params {}", inst.params),
    ];
    lines.extend(inst.notes.iter().map(|n| format!("note {n}")));
    lines
}

fn to_instance(inst: ReducedInstance) -> (Instance, Vec<String>) {
    let comments = header(&inst);
    let params = match inst.params {
        Params::Integrity { p } => FileParams {
            p: Some(p),
            ..FileParams::default()
        },
        Params::Order { k, l } => FileParams {
            k: Some(k),
            l: Some(l),
            ..FileParams::default()
        },
    };
    let instance = Instance {
        graph: inst.graph,
        model: None,
        params,
    };
    (instance, comments)
}

/// Builds the instance and its comment header.
pub fn generate(construction: Construction, args: SourceArgs) -> Result<(Instance, Vec<String>), CliError> {
    if construction == Construction::PartitionComplete {
        let values = args
            .values
            .ok_or_else(|| usage("partition-complete needs --values"))?;
        return Ok(to_instance(reduce_partition_to_wcoc_complete(&values)?));
    }
    let g = args
        .graph
        .ok_or_else(|| usage("this construction needs a source graph (--input or --random)"))?;
    if construction == Construction::Incidence {
        let (gstar, split) = incidence_split_graph(&g);
        let comments = vec![
            "construction incidence".to_string(),
            format!(
                "clique side 1..{}, edge side {}..{}",
                split.clique.len(),
                split.clique.len() + 1,
                gstar.len()
            ),
        ];
        return Ok((Instance::new(gstar), comments));
    }
    let k = args.k.ok_or_else(|| usage("this construction needs -k"))?;
    let inst = match construction {
        Construction::CliqueCocSplit => reduce_clique_to_coc_split(&g, k)?,
        Construction::CliqueWviSplit => reduce_clique_to_wvi_split(&g, k)?,
        Construction::CliqueViChordal => reduce_clique_to_vi_chordal(&g, k)?,
        Construction::CliqueCocEll => reduce_clique_to_coc_ell(&g, k)?,
        Construction::BcbsCobipartite => {
            let a = match args.part_a {
                Some(a) => a,
                None => two_colouring(&g).ok_or_else(|| usage("source graph is not bipartite"))?,
            };
            let b: Vec<usize> = (0..g.len()).filter(|v| !a.contains(v)).collect();
            reduce_bcbs_to_vi_cobipartite(&g, &a, &b, k)?
        }
        Construction::Incidence | Construction::PartitionComplete => unreachable!("handled above"),
    };
    Ok(to_instance(inst))
}
