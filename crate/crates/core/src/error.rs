use crate::graph::Weight;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("total vertex weight exceeds {}", crate::graph::MAX_TOTAL_WEIGHT)]
    WeightOverflow,
    #[error("parameter arithmetic overflowed")]
    ParameterOverflow,
    #[error("instance has {n} vertices, enumeration limit is {limit}")]
    InstanceTooLarge { n: usize, limit: usize },
    #[error("vertex {0} has weight 0; remove zero-weight vertices first")]
    ZeroWeight(usize),
    #[error("vertex {vertex} has weight {weight}, expected unit weights")]
    NonUnitWeight { vertex: usize, weight: Weight },
    #[error("graph is not a split graph")]
    NotSplit,
    #[error("graph is not complete: {0} and {1} are not adjacent")]
    NotComplete(usize, usize),
    #[error("interval model has {model} intervals but the graph has {graph} vertices")]
    ModelLength { model: usize, graph: usize },
    #[error("interval [{lo}, {hi}] of vertex {vertex} is empty")]
    InvalidInterval { vertex: usize, lo: i64, hi: i64 },
    #[error("interval model disagrees with the graph at pair {u}-{v} (edge in graph: {in_graph})")]
    ModelMismatch { u: usize, v: usize, in_graph: bool },
    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),
    #[error("subset-sum target {target} exceeds total weight {total}")]
    InfeasibleTarget { target: Weight, total: Weight },
    #[error("precondition violated: {0}")]
    Precondition(String),
}
