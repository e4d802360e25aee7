//! Exact algorithms for weighted vertex integrity and weighted component
//! order connectivity: kernels, bounded search trees, interval-graph
//! dynamic programs, closed forms for special classes, and the hardness
//! constructions used to test them.

pub mod branch;
pub mod error;
pub mod generate;
pub mod graph;
pub mod interval;
pub mod kernel;
pub mod oracle;
pub mod reductions;
pub mod special;

pub use error::{Error, Result};
pub use graph::{
    verify_wcoc, verify_wvi, Certificate, Rejection, SplitPartition, Subgraph, Violation, Weight,
    WeightedGraph,
};
pub use oracle::Oracle;
