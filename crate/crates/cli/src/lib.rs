//! Front end for the `vulnkit` command: the VGRAPH file format, solver
//! dispatch, instance generation and the cross-check bench.

pub mod bench;
pub mod construct;
pub mod format;
pub mod report;
pub mod solve;

pub use format::{emit, parse, FileParams, Instance, ParseError};
pub use report::{Algorithm, Objective, Problem, RunResult, Stats, Verdict};
pub use solve::{Budget, CliError};
