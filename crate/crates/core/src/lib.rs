//! Covariate adjustment for total causal effects in DAGs, CPDAGs, MAGs and
//! PAGs.
//!
//! Graphs are [`MixedGraph`] values with three edge marks (tail, arrowhead,
//! circle). The [`adjustment`] module decides whether a set satisfies the
//! generalized adjustment criterion and constructs sets; [`enumerate`] lists
//! them; [`sem`] is a linear-Gaussian oracle that checks verdicts numerically.

pub mod adjustment;
pub mod enumerate;
mod error;
pub mod fixtures;
mod graph;
pub mod io;
mod nodeset;
pub mod orientation;
pub mod random;
pub mod reach;
pub mod sem;
pub mod visibility;

pub use adjustment::{
    Criterion, CriterionDiagnosis, Diagnosis, FailedCondition, Hint, Pattern, Verdict, Witness,
};
pub use enumerate::{list_adjustment_sets, EnumConstraints};
pub use error::{Error, Result, ViolationKind};
pub use graph::{Adj, Edge, GraphClass, Mark, MixedGraph};
pub use io::{parse_graph, serialize_graph};
pub use nodeset::{NodeId, NodeSet};
pub use reach::{NodeStatus, Path};
pub use sem::LinearSem;
