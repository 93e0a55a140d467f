//! Constructive judicious partitioning of uniform multi-hypergraphs.
//!
//! Given an r-uniform multi-hypergraph with m edges, [`partition_judicious`]
//! builds a partition of the vertices into r classes in which every class
//! meets at least `c_r * m` edges, where `c_2 = 2/3`, `c_3 = 5/9` and
//! `c_r = r / (3r - 4)` for `r >= 4`. The result is returned as a
//! [`Certificate`] that [`verify_certificate`] re-checks from scratch using
//! exact integer arithmetic.
//!
//! The crate also ships an exhaustive oracle ([`oracle::brute_force_best`])
//! for small instances, the instance text format, and a seeded generator.

#![forbid(unsafe_code)]

pub mod certificate;
pub mod error;
pub mod format;
pub mod generate;
pub mod hypergraph;
pub mod local_search;
pub mod oracle;
pub mod partition;
pub mod refinement;
pub mod solver;
pub mod threshold;

pub use certificate::{verify_certificate, Certificate, Verification, VerifyFailure};
pub use error::{Diagnostic, Error, Result};
pub use format::{parse_instance, serialize_instance};
pub use generate::{generate, GenMode, GenSpec, SplitMix64};
pub use hypergraph::{MultiHypergraph, VertexSet};
pub use local_search::{improve_to_local_optimum, move_gain};
pub use partition::{CoverageProfile, Partition};
pub use solver::{
    partition_judicious, partition_judicious_from, partition_judicious_with_stats, threshold,
    SolveStats,
};
pub use threshold::Threshold;
