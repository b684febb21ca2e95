//! Minimum failure sets for distance-limited component-order connectivity.
//!
//! A set of vertices *fails* a graph when every connected component left
//! outside the set's closed `ell`-neighborhood has order below a threshold
//! `k`. This crate computes minimum-cardinality failure sets exactly on
//! trees and forests, verifies candidate sets on arbitrary simple graphs,
//! and ships a brute-force oracle plus a fail-relocation mapping that
//! cross-check the solver's minimality on desk-scale instances.
//!
//! With `k = 1` the number is the distance-`ell` domination number; with
//! `ell = 1` it is the component order neighbor connectivity value.
//!
//! ```
//! use failset::{Graph, Instance, VertexId};
//!
//! // Failing the middle of a five-path leaves two singletons, both below
//! // the threshold k = 2.
//! let g = Graph::from_edge_list("a b\nb c\nc d\nd e\n")?;
//! let inst = Instance::new(g, 2, 1)?;
//! let result = failset::solve(&inst, VertexId(0))?;
//! assert_eq!(result.failure_set.len(), 1);
//! assert!(inst.is_failure_set(&result.failure_set));
//! # Ok::<(), failset::Error>(())
//! ```

mod error;
pub mod gen;
pub mod graph;
pub mod solver;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{FailureSet, Graph, GraphBuilder, Instance, VertexId};
pub use solver::{lambda, solve, solve_forest, solve_on_tree, SolveResult};
pub use tree::RootedTree;
pub use verify::{
    brute_force_minimum, brute_force_minimum_with_cap, build_mapping, check_mapping_lemmas,
    distance_domination_number, FailMapping, MappingReport, OracleResult, SubsetOracle,
    DEFAULT_ORACLE_CAP,
};
