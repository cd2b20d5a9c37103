//! Exact solvers for τ-bounded-density edge deletion: delete the fewest
//! edges of a graph so that no subgraph has more than τ edges per vertex.
//!
//! The crate provides the reductions to flow, transshipment and matching
//! problems, an exact densest-subgraph routine, a tree-decomposition dynamic
//! program for the remaining densities, brute-force reference oracles, and
//! generators for the hardness gadgets.

pub mod corpus;
pub mod densest;
pub mod error;
pub mod flow;
pub mod gadgets;
pub mod graph;
pub mod matching;
pub mod oracle;
pub mod orientation;
pub mod rational;
pub mod rflow;
pub mod solver;
pub mod td;
pub mod twdp;

pub use error::{Error, Result};
pub use graph::{EdgeId, Graph};
pub use rational::Rational;
pub use solver::{solve, Options, Solution, Strategy};
