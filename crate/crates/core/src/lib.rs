//! Hamiltonian-circuit laboratory.
//!
//! Two deciders built on levelled path structures, and a harness that checks
//! them against brute force:
//!
//! * [`layered`]: exact prefix-tree DAG of all simple paths from the start
//!   vertex, grown one level at a time by a necessary-vertex test;
//! * [`stateset`]: the same growth rule on merged per-level state sets with
//!   ancestor and transition support indices, polynomial in size;
//! * [`oracle`]: backtracking ground truth plus a subset-DP cross-check;
//! * [`harness`]: single-instance diffs, exhaustive sweeps, random
//!   campaigns, counterexample minimisation and growth-rate fitting.

pub mod graph;
pub mod harness;
pub mod layered;
pub mod levels;
pub mod oracle;
pub mod par;
pub mod stateset;
pub mod vertex_set;

pub use graph::{Circuit, Graph, GraphError, Vertex};
pub use levels::LevelSets;
pub use par::Parallelism;
pub use vertex_set::{VertexSet, MAX_VERTICES};
