//! Exact growth, diameter and path-finding computations on Cayley graphs of
//! permutation groups, their Schreier coset graphs, and small matrix groups.

pub mod analysis;
pub mod bfs;
pub mod codec;
pub mod error;
pub mod graph;
pub mod matgroup;
pub mod pathfind;
pub mod perm;
pub mod search;

pub use error::{Error, Result};
pub use graph::GraphDef;
pub use perm::{GeneratorSet, Permutation};
