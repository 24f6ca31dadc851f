//! Biclique and d-clique partitions of graphs and hypergraphs, the compact
//! representations built on them, and queries answered on those
//! representations without decompressing.

pub mod combinatorics;
pub mod densest;
pub mod density;
pub mod error;
pub mod ep;
pub mod finder;
pub mod graph;
pub mod hyper;
pub mod par;
pub mod partition;
pub mod repr;
pub mod queries;
pub mod rng;
pub mod tournament;

pub use error::{GraphError, ReprError, Result};
pub use graph::{Adjacency, AdjacencyMatrix, Digraph, Graph, Hypergraph};
pub use par::Execution;
pub use repr::{CbRepr, SbRepr};
pub use partition::{Biclique, BicliquePartition, DClique, DCliquePartition, Violation};
