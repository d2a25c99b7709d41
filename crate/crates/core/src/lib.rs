//! Node embeddings learned by spreading activation.
//!
//! Training walks the network in spreading-activation order: a random
//! source node is activated, activation spreads to every neighbor, then
//! from those to theirs, until every node has been reached once. Each
//! activated node adjusts its embedding against all of its neighbors and
//! `k` random non-neighbors per neighbor, maximizing a logistic
//! likelihood of adjacency. Node-typed networks additionally learn one
//! mapping matrix per type into a shared benchmark space.
//!
//! ```no_run
//! use spreadembed::{graph, trainer::{train, TrainConfig}};
//!
//! let g = graph::load_edge_list("a b\nb c\nc a\n".as_bytes())?;
//! let out = train(&g, &TrainConfig { dimension: 16, ..TrainConfig::default() })?;
//! println!("final likelihood {}", out.likelihood.last().unwrap());
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod cli;
pub mod embedding;
pub mod eval;
pub mod export;
pub mod generate;
pub mod graph;
pub mod hetero;
pub mod homo;
pub mod math;
pub mod rng;
pub mod sampling;
pub mod search;
pub mod trainer;

pub use embedding::EmbeddingTable;
pub use graph::{Graph, NodeId};
pub use hetero::MappingMatrices;
pub use search::{spread_search, ActivationOrder};
pub use trainer::{train, train_hetero, Model, TrainConfig, TrainError, TrainOutput};
