//! Downstream evaluation: link prediction, node classification and
//! per-iteration metric traces.

pub mod classify;
pub mod link;
pub mod logistic;
pub mod metrics;
pub mod trace;

pub use classify::{node_classify, ClassificationScore, ClassificationSet};
pub use link::{build_link_dataset, link_predict, LinkDataset, PairFeature};
pub use trace::{iteration_trace, MetricTable, TraceHook};

use std::collections::HashMap;

use crate::embedding::EmbeddingTable;
use crate::graph::Graph;
use crate::trainer::TrainError;

/// Fraction of examples assigned to the training split.
pub const TRAIN_FRACTION: f64 = 0.7;

/// Size of the training split for `n` examples.
pub fn split_count(n: usize) -> usize {
    (n as f64 * TRAIN_FRACTION).round() as usize
}

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("graph has {0} nodes; link prediction needs at least 3")]
    TooSmall(usize),
    #[error("training split contains a single class")]
    SingleClass,
    #[error("need at least 2 usable categories, found {0}")]
    TooFewCategories(usize),
    #[error("evaluation split is empty")]
    EmptySplit,
    #[error("labels not present in the embeddings/graph: {}", .0.join(", "))]
    UnknownLabels(Vec<String>),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Train(#[from] TrainError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Reorders rows read from an embedding file into the node order of `g`.
/// Graph nodes without a row are reported together.
pub fn align_embeddings(g: &Graph, labels: &[String], table: &EmbeddingTable) -> Result<EmbeddingTable, EvalError> {
    let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let missing: Vec<String> = g
        .labels()
        .iter()
        .filter(|l| !index.contains_key(l.as_str()))
        .cloned()
        .collect();
    if !missing.is_empty() {
        return Err(EvalError::UnknownLabels(missing));
    }
    let d = table.dimension();
    let rows = g
        .labels()
        .iter()
        .map(|l| {
            let i = index[l.as_str()];
            table.as_slice()[i * d..(i + 1) * d].to_vec()
        })
        .collect();
    Ok(EmbeddingTable::from_rows(rows))
}
