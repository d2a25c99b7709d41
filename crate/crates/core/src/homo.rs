//! Homogeneous objective and activation update rule.
//!
//! For a pair `(x, y)` with adjacency indicator `u`, the model assigns
//! `P(u | x, y) = σ(x,y)^u (1 − σ(x,y))^(1−u)` with `σ(x,y)` the logistic
//! function of the inner product `⟨α(x), α(y)⟩`. The sampled objective sums
//! the log of this probability over every center `y` and every `x ∈ N′(y)`.
//!
//! Each center update is an activation step:
//!
//! ```text
//! α(y) ← α(y) + γ · Σ_{x ∈ N′(y)} α(x) · (u − σ(x,y))
//! α(x) ← α(x) + γ · α(y) · (u − σ(x,y))        for each x ∈ N′(y)
//! ```
//!
//! where the right-hand sides read the values held before the call.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::embedding::EmbeddingTable;
use crate::graph::{Graph, NodeId};
use crate::math::{dot, log_bernoulli, sigmoid};
use crate::sampling::SampleSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("vector dimensions differ: {0} vs {1}")]
pub struct DimensionMismatch(pub usize, pub usize);

/// A coordinate of `node` left the finite range during an update.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("non-finite embedding for node {node}")]
pub struct NonFinite {
    pub node: NodeId,
}

/// `σ(x,y) = e^⟨ax,ay⟩ / (1 + e^⟨ax,ay⟩)`.
pub fn sigma(ax: &[f64], ay: &[f64]) -> Result<f64, DimensionMismatch> {
    if ax.len() != ay.len() {
        return Err(DimensionMismatch(ax.len(), ay.len()));
    }
    Ok(sigmoid(dot(ax, ay)))
}

/// Coupling `u − σ` between two nodes, in `(−1, 1)`.
#[inline]
pub fn coupling(u: bool, z: f64) -> f64 {
    if u {
        sigmoid(-z)
    } else {
        -sigmoid(z)
    }
}

/// Sampled log-likelihood over the given sample sets. Always `≤ 0`.
pub fn log_likelihood(g: &Graph, emb: &EmbeddingTable, samples: &[SampleSet]) -> f64 {
    debug_assert_eq!(samples.len(), g.node_count());
    let mut total = 0.0;
    for set in samples {
        let ay = emb.row(set.center);
        for (x, u) in set.labeled() {
            total += log_bernoulli(u, dot(emb.row(x), ay));
        }
    }
    total
}

/// Gradient of [`log_likelihood`] with respect to every embedding.
///
/// Each sampled pair contributes `α(x)(u − σ)` to `y` and, with the roles
/// swapped, `α(y)(u − σ)` to `x`.
pub fn log_likelihood_gradient(emb: &EmbeddingTable, samples: &[SampleSet]) -> EmbeddingTable {
    let d = emb.dimension();
    let mut grad = EmbeddingTable::zeros(emb.node_count(), d);
    for set in samples {
        let y = set.center;
        for (x, u) in set.labeled() {
            let c = coupling(u, dot(emb.row(x), emb.row(y)));
            axpy(grad.row_mut(y), c, emb.row(x));
            axpy(grad.row_mut(x), c, emb.row(y));
        }
    }
    grad
}

/// The per-center gradient `Σ_{x∈N′(y)} α(x)(u − σ(x,y))`.
pub fn center_gradient(emb: &EmbeddingTable, set: &SampleSet) -> Vec<f64> {
    let ay = emb.row(set.center);
    let mut acc = vec![0.0; emb.dimension()];
    for (x, u) in set.labeled() {
        let c = coupling(u, dot(emb.row(x), ay));
        axpy(&mut acc, c, emb.row(x));
    }
    acc
}

#[inline]
fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// Applies one activation step centered on `set.center`.
///
/// Returns the number of scalar multiply-adds performed.
pub fn update_center(set: &SampleSet, emb: &mut EmbeddingTable, learning_rate: f64) -> Result<usize, NonFinite> {
    let d = emb.dimension();
    let y = set.center;
    let y_old = emb.row(y).to_vec();
    let mut acc = vec![0.0; d];
    for (x, u) in set.labeled() {
        let ax = emb.row_mut(x);
        let c = coupling(u, dot(ax, &y_old));
        for (a, xi) in acc.iter_mut().zip(ax.iter()) {
            *a += c * xi;
        }
        let step = learning_rate * c;
        for (xi, yi) in ax.iter_mut().zip(&y_old) {
            *xi += step * yi;
        }
        if !ax.iter().all(|v| v.is_finite()) {
            return Err(NonFinite { node: x });
        }
    }
    let ay = emb.row_mut(y);
    for (yi, a) in ay.iter_mut().zip(&acc) {
        *yi += learning_rate * a;
    }
    if !ay.iter().all(|v| v.is_finite()) {
        return Err(NonFinite { node: y });
    }
    Ok((3 * set.len() + 1) * d)
}

/// Embedding storage for lock-free concurrent updates. Each coordinate is
/// an `f64` stored as bits; concurrent writers race per coordinate and the
/// last store wins.
pub struct SharedTable {
    data: Vec<AtomicU64>,
    dimension: usize,
}

impl SharedTable {
    pub fn new(table: &EmbeddingTable) -> Self {
        SharedTable {
            data: table.as_slice().iter().map(|v| AtomicU64::new(v.to_bits())).collect(),
            dimension: table.dimension(),
        }
    }

    pub fn into_table(self) -> EmbeddingTable {
        let rows = self
            .data
            .chunks_exact(self.dimension)
            .map(|r| r.iter().map(|a| f64::from_bits(a.load(Ordering::Relaxed))).collect())
            .collect();
        EmbeddingTable::from_rows(rows)
    }

    fn load_row(&self, v: NodeId, out: &mut [f64]) {
        let d = self.dimension;
        for (o, a) in out.iter_mut().zip(&self.data[v.index() * d..(v.index() + 1) * d]) {
            *o = f64::from_bits(a.load(Ordering::Relaxed));
        }
    }

    fn store_row(&self, v: NodeId, row: &[f64]) {
        let d = self.dimension;
        for (a, x) in self.data[v.index() * d..(v.index() + 1) * d].iter().zip(row) {
            a.store(x.to_bits(), Ordering::Relaxed);
        }
    }

    /// Same arithmetic as [`update_center`] against shared storage.
    pub fn update_center(&self, set: &SampleSet, learning_rate: f64) -> Result<usize, NonFinite> {
        let d = self.dimension;
        let y = set.center;
        let mut y_old = vec![0.0; d];
        self.load_row(y, &mut y_old);
        let mut acc = vec![0.0; d];
        let mut ax = vec![0.0; d];
        for (x, u) in set.labeled() {
            self.load_row(x, &mut ax);
            let c = coupling(u, dot(&ax, &y_old));
            for (a, xi) in acc.iter_mut().zip(&ax) {
                *a += c * xi;
            }
            let step = learning_rate * c;
            for (xi, yi) in ax.iter_mut().zip(&y_old) {
                *xi += step * yi;
            }
            if !ax.iter().all(|v| v.is_finite()) {
                return Err(NonFinite { node: x });
            }
            self.store_row(x, &ax);
        }
        self.load_row(y, &mut ax);
        for (yi, a) in ax.iter_mut().zip(&acc) {
            *yi += learning_rate * a;
        }
        if !ax.iter().all(|v| v.is_finite()) {
            return Err(NonFinite { node: y });
        }
        self.store_row(y, &ax);
        Ok((3 * set.len() + 1) * d)
    }
}
