//! Node-typed networks: per-type mapping matrices into a shared benchmark
//! space.
//!
//! Every type `t` owns a `d×d` matrix `W_t`. A node's benchmark vector is
//! `W_φ(v) α(v)` and pair scores are inner products of benchmark vectors,
//! so `σ₀(x,y) = σ(α(x)ᵀ W_φ(x)ᵀ W_φ(y) α(y))`. With a single type and
//! `W = I` everything here reduces exactly to the homogeneous model.

use std::io::{self, BufRead, Write};

use crate::embedding::{EmbeddingTable, FormatError};
use crate::graph::{Graph, NodeId};
use crate::homo::{coupling, NonFinite};
use crate::math::{dot, log_bernoulli, mat_t_vec, mat_vec, sigmoid};
use crate::sampling::SampleSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum MappingError {
    #[error("no mapping matrix for node type {0}")]
    MissingType(usize),
    #[error("embedding dimension {embedding} does not match matrix dimension {matrix}")]
    Dimension { embedding: usize, matrix: usize },
}

/// One row-major `d×d` matrix per node type.
#[derive(Debug, Clone, PartialEq)]
pub struct MappingMatrices {
    matrices: Vec<Vec<f64>>,
    dimension: usize,
}

impl MappingMatrices {
    pub fn identity(type_count: usize, dimension: usize) -> Self {
        let mut eye = vec![0.0; dimension * dimension];
        for i in 0..dimension {
            eye[i * dimension + i] = 1.0;
        }
        MappingMatrices {
            matrices: vec![eye; type_count],
            dimension,
        }
    }

    /// Builds from row-major matrices; every matrix must hold `d*d` entries.
    pub fn from_matrices(matrices: Vec<Vec<f64>>, dimension: usize) -> Self {
        assert!(
            matrices.iter().all(|m| m.len() == dimension * dimension),
            "matrices must be {dimension}x{dimension}"
        );
        MappingMatrices { matrices, dimension }
    }

    pub fn type_count(&self) -> usize {
        self.matrices.len()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn matrix(&self, t: usize) -> &[f64] {
        &self.matrices[t]
    }

    pub fn matrix_mut(&mut self, t: usize) -> &mut [f64] {
        &mut self.matrices[t]
    }

    pub fn is_finite(&self) -> bool {
        self.matrices.iter().flatten().all(|v| v.is_finite())
    }

    /// Header `<type_count> <d>`, then per type its name and `d` rows.
    pub fn write_text<W: Write>(&self, type_names: &[String], mut out: W) -> io::Result<()> {
        assert_eq!(type_names.len(), self.type_count(), "one name per type");
        let d = self.dimension;
        writeln!(out, "{} {}", self.type_count(), d)?;
        for (name, m) in type_names.iter().zip(&self.matrices) {
            writeln!(out, "{name}")?;
            for row in m.chunks_exact(d) {
                let line: Vec<String> = row.iter().map(f64::to_string).collect();
                writeln!(out, "{}", line.join(" "))?;
            }
        }
        Ok(())
    }

    pub fn read_text<R: BufRead>(input: R) -> Result<(Vec<String>, Self), FormatError> {
        let mut lines = input
            .lines()
            .enumerate()
            .filter(|(_, l)| l.as_ref().map_or(true, |l| !l.trim().is_empty()));
        let err = |line: usize, message: String| FormatError::Parse {
            line: line + 1,
            message,
        };
        let mut next = |what: &str| -> Result<(usize, String), FormatError> {
            match lines.next() {
                Some((i, l)) => Ok((i, l?)),
                None => Err(err(0, format!("unexpected end of file, expected {what}"))),
            }
        };
        let (i, header) = next("header")?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|e| err(i, format!("bad header: {e}")))?;
        let [types, d] = nums[..] else {
            return Err(err(i, "expected `<type_count> <dimension>`".into()));
        };
        let mut names = Vec::with_capacity(types);
        let mut matrices = Vec::with_capacity(types);
        for _ in 0..types {
            names.push(next("type name")?.1.trim().to_string());
            let mut m = Vec::with_capacity(d * d);
            for _ in 0..d {
                let (i, row) = next("matrix row")?;
                let before = m.len();
                for f in row.split_whitespace() {
                    m.push(f.parse::<f64>().map_err(|e| err(i, format!("bad value `{f}`: {e}")))?);
                }
                if m.len() - before != d {
                    return Err(err(i, format!("expected {d} values")));
                }
            }
            matrices.push(m);
        }
        Ok((names, MappingMatrices::from_matrices(matrices, d)))
    }
}

/// `α₀(v) = W_φ(v) α(v)`.
pub fn map_to_benchmark(
    g: &Graph,
    v: NodeId,
    emb: &EmbeddingTable,
    maps: &MappingMatrices,
) -> Result<Vec<f64>, MappingError> {
    let t = g.node_type(v);
    if t >= maps.type_count() {
        return Err(MappingError::MissingType(t));
    }
    if emb.dimension() != maps.dimension() {
        return Err(MappingError::Dimension {
            embedding: emb.dimension(),
            matrix: maps.dimension(),
        });
    }
    let mut out = vec![0.0; emb.dimension()];
    mat_vec(maps.matrix(t), emb.row(v), &mut out);
    Ok(out)
}

/// Benchmark vectors of all nodes, row-aligned with `emb`.
pub fn benchmark_table(g: &Graph, emb: &EmbeddingTable, maps: &MappingMatrices) -> EmbeddingTable {
    let mut out = EmbeddingTable::zeros(emb.node_count(), emb.dimension());
    for v in g.nodes() {
        mat_vec(maps.matrix(g.node_type(v)), emb.row(v), out.row_mut(v));
    }
    out
}

/// Benchmark-space score `α(x)ᵀ W_φ(x)ᵀ W_φ(y) α(y)`.
pub fn benchmark_score(g: &Graph, x: NodeId, y: NodeId, emb: &EmbeddingTable, maps: &MappingMatrices) -> f64 {
    let d = emb.dimension();
    let mut bx = vec![0.0; d];
    let mut by = vec![0.0; d];
    mat_vec(maps.matrix(g.node_type(x)), emb.row(x), &mut bx);
    mat_vec(maps.matrix(g.node_type(y)), emb.row(y), &mut by);
    dot(&bx, &by)
}

/// `σ₀(x,y)`.
pub fn sigma0(g: &Graph, x: NodeId, y: NodeId, emb: &EmbeddingTable, maps: &MappingMatrices) -> f64 {
    sigmoid(benchmark_score(g, x, y, emb, maps))
}

/// Sampled heterogeneous log-likelihood.
pub fn log_likelihood(g: &Graph, emb: &EmbeddingTable, maps: &MappingMatrices, samples: &[SampleSet]) -> f64 {
    let bench = benchmark_table(g, emb, maps);
    let mut total = 0.0;
    for set in samples {
        let by = bench.row(set.center);
        for (x, u) in set.labeled() {
            total += log_bernoulli(u, dot(bench.row(x), by));
        }
    }
    total
}

/// Gradient of the sampled heterogeneous log-likelihood with respect to
/// embeddings and mapping matrices.
pub fn log_likelihood_gradient(
    g: &Graph,
    emb: &EmbeddingTable,
    maps: &MappingMatrices,
    samples: &[SampleSet],
) -> (EmbeddingTable, MappingMatrices) {
    let d = emb.dimension();
    let bench = benchmark_table(g, emb, maps);
    let mut grad_emb = EmbeddingTable::zeros(emb.node_count(), d);
    let mut grad_maps = MappingMatrices::from_matrices(vec![vec![0.0; d * d]; maps.type_count()], d);
    let mut tmp = vec![0.0; d];
    for set in samples {
        let y = set.center;
        for (x, u) in set.labeled() {
            let c = coupling(u, dot(bench.row(x), bench.row(y)));
            // ∂/∂α(y) = W_φ(y)ᵀ W_φ(x) α(x) · c, and symmetrically for x
            mat_t_vec(maps.matrix(g.node_type(y)), bench.row(x), &mut tmp);
            add_scaled(grad_emb.row_mut(y), c, &tmp);
            mat_t_vec(maps.matrix(g.node_type(x)), bench.row(y), &mut tmp);
            add_scaled(grad_emb.row_mut(x), c, &tmp);
            // ∂/∂W_φ(y) = W_φ(x) α(x) α(y)ᵀ · c, and symmetrically for W_φ(x)
            add_outer(grad_maps.matrix_mut(g.node_type(y)), c, bench.row(x), emb.row(y));
            add_outer(grad_maps.matrix_mut(g.node_type(x)), c, bench.row(y), emb.row(x));
        }
    }
    (grad_emb, grad_maps)
}

#[inline]
fn add_scaled(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// `m += a · u vᵀ`.
#[inline]
fn add_outer(m: &mut [f64], a: f64, u: &[f64], v: &[f64]) {
    let d = v.len();
    for (row, ui) in m.chunks_exact_mut(d).zip(u) {
        let s = a * ui;
        for (mij, vj) in row.iter_mut().zip(v) {
            *mij += s * vj;
        }
    }
}

/// Heterogeneous activation step centered on `set.center`.
///
/// With one type and identity matrices the arithmetic is operation-for-
/// operation identical to [`crate::homo::update_center`]. Returns the number
/// of scalar multiply-adds performed.
pub fn hetero_update_center(
    g: &Graph,
    set: &SampleSet,
    emb: &mut EmbeddingTable,
    maps: &MappingMatrices,
    learning_rate: f64,
) -> Result<usize, NonFinite> {
    let d = emb.dimension();
    let y = set.center;
    let ty = g.node_type(y);
    let mut by = vec![0.0; d];
    mat_vec(maps.matrix(ty), emb.row(y), &mut by);
    let mut work = d * d;

    // W_tᵀ b_y for each type t seen among the samples
    let mut pulled: Vec<Option<Vec<f64>>> = vec![None; maps.type_count()];
    let mut acc = vec![0.0; d];
    let mut bx = vec![0.0; d];
    for (x, u) in set.labeled() {
        let tx = g.node_type(x);
        if pulled[tx].is_none() {
            let mut v = vec![0.0; d];
            mat_t_vec(maps.matrix(tx), &by, &mut v);
            pulled[tx] = Some(v);
            work += d * d;
        }
        let ax = emb.row_mut(x);
        mat_vec(maps.matrix(tx), ax, &mut bx);
        let c = coupling(u, dot(&bx, &by));
        for (a, bi) in acc.iter_mut().zip(&bx) {
            *a += c * bi;
        }
        let step = learning_rate * c;
        for (xi, pi) in ax.iter_mut().zip(pulled[tx].as_ref().unwrap()) {
            *xi += step * pi;
        }
        if !ax.iter().all(|v| v.is_finite()) {
            return Err(NonFinite { node: x });
        }
        work += d * d + 3 * d;
    }
    let mut grad = vec![0.0; d];
    mat_t_vec(maps.matrix(ty), &acc, &mut grad);
    let ay = emb.row_mut(y);
    for (yi, gi) in ay.iter_mut().zip(&grad) {
        *yi += learning_rate * gi;
    }
    if !ay.iter().all(|v| v.is_finite()) {
        return Err(NonFinite { node: y });
    }
    Ok(work + d * d + d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("non-finite entry in mapping matrix of type {node_type}")]
pub struct NonFiniteMatrix {
    pub node_type: usize,
}

/// One gradient-ascent step on every mapping matrix over the sampled pairs
/// of a sweep. Scores use the current embeddings and the matrices as they
/// were before this call. Returns the number of scalar multiply-adds.
pub fn update_mapping_matrices(
    g: &Graph,
    emb: &EmbeddingTable,
    maps: &mut MappingMatrices,
    samples: &[SampleSet],
    learning_rate: f64,
) -> Result<usize, NonFiniteMatrix> {
    let d = emb.dimension();
    let bench = benchmark_table(g, emb, maps);
    let mut work = g.node_count() * d * d;
    let mut grad = vec![vec![0.0; d * d]; maps.type_count()];
    for set in samples {
        let y = set.center;
        for (x, u) in set.labeled() {
            let c = coupling(u, dot(bench.row(x), bench.row(y)));
            add_outer(&mut grad[g.node_type(y)], c, bench.row(x), emb.row(y));
            add_outer(&mut grad[g.node_type(x)], c, bench.row(y), emb.row(x));
            work += 2 * d * d + d;
        }
    }
    for (t, gt) in grad.iter().enumerate() {
        let m = maps.matrix_mut(t);
        for (mij, gij) in m.iter_mut().zip(gt) {
            *mij += learning_rate * gij;
        }
        if !m.iter().all(|v| v.is_finite()) {
            return Err(NonFiniteMatrix { node_type: t });
        }
    }
    Ok(work)
}
