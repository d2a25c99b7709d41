//! Per-node embedding vectors and their text format.
//!
//! The text format is a header line `<node_count> <dimension>` followed by
//! one `label v1 ... vd` line per node. Values use Rust's shortest
//! round-trip float formatting, so reading a written file is lossless.

use std::io::{self, BufRead, Write};

use rand::distr::{Distribution, Uniform};
use rand::Rng;

use crate::graph::NodeId;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Row-major table of `node_count` vectors of length `dimension`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    data: Vec<f64>,
    dimension: usize,
}

impl EmbeddingTable {
    pub fn zeros(node_count: usize, dimension: usize) -> Self {
        assert!(dimension > 0, "dimension must be positive");
        EmbeddingTable {
            data: vec![0.0; node_count * dimension],
            dimension,
        }
    }

    /// Entries uniform in `[-0.5/d, 0.5/d)`.
    pub fn random<R: Rng + ?Sized>(node_count: usize, dimension: usize, rng: &mut R) -> Self {
        let half = 0.5 / dimension as f64;
        let dist = Uniform::new(-half, half).expect("finite bounds");
        EmbeddingTable {
            data: (0..node_count * dimension).map(|_| dist.sample(rng)).collect(),
            dimension,
        }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Self {
        let dimension = rows.first().map_or(1, Vec::len);
        assert!(rows.iter().all(|r| r.len() == dimension), "ragged rows");
        EmbeddingTable {
            data: rows.into_iter().flatten().collect(),
            dimension,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn node_count(&self) -> usize {
        self.data.len() / self.dimension
    }

    #[inline]
    pub fn row(&self, v: NodeId) -> &[f64] {
        let d = self.dimension;
        &self.data[v.index() * d..(v.index() + 1) * d]
    }

    #[inline]
    pub fn row_mut(&mut self, v: NodeId) -> &mut [f64] {
        let d = self.dimension;
        &mut self.data[v.index() * d..(v.index() + 1) * d]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.data.chunks_exact(self.dimension)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn write_text<W: Write>(&self, labels: &[String], mut out: W) -> io::Result<()> {
        assert_eq!(labels.len(), self.node_count(), "one label per row");
        writeln!(out, "{} {}", self.node_count(), self.dimension)?;
        for (label, row) in labels.iter().zip(self.rows()) {
            write!(out, "{label}")?;
            for v in row {
                write!(out, " {v}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    /// Reads the text format, returning labels in file order.
    pub fn read_text<R: BufRead>(input: R) -> Result<(Vec<String>, Self), FormatError> {
        let mut lines = input.lines().enumerate();
        let err = |line: usize, message: String| FormatError::Parse {
            line: line + 1,
            message,
        };
        let (n, d) = match lines.next() {
            Some((i, line)) => {
                let line = line?;
                let nums: Vec<usize> = line
                    .split_whitespace()
                    .map(str::parse)
                    .collect::<Result<_, _>>()
                    .map_err(|e| err(i, format!("bad header: {e}")))?;
                match nums[..] {
                    [n, d] if d > 0 => (n, d),
                    _ => return Err(err(i, "expected `<node_count> <dimension>`".into())),
                }
            }
            None => return Err(err(0, "empty embedding file".into())),
        };
        let mut labels = Vec::with_capacity(n);
        let mut data = Vec::with_capacity(n * d);
        for (i, line) in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let label = fields.next().unwrap().to_string();
            let start = data.len();
            for f in fields {
                data.push(f.parse::<f64>().map_err(|e| err(i, format!("bad value `{f}`: {e}")))?);
            }
            if data.len() - start != d {
                return Err(err(i, format!("expected {d} values, found {}", data.len() - start)));
            }
            labels.push(label);
        }
        if labels.len() != n {
            return Err(err(0, format!("header declares {n} nodes, found {}", labels.len())));
        }
        Ok((labels, EmbeddingTable { data, dimension: d }))
    }
}
