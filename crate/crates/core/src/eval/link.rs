//! Link prediction on embedding differences.
//!
//! For every node one random neighbor gives a positive pair and one random
//! non-neighbor a negative pair. On node-typed graphs partners must have a
//! different type than the node. A logistic classifier is trained on the
//! pair features of a 70% split and scored on the rest.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use log::warn;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::graph::{Graph, NodeId};
use crate::hetero::benchmark_table;
use crate::trainer::Model;
use crate::EmbeddingTable;

use super::logistic::{LogisticConfig, LogisticModel};
use super::metrics::accuracy;
use super::{split_count, EvalError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LabeledPair {
    pub node: NodeId,
    pub partner: NodeId,
    pub connected: bool,
}

impl LabeledPair {
    fn key(&self) -> (NodeId, NodeId) {
        (self.node.min(self.partner), self.node.max(self.partner))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDataset {
    pub train: Vec<LabeledPair>,
    pub test: Vec<LabeledPair>,
    /// Nodes that had no eligible non-neighbor.
    pub skipped: Vec<NodeId>,
}

impl LinkDataset {
    pub fn pairs(&self) -> impl Iterator<Item = &LabeledPair> {
        self.train.iter().chain(&self.test)
    }

    /// Lines of `split node partner connected`, with node labels.
    pub fn write_text<W: Write>(&self, g: &Graph, mut out: W) -> std::io::Result<()> {
        for (split, pairs) in [("train", &self.train), ("test", &self.test)] {
            for p in pairs {
                writeln!(
                    out,
                    "{split}\t{}\t{}\t{}",
                    g.label(p.node),
                    g.label(p.partner),
                    u8::from(p.connected)
                )?;
            }
        }
        Ok(())
    }

    pub fn read_text<R: BufRead>(g: &Graph, input: R) -> Result<Self, EvalError> {
        let mut data = LinkDataset {
            train: Vec::new(),
            test: Vec::new(),
            skipped: Vec::new(),
        };
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.is_empty() {
                continue;
            }
            let parse = |m: &str| EvalError::Parse {
                line: i + 1,
                message: m.to_string(),
            };
            let [split, a, b, c] = fields[..] else {
                return Err(parse("expected `split node partner connected`"));
            };
            let pair = LabeledPair {
                node: g
                    .node_id(a)
                    .map_err(|_| EvalError::UnknownLabels(vec![a.to_string()]))?,
                partner: g
                    .node_id(b)
                    .map_err(|_| EvalError::UnknownLabels(vec![b.to_string()]))?,
                connected: match c {
                    "1" => true,
                    "0" => false,
                    _ => return Err(parse("connected flag must be 0 or 1")),
                },
            };
            match split {
                "train" => data.train.push(pair),
                "test" => data.test.push(pair),
                _ => return Err(parse("split must be `train` or `test`")),
            }
        }
        Ok(data)
    }
}

/// Builds the labeled pairs and splits them 70/30. Pairs naming the same
/// two nodes always land on the same side of the split.
pub fn build_link_dataset<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<LinkDataset, EvalError> {
    if g.node_count() < 3 {
        return Err(EvalError::TooSmall(g.node_count()));
    }
    let typed = g.type_count() > 1;
    let mut pairs = Vec::with_capacity(2 * g.node_count());
    let mut skipped = Vec::new();
    for y in g.nodes() {
        let eligible = |x: NodeId| !typed || g.node_type(x) != g.node_type(y);
        let nbrs: Vec<NodeId> = g.neighbors(y).iter().copied().filter(|&x| eligible(x)).collect();
        if let Some(&x) = nbrs.choose(rng) {
            pairs.push(LabeledPair {
                node: y,
                partner: x,
                connected: true,
            });
        }
        match random_non_neighbor(g, y, &eligible, rng) {
            Some(x) => pairs.push(LabeledPair {
                node: y,
                partner: x,
                connected: false,
            }),
            None => {
                warn!("node `{}` has no eligible non-neighbor; negative skipped", g.label(y));
                skipped.push(y);
            }
        }
    }

    let mut groups: Vec<(NodeId, NodeId)> = Vec::new();
    let mut members: HashMap<(NodeId, NodeId), Vec<LabeledPair>> = HashMap::new();
    for p in pairs {
        let entry = members.entry(p.key()).or_default();
        if entry.is_empty() {
            groups.push(p.key());
        }
        entry.push(p);
    }
    groups.shuffle(rng);
    let total: usize = members.values().map(Vec::len).sum();
    let target = split_count(total);
    let (mut train, mut test) = (Vec::new(), Vec::new());
    for key in groups {
        let group = members.remove(&key).unwrap();
        if train.len() < target {
            train.extend(group);
        } else {
            test.extend(group);
        }
    }
    Ok(LinkDataset { train, test, skipped })
}

fn random_non_neighbor<R: Rng + ?Sized>(
    g: &Graph,
    y: NodeId,
    eligible: &dyn Fn(NodeId) -> bool,
    rng: &mut R,
) -> Option<NodeId> {
    let ok = |x: NodeId| x != y && eligible(x) && !g.is_adjacent(y, x);
    for _ in 0..32 {
        let x = NodeId::new(rng.random_range(0..g.node_count()));
        if ok(x) {
            return Some(x);
        }
    }
    let pool: Vec<NodeId> = g.nodes().filter(|&x| ok(x)).collect();
    pool.choose(rng).copied()
}

/// How a pair of vectors becomes a classifier input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairFeature {
    /// `α(partner) − α(node)`.
    Difference,
    /// Coordinate-wise `|α(partner) − α(node)|`.
    #[default]
    AbsDifference,
}

impl PairFeature {
    pub fn apply(self, a: &[f64], b: &[f64]) -> Vec<f64> {
        let diff = a.iter().zip(b).map(|(x, y)| x - y);
        match self {
            PairFeature::Difference => diff.collect(),
            PairFeature::AbsDifference => diff.map(f64::abs).collect(),
        }
    }
}

/// Vectors compared for link prediction: benchmark vectors when the model
/// has mapping matrices, raw embeddings otherwise.
pub fn comparison_vectors(g: &Graph, model: &Model) -> EmbeddingTable {
    match &model.matrices {
        Some(m) => benchmark_table(g, &model.embeddings, m),
        None => model.embeddings.clone(),
    }
}

/// Test-set accuracy of a logistic classifier trained on the train split.
pub fn link_predict(data: &LinkDataset, vectors: &EmbeddingTable, feature: PairFeature) -> Result<f64, EvalError> {
    let features = |pairs: &[LabeledPair]| -> Vec<Vec<f64>> {
        pairs
            .iter()
            .map(|p| feature.apply(vectors.row(p.partner), vectors.row(p.node)))
            .collect()
    };
    let labels = |pairs: &[LabeledPair]| -> Vec<bool> { pairs.iter().map(|p| p.connected).collect() };
    if data.test.is_empty() {
        return Err(EvalError::EmptySplit);
    }
    let model = LogisticModel::fit(&features(&data.train), &labels(&data.train), LogisticConfig::default())?;
    let predicted: Vec<bool> = features(&data.test).iter().map(|x| model.predict(x)).collect();
    Ok(accuracy(&labels(&data.test), &predicted))
}
