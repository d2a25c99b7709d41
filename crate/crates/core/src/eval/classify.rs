//! Node classification with one-vs-rest logistic classifiers.
//!
//! Single-label data is scored by macro-F1 over categories; multi-label
//! data by mean per-category ROC AUC.

use std::collections::HashMap;
use std::io::BufRead;

use log::warn;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::embedding::EmbeddingTable;
use crate::graph::{Graph, NodeId};

use super::logistic::{LogisticConfig, LogisticModel};
use super::metrics::{auc, macro_f1};
use super::{split_count, EvalError};

/// Nodes with category labels, restricted to the most frequent categories
/// and split 70/30.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationSet {
    pub nodes: Vec<NodeId>,
    /// Category indices per node (exactly one for single-label data).
    pub labels: Vec<Vec<usize>>,
    pub categories: Vec<String>,
    pub multi_label: bool,
    /// Indices into `nodes`.
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

impl ClassificationSet {
    /// Keeps the `top` most frequent categories (ties broken by name);
    /// nodes left without a category are dropped.
    pub fn new<R: Rng + ?Sized>(entries: Vec<(NodeId, Vec<String>)>, top: usize, rng: &mut R) -> Self {
        let mut counts: HashMap<&str, usize> = HashMap::new();
        for (_, cats) in &entries {
            for c in cats {
                *counts.entry(c.as_str()).or_default() += 1;
            }
        }
        let mut ranked: Vec<(&str, usize)> = counts.into_iter().collect();
        ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
        ranked.truncate(top);
        let mut categories: Vec<String> = ranked.iter().map(|(c, _)| c.to_string()).collect();
        categories.sort();
        let index: HashMap<&str, usize> = categories.iter().enumerate().map(|(i, c)| (c.as_str(), i)).collect();

        let mut nodes = Vec::new();
        let mut labels = Vec::new();
        for (v, cats) in &entries {
            let mut kept: Vec<usize> = cats.iter().filter_map(|c| index.get(c.as_str()).copied()).collect();
            kept.sort_unstable();
            kept.dedup();
            if !kept.is_empty() {
                nodes.push(*v);
                labels.push(kept);
            }
        }
        let multi_label = labels.iter().any(|l| l.len() > 1);
        let mut order: Vec<usize> = (0..nodes.len()).collect();
        order.shuffle(rng);
        let cut = split_count(order.len());
        let test = order.split_off(cut);
        ClassificationSet {
            nodes,
            labels,
            categories,
            multi_label,
            train: order,
            test,
        }
    }

    /// Uses one category per node from `assignment[v]`.
    pub fn from_assignment<R: Rng + ?Sized>(g: &Graph, assignment: &[usize], rng: &mut R) -> Self {
        let entries = g
            .nodes()
            .map(|v| (v, vec![format!("c{}", assignment[v.index()])]))
            .collect();
        Self::new(entries, usize::MAX, rng)
    }
}

/// Reads `node_label category [category ...]` lines.
pub fn read_label_file<R: BufRead>(input: R) -> Result<Vec<(String, Vec<String>)>, EvalError> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let mut fields = t.split_whitespace();
        let node = fields.next().unwrap().to_string();
        let cats: Vec<String> = fields.map(str::to_string).collect();
        if cats.is_empty() {
            return Err(EvalError::Parse {
                line: i + 1,
                message: format!("node `{node}` has no category"),
            });
        }
        out.push((node, cats));
    }
    Ok(out)
}

/// Resolves label-file node names against `g`; unknown names are an error.
pub fn resolve_labels(g: &Graph, entries: Vec<(String, Vec<String>)>) -> Result<Vec<(NodeId, Vec<String>)>, EvalError> {
    let missing: Vec<String> = entries
        .iter()
        .filter(|(n, _)| g.node_id(n).is_err())
        .map(|(n, _)| n.clone())
        .collect();
    if !missing.is_empty() {
        return Err(EvalError::UnknownLabels(missing));
    }
    Ok(entries.into_iter().map(|(n, c)| (g.node_id(&n).unwrap(), c)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassificationScore {
    MacroF1(f64),
    MeanAuc(f64),
}

impl ClassificationScore {
    pub fn value(self) -> f64 {
        match self {
            ClassificationScore::MacroF1(v) | ClassificationScore::MeanAuc(v) => v,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassificationScore::MacroF1(_) => "macro_f1",
            ClassificationScore::MeanAuc(_) => "mean_auc",
        }
    }
}

/// Trains one-vs-rest classifiers on the train split of `set` using the
/// rows of `features` and scores the test split.
pub fn node_classify(set: &ClassificationSet, features: &EmbeddingTable) -> Result<ClassificationScore, EvalError> {
    let rows = |idx: &[usize]| -> Vec<&[f64]> { idx.iter().map(|&i| features.row(set.nodes[i])).collect() };
    let has = |i: usize, c: usize| set.labels[i].contains(&c);

    let mut usable = Vec::new();
    for (c, name) in set.categories.iter().enumerate() {
        let in_train = set.train.iter().filter(|&&i| has(i, c)).count();
        if in_train == 0 {
            warn!("category `{name}` absent from the training split; dropped");
        } else if in_train == set.train.len() {
            warn!("category `{name}` covers the whole training split; dropped");
        } else {
            usable.push(c);
        }
    }
    if usable.len() < 2 && !(set.multi_label && usable.len() == 1) {
        return Err(EvalError::TooFewCategories(usable.len()));
    }

    let train_x = rows(&set.train);
    let models: Vec<LogisticModel> = usable
        .iter()
        .map(|&c| {
            let y: Vec<bool> = set.train.iter().map(|&i| has(i, c)).collect();
            LogisticModel::fit(&train_x, &y, LogisticConfig::default())
        })
        .collect::<Result<_, _>>()?;

    if set.multi_label {
        let test_x = rows(&set.test);
        let aucs: Vec<f64> = usable
            .iter()
            .zip(&models)
            .filter_map(|(&c, m)| {
                let scores: Vec<f64> = test_x.iter().map(|x| m.score(x)).collect();
                let truth: Vec<bool> = set.test.iter().map(|&i| has(i, c)).collect();
                auc(&scores, &truth)
            })
            .collect();
        if aucs.is_empty() {
            return Err(EvalError::TooFewCategories(0));
        }
        return Ok(ClassificationScore::MeanAuc(
            aucs.iter().sum::<f64>() / aucs.len() as f64,
        ));
    }

    // Test nodes whose category was dropped cannot be predicted.
    let test: Vec<usize> = set
        .test
        .iter()
        .copied()
        .filter(|&i| usable.contains(&set.labels[i][0]))
        .collect();
    if test.is_empty() {
        return Err(EvalError::EmptySplit);
    }
    let truth: Vec<usize> = test.iter().map(|&i| set.labels[i][0]).collect();
    let predicted: Vec<usize> = rows(&test)
        .iter()
        .map(|x| {
            let best = models
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.score(x).total_cmp(&b.1.score(x)))
                .unwrap()
                .0;
            usable[best]
        })
        .collect();
    Ok(ClassificationScore::MacroF1(macro_f1(
        &truth,
        &predicted,
        set.categories.len(),
    )))
}
