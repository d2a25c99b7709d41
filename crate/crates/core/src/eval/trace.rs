//! Metrics recorded after every training iteration.

use std::io::{self, Write};

use crate::graph::Graph;
use crate::trainer::{Mode, TrainConfig, Trainer};

use super::classify::{node_classify, ClassificationSet};
use super::link::{comparison_vectors, link_predict, LinkDataset, PairFeature};
use super::EvalError;

#[derive(Debug, Clone, Copy)]
pub enum TraceHook<'a> {
    Likelihood,
    LinkAccuracy(&'a LinkDataset, PairFeature),
    Classification(&'a ClassificationSet),
}

impl TraceHook<'_> {
    fn column(&self) -> &'static str {
        match self {
            TraceHook::Likelihood => "likelihood",
            TraceHook::LinkAccuracy(..) => "link_accuracy",
            TraceHook::Classification(set) if set.multi_label => "mean_auc",
            TraceHook::Classification(_) => "macro_f1",
        }
    }
}

/// Rows of `iteration, metric...`; row 0 is the initial state.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricTable {
    pub columns: Vec<String>,
    pub rows: Vec<(usize, Vec<f64>)>,
}

impl MetricTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let c = self.columns.iter().position(|n| n == name)?;
        Some(self.rows.iter().map(|(_, r)| r[c]).collect())
    }

    /// Comma-separated with a header row.
    pub fn write_delimited<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "iteration,{}", self.columns.join(","))?;
        for (i, row) in &self.rows {
            let cells: Vec<String> = row.iter().map(f64::to_string).collect();
            writeln!(out, "{i},{}", cells.join(","))?;
        }
        Ok(())
    }
}

/// Trains for `config.max_iterations` and evaluates every hook before the
/// first iteration and after each one.
pub fn iteration_trace(
    g: &Graph,
    config: &TrainConfig,
    mode: Mode,
    hooks: &[TraceHook<'_>],
) -> Result<MetricTable, EvalError> {
    let mut trainer = Trainer::new(g, config.clone(), mode)?;
    let mut table = MetricTable {
        columns: hooks.iter().map(|h| h.column().to_string()).collect(),
        rows: Vec::with_capacity(config.max_iterations + 1),
    };
    loop {
        let mut row = Vec::with_capacity(hooks.len());
        for hook in hooks {
            row.push(match hook {
                TraceHook::Likelihood => trainer.likelihood(),
                TraceHook::LinkAccuracy(data, feature) => {
                    link_predict(data, &comparison_vectors(g, trainer.model()), *feature)?
                }
                TraceHook::Classification(set) => node_classify(set, &trainer.model().embeddings)?.value(),
            });
        }
        table.rows.push((trainer.iteration(), row));
        if trainer.iteration() >= config.max_iterations {
            break;
        }
        trainer.step()?;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::toy_connected;

    #[test]
    fn zero_iterations_give_init_row() {
        let g = toy_connected();
        let cfg = TrainConfig {
            dimension: 2,
            max_iterations: 0,
            ..TrainConfig::default()
        };
        let t = iteration_trace(&g, &cfg, Mode::Homogeneous, &[TraceHook::Likelihood]).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0].0, 0);
        let mut buf = Vec::new();
        t.write_delimited(&mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("iteration,likelihood\n0,"));
    }
}
