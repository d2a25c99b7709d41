//! Training loop: one spreading-activation sweep per iteration.
//!
//! Every iteration draws a fresh activation order, then walks it front to
//! back. Each visited node gets a new sample set and one activation step.
//! Heterogeneous runs finish the iteration with a single mapping-matrix
//! step over all pairs sampled during the sweep.
//!
//! The likelihood trace is evaluated on one fixed set of samples drawn
//! before training, so successive values are comparable.

use rayon::prelude::*;

use crate::embedding::EmbeddingTable;
use crate::graph::Graph;
use crate::hetero::{self, MappingMatrices};
use crate::homo::{self, NonFinite, SharedTable};
use crate::rng::{stream_rng, Stream};
use crate::sampling::{draw_all, draw_samples, pair_stream, SampleSet};
use crate::search::spread_search;

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub dimension: usize,
    /// Negatives drawn per positive neighbor.
    pub negative: usize,
    pub learning_rate: f64,
    pub max_iterations: usize,
    pub seed: u64,
    /// Mapping-matrix learning rate; `None` means `learning_rate / 10`.
    pub matrix_learning_rate: Option<f64>,
    /// Keep mapping matrices at identity.
    pub freeze_matrices: bool,
    /// Process each frontier concurrently with racing writes. Results are
    /// not reproducible in this mode.
    pub parallel: bool,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            dimension: 128,
            negative: 5,
            learning_rate: 0.025,
            max_iterations: 30,
            seed: 0,
            matrix_learning_rate: None,
            freeze_matrices: false,
            parallel: false,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<(), TrainError> {
        let bad = |m: &str| Err(TrainError::Config(m.to_string()));
        if self.dimension == 0 {
            return bad("dimension must be positive");
        }
        if self.negative == 0 {
            return bad("negative coefficient must be positive");
        }
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return bad("learning rate must be a positive finite number");
        }
        if let Some(r) = self.matrix_learning_rate {
            if !(r.is_finite() && r >= 0.0) {
                return bad("matrix learning rate must be a non-negative finite number");
            }
        }
        Ok(())
    }

    pub fn matrix_rate(&self) -> f64 {
        self.matrix_learning_rate.unwrap_or(self.learning_rate / 10.0)
    }
}

/// Parameters of a trained model.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub embeddings: EmbeddingTable,
    /// Present for heterogeneous training.
    pub matrices: Option<MappingMatrices>,
}

#[derive(Debug, thiserror::Error)]
pub enum TrainError {
    #[error("invalid training configuration: {0}")]
    Config(String),
    #[error("training diverged in iteration {iteration}: {cause}; try a smaller learning rate")]
    Diverged {
        iteration: usize,
        cause: String,
        /// State at the end of the last complete iteration.
        last_finite: Box<Model>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainOutput {
    pub model: Model,
    /// Likelihood before training followed by one value per iteration.
    pub likelihood: Vec<f64>,
    /// Scalar multiply-adds per iteration (embedding steps, matrix step).
    pub work: Vec<IterationWork>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IterationWork {
    pub embedding: usize,
    pub matrices: usize,
    pub enqueued: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Homogeneous,
    Heterogeneous,
}

/// Stepwise trainer, for callers that evaluate between iterations.
pub struct Trainer<'g> {
    graph: &'g Graph,
    config: TrainConfig,
    model: Model,
    eval_samples: Vec<SampleSet>,
    iteration: usize,
}

impl<'g> Trainer<'g> {
    pub fn new(graph: &'g Graph, config: TrainConfig, mode: Mode) -> Result<Self, TrainError> {
        config.validate()?;
        if mode == Mode::Heterogeneous && config.parallel {
            return Err(TrainError::Config(
                "parallel mode is only available for homogeneous training".into(),
            ));
        }
        let d = config.dimension;
        let embeddings = EmbeddingTable::random(graph.node_count(), d, &mut stream_rng(config.seed, Stream::Init, 0));
        let matrices = match mode {
            Mode::Homogeneous => None,
            Mode::Heterogeneous => Some(MappingMatrices::identity(graph.type_count(), d)),
        };
        let eval_samples = draw_all(
            graph,
            config.negative,
            &mut stream_rng(config.seed, Stream::Likelihood, 0),
        );
        Ok(Trainer {
            graph,
            config,
            model: Model { embeddings, matrices },
            eval_samples,
            iteration: 0,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn config(&self) -> &TrainConfig {
        &self.config
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn into_model(self) -> Model {
        self.model
    }

    /// Completed iterations.
    pub fn iteration(&self) -> usize {
        self.iteration
    }

    /// Sampled log-likelihood on the fixed evaluation samples.
    pub fn likelihood(&self) -> f64 {
        match &self.model.matrices {
            None => homo::log_likelihood(self.graph, &self.model.embeddings, &self.eval_samples),
            Some(m) => hetero::log_likelihood(self.graph, &self.model.embeddings, m, &self.eval_samples),
        }
    }

    /// Runs one sweep. On divergence the model is restored to its state
    /// before the sweep.
    pub fn step(&mut self) -> Result<IterationWork, TrainError> {
        let index = self.iteration as u32;
        let seed = self.config.seed;
        let g = self.graph;
        let order = spread_search(g, &mut stream_rng(seed, Stream::Search, index));
        let mut sampling = stream_rng(seed, Stream::Sampling, index);
        let snapshot = self.model.clone();
        let k = self.config.negative;
        let lr = self.config.learning_rate;
        let mut work = IterationWork {
            enqueued: order.enqueue_count(),
            ..IterationWork::default()
        };

        let diverged = |cause: String, last: Model| TrainError::Diverged {
            iteration: index as usize,
            cause,
            last_finite: Box::new(last),
        };
        let node_err = |e: NonFinite| format!("non-finite embedding for node `{}`", g.label(e.node));

        match self.model.matrices.as_mut() {
            None if self.config.parallel => {
                let shared = SharedTable::new(&self.model.embeddings);
                for (f, frontier) in order.frontiers().enumerate() {
                    let results: Result<Vec<usize>, NonFinite> = frontier
                        .par_iter()
                        .enumerate()
                        .map(|(i, &y)| {
                            let mut rng = stream_rng(seed ^ ((f as u64) << 32 | i as u64), Stream::Sampling, index);
                            shared.update_center(&draw_samples(g, y, k, &mut rng), lr)
                        })
                        .collect();
                    match results {
                        Ok(w) => work.embedding += w.iter().sum::<usize>(),
                        Err(e) => return Err(diverged(node_err(e), snapshot)),
                    }
                }
                self.model.embeddings = shared.into_table();
            }
            None => {
                for (_, set) in pair_stream(g, &order, k, &mut sampling) {
                    match homo::update_center(&set, &mut self.model.embeddings, lr) {
                        Ok(w) => work.embedding += w,
                        Err(e) => {
                            let cause = node_err(e);
                            self.model = snapshot.clone();
                            return Err(diverged(cause, snapshot));
                        }
                    }
                }
            }
            Some(maps) => {
                let mut sweep = Vec::with_capacity(g.node_count());
                for (_, set) in pair_stream(g, &order, k, &mut sampling) {
                    match hetero::hetero_update_center(g, &set, &mut self.model.embeddings, maps, lr) {
                        Ok(w) => work.embedding += w,
                        Err(e) => {
                            let cause = node_err(e);
                            self.model = snapshot.clone();
                            return Err(diverged(cause, snapshot));
                        }
                    }
                    sweep.push(set);
                }
                if !self.config.freeze_matrices {
                    let rate = self.config.matrix_rate();
                    match hetero::update_mapping_matrices(g, &self.model.embeddings, maps, &sweep, rate) {
                        Ok(w) => work.matrices = w,
                        Err(e) => {
                            let cause = format!("non-finite mapping matrix for type `{}`", g.type_names()[e.node_type]);
                            self.model = snapshot.clone();
                            return Err(diverged(cause, snapshot));
                        }
                    }
                }
            }
        }
        self.iteration += 1;
        Ok(work)
    }

    /// Runs the remaining iterations and collects the traces.
    pub fn run(mut self) -> Result<TrainOutput, TrainError> {
        let mut likelihood = vec![self.likelihood()];
        let mut work = Vec::new();
        while self.iteration < self.config.max_iterations {
            work.push(self.step()?);
            likelihood.push(self.likelihood());
        }
        Ok(TrainOutput {
            model: self.model,
            likelihood,
            work,
        })
    }
}

/// Trains homogeneous embeddings.
pub fn train(g: &Graph, config: &TrainConfig) -> Result<TrainOutput, TrainError> {
    Trainer::new(g, config.clone(), Mode::Homogeneous)?.run()
}

/// Trains embeddings and per-type mapping matrices.
pub fn train_hetero(g: &Graph, config: &TrainConfig) -> Result<TrainOutput, TrainError> {
    Trainer::new(g, config.clone(), Mode::Heterogeneous)?.run()
}

/// Homogeneous for single-type graphs, heterogeneous otherwise.
pub fn mode_for(g: &Graph) -> Mode {
    if g.type_count() > 1 {
        Mode::Heterogeneous
    } else {
        Mode::Homogeneous
    }
}
