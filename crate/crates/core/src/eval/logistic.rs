//! L2-regularized logistic regression fit by full-batch gradient descent.
//!
//! Features are standardized with training-set statistics. The step size
//! starts at `1/L`, where `L` bounds the curvature of the loss, and decays
//! as `1/(1 + t/T)`, so every step decreases the loss.

use crate::math::{log_bernoulli, sigmoid};

use super::EvalError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogisticConfig {
    /// Weight of `½‖w‖²` (the bias is not penalized).
    pub l2: f64,
    pub steps: usize,
}

impl Default for LogisticConfig {
    fn default() -> Self {
        LogisticConfig { l2: 1e-3, steps: 500 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogisticModel {
    weights: Vec<f64>,
    bias: f64,
    mean: Vec<f64>,
    scale: Vec<f64>,
    /// Regularized training loss before the first step and after each step.
    pub loss_trace: Vec<f64>,
}

impl LogisticModel {
    pub fn fit<X: AsRef<[f64]>>(features: &[X], labels: &[bool], config: LogisticConfig) -> Result<Self, EvalError> {
        assert_eq!(features.len(), labels.len());
        let positives = labels.iter().filter(|&&l| l).count();
        if positives == 0 || positives == labels.len() {
            return Err(EvalError::SingleClass);
        }
        let n = features.len() as f64;
        let d = features[0].as_ref().len();

        let mut mean = vec![0.0; d];
        for x in features {
            for (m, v) in mean.iter_mut().zip(x.as_ref()) {
                *m += v / n;
            }
        }
        let mut scale = vec![0.0; d];
        for x in features {
            for ((s, v), m) in scale.iter_mut().zip(x.as_ref()).zip(&mean) {
                *s += (v - m) * (v - m) / n;
            }
        }
        for s in &mut scale {
            *s = if *s > 1e-24 { s.sqrt() } else { 1.0 };
        }
        let xs: Vec<Vec<f64>> = features
            .iter()
            .map(|x| standardize(x.as_ref(), &mean, &scale))
            .collect();

        let sq_norm: f64 = xs.iter().map(|x| x.iter().map(|v| v * v).sum::<f64>()).sum::<f64>() / n;
        let base_step = 1.0 / (0.25 * (sq_norm + 1.0) + config.l2);

        let mut model = LogisticModel {
            weights: vec![0.0; d],
            bias: 0.0,
            mean,
            scale,
            loss_trace: Vec::with_capacity(config.steps + 1),
        };
        let mut grad_w = vec![0.0; d];
        for t in 0..=config.steps {
            grad_w.iter_mut().for_each(|g| *g = 0.0);
            let mut grad_b = 0.0;
            let mut loss = 0.0;
            for (x, &y) in xs.iter().zip(labels) {
                let z = model.score_standardized(x);
                loss -= log_bernoulli(y, z);
                let r = sigmoid(z) - if y { 1.0 } else { 0.0 };
                for (g, v) in grad_w.iter_mut().zip(x) {
                    *g += r * v;
                }
                grad_b += r;
            }
            let penalty: f64 = model.weights.iter().map(|w| w * w).sum::<f64>();
            model.loss_trace.push(loss / n + 0.5 * config.l2 * penalty);
            if t == config.steps {
                break;
            }
            let step = base_step / (1.0 + t as f64 / config.steps as f64);
            for (w, g) in model.weights.iter_mut().zip(&grad_w) {
                *w -= step * (g / n + config.l2 * *w);
            }
            model.bias -= step * grad_b / n;
        }
        Ok(model)
    }

    fn score_standardized(&self, x: &[f64]) -> f64 {
        self.bias + x.iter().zip(&self.weights).map(|(a, b)| a * b).sum::<f64>()
    }

    /// Decision value; positive means class `true`.
    pub fn score(&self, x: &[f64]) -> f64 {
        self.score_standardized(&standardize(x, &self.mean, &self.scale))
    }

    pub fn predict(&self, x: &[f64]) -> bool {
        self.score(x) > 0.0
    }
}

fn standardize(x: &[f64], mean: &[f64], scale: &[f64]) -> Vec<f64> {
    x.iter().zip(mean).zip(scale).map(|((v, m), s)| (v - m) / s).collect()
}
