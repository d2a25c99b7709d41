//! Frontier-parallel training: every frontier of the activation order is
//! processed concurrently. Results vary between runs, so compare quality
//! rather than bits.
//!
//! cargo run --release --example parallel_training

use std::time::Instant;

use spreadembed::eval::{node_classify, ClassificationSet};
use spreadembed::generate::stochastic_block_model;
use spreadembed::rng::{stream_rng, Stream};
use spreadembed::{train, TrainConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (g, blocks) = stochastic_block_model(&[1000, 1000], 0.01, 0.001, &mut stream_rng(0, Stream::Generator, 0));
    let set = ClassificationSet::from_assignment(&g, &blocks, &mut stream_rng(0, Stream::Split, 0));
    for parallel in [false, true] {
        let config = TrainConfig {
            dimension: 32,
            max_iterations: 10,
            parallel,
            ..TrainConfig::default()
        };
        let start = Instant::now();
        let out = train(&g, &config)?;
        let elapsed = start.elapsed();
        let score = node_classify(&set, &out.model.embeddings)?;
        println!(
            "parallel={parallel}: {:.2?}, likelihood {:.1}, {} {:.3}",
            elapsed,
            out.likelihood.last().unwrap(),
            score.name(),
            score.value()
        );
    }
    Ok(())
}
