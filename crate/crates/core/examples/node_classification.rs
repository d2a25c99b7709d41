//! Recovers stochastic-block-model blocks from embeddings with a logistic
//! classifier, and compares against untrained (random) embeddings.
//!
//! cargo run --release --example node_classification

use spreadembed::eval::{node_classify, ClassificationSet};
use spreadembed::generate::stochastic_block_model;
use spreadembed::rng::{stream_rng, Stream};
use spreadembed::{train, EmbeddingTable, TrainConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for seed in 0..5 {
        let (g, blocks) = stochastic_block_model(&[100, 100], 0.1, 0.01, &mut stream_rng(seed, Stream::Generator, 0));
        let set = ClassificationSet::from_assignment(&g, &blocks, &mut stream_rng(seed, Stream::Split, 0));
        let config = TrainConfig {
            dimension: 16,
            seed,
            ..TrainConfig::default()
        };
        let trained = train(&g, &config)?.model.embeddings;
        let random = EmbeddingTable::random(g.node_count(), 16, &mut stream_rng(seed, Stream::Init, 99));
        let a = node_classify(&set, &trained)?;
        let b = node_classify(&set, &random)?;
        println!(
            "seed {seed}: {} trained {:.3}, random {:.3}",
            a.name(),
            a.value(),
            b.value()
        );
    }
    Ok(())
}
