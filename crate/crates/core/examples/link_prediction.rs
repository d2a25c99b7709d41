//! Link prediction on a two-block stochastic block model, averaged over
//! five seeds, comparing absolute and signed embedding differences.
//!
//! cargo run --release --example link_prediction

use spreadembed::eval::link::comparison_vectors;
use spreadembed::eval::{build_link_dataset, link_predict, PairFeature};
use spreadembed::generate::stochastic_block_model;
use spreadembed::rng::{stream_rng, Stream};
use spreadembed::{train, TrainConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (mut abs_sum, mut signed_sum) = (0.0, 0.0);
    for seed in 0..5 {
        let (g, _) = stochastic_block_model(&[100, 100], 0.1, 0.01, &mut stream_rng(seed, Stream::Generator, 0));
        let config = TrainConfig {
            dimension: 16,
            seed,
            ..TrainConfig::default()
        };
        let model = train(&g, &config)?.model;
        let pairs = build_link_dataset(&g, &mut stream_rng(seed, Stream::LinkPairs, 0))?;
        let vectors = comparison_vectors(&g, &model);
        let abs = link_predict(&pairs, &vectors, PairFeature::AbsDifference)?;
        let signed = link_predict(&pairs, &vectors, PairFeature::Difference)?;
        println!(
            "seed {seed}: {} edges, accuracy |diff| {abs:.3}, signed diff {signed:.3}",
            g.edge_count()
        );
        abs_sum += abs;
        signed_sum += signed;
    }
    println!(
        "mean accuracy |diff| {:.3}, signed diff {:.3}",
        abs_sum / 5.0,
        signed_sum / 5.0
    );
    Ok(())
}
