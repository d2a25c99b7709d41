//! Trains the block model, projects embeddings onto two principal
//! components and writes `label,x,y` CSV to stdout for plotting.
//!
//! cargo run --release --example export_coordinates > coords.csv

use spreadembed::export::{pca_2d, write_coordinates};
use spreadembed::generate::stochastic_block_model;
use spreadembed::rng::{stream_rng, Stream};
use spreadembed::{train, TrainConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (g, blocks) = stochastic_block_model(&[100, 100], 0.1, 0.01, &mut stream_rng(0, Stream::Generator, 0));
    let config = TrainConfig {
        dimension: 16,
        ..TrainConfig::default()
    };
    let emb = train(&g, &config)?.model.embeddings;
    let coords = pca_2d(&emb);

    let mut means = [[0.0; 2]; 2];
    for (c, &b) in coords.iter().zip(&blocks) {
        means[b][0] += c[0] / 100.0;
        means[b][1] += c[1] / 100.0;
    }
    eprintln!("block means: {means:?}");
    write_coordinates(g.labels(), &coords, std::io::stdout().lock())?;
    Ok(())
}
