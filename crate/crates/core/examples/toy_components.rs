//! Three disconnected components land in separate regions of the plane.
//!
//! cargo run --example toy_components

use spreadembed::generate::toy_components;
use spreadembed::{train, TrainConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = toy_components();
    let config = TrainConfig {
        dimension: 2,
        learning_rate: 0.05,
        ..TrainConfig::default()
    };
    let emb = train(&g, &config)?.model.embeddings;

    let count = g.components().count;
    let mut centroids = vec![[0.0f64; 2]; count];
    let mut sizes = vec![0.0; count];
    for v in g.nodes() {
        let c = g.component(v);
        centroids[c][0] += emb.row(v)[0];
        centroids[c][1] += emb.row(v)[1];
        sizes[c] += 1.0;
    }
    for (c, s) in centroids.iter_mut().zip(&sizes) {
        c[0] /= s;
        c[1] /= s;
    }
    for (i, c) in centroids.iter().enumerate() {
        let members: Vec<&str> = g.nodes().filter(|&v| g.component(v) == i).map(|v| g.label(v)).collect();
        println!(
            "component {i} {{{}}} centroid ({:+.3}, {:+.3})",
            members.join(","),
            c[0],
            c[1]
        );
    }
    Ok(())
}
