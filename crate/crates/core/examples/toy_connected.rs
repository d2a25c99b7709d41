//! Trains 2-D embeddings of the eight-node toy network and shows that the
//! structurally equivalent nodes `e` and `f` end up next to each other.
//!
//! cargo run --example toy_connected

use spreadembed::generate::toy_connected;
use spreadembed::{train, TrainConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = toy_connected();
    let config = TrainConfig {
        dimension: 2,
        learning_rate: 0.05,
        negative: 1,
        ..TrainConfig::default()
    };
    let out = train(&g, &config)?;
    println!(
        "log-likelihood {:.3} -> {:.3}",
        out.likelihood[0],
        out.likelihood.last().unwrap()
    );

    let emb = &out.model.embeddings;
    for v in g.nodes() {
        let r = emb.row(v);
        println!("{} {:+.4} {:+.4}", g.label(v), r[0], r[1]);
    }
    let dist = |a: &str, b: &str| {
        let (x, y) = (emb.row(g.node_id(a).unwrap()), emb.row(g.node_id(b).unwrap()));
        x.iter().zip(y).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt()
    };
    println!("distance e-f {:.4}, distance a-h {:.4}", dist("e", "f"), dist("a", "h"));
    Ok(())
}
