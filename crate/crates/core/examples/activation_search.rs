//! Prints activation orders: frontier by frontier, restarting in every
//! connected component.
//!
//! cargo run --example activation_search

use spreadembed::generate::{toy_components, toy_connected};
use spreadembed::rng::{stream_rng, Stream};
use spreadembed::search::spread_search_from;
use spreadembed::spread_search;

fn main() {
    let g = toy_components();
    for seed in 0..3 {
        let order = spread_search(&g, &mut stream_rng(seed, Stream::Search, 0));
        let frontiers: Vec<String> = order
            .frontiers()
            .map(|f| f.iter().map(|&v| g.label(v)).collect::<Vec<_>>().join(" "))
            .collect();
        let seeds: Vec<&str> = order.seeds().iter().map(|&v| g.label(v)).collect();
        println!(
            "seed {seed}: [{}]  sources {seeds:?}  enqueued {}",
            frontiers.join("] ["),
            order.enqueue_count()
        );
    }

    let g = toy_connected();
    let d = g.node_id("d").unwrap();
    let order = spread_search_from(&g, d, &mut stream_rng(0, Stream::Search, 0));
    for (depth, f) in order.frontiers().enumerate() {
        let labels: Vec<&str> = f.iter().map(|&v| g.label(v)).collect();
        println!("depth {depth}: {}", labels.join(" "));
    }
}
