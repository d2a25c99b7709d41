//! Author–paper network with one mapping matrix per node type. Scores in
//! the shared benchmark space rank true author–paper links highest.
//!
//! cargo run --example heterogeneous_bipartite

use spreadembed::generate::toy_bipartite;
use spreadembed::hetero::benchmark_score;
use spreadembed::{train_hetero, TrainConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = toy_bipartite();
    let config = TrainConfig {
        dimension: 4,
        learning_rate: 0.05,
        negative: 1,
        max_iterations: 100,
        ..TrainConfig::default()
    };
    let out = train_hetero(&g, &config)?;
    let maps = out.model.matrices.as_ref().expect("typed graph");
    println!(
        "log-likelihood {:.3} -> {:.3}",
        out.likelihood[0],
        out.likelihood.last().unwrap()
    );
    for (t, name) in g.type_names().iter().enumerate() {
        let m = maps.matrix(t);
        let d = maps.dimension();
        let drift: f64 = (0..d * d)
            .map(|i| (m[i] - if i % (d + 1) == 0 { 1.0 } else { 0.0 }).abs())
            .sum();
        println!("{name}: total |W - I| = {drift:.5}");
    }

    let authors: Vec<_> = g
        .nodes()
        .filter(|&v| g.type_names()[g.node_type(v)] == "author")
        .collect();
    let papers: Vec<_> = g
        .nodes()
        .filter(|&v| g.type_names()[g.node_type(v)] == "paper")
        .collect();
    for &a in &authors {
        let cells: Vec<String> = papers
            .iter()
            .map(|&p| {
                let s = benchmark_score(&g, a, p, &out.model.embeddings, maps);
                let mark = if g.is_adjacent(a, p) { "*" } else { " " };
                format!("{}{mark}{s:+.4}", g.label(p))
            })
            .collect();
        println!("{}: {}", g.label(a), cells.join("  "));
    }
    Ok(())
}
