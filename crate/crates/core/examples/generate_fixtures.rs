//! Writes a block-model edge list and label file usable with the CLI.
//!
//! cargo run --example generate_fixtures -- data/

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use spreadembed::generate::stochastic_block_model;
use spreadembed::rng::{stream_rng, Stream};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    let (g, blocks) = stochastic_block_model(&[100, 100], 0.1, 0.01, &mut stream_rng(0, Stream::Generator, 0));
    let mut edges = BufWriter::new(File::create(dir.join("sbm_edges.txt"))?);
    for (u, v) in g.edges() {
        writeln!(edges, "{} {}", g.label(u), g.label(v))?;
    }
    edges.flush()?;
    let mut labels = BufWriter::new(File::create(dir.join("sbm_labels.txt"))?);
    for v in g.nodes() {
        writeln!(labels, "{} block{}", g.label(v), blocks[v.index()])?;
    }
    labels.flush()?;
    println!("{} nodes, {} edges", g.node_count(), g.edge_count());
    Ok(())
}
