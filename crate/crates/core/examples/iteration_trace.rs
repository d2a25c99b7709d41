//! Records likelihood, link accuracy and macro-F1 after every iteration
//! and prints the table as CSV.
//!
//! cargo run --release --example iteration_trace

use spreadembed::eval::{build_link_dataset, iteration_trace, ClassificationSet, PairFeature, TraceHook};
use spreadembed::generate::stochastic_block_model;
use spreadembed::rng::{stream_rng, Stream};
use spreadembed::trainer::{Mode, TrainConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = 0;
    let (g, blocks) = stochastic_block_model(&[100, 100], 0.1, 0.01, &mut stream_rng(seed, Stream::Generator, 0));
    let pairs = build_link_dataset(&g, &mut stream_rng(seed, Stream::LinkPairs, 0))?;
    let set = ClassificationSet::from_assignment(&g, &blocks, &mut stream_rng(seed, Stream::Split, 0));
    let config = TrainConfig {
        dimension: 16,
        seed,
        ..TrainConfig::default()
    };
    let table = iteration_trace(
        &g,
        &config,
        Mode::Homogeneous,
        &[
            TraceHook::Likelihood,
            TraceHook::LinkAccuracy(&pairs, PairFeature::AbsDifference),
            TraceHook::Classification(&set),
        ],
    )?;
    table.write_delimited(std::io::stdout().lock())?;
    Ok(())
}
