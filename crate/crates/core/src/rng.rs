//! Seeded random sub-streams.
//!
//! Every random decision in a run derives from one `u64` seed. Each stage
//! (search, sampling, initialization, splits) reads from its own ChaCha
//! stream so any stage can be reproduced in isolation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The RNG used throughout the crate.
pub type Rng = ChaCha8Rng;

/// Named sub-streams of a run seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u32)]
pub enum Stream {
    Search = 1,
    Sampling = 2,
    Init = 3,
    Split = 4,
    Likelihood = 5,
    LinkPairs = 6,
    Classifier = 7,
    Generator = 8,
}

/// Returns the RNG for `stream` at position `index` (usually the iteration).
pub fn stream_rng(seed: u64, stream: Stream, index: u32) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((stream as u64) << 32) | index as u64);
    rng
}
