//! Seeding conventions.
//!
//! All randomness comes from [`SimRng`], ChaCha with 8 rounds, seeded through
//! `SeedableRng::seed_from_u64`. Replica `r` of an ensemble with master seed
//! `s` uses seed `s + r` (wrapping). Within one seed, independent purposes draw
//! from distinct ChaCha streams so that, for example, the network and the
//! epidemic run on it never share random numbers.

use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng as SimRng;

/// ChaCha stream used for network generation.
pub const STREAM_NETWORK: u64 = 0;
/// ChaCha stream used for placing the initial infectives.
pub const STREAM_PLACEMENT: u64 = 1;
/// ChaCha stream used for the epidemic dynamics.
pub const STREAM_DYNAMICS: u64 = 2;

pub fn rng_for(seed: u64, stream: u64) -> SimRng {
    let mut rng = SimRng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Seed of replica `index` under `master`.
pub fn replica_seed(master: u64, index: usize) -> u64 {
    master.wrapping_add(index as u64)
}
