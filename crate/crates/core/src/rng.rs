//! Deterministic randomness derived from a single master seed.
//!
//! Every random choice in the solver draws from a ChaCha stream keyed by
//! the master seed and a tag path, so results do not depend on the order
//! or thread in which subproblems run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SolverRng = ChaCha8Rng;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for the subtask identified by `tags`.
pub fn derive_seed(seed: u64, tags: &[u64]) -> u64 {
    tags.iter().fold(splitmix(seed), |acc, &t| splitmix(acc ^ splitmix(t.wrapping_add(0x5851_f42d_4c95_7f2d))))
}

pub fn rng_for(seed: u64, tags: &[u64]) -> SolverRng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, tags))
}

/// Fresh seed from OS entropy, for runs without an explicit seed.
pub fn entropy_seed() -> u64 {
    rand::thread_rng().gen()
}
