//! Shared fixtures for the criterion benchmarks.

use nk_muddle::{Configuration, InteractionScheme, Landscape};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn landscape(n: usize, k: usize) -> Landscape {
    Landscape::build(17, n, k, InteractionScheme::Random).expect("valid parameters")
}

pub fn start(n: usize) -> Configuration {
    Configuration::random(&mut ChaCha8Rng::seed_from_u64(99), n)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
