//! Seed derivation for the experiment harness.
//!
//! Every random stream is keyed by `(master_seed, replication, k, purpose)`
//! and, for algorithm-owned purposes, the algorithm id. Landscape and
//! initial-configuration streams ignore the algorithm id so every algorithm
//! in a replication sees the same instance.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StreamPurpose {
    Landscape,
    Init,
    Partition,
    Search,
    /// One run of a parallel-update sweep, by position in the tau grid.
    TauRun(usize),
}

impl StreamPurpose {
    fn tag(self) -> u64 {
        match self {
            StreamPurpose::Landscape => 0x6c61_6e64,
            StreamPurpose::Init => 0x696e_6974,
            StreamPurpose::Partition => 0x7061_7274,
            StreamPurpose::Search => 0x7365_6172,
            StreamPurpose::TauRun(_) => 0x7461_7572,
        }
    }

    fn shared_across_algorithms(self) -> bool {
        matches!(self, StreamPurpose::Landscape | StreamPurpose::Init)
    }
}

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

struct Mixer(u64);

impl Mixer {
    fn absorb(&mut self, word: u64) {
        self.0 = splitmix64(self.0 ^ word);
    }

    fn absorb_bytes(&mut self, bytes: &[u8]) {
        self.absorb(bytes.len() as u64);
        for chunk in bytes.chunks(8) {
            let mut word = [0u8; 8];
            word[..chunk.len()].copy_from_slice(chunk);
            self.absorb(u64::from_le_bytes(word));
        }
    }
}

pub fn derive_seed(
    master_seed: u64,
    replication: usize,
    k: usize,
    algorithm_id: &str,
    purpose: StreamPurpose,
) -> u64 {
    let mut m = Mixer(splitmix64(master_seed));
    m.absorb(purpose.tag());
    m.absorb(replication as u64);
    m.absorb(k as u64);
    if !purpose.shared_across_algorithms() {
        m.absorb_bytes(algorithm_id.as_bytes());
    }
    if let StreamPurpose::TauRun(i) = purpose {
        m.absorb(i as u64);
    }
    m.0
}

pub fn derive_stream(
    master_seed: u64,
    replication: usize,
    k: usize,
    algorithm_id: &str,
    purpose: StreamPurpose,
) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(
        master_seed,
        replication,
        k,
        algorithm_id,
        purpose,
    ))
}

/// Order-sensitive 64-bit digest of a sequence of words.
pub(crate) fn fingerprint(words: impl IntoIterator<Item = u64>) -> u64 {
    let mut m = Mixer(0x6e6b_6d75_6464_6c65);
    for w in words {
        m.absorb(w);
    }
    m.0
}
