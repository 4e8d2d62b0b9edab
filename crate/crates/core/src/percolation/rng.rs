//! Counter-based randomness: the value for counter `i` under key `k` is word
//! `i` of the ChaCha8 keystream seeded by `k`, independent of access order.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sequential reader over the keystream of one key.
pub struct CounterStream(ChaCha8Rng);

impl CounterStream {
    pub fn new(key: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(key))
    }

    /// Positions the stream at counter `index`.
    pub fn seek(&mut self, index: u64) {
        self.0.set_word_pos(2 * index as u128);
    }

    /// Value at the current counter; advances by one.
    pub fn next_word(&mut self) -> u64 {
        self.0.next_u64()
    }
}

/// Random access to a single counter.
pub fn counter_word(key: u64, index: u64) -> u64 {
    let mut s = CounterStream::new(key);
    s.seek(index);
    s.next_word()
}

/// Uniform in `[0, 1)` from the top 53 bits.
pub fn unit_interval(word: u64) -> f64 {
    (word >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Seed of trial `trial` under `master_seed`.
pub fn trial_seed(master_seed: u64, trial: u64) -> u64 {
    counter_word(master_seed, trial)
}
