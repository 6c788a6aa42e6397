//! Seeded randomness.
//!
//! All sampling goes through ChaCha8 (`rand_chacha`), keyed by
//! `seed_from_u64(seed)` and, for campaign instances, by ChaCha stream
//! `index`. Uniform reals are drawn as `(next_u64() >> 11) * 2^-53`, so a
//! given `(seed, stream)` pair yields the same sequence in any
//! implementation of ChaCha8.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent generator for instance `index` of a campaign keyed by `seed`.
pub fn instance_rng(seed: u64, index: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform in `[0, 1)` with 53 bits of precision.
pub fn unit_f64(rng: &mut Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform in `0..bound` (`bound > 0`), by rejection on the top bits.
pub fn below(rng: &mut Rng, bound: usize) -> usize {
    assert!(bound > 0);
    let bound = bound as u64;
    let zone = u64::MAX - (u64::MAX % bound);
    loop {
        let x = rng.next_u64();
        if x < zone {
            return (x % bound) as usize;
        }
    }
}

/// Uniform in `lo..=hi`.
pub fn between(rng: &mut Rng, lo: usize, hi: usize) -> usize {
    lo + below(rng, hi - lo + 1)
}

pub fn coin(rng: &mut Rng, p: f64) -> bool {
    unit_f64(rng) < p
}

/// Fisher-Yates, from the back.
pub fn shuffle<T>(rng: &mut Rng, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = below(rng, i + 1);
        items.swap(i, j);
    }
}

/// `k` distinct items of `pool` chosen uniformly, returned sorted.
pub fn sample_sorted(rng: &mut Rng, pool: &[usize], k: usize) -> Vec<usize> {
    let mut v = pool.to_vec();
    shuffle(rng, &mut v);
    v.truncate(k);
    v.sort_unstable();
    v
}
