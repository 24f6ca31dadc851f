//! Seeded randomness. Every random choice in the crate is drawn from a
//! [`SeedStream`], so one top-level seed reproduces a whole experiment.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A splittable seed: `stream(k)` yields independent generators for distinct `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeedStream {
    seed: u64,
}

impl SeedStream {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn rng(&self) -> ChaCha8Rng {
        self.stream(0)
    }

    pub fn stream(&self, label: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(label);
        rng
    }

    /// Derives a child seed, for handing a sub-experiment its own stream family.
    pub fn child(&self, label: u64) -> SeedStream {
        SeedStream::new(self.stream(label ^ 0x9e37_79b9_7f4a_7c15).next_u64())
    }
}

/// Samples 64 independent Bernoulli bits with success probability `q / 2^32`.
///
/// Bits of `q` are consumed from least to most significant: a one-bit ORs in
/// a fresh random word, a zero-bit ANDs one in. Trailing zero bits of `q` are
/// skipped, so `q = 2^31` costs a single word.
pub(crate) fn bernoulli_word<R: RngCore>(rng: &mut R, q: u64) -> u64 {
    if q == 0 {
        return 0;
    }
    if q >= 1 << 32 {
        return u64::MAX;
    }
    let mut word = 0u64;
    let mut bits = q >> q.trailing_zeros();
    let mut remaining = 32 - q.trailing_zeros();
    while remaining > 0 {
        if bits & 1 == 1 {
            word |= rng.next_u64();
        } else {
            word &= rng.next_u64();
        }
        bits >>= 1;
        remaining -= 1;
    }
    word
}

/// Fixed-point 32-bit quantization of a probability, used by [`bernoulli_word`].
pub(crate) fn quantize_probability(p: f64) -> u64 {
    (p * (1u64 << 32) as f64).round() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let s = SeedStream::new(7);
        assert_eq!(s.stream(3).next_u64(), s.stream(3).next_u64());
        assert_ne!(s.stream(3).next_u64(), s.stream(4).next_u64());
        assert_ne!(s.child(1), s.child(2));
    }

    #[test]
    fn bernoulli_word_frequency() {
        let mut rng = SeedStream::new(1).rng();
        for p in [0.5, 0.25, 0.1, 0.9] {
            let q = quantize_probability(p);
            let ones: u32 = (0..4000).map(|_| bernoulli_word(&mut rng, q).count_ones()).sum();
            let freq = ones as f64 / (4000.0 * 64.0);
            assert!((freq - p).abs() < 0.01, "p={p} freq={freq}");
        }
        assert_eq!(bernoulli_word(&mut rng, 0), 0);
        assert_eq!(bernoulli_word(&mut rng, 1 << 32), u64::MAX);
    }
}
