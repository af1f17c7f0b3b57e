//! Deterministic random number utilities.
//!
//! Two flavors are provided: a sequential [`SplitMix64`] stream for
//! single-threaded generation (scene placement), and counter-based hashing
//! ([`hash_mix`], [`counter_gaussian`]) for per-element noise whose value
//! depends only on a key, never on evaluation order or thread count.

/// SplitMix64 finalizer: a bijective 64-bit mixing function.
#[inline]
pub fn mix64(mut x: u64) -> u64 {
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// Hash an arbitrary-length key of 64-bit words into one 64-bit value.
#[inline]
pub fn hash_mix(words: &[u64]) -> u64 {
    let mut h = 0x243f_6a88_85a3_08d3; // pi fraction seed
    for &w in words {
        h = mix64(h ^ w.wrapping_mul(GOLDEN));
    }
    mix64(h)
}

/// Map a u64 to a float uniform on the open interval (0, 1).
#[inline]
fn to_open_unit(x: u64) -> f64 {
    // 53 mantissa bits, offset by half an ulp so 0.0 is never produced.
    ((x >> 11) as f64 + 0.5) * (1.0 / 9_007_199_254_740_992.0)
}

/// Standard-normal sample fully determined by the key words.
///
/// Uses Box-Muller on two independent hashes of the key, so the same key
/// always yields the same sample on every platform and thread schedule.
pub fn counter_gaussian(key: &[u64]) -> f64 {
    let mut k = Vec::with_capacity(key.len() + 1);
    k.extend_from_slice(key);
    k.push(0);
    let u1 = to_open_unit(hash_mix(&k));
    *k.last_mut().unwrap() = 1;
    let u2 = to_open_unit(hash_mix(&k));
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Sequential SplitMix64 generator for ordered construction work.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix64(self.state)
    }

    /// Uniform float in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
    }

    /// Uniform integer in [0, bound) via Lemire reduction; bound must be > 0.
    pub fn next_bounded(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }

    /// Uniform float in [lo, hi).
    pub fn next_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + self.next_f64() * (hi - lo)
    }
}
