//! Counter-based, splittable decision streams.
//!
//! The stream for sample `index` under `seed` is a SplitMix64 generator whose
//! initial state is output number `index` (zero-based) of a SplitMix64
//! generator seeded with `seed`. Both levels are closed-form in their
//! counter, so any sample's stream can be opened directly without stepping
//! through its predecessors, and parallel evaluation cannot reorder draws.
//!
//! Derived values:
//! - `next_f64`: the top 53 bits of `next_u64` scaled by `2^-53`, in `[0, 1)`.
//! - `below(n)`: Lemire's multiply-shift with rejection, exactly uniform on
//!   `[0, n)`.
//!
//! This algorithm is part of the reproducibility contract. Changing it
//! changes every augmented batch.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Output number `n` of SplitMix64 started from `state`.
#[inline]
fn splitmix_at(state: u64, n: u64) -> u64 {
    mix64(state.wrapping_add(GAMMA.wrapping_mul(n.wrapping_add(1))))
}

/// The independent random stream owned by one sample slot.
#[derive(Clone, Debug)]
pub struct DecisionStream {
    state: u64,
    counter: u64,
}

impl DecisionStream {
    pub fn new(seed: u64, index: u64) -> Self {
        DecisionStream { state: splitmix_at(seed, index), counter: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        let out = splitmix_at(self.state, self.counter);
        self.counter += 1;
        out
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `[0, n)`. `n` must be non-zero.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        let mut m = self.next_u64() as u128 * n as u128;
        if (m as u64) < n {
            let threshold = n.wrapping_neg() % n;
            while (m as u64) < threshold {
                m = self.next_u64() as u128 * n as u128;
            }
        }
        (m >> 64) as u64
    }
}
