//! Tiny deterministic generator for the randomized probes in this crate.
//!
//! The sweeps must be byte-reproducible given a seed, so we carry our own
//! SplitMix64 instead of pulling a `std`-only RNG into the core.

use num_complex::Complex64;
// Unused when a std build resolves the math as inherent f64 methods.
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in `[lo, hi)`.
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform on the closed disk of the given radius (area measure).
    pub fn disk(&mut self, radius: f64) -> Complex64 {
        let r = radius * self.next_f64().sqrt();
        let phi = core::f64::consts::TAU * self.next_f64();
        Complex64::new(r * phi.cos(), r * phi.sin())
    }

    /// Uniform on the unit circle, scaled by `radius`.
    pub fn circle(&mut self, radius: f64) -> Complex64 {
        let phi = core::f64::consts::TAU * self.next_f64();
        Complex64::new(radius * phi.cos(), radius * phi.sin())
    }
}
