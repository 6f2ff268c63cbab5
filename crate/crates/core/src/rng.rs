//! Deterministic pseudo-random coins and states for test sweeps.
//!
//! A tiny SplitMix64 generator keeps randomized verification runs
//! reproducible from a single `u64` seed, with no dependency on external
//! RNG crates whose stream definitions change between releases.

use num_complex::Complex64;

use crate::math;
use crate::pathspace::{InitialState, QuantumCoin};

/// SplitMix64: 64 bits of state, full period, passes BigCrush.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// A random 2x2 unitary coin with all four entries bounded away from zero.
///
/// Parameterized as `e^{i gamma} [[cos t e^{i u}, sin t e^{i v}],
/// [-sin t e^{-i v}, cos t e^{-i u}]]` with `t` kept inside
/// `(margin, pi/2 - margin)` so the persistence probability `p = |a|^2`
/// stays non-degenerate.
pub fn random_coin(rng: &mut SplitMix64) -> QuantumCoin {
    let margin = 0.05;
    let t = rng.uniform(margin, core::f64::consts::FRAC_PI_2 - margin);
    let u = rng.uniform(0.0, core::f64::consts::TAU);
    let v = rng.uniform(0.0, core::f64::consts::TAU);
    let g = rng.uniform(0.0, core::f64::consts::TAU);
    let (ct, st) = (math::cos(t), math::sin(t));
    let phase = Complex64::new(math::cos(g), math::sin(g));
    let eu = Complex64::new(math::cos(u), math::sin(u));
    let ev = Complex64::new(math::cos(v), math::sin(v));
    QuantumCoin::new(
        phase * ct * eu,
        phase * st * ev,
        -phase * st * ev.conj(),
        phase * ct * eu.conj(),
    )
    .expect("constructed coin is unitary with nonzero entries")
}

/// A random normalized initial state.
pub fn random_state(rng: &mut SplitMix64) -> InitialState {
    let t = rng.uniform(0.0, core::f64::consts::FRAC_PI_2);
    let u = rng.uniform(0.0, core::f64::consts::TAU);
    let v = rng.uniform(0.0, core::f64::consts::TAU);
    let alpha = Complex64::new(math::cos(u), math::sin(u)) * math::cos(t);
    let beta = Complex64::new(math::cos(v), math::sin(v)) * math::sin(t);
    InitialState::new(alpha, beta).expect("constructed state is normalized")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_stream() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..16 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn coins_are_valid_for_many_seeds() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..200 {
            let _ = random_coin(&mut rng);
            let _ = random_state(&mut rng);
        }
    }
}
