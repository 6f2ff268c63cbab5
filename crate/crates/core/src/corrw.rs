//! The `(p0, p)`-correlated random walk associated with a quantum coin.
//!
//! Unitarity collapses every squared path-weight norm of the walk into a
//! product of classical transition probabilities: the first step goes right
//! with probability `p0 = |c alpha + d beta|^2`, and every later step repeats
//! the previous direction with probability `p = |a|^2`. Everything spectral
//! about the decoherence matrices reduces to position/direction statistics of
//! this classical walk, which is what makes large-`n` entropy computations
//! tractable.

use alloc::vec;
use alloc::vec::Vec;

use crate::math;
use crate::pathspace::{path_weight, InitialState, Path, QuantumCoin};
use crate::{Error, Result};

/// Probabilities below this are flushed to zero during the distribution
/// recursion to avoid denormal slowdown; entropies are unaffected at the
/// tolerances used anywhere in this crate.
const MASS_FLOOR: f64 = 1e-300;

/// Parameters of the correlated walk: first step right with probability
/// `p0`, later steps repeat the previous direction with probability `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelatedRwParams {
    p: f64,
    p0: f64,
}

impl CorrelatedRwParams {
    /// `p` must lie strictly inside `(0, 1)`; `p0` may sit on the boundary
    /// (a deterministic first step is fine).
    pub fn new(p0: f64, p: f64) -> Result<Self> {
        let eps = 1e-12;
        if !(p > eps && p < 1.0 - eps) {
            return Err(Error::DegenerateP(p));
        }
        if !(0.0..=1.0).contains(&p0) {
            return Err(Error::InvalidP0(p0));
        }
        Ok(Self { p, p0 })
    }

    /// Extracts `(p0, p)` from a coin and initial state, cross-checking the
    /// complementary first-step probability against unitarity.
    pub fn from_coin(coin: &QuantumCoin, init: &InitialState) -> Result<Self> {
        let p = coin.a().norm_sqr();
        let p0 = (coin.c() * init.alpha() + coin.d() * init.beta()).norm_sqr();
        let q0_direct = (coin.a() * init.alpha() + coin.b() * init.beta()).norm_sqr();
        let residual = math::abs(q0_direct - (1.0 - p0));
        if residual > 1e-12 {
            return Err(Error::NotUnitary(residual));
        }
        Self::new(p0, p)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        1.0 - self.p
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn q0(&self) -> f64 {
        1.0 - self.p0
    }

    /// Per-step entropy rate `|p log2 p + q log2 q|` in bits.
    pub fn step_entropy(&self) -> f64 {
        math::binary_entropy(self.p)
    }

    /// First-step entropy `|p0 log2 p0 + q0 log2 q0|` in bits.
    pub fn first_step_entropy(&self) -> f64 {
        math::binary_entropy(self.p0)
    }

    /// Parameters conditioned on a forced first step.
    pub fn with_first_step(&self, step: i8) -> Self {
        Self {
            p: self.p,
            p0: if step == 1 { 1.0 } else { 0.0 },
        }
    }
}

/// A real coin and state realizing the given walk parameters:
/// `[[sqrt(p), sqrt(q)], [sqrt(q), -sqrt(p)]]` with the initial chirality
/// angle chosen so the first step goes right with probability `p0`.
///
/// Useful when only `(p0, p)` are specified but a dense matrix is wanted;
/// [`CorrelatedRwParams::from_coin`] of the result returns the inputs.
pub fn canonical_realization(params: &CorrelatedRwParams) -> (QuantumCoin, InitialState) {
    use num_complex::Complex64;
    let sp = math::sqrt(params.p());
    let sq = math::sqrt(params.q());
    let coin = QuantumCoin::new(
        Complex64::new(sp, 0.0),
        Complex64::new(sq, 0.0),
        Complex64::new(sq, 0.0),
        Complex64::new(-sp, 0.0),
    )
    .expect("persistence strictly inside (0, 1) gives a valid coin");
    // Want |c alpha + d beta|^2 = p0 with real alpha = cos(t), beta = sin(t):
    // sq cos(t) - sp sin(t) = cos(t + phi) with phi = atan2(sp, sq).
    let phi = libm::atan2(sp, sq);
    let t = libm::acos(math::sqrt(params.p0())) - phi;
    let init = InitialState::new(
        Complex64::new(math::cos(t), 0.0),
        Complex64::new(math::sin(t), 0.0),
    )
    .expect("cos/sin pair is normalized");
    (coin, init)
}

/// Probability that the walk traverses exactly the path `xi`.
///
/// This equals the squared norm of the quantum path weight when the
/// parameters come from [`CorrelatedRwParams::from_coin`].
pub fn path_probability(params: &CorrelatedRwParams, xi: &Path) -> f64 {
    let mut prob = if xi.first_step() == 1 {
        params.p0()
    } else {
        params.q0()
    };
    for w in xi.steps().windows(2) {
        prob *= if w[0] == w[1] { params.p() } else { params.q() };
    }
    prob
}

/// Joint distribution of (position, incoming direction) at a fixed time.
///
/// Positions live on the lattice `{-n, -n+2, ..., n}`; `pl(j)` is the mass
/// that arrived at `j` moving left (last step `-1`), `pr(j)` moving right.
#[derive(Debug, Clone)]
pub struct DirectionalDistribution {
    n: usize,
    /// `pairs[i] = (pl, pr)` at position `-n + 2i`.
    pairs: Vec<(f64, f64)>,
}

impl DirectionalDistribution {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Position of slot `i`.
    pub fn position(&self, i: usize) -> i64 {
        -(self.n as i64) + 2 * i as i64
    }

    fn slot(&self, j: i64) -> Option<usize> {
        let shifted = j + self.n as i64;
        if shifted < 0 || shifted % 2 != 0 {
            return None;
        }
        let i = (shifted / 2) as usize;
        (i < self.pairs.len()).then_some(i)
    }

    /// Mass at `j` with last step `-1`; zero off the lattice.
    pub fn pl(&self, j: i64) -> f64 {
        self.slot(j).map_or(0.0, |i| self.pairs[i].0)
    }

    /// Mass at `j` with last step `+1`; zero off the lattice.
    pub fn pr(&self, j: i64) -> f64 {
        self.slot(j).map_or(0.0, |i| self.pairs[i].1)
    }

    /// Total mass at `j`: `P(Y_n = j)`.
    pub fn mass(&self, j: i64) -> f64 {
        self.slot(j)
            .map_or(0.0, |i| self.pairs[i].0 + self.pairs[i].1)
    }

    /// Iterates `(position, pl, pr)` with positions ascending.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64, f64)> + '_ {
        self.pairs
            .iter()
            .enumerate()
            .map(|(i, &(l, r))| (self.position(i), l, r))
    }

    /// Column sums `(sum_j pl(j), sum_j pr(j))`.
    pub fn endpoint_sums(&self) -> (f64, f64) {
        let mut l = 0.0;
        let mut r = 0.0;
        for &(pl, pr) in &self.pairs {
            l += pl;
            r += pr;
        }
        (l, r)
    }

    pub fn total_mass(&self) -> f64 {
        let (l, r) = self.endpoint_sums();
        l + r
    }

    /// Shannon entropy of the position marginal, in bits.
    pub fn position_entropy(&self) -> f64 {
        -self
            .pairs
            .iter()
            .map(|&(l, r)| math::xlog2(l + r))
            .sum::<f64>()
    }

    /// Entropy of the full (position, direction) distribution, in bits.
    pub fn joint_entropy(&self) -> f64 {
        -self
            .pairs
            .iter()
            .map(|&(l, r)| math::xlog2(l) + math::xlog2(r))
            .sum::<f64>()
    }
}

/// Exact directional distribution at time `n` by the transfer recursion;
/// `O(n^2)` time, `O(n)` space.
pub fn evolve(params: &CorrelatedRwParams, n: usize) -> DirectionalDistribution {
    assert!(n >= 1, "time must be at least 1");
    let (p, q) = (params.p(), params.q());
    // pairs over positions -m..m step 2 at time m.
    let mut cur: Vec<(f64, f64)> = vec![(params.q0(), 0.0), (0.0, params.p0())];
    for m in 2..=n {
        let mut next = vec![(0.0, 0.0); m + 1];
        for (i, &(l, r)) in cur.iter().enumerate() {
            // Slot i at time m-1 is position -(m-1) + 2i, which feeds
            // slots i (one step left) and i+1 (one step right) at time m.
            if l != 0.0 || r != 0.0 {
                let leftward = p * l + q * r;
                let rightward = q * l + p * r;
                next[i].0 += leftward;
                next[i + 1].1 += rightward;
            }
        }
        for pair in next.iter_mut() {
            if pair.0 < MASS_FLOOR {
                pair.0 = 0.0;
            }
            if pair.1 < MASS_FLOOR {
                pair.1 = 0.0;
            }
        }
        cur = next;
    }
    DirectionalDistribution { n, pairs: cur }
}

/// Closed-form probabilities that the walk's final step is leftward /
/// rightward: `rho_L = (1 + (p-q)^(n-1) (q0-p0)) / 2` and its complement.
///
/// Diagonalizing the persistence chain gives the `(q0 - p0)` orientation
/// used here; it is pinned by direct path enumeration at `n = 2` (see the
/// tests), and the entropy downstream is symmetric in the two marginals.
pub fn endpoint_marginals(params: &CorrelatedRwParams, n: usize) -> (f64, f64) {
    assert!(n >= 1);
    let kappa = math::powi(params.p() - params.q(), n as i32 - 1);
    let spread = kappa * (params.q0() - params.p0());
    (0.5 * (1.0 + spread), 0.5 * (1.0 - spread))
}

/// Signed deviation `rho_L - 1/2`, kept separate so entropy deficits can be
/// formed without cancellation at large `n`.
pub fn endpoint_spread(params: &CorrelatedRwParams, n: usize) -> f64 {
    let kappa = math::powi(params.p() - params.q(), n as i32 - 1);
    0.5 * kappa * (params.q0() - params.p0())
}

/// Shannon entropy of the walk's position at time `n`, in bits.
pub fn shannon_entropy_rw(params: &CorrelatedRwParams, n: usize) -> f64 {
    evolve(params, n).position_entropy()
}

/// Quantum walk position distribution at time `n` via amplitude evolution;
/// `O(n^2)` time. Returns `(position, probability)` with positions
/// ascending, restricted to the reachable lattice.
pub fn qw_distribution(coin: &QuantumCoin, init: &InitialState, n: usize) -> Vec<(i64, f64)> {
    assert!(n >= 1);
    let zero = num_complex::Complex64::new(0.0, 0.0);
    // amp[i] = [left, right] chirality amplitudes at position -m + 2i.
    let mut amp = vec![[zero; 2]; 2];
    amp[0] = [coin.a() * init.alpha() + coin.b() * init.beta(), zero];
    amp[1] = [zero, coin.c() * init.alpha() + coin.d() * init.beta()];
    for m in 2..=n {
        let mut next = vec![[zero; 2]; m + 1];
        for (i, a) in amp.iter().enumerate() {
            let fed = a[0] + a[1];
            if fed != zero {
                next[i][0] += coin.a() * a[0] + coin.b() * a[1];
                next[i + 1][1] += coin.c() * a[0] + coin.d() * a[1];
            }
        }
        amp = next;
    }
    amp.iter()
        .enumerate()
        .map(|(i, a)| {
            let x = -(n as i64) + 2 * i as i64;
            (x, a[0].norm_sqr() + a[1].norm_sqr())
        })
        .collect()
}

/// Shannon entropy of the quantum walk position at time `n`, in bits.
pub fn shannon_entropy_qw(coin: &QuantumCoin, init: &InitialState, n: usize) -> f64 {
    -qw_distribution(coin, init, n)
        .iter()
        .map(|&(_, prob)| math::xlog2(prob))
        .sum::<f64>()
}

/// Brute-force quantum distribution: coherent per-position sums of all
/// `2^n` path weights. Exponential in `n`; test oracle only.
pub fn qw_distribution_bruteforce(
    coin: &QuantumCoin,
    init: &InitialState,
    n: usize,
) -> Result<Vec<(i64, f64)>> {
    use crate::pathspace::{enumerate_paths, PathOrdering};
    let mut coherent: alloc::collections::BTreeMap<i64, [num_complex::Complex64; 2]> =
        alloc::collections::BTreeMap::new();
    for xi in enumerate_paths(n, PathOrdering::Binary)? {
        let w = path_weight(coin, init, &xi);
        let entry = coherent
            .entry(xi.position())
            .or_insert([num_complex::Complex64::new(0.0, 0.0); 2]);
        entry[0] += w[0];
        entry[1] += w[1];
    }
    Ok(coherent
        .into_iter()
        .map(|(x, sums)| (x, sums[0].norm_sqr() + sums[1].norm_sqr()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathspace::{enumerate_paths, PathOrdering};
    use num_complex::Complex64;

    const S: f64 = core::f64::consts::FRAC_1_SQRT_2;

    fn reference_init() -> InitialState {
        InitialState::new(Complex64::new(S, 0.0), Complex64::new(0.0, S)).unwrap()
    }

    #[test]
    fn hadamard_reference_parameters() {
        let params =
            CorrelatedRwParams::from_coin(&QuantumCoin::hadamard(), &reference_init()).unwrap();
        assert!(math::abs(params.p() - 0.5) < 1e-15);
        assert!(math::abs(params.p0() - 0.5) < 1e-15);
    }

    #[test]
    fn gudder_sorkin_parameters() {
        let params =
            CorrelatedRwParams::from_coin(&QuantumCoin::gudder_sorkin(), &InitialState::left())
                .unwrap();
        assert!(math::abs(params.p() - 0.5) < 1e-15);
        assert!(math::abs(params.p0() - 0.5) < 1e-15);
    }

    #[test]
    fn degenerate_persistence_rejected() {
        assert!(matches!(
            CorrelatedRwParams::new(0.5, 0.0),
            Err(Error::DegenerateP(_))
        ));
        assert!(matches!(
            CorrelatedRwParams::new(0.5, 1.0),
            Err(Error::DegenerateP(_))
        ));
        CorrelatedRwParams::new(0.0, 0.5).unwrap();
        CorrelatedRwParams::new(1.0, 0.5).unwrap();
    }

    #[test]
    fn path_probability_small_cases() {
        let params = CorrelatedRwParams::new(0.3, 0.7).unwrap();
        let right = Path::from_steps(&[1]).unwrap();
        let left = Path::from_steps(&[-1]).unwrap();
        assert_eq!(path_probability(&params, &right), 0.3);
        assert_eq!(path_probability(&params, &left), 0.7);
        // Right then switch: 0.3 * 0.3.
        let rl = Path::from_steps(&[1, -1]).unwrap();
        assert!(math::abs(path_probability(&params, &rl) - 0.09) < 1e-15);
    }

    #[test]
    fn path_probabilities_sum_to_one() {
        let params = CorrelatedRwParams::new(0.5, 0.5).unwrap();
        for n in 1..=14 {
            let total: f64 = enumerate_paths(n, PathOrdering::Binary)
                .unwrap()
                .iter()
                .map(|p| path_probability(&params, p))
                .sum();
            assert!(math::abs(total - 1.0) < 1e-12, "n={n}");
        }
    }

    #[test]
    fn evolve_two_steps_reference_values() {
        let params = CorrelatedRwParams::new(0.3, 0.7).unwrap();
        let dist = evolve(&params, 2);
        assert!(math::abs(dist.pl(0) - 0.09) < 1e-15);
        assert!(math::abs(dist.pr(0) - 0.21) < 1e-15);
        assert!(math::abs(dist.pl(-2) - 0.49) < 1e-15);
        assert!(math::abs(dist.pr(2) - 0.21) < 1e-15);
        assert!(math::abs(dist.total_mass() - 1.0) < 1e-15);
    }

    #[test]
    fn evolve_matches_bruteforce_enumeration() {
        let params = CorrelatedRwParams::new(0.3, 0.7).unwrap();
        for n in 1..=12 {
            let dist = evolve(&params, n);
            let paths = enumerate_paths(n, PathOrdering::Binary).unwrap();
            for j in (-(n as i64)..=n as i64).step_by(2) {
                let direct: f64 = paths
                    .iter()
                    .filter(|p| p.position() == j && p.last_step() == -1)
                    .map(|p| path_probability(&params, p))
                    .sum();
                assert!(math::abs(dist.pl(j) - direct) < 1e-12, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn extreme_positions_reached_monotonically() {
        let params = CorrelatedRwParams::new(0.3, 0.7).unwrap();
        for n in 1..=20 {
            let dist = evolve(&params, n);
            assert_eq!(dist.pl(n as i64), 0.0);
            assert_eq!(dist.pr(-(n as i64)), 0.0);
            let boundary_r = params.p0() * math::powi(params.p(), n as i32 - 1);
            let boundary_l = params.q0() * math::powi(params.p(), n as i32 - 1);
            assert!(math::abs(dist.pr(n as i64) - boundary_r) < 1e-14);
            assert!(math::abs(dist.pl(-(n as i64)) - boundary_l) < 1e-14);
        }
    }

    #[test]
    fn endpoint_marginals_match_column_sums_and_closed_form() {
        let params = CorrelatedRwParams::new(0.3, 0.7).unwrap();
        for n in 1..=24 {
            let dist = evolve(&params, n);
            let sums = dist.endpoint_sums();
            let closed = endpoint_marginals(&params, n);
            assert!(math::abs(sums.0 - closed.0) < 1e-12, "n={n}");
            assert!(math::abs(sums.1 - closed.1) < 1e-12, "n={n}");
        }
        // The n = 2 enumeration that pins the sign of the spread: rho_L is
        // pl(-2) + pl(0) = 0.49 + 0.09 = 0.58 = (1 + (p-q)(q0-p0)) / 2.
        let (rho_l, rho_r) = endpoint_marginals(&params, 2);
        assert!(math::abs(rho_l - 0.58) < 1e-15);
        assert!(math::abs(rho_r - 0.42) < 1e-15);
    }

    #[test]
    fn endpoint_marginals_n1_and_balanced_p() {
        let params = CorrelatedRwParams::new(0.3, 0.7).unwrap();
        let (l, r) = endpoint_marginals(&params, 1);
        assert!(math::abs(l - 0.7) < 1e-15 && math::abs(r - 0.3) < 1e-15);
        let balanced = CorrelatedRwParams::new(0.2, 0.5).unwrap();
        for n in 2..6 {
            assert_eq!(endpoint_marginals(&balanced, n), (0.5, 0.5));
        }
    }

    #[test]
    fn rw_entropy_small_cases() {
        let params = CorrelatedRwParams::new(0.5, 0.5).unwrap();
        assert!(math::abs(shannon_entropy_rw(&params, 1) - 1.0) < 1e-15);
        assert!(math::abs(shannon_entropy_rw(&params, 2) - 1.5) < 1e-15);
        let skew = CorrelatedRwParams::new(0.3, 0.7).unwrap();
        let expect = math::binary_entropy(0.3);
        assert!(math::abs(shannon_entropy_rw(&skew, 1) - expect) < 1e-15);
    }

    #[test]
    fn qw_distribution_hadamard_two_steps() {
        let dist = qw_distribution(&QuantumCoin::hadamard(), &reference_init(), 2);
        let expect = [(-2, 0.25), (0, 0.5), (2, 0.25)];
        assert_eq!(dist.len(), 3);
        for ((x, p), (ex, ep)) in dist.iter().zip(expect.iter()) {
            assert_eq!(x, ex);
            assert!(math::abs(p - ep) < 1e-14);
        }
    }

    #[test]
    fn qw_distribution_single_step_matches_params() {
        let coin = QuantumCoin::hadamard();
        let init = reference_init();
        let params = CorrelatedRwParams::from_coin(&coin, &init).unwrap();
        let dist = qw_distribution(&coin, &init, 1);
        assert!(math::abs(dist[0].1 - params.q0()) < 1e-14);
        assert!(math::abs(dist[1].1 - params.p0()) < 1e-14);
    }

    #[test]
    fn qw_distribution_matches_bruteforce() {
        let coin = QuantumCoin::hadamard();
        let init = reference_init();
        for n in 1..=10 {
            let fast = qw_distribution(&coin, &init, n);
            let slow = qw_distribution_bruteforce(&coin, &init, n).unwrap();
            assert_eq!(fast.len(), slow.len());
            for ((x1, p1), (x2, p2)) in fast.iter().zip(slow.iter()) {
                assert_eq!(x1, x2);
                assert!(math::abs(p1 - p2) < 1e-12, "n={n} x={x1}");
            }
        }
    }

    #[test]
    fn qw_mass_conserved_at_large_n() {
        let coin = QuantumCoin::hadamard();
        let init = reference_init();
        let total: f64 = qw_distribution(&coin, &init, 1000)
            .iter()
            .map(|&(_, p)| p)
            .sum();
        assert!(math::abs(total - 1.0) < 1e-12);
    }

    #[test]
    fn canonical_realization_round_trips() {
        let mut rng = crate::rng::SplitMix64::new(4242);
        for _ in 0..50 {
            let p = rng.uniform(0.02, 0.98);
            let p0 = rng.uniform(0.0, 1.0);
            let params = CorrelatedRwParams::new(p0, p).unwrap();
            let (coin, init) = canonical_realization(&params);
            let back = CorrelatedRwParams::from_coin(&coin, &init).unwrap();
            assert!(math::abs(back.p() - p) < 1e-12);
            assert!(
                math::abs(back.p0() - p0) < 1e-12,
                "p0 {p0} -> {}",
                back.p0()
            );
        }
    }

    #[test]
    fn lemma1_weight_norm_equals_path_probability() {
        let mut rng = crate::rng::SplitMix64::new(20240817);
        for _ in 0..40 {
            let coin = crate::rng::random_coin(&mut rng);
            let init = crate::rng::random_state(&mut rng);
            let params = CorrelatedRwParams::from_coin(&coin, &init).unwrap();
            for n in 1..=7 {
                for xi in enumerate_paths(n, PathOrdering::Binary).unwrap() {
                    let w = path_weight(&coin, &init, &xi);
                    let norm2 = w[0].norm_sqr() + w[1].norm_sqr();
                    let prob = path_probability(&params, &xi);
                    assert!(math::abs(norm2 - prob) < 1e-12);
                }
            }
        }
    }
}
