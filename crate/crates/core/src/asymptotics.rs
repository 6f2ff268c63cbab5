//! Large-`n` behavior of the entropies: the Fourier symbol of the walk, the
//! Gaussian limit, and convergence reports for the scaling claims.
//!
//! Each claim pairs a scaled sequence with a predicted limit. Because some
//! published limit constants do not survive independent derivation (see the
//! per-claim notes), the verdict machinery distinguishes a sequence that
//! stabilizes at a *different* constant (`ConstantMismatch`) from one that
//! does not stabilize at all (`Diverging`).
//!
//! Two systematic offsets show up throughout: the walk's position support is
//! a lattice of spacing 2 (positions share the parity of `n`), which lowers
//! every lattice entropy by exactly one bit relative to a unit-lattice
//! continuum approximation; and `log`-rate corrections make first-order
//! ratios converge very slowly, so their confirmation tolerances are set
//! from the known correction magnitudes at desk scale.

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::corrw::{self, CorrelatedRwParams};
use crate::math;
use crate::pathspace::{InitialState, QuantumCoin};
use crate::spectra;
use crate::{Error, Result};

/// `log2 sqrt(2 pi e)`, the Gaussian differential-entropy constant.
pub fn log2_sqrt_2pi_e() -> f64 {
    0.5 * math::log2(2.0 * core::f64::consts::PI * core::f64::consts::E)
}

/// The 2x2 Fourier symbol `M_hat(xi) = diag(e^{-i xi}, e^{i xi}) M` of the
/// directional recursion, with its eigenvalues.
#[derive(Debug, Clone, Copy)]
pub struct FourierSymbol {
    pub matrix: [[Complex64; 2]; 2],
    pub eigenvalues: (Complex64, Complex64),
}

/// Fourier symbol at frequency `xi`.
///
/// Eigenvalues come from the trace/determinant form of the characteristic
/// polynomial, `p cos(xi) +- sqrt(q^2 - p^2 sin^2(xi))` with a complex
/// square root where the radicand goes negative. Note the *squared* sine:
/// an unsquared radicand fails the `xi -> 0` scaling checks.
pub fn fourier_symbol(params: &CorrelatedRwParams, xi: f64) -> FourierSymbol {
    let (p, q) = (params.p(), params.q());
    let em = Complex64::new(math::cos(xi), -math::sin(xi));
    let ep = em.conj();
    let matrix = [[em * p, em * q], [ep * q, ep * p]];
    let half_trace = Complex64::new(p * math::cos(xi), 0.0);
    let det = Complex64::new(p - q, 0.0);
    let disc = (half_trace * half_trace - det).sqrt();
    FourierSymbol {
        matrix,
        eigenvalues: (half_trace + disc, half_trace - disc),
    }
}

/// `M_hat(xi)^(n-1) * [q0 e^{-i xi}, p0 e^{i xi}]`: the exact spatial
/// Fourier transform of the time-`n` directional distribution.
pub fn directional_dft_predicted(params: &CorrelatedRwParams, n: usize, xi: f64) -> [Complex64; 2] {
    assert!(n >= 1);
    let em = Complex64::new(math::cos(xi), -math::sin(xi));
    let mut vec = [em * params.q0(), em.conj() * params.p0()];
    let m = fourier_symbol(params, xi).matrix;
    for _ in 1..n {
        vec = [
            m[0][0] * vec[0] + m[0][1] * vec[1],
            m[1][0] * vec[0] + m[1][1] * vec[1],
        ];
    }
    vec
}

/// Direct DFT `sum_j Psi(j) e^{i xi j}` of a computed distribution.
pub fn directional_dft(dist: &corrw::DirectionalDistribution, xi: f64) -> [Complex64; 2] {
    let mut out = [Complex64::new(0.0, 0.0); 2];
    for (j, pl, pr) in dist.iter() {
        let phase = Complex64::new(math::cos(xi * j as f64), math::sin(xi * j as f64));
        out[0] += phase * pl;
        out[1] += phase * pr;
    }
    out
}

/// Pointwise Gaussian approximation to the directional mass `p_J(j)`:
/// `(1/2) exp(-x^2 / (2 p/q)) / sqrt(2 pi n p/q)` at `x = j / sqrt(n)`.
///
/// This is a density statement on the unit lattice; the walk's actual
/// support has spacing 2, so pointwise comparisons against computed masses
/// need a factor 2.
pub fn gaussian_pointwise(params: &CorrelatedRwParams, n: usize, j: i64) -> f64 {
    let v = params.p() / params.q();
    let x = j as f64 / math::sqrt(n as f64);
    0.5 * math::exp(-x * x / (2.0 * v)) / math::sqrt(2.0 * core::f64::consts::PI * n as f64 * v)
}

/// Kolmogorov-Smirnov distance between the walk position `Y_n / sqrt(n)`
/// and the centered normal with variance `p/q`.
pub fn gaussian_ks_distance(params: &CorrelatedRwParams, n: usize) -> f64 {
    let dist = corrw::evolve(params, n);
    let sigma = math::sqrt(params.p() / params.q());
    let scale = 1.0 / (sigma * math::sqrt(n as f64));
    let mut cdf = 0.0;
    let mut worst = 0.0f64;
    for (j, pl, pr) in dist.iter() {
        let phi = math::normal_cdf(j as f64 * scale);
        worst = worst.max(math::abs(cdf - phi)); // just below the atom
        cdf += pl + pr;
        worst = worst.max(math::abs(cdf - phi)); // at the atom
    }
    worst
}

/// Verdict of a convergence report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The scaled sequence reaches the predicted limit within the claim's
    /// tolerance at the largest `n`.
    Confirmed,
    /// The scaled sequence stabilizes (last two values within 1% relative)
    /// at a constant different from the predicted one.
    ConstantMismatch,
    /// No stabilization detected.
    Diverging,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Confirmed => "Confirmed",
            Verdict::ConstantMismatch => "ConstantMismatch",
            Verdict::Diverging => "Diverging",
        }
    }
}

/// A scaled entropy sequence checked against its predicted limit.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    /// Stable claim identifier, e.g. `Thm1.2-second-order`.
    pub claim: String,
    /// `(n, raw value, scaled value)` with `n` strictly increasing.
    pub points: Vec<(usize, f64, f64)>,
    /// The claimed limit of the scaled sequence.
    pub predicted: f64,
    /// Tail extrapolation of the scaled sequence (Richardson step on the
    /// last two points assuming `O(1/n)` error).
    pub estimated: f64,
    /// `estimated / predicted`.
    pub discrepancy_ratio: f64,
    /// Independently derived limit, where it differs from `predicted`.
    pub derived: Option<f64>,
    pub verdict: Verdict,
    /// Absolute tolerance on `|scaled(n_max) - predicted|` for `Confirmed`.
    pub tolerance: f64,
}

impl ConvergenceReport {
    /// Scaled value at the largest `n`.
    pub fn last_scaled(&self) -> f64 {
        self.points.last().map(|p| p.2).unwrap_or(f64::NAN)
    }
}

/// Relative stabilization threshold for `ConstantMismatch`.
const STABILIZATION_REL: f64 = 0.01;

fn classify(points: &[(usize, f64, f64)], predicted: f64, tolerance: f64) -> (f64, Verdict) {
    let k = points.len();
    let (n1, _, v1) = points[k - 2];
    let (n2, _, v2) = points[k - 1];
    // Richardson step under an O(1/n) error model.
    let estimated = if n2 > n1 {
        v2 + (v2 - v1) * n1 as f64 / (n2 - n1) as f64
    } else {
        v2
    };
    let verdict = if math::abs(v2 - predicted) <= tolerance {
        Verdict::Confirmed
    } else if math::abs(v2 - v1) <= STABILIZATION_REL * math::abs(v2).max(1e-300) {
        Verdict::ConstantMismatch
    } else {
        Verdict::Diverging
    };
    (estimated, verdict)
}

fn report(
    claim: &str,
    points: Vec<(usize, f64, f64)>,
    predicted: f64,
    derived: Option<f64>,
    tolerance: f64,
) -> ConvergenceReport {
    let (estimated, verdict) = classify(&points, predicted, tolerance);
    let discrepancy_ratio = if predicted != 0.0 {
        estimated / predicted
    } else {
        f64::NAN
    };
    ConvergenceReport {
        claim: String::from(claim),
        points,
        predicted,
        estimated,
        discrepancy_ratio,
        derived,
        verdict,
        tolerance,
    }
}

fn check_n_list(n_list: &[usize]) -> Result<()> {
    if n_list.len() < 3 {
        return Err(Error::InsufficientPoints(n_list.len()));
    }
    assert!(
        n_list.windows(2).all(|w| w[0] < w[1]),
        "n_list must be strictly increasing"
    );
    Ok(())
}

/// Confirmation tolerance for a ratio that approaches 1 like
/// `1 + c / log2 sqrt(n)`: the correction magnitude at the largest `n`,
/// plus slack for the next-order term.
fn log_rate_tolerance(c: f64, n_list: &[usize]) -> f64 {
    let n_max = *n_list.last().expect("n_list checked nonempty") as f64;
    math::abs(c) / math::log2(math::sqrt(n_max)) + 0.05
}

/// Restriction families covered by the scaling claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingFamily {
    A0,
    Ap,
    A1,
}

/// First- and second-order convergence reports for one entropy family.
///
/// Known outcomes, all exercised by tests:
///
/// - `Thm1.1-second-order`: the derived deficit is
///   `(1 - S) ~ (p0-q0)^2 (p-q)^(2(n-1)) log2(e) / 2`; the commonly printed
///   constant omits the `1/2`. Reported against the printed constant, so
///   the verdict is `ConstantMismatch` with the stabilized value at half.
/// - `Thm1.2-second-order`: the printed constant
///   `1 + log2 sqrt(p/q) + log2 sqrt(2 pi e)` overstates the lattice value
///   by exactly 1 bit (parity: the support has spacing 2).
/// - `Thm1.3-second-order`: the exact closed form gives `(c0 - c) / c`;
///   the printed constant is `c0 / c`.
pub fn theorem1_sequences(
    family: ScalingFamily,
    params: &CorrelatedRwParams,
    n_list: &[usize],
) -> Result<Vec<ConvergenceReport>> {
    check_n_list(n_list)?;
    let mut out = Vec::new();
    match family {
        ScalingFamily::A0 => {
            let raw: Vec<(usize, f64)> = n_list
                .iter()
                .map(|&n| (n, spectra::exact_entropy_a0(params, n).bits))
                .collect();
            let first = raw.iter().map(|&(n, s)| (n, s, s)).collect();
            out.push(report("Thm1.1-first-order", first, 1.0, None, 1e-6));

            if params.p() != 0.5 {
                // (S - 1) / (p - q)^(2n), evaluated in log space off the
                // stable deficit so it survives far past double rounding.
                let pq = params.p() - params.q();
                let points: Vec<(usize, f64, f64)> = raw
                    .iter()
                    .map(|&(n, s)| {
                        let deficit = spectra::exact_entropy_a0_deficit(params, n);
                        let scaled = if deficit > 0.0 {
                            -math::exp(math::ln(deficit) - 2.0 * n as f64 * math::ln(math::abs(pq)))
                        } else {
                            0.0
                        };
                        (n, s, scaled)
                    })
                    .collect();
                let spread0 = params.p0() - params.q0();
                let printed = -(spread0 / pq) * (spread0 / pq) * math::LOG2_E;
                let derived = 0.5 * printed;
                let tol = 0.02 * math::abs(printed);
                out.push(report(
                    "Thm1.1-second-order",
                    points,
                    printed,
                    Some(derived),
                    tol,
                ));
            }
        }
        ScalingFamily::Ap => {
            let raw: Vec<(usize, f64)> = n_list
                .iter()
                .map(|&n| (n, spectra::exact_entropy_ap(params, n).bits))
                .collect();
            let printed = 1.0 + 0.5 * math::log2(params.p() / params.q()) + log2_sqrt_2pi_e();
            let derived = printed - 1.0;
            // S / log2 sqrt(n) -> 1 only at O(1/log n): the tolerance is
            // the known correction magnitude at n_max plus slack.
            let first: Vec<(usize, f64, f64)> = raw
                .iter()
                .map(|&(n, s)| (n, s, s / math::log2(math::sqrt(n as f64))))
                .collect();
            let tol = log_rate_tolerance(derived, n_list);
            out.push(report("Thm1.2-first-order", first, 1.0, None, tol));

            let second: Vec<(usize, f64, f64)> = raw
                .iter()
                .map(|&(n, s)| (n, s, s - math::log2(math::sqrt(n as f64))))
                .collect();
            out.push(report(
                "Thm1.2-second-order",
                second,
                printed,
                Some(derived),
                0.02,
            ));
        }
        ScalingFamily::A1 => {
            let rate = params.step_entropy();
            let raw: Vec<(usize, f64)> = n_list
                .iter()
                .map(|&n| (n, spectra::exact_entropy_a1(params, n).bits))
                .collect();
            let first: Vec<(usize, f64, f64)> = raw
                .iter()
                .map(|&(n, s)| (n, s, s / (rate * n as f64)))
                .collect();
            out.push(report("Thm1.3-first-order", first, 1.0, None, 1e-3));

            let second: Vec<(usize, f64, f64)> = raw
                .iter()
                .map(|&(n, s)| (n, s, (s / (rate * n as f64) - 1.0) * n as f64))
                .collect();
            let c0 = params.first_step_entropy();
            let printed = c0 / rate;
            let derived = (c0 - rate) / rate;
            out.push(report(
                "Thm1.3-second-order",
                second,
                printed,
                Some(derived),
                0.02 * math::abs(printed).max(1e-6),
            ));
        }
    }
    Ok(out)
}

/// Shannon-entropy analogue for the walk position: `H_rw ~ log2 sqrt(n) +
/// log2 sqrt(p/q) + log2 sqrt(2 pi e)` as printed; the lattice value runs
/// exactly 1 bit lower (parity), reported as `ConstantMismatch`.
pub fn corollary_sequence(
    params: &CorrelatedRwParams,
    n_list: &[usize],
) -> Result<Vec<ConvergenceReport>> {
    check_n_list(n_list)?;
    let raw: Vec<(usize, f64)> = n_list
        .iter()
        .map(|&n| (n, corrw::shannon_entropy_rw(params, n)))
        .collect();
    let printed = 0.5 * math::log2(params.p() / params.q()) + log2_sqrt_2pi_e();
    let derived = printed - 1.0;
    let first: Vec<(usize, f64, f64)> = raw
        .iter()
        .map(|&(n, h)| (n, h, h / math::log2(math::sqrt(n as f64))))
        .collect();
    let tol = log_rate_tolerance(derived, n_list);
    let mut out = Vec::new();
    out.push(report("Cor-first-order", first, 1.0, None, tol));

    let second: Vec<(usize, f64, f64)> = raw
        .iter()
        .map(|&(n, h)| (n, h, h - math::log2(math::sqrt(n as f64))))
        .collect();
    out.push(report("Cor-constant", second, printed, Some(derived), 0.02));
    Ok(out)
}

/// The first-step-refined family `B`: its entropy exceeds the position
/// family's by the first-step entropy, so the printed four-term constant
/// carries the same 1-bit lattice offset as `Thm1.2-second-order`.
pub fn b_subset_sequence(
    params: &CorrelatedRwParams,
    n_list: &[usize],
) -> Result<Vec<ConvergenceReport>> {
    check_n_list(n_list)?;
    let raw: Vec<(usize, f64, f64)> = n_list
        .iter()
        .map(|&n| {
            let b = spectra::exact_entropy_b(params, n).bits;
            let ap = spectra::exact_entropy_ap(params, n).bits;
            (n, b, ap)
        })
        .collect();

    let second: Vec<(usize, f64, f64)> = raw
        .iter()
        .map(|&(n, b, _)| (n, b, b - math::log2(math::sqrt(n as f64))))
        .collect();
    let c0 = params.first_step_entropy();
    let printed = 1.0 + 0.5 * math::log2(params.p() / params.q()) + log2_sqrt_2pi_e() + c0;
    let derived = printed - 1.0;
    let mut out = Vec::new();
    out.push(report(
        "B-second-order",
        second,
        printed,
        Some(derived),
        0.02,
    ));

    // The difference S_B - S_Ap is lattice-offset free and converges fast.
    let diff: Vec<(usize, f64, f64)> = raw.iter().map(|&(n, b, ap)| (n, b, b - ap)).collect();
    out.push(report("B-minus-Ap", diff, c0, None, 0.02));
    Ok(out)
}

/// One row of the scaling summary table.
#[derive(Debug, Clone, Copy)]
pub struct Table1Row {
    pub n: usize,
    pub h_rw: f64,
    pub h_qw: f64,
    pub s_a1: f64,
    pub s_ap: f64,
}

/// Leading-order fits extracted from the largest entries of the table.
#[derive(Debug, Clone, Copy)]
pub struct Table1Fits {
    /// `H_rw / log2 sqrt(n)` at the largest `n`.
    pub h_rw_over_log_sqrt: f64,
    /// `H_qw / log2 n` at the largest `n`.
    pub h_qw_over_log: f64,
    /// Last-difference slope of `S_A1`; equals the per-step entropy rate.
    pub s_a1_slope: f64,
    /// `S_Ap / log2 sqrt(n)` at the largest `n`.
    pub s_ap_over_log_sqrt: f64,
}

/// Entropy summary per time step plus leading-order fits: Shannon entropies
/// of the classical and quantum walks against the von Neumann entropies of
/// the diagonal and position families.
pub fn table1_summary(
    params: &CorrelatedRwParams,
    coin: &QuantumCoin,
    init: &InitialState,
    n_list: &[usize],
) -> Result<(Vec<Table1Row>, Table1Fits)> {
    check_n_list(n_list)?;
    let rows: Vec<Table1Row> = n_list
        .iter()
        .map(|&n| Table1Row {
            n,
            h_rw: corrw::shannon_entropy_rw(params, n),
            h_qw: corrw::shannon_entropy_qw(coin, init, n),
            s_a1: spectra::exact_entropy_a1(params, n).bits,
            s_ap: spectra::exact_entropy_ap(params, n).bits,
        })
        .collect();
    let last = rows[rows.len() - 1];
    let prev = rows[rows.len() - 2];
    let log_sqrt = math::log2(math::sqrt(last.n as f64));
    let fits = Table1Fits {
        h_rw_over_log_sqrt: last.h_rw / log_sqrt,
        h_qw_over_log: last.h_qw / math::log2(last.n as f64),
        s_a1_slope: (last.s_a1 - prev.s_a1) / (last.n as f64 - prev.n as f64),
        s_ap_over_log_sqrt: last.s_ap / log_sqrt,
    };
    Ok((rows, fits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hadamard_params() -> CorrelatedRwParams {
        CorrelatedRwParams::new(0.5, 0.5).unwrap()
    }

    fn skew_params() -> CorrelatedRwParams {
        CorrelatedRwParams::new(0.3, 0.7).unwrap()
    }

    #[test]
    fn fourier_symbol_at_zero_and_pi() {
        let params = skew_params();
        let s0 = fourier_symbol(&params, 0.0);
        // Eigenvalues of the plain persistence chain: {1, p - q}.
        assert!((s0.eigenvalues.0 - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((s0.eigenvalues.1 - Complex64::new(0.4, 0.0)).norm() < 1e-14);

        let spi = fourier_symbol(&params, core::f64::consts::PI);
        // Sign flip of the chain: eigenvalues {q - p, -1}.
        assert!((spi.eigenvalues.0 - Complex64::new(-0.4, 0.0)).norm() < 1e-12);
        assert!((spi.eigenvalues.1 - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        // M_hat(pi) = -M entrywise.
        for r in 0..2 {
            for c in 0..2 {
                assert!((spi.matrix[r][c] + s0.matrix[r][c]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn fourier_eigenvalues_satisfy_trace_and_det() {
        let mut rng = crate::rng::SplitMix64::new(8080);
        for _ in 0..100 {
            let p = rng.uniform(0.05, 0.95);
            let p0 = rng.uniform(0.0, 1.0);
            let params = CorrelatedRwParams::new(p0, p).unwrap();
            let xi = rng.uniform(0.0, core::f64::consts::TAU);
            let s = fourier_symbol(&params, xi);
            let trace = s.matrix[0][0] + s.matrix[1][1];
            let det = s.matrix[0][0] * s.matrix[1][1] - s.matrix[0][1] * s.matrix[1][0];
            let (l1, l2) = s.eigenvalues;
            assert!((l1 + l2 - trace).norm() < 1e-12);
            assert!((l1 * l2 - det).norm() < 1e-12);
        }
    }

    #[test]
    fn fourier_eigenvalue_small_frequency_expansion() {
        // lambda_plus(xi / sqrt(n)) ~ 1 - (p/q) xi^2 / (2n), and
        // lambda_minus ~ (p - q)(1 + (p/q) xi^2 / (2n)).
        let params = skew_params();
        let v = params.p() / params.q();
        let xi = 0.8;
        for &n in &[100usize, 1000, 10000] {
            let s = fourier_symbol(&params, xi / math::sqrt(n as f64));
            let plus_expect = 1.0 - v * xi * xi / (2.0 * n as f64);
            let minus_expect = (params.p() - params.q()) * (1.0 + v * xi * xi / (2.0 * n as f64));
            // Remainder is O(1/n^2): scaled by n it stays bounded.
            let plus_err = (s.eigenvalues.0.re - plus_expect) * n as f64;
            let minus_err = (s.eigenvalues.1.re - minus_expect) * n as f64;
            assert!(math::abs(plus_err) < 1.0, "n={n}: {plus_err}");
            assert!(math::abs(minus_err) < 1.0, "n={n}: {minus_err}");
        }
    }

    #[test]
    fn dft_matches_transfer_power() {
        let params = skew_params();
        for &n in &[1usize, 2, 7, 50, 200] {
            let dist = corrw::evolve(&params, n);
            for k in 0..32 {
                let xi = k as f64 * core::f64::consts::TAU / 32.0;
                let direct = directional_dft(&dist, xi);
                let predicted = directional_dft_predicted(&params, n, xi);
                assert!(
                    (direct[0] - predicted[0]).norm() < 1e-10
                        && (direct[1] - predicted[1]).norm() < 1e-10,
                    "n={n} xi={xi}"
                );
            }
        }
    }

    #[test]
    fn gaussian_peak_value() {
        let params = hadamard_params();
        let got = gaussian_pointwise(&params, 100, 0);
        let expect = 0.5 / math::sqrt(200.0 * core::f64::consts::PI);
        assert!(math::abs(got - expect) < 1e-15);
        assert!(math::abs(got - 0.019947) < 1e-6);
    }

    #[test]
    fn gaussian_pointwise_tracks_dp_masses() {
        // sup over lattice positions of |p_L(j) - 2 * gaussian| decreases
        // with n (factor 2: lattice spacing 2).
        let params = hadamard_params();
        let mut sups = Vec::new();
        for &n in &[200usize, 800, 3200] {
            let dist = corrw::evolve(&params, n);
            let mut sup = 0.0f64;
            for (j, pl, _) in dist.iter() {
                let approx = 2.0 * gaussian_pointwise(&params, n, j);
                sup = sup.max(math::abs(pl - approx));
            }
            sups.push(sup);
        }
        assert!(sups[1] < sups[0] && sups[2] < sups[1], "{sups:?}");
    }

    #[test]
    fn ks_distance_shrinks() {
        let params = hadamard_params();
        let d_small = gaussian_ks_distance(&params, 100);
        let d_large = gaussian_ks_distance(&params, 2000);
        assert!(d_large < d_small);
        assert!(d_large < 0.03);
    }

    #[test]
    fn a0_reports() {
        let params = skew_params();
        let reports = theorem1_sequences(ScalingFamily::A0, &params, &[10, 20, 30, 40]).unwrap();
        assert_eq!(reports.len(), 2);
        assert_eq!(reports[0].verdict, Verdict::Confirmed);
        // Second order stabilizes at half the printed constant.
        let second = &reports[1];
        assert_eq!(second.verdict, Verdict::ConstantMismatch);
        let derived = second.derived.unwrap();
        assert!(math::abs(second.last_scaled() / derived - 1.0) < 1e-6);
        assert!(math::abs(second.last_scaled() / second.predicted - 0.5) < 1e-6);
    }

    #[test]
    fn a0_second_order_skipped_for_balanced_coin() {
        let reports =
            theorem1_sequences(ScalingFamily::A0, &hadamard_params(), &[10, 20, 30]).unwrap();
        assert_eq!(reports.len(), 1);
    }

    #[test]
    fn a1_reports_exact_constant() {
        let params = CorrelatedRwParams::new(0.2, 0.7).unwrap();
        let reports =
            theorem1_sequences(ScalingFamily::A1, &params, &[10, 100, 1000, 10000]).unwrap();
        assert_eq!(reports[0].verdict, Verdict::Confirmed);
        let second = &reports[1];
        // (S / (c n) - 1) n = (c0 - c) / c for every n: exactly constant.
        let c = params.step_entropy();
        let c0 = params.first_step_entropy();
        let expect = (c0 - c) / c;
        for &(_, _, scaled) in &second.points {
            assert!(math::abs(scaled - expect) < 1e-9);
        }
        assert_eq!(second.verdict, Verdict::ConstantMismatch);
        assert!(math::abs(second.predicted - c0 / c) < 1e-12);
    }

    #[test]
    fn ap_reports_lattice_offset() {
        let params = hadamard_params();
        let reports = theorem1_sequences(ScalingFamily::Ap, &params, &[100, 1000, 10000]).unwrap();
        let first = &reports[0];
        assert_eq!(first.verdict, Verdict::Confirmed);
        // Slow log-rate approach: still far from 1 at n = 1e4.
        assert!(first.last_scaled() > 1.2 && first.last_scaled() < 1.5);

        let second = &reports[1];
        assert_eq!(second.verdict, Verdict::ConstantMismatch);
        let derived = second.derived.unwrap();
        assert!(math::abs(second.last_scaled() - derived) < 0.02);
        assert!(math::abs(second.predicted - derived - 1.0) < 1e-12);
    }

    #[test]
    fn corollary_reports() {
        let params = hadamard_params();
        let reports = corollary_sequence(&params, &[100, 1000, 10000]).unwrap();
        assert_eq!(reports[0].verdict, Verdict::Confirmed);
        let constant = &reports[1];
        assert_eq!(constant.verdict, Verdict::ConstantMismatch);
        assert!(math::abs(constant.last_scaled() - constant.derived.unwrap()) < 0.02);
    }

    #[test]
    fn corollary_offset_between_parameter_sets() {
        // The p/q term is lattice-offset free: the difference of constants
        // between (0.5, 0.7) and (0.5, 0.5) is log2 sqrt(0.7/0.3).
        let skew = CorrelatedRwParams::new(0.5, 0.7).unwrap();
        let flat = hadamard_params();
        let n = 10000;
        let offset = corrw::shannon_entropy_rw(&skew, n) - corrw::shannon_entropy_rw(&flat, n);
        let expect = 0.5 * math::log2(0.7 / 0.3);
        assert!(math::abs(offset - expect) < 0.02, "offset {offset}");
        assert!(math::abs(expect - 0.6107) < 5e-4);
    }

    #[test]
    fn b_subset_reports() {
        let params = skew_params();
        let reports = b_subset_sequence(&params, &[100, 1000, 4000]).unwrap();
        let second = &reports[0];
        assert_eq!(second.verdict, Verdict::ConstantMismatch);
        let diff = &reports[1];
        assert_eq!(diff.verdict, Verdict::Confirmed);
        assert!(math::abs(diff.last_scaled() - params.first_step_entropy()) < 0.02);
    }

    #[test]
    fn b_difference_vanishes_for_deterministic_first_step() {
        let params = CorrelatedRwParams::new(1.0, 0.7).unwrap();
        for &n in &[50usize, 500] {
            let b = spectra::exact_entropy_b(&params, n).bits;
            let ap = spectra::exact_entropy_ap(&params, n).bits;
            assert!(math::abs(b - ap) < 1e-12, "n={n}");
        }
    }

    #[test]
    fn insufficient_points_rejected() {
        let params = hadamard_params();
        assert!(matches!(
            corollary_sequence(&params, &[10, 100]),
            Err(Error::InsufficientPoints(2))
        ));
    }

    #[test]
    fn table_summary_fits() {
        let coin = QuantumCoin::hadamard();
        let init = InitialState::new(
            Complex64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0),
            Complex64::new(0.0, core::f64::consts::FRAC_1_SQRT_2),
        )
        .unwrap();
        let params = CorrelatedRwParams::from_coin(&coin, &init).unwrap();
        let (rows, fits) = table1_summary(&params, &coin, &init, &[50, 100, 200, 400]).unwrap();
        assert_eq!(rows.len(), 4);
        // The diagonal-family slope is exactly the per-step entropy rate.
        assert!(math::abs(fits.s_a1_slope - params.step_entropy()) < 1e-12);
        assert!(fits.h_qw_over_log > 0.5 && fits.h_qw_over_log < 1.5);
        assert!(fits.h_rw_over_log_sqrt > 1.0);
        assert!(fits.s_ap_over_log_sqrt > fits.h_rw_over_log_sqrt);
    }
}
