//! The `verify` pipeline: every cross-check the library makes, run at a
//! configurable scale, reported one section per line.
//!
//! Sections fail hard only on implementation-level disagreements (oracle vs
//! closed form, reference matrices, conservation laws). Scaling claims whose
//! published constants stabilize at a different value are reported as
//! `ConstantMismatch` warnings with the stabilized and derived constants
//! printed; they do not fail the run.

use decomat_core::asymptotics::{
    self, b_subset_sequence, corollary_sequence, theorem1_sequences, ConvergenceReport,
    ScalingFamily, Verdict,
};
use decomat_core::corrw::{self, CorrelatedRwParams};
use decomat_core::decoherence::{build_matrix, precedes, two_site_matrix};
use decomat_core::pathspace::{InitialState, PathOrdering, QuantumCoin, RestrictionKind};
use decomat_core::rng::{random_coin, random_state, SplitMix64};
use decomat_core::spectra::{
    closed_form_spectrum, exact_entropy_a0, exact_entropy_a1, exact_entropy_ap, exact_entropy_b,
    hermitian_eigenvalues, spectrum_match,
};
use decomat_core::Complex64;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub random_coins: usize,
    /// Largest path length for dense-oracle sections.
    pub oracle_n_max: usize,
    /// Largest time for asymptotic sections.
    pub asymptotic_n: usize,
    /// Oracle-vs-closed-form spectrum tolerance.
    pub tol: f64,
    /// Test hook: negate the closed-form endpoint marginals to prove the
    /// pipeline catches a sign error.
    pub inject_sign_flip: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 20240816,
            random_coins: 12,
            oracle_n_max: 8,
            asymptotic_n: 10_000,
            tol: 1e-9,
            inject_sign_flip: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Warn,
    Fail,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Warn => "WARN",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SectionResult {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

fn section(name: &'static str, status: Status, detail: String) -> SectionResult {
    SectionResult {
        name,
        status,
        detail,
    }
}

fn reference_init() -> InitialState {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    InitialState::new(Complex64::new(s, 0.0), Complex64::new(0.0, s)).unwrap()
}

const ORACLE_KINDS: [RestrictionKind; 4] = [
    RestrictionKind::A0,
    RestrictionKind::Ap,
    RestrictionKind::A1,
    RestrictionKind::B,
];

/// Runs every section; returns the results and the process exit code
/// (0 unless some section failed).
pub fn run(
    config: &VerifyConfig,
    mut emit: impl FnMut(&SectionResult),
) -> (Vec<SectionResult>, i32) {
    let mut results = Vec::new();
    let mut push = |r: SectionResult| {
        emit(&r);
        results.push(r);
    };

    push(golden_matrices());
    push(two_site_equivalence());
    push(lemma1_diagonal(config));
    push(spectrum_oracle(config));
    push(qw_consistency(config));
    push(precedes_relations(config));
    push(monotonicity(config));
    push(endpoint_marginals_section(config));
    push(scaling_section(
        "theorem1-a0",
        theorem1_sequences(
            ScalingFamily::A0,
            &CorrelatedRwParams::new(0.3, 0.7).unwrap(),
            &[10, 20, 30, 40],
        ),
    ));
    push(scaling_section(
        "theorem1-ap",
        ap_reports(config.asymptotic_n),
    ));
    push(scaling_section(
        "theorem1-a1",
        theorem1_sequences(
            ScalingFamily::A1,
            &CorrelatedRwParams::new(0.3, 0.7).unwrap(),
            &[10, 100, 1000, 10_000],
        ),
    ));
    push(scaling_section(
        "corollary",
        corollary_reports(config.asymptotic_n),
    ));
    push(scaling_section("b-subset", b_reports(config.asymptotic_n)));
    push(gaussian_limit(config));
    push(dft_consistency());
    push(qw_entropy_trend(config));

    let failed = results.iter().any(|r| r.status == Status::Fail);
    (results, if failed { 1 } else { 0 })
}

fn golden_matrices() -> SectionResult {
    let coin = QuantumCoin::hadamard();
    let init = reference_init();
    let mut worst = 0.0f64;
    for kind in [
        RestrictionKind::A0,
        RestrictionKind::Ap,
        RestrictionKind::A1,
    ] {
        let matrix = match build_matrix(&coin, &init, 3, kind, PathOrdering::Paper) {
            Ok(m) => m,
            Err(e) => return section("golden-matrices", Status::Fail, e.to_string()),
        };
        match crate::golden::compare_golden(&matrix, 1e-12) {
            Ok(dev) => worst = worst.max(dev),
            Err(e) => return section("golden-matrices", Status::Fail, e.message),
        }
    }
    section(
        "golden-matrices",
        Status::Pass,
        format!("3 reference matrices, max deviation {worst:.2e}"),
    )
}

fn two_site_equivalence() -> SectionResult {
    let mut worst = 0.0f64;
    for n in 1..=8 {
        let direct = match two_site_matrix(n) {
            Ok(m) => m,
            Err(e) => return section("two-site-equivalence", Status::Fail, e.to_string()),
        };
        let built = build_matrix(
            &QuantumCoin::gudder_sorkin(),
            &InitialState::left(),
            n,
            RestrictionKind::A0,
            PathOrdering::Paper,
        )
        .expect("in-cap construction");
        for (x, y) in direct.entries().iter().zip(built.entries().iter()) {
            worst = worst.max((x - y).norm());
        }
    }
    if worst > 1e-12 {
        return section(
            "two-site-equivalence",
            Status::Fail,
            format!("max deviation {worst:.2e} exceeds 1e-12"),
        );
    }
    section(
        "two-site-equivalence",
        Status::Pass,
        format!("n = 1..8, max deviation {worst:.2e}"),
    )
}

fn lemma1_diagonal(config: &VerifyConfig) -> SectionResult {
    let mut rng = SplitMix64::new(config.seed);
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    for round in 0..config.random_coins {
        let coin = random_coin(&mut rng);
        let init = random_state(&mut rng);
        let params = match CorrelatedRwParams::from_coin(&coin, &init) {
            Ok(p) => p,
            Err(e) => return section("lemma1-diagonal", Status::Fail, e.to_string()),
        };
        let n = 1 + round % config.oracle_n_max;
        let matrix = build_matrix(&coin, &init, n, RestrictionKind::A0, PathOrdering::Binary)
            .expect("in-cap construction");
        for (idx, path) in matrix.paths().iter().enumerate() {
            let expect = corrw::path_probability(&params, path);
            worst = worst.max((matrix.entry(idx, idx).re - expect).abs());
            checked += 1;
        }
    }
    if worst > 1e-12 {
        return section(
            "lemma1-diagonal",
            Status::Fail,
            format!("max |diagonal - walk probability| = {worst:.2e}"),
        );
    }
    section(
        "lemma1-diagonal",
        Status::Pass,
        format!("{checked} diagonal entries, max deviation {worst:.2e}"),
    )
}

fn spectrum_oracle(config: &VerifyConfig) -> SectionResult {
    let mut rng = SplitMix64::new(config.seed ^ 0x5bec7).clone();
    let mut worst = 0.0f64;
    let mut cases = 0usize;
    for _ in 0..config.random_coins {
        let coin = random_coin(&mut rng);
        let init = random_state(&mut rng);
        let params = CorrelatedRwParams::from_coin(&coin, &init).expect("valid random coin");
        for n in 2..=config.oracle_n_max {
            for kind in ORACLE_KINDS {
                let matrix = build_matrix(&coin, &init, n, kind, PathOrdering::Paper)
                    .expect("in-cap construction");
                let oracle = match hermitian_eigenvalues(&matrix, config.tol * 1e-2) {
                    Ok(s) => s,
                    Err(e) => return section("spectrum-oracle", Status::Fail, e.to_string()),
                };
                let closed = closed_form_spectrum(&params, n, &kind)
                    .expect("closed form covers these kinds");
                match spectrum_match(&oracle, &closed, config.tol) {
                    Ok(m) if m.matched => worst = worst.max(m.max_deviation),
                    Ok(m) => {
                        return section(
                            "spectrum-oracle",
                            Status::Fail,
                            format!(
                                "kind {} n={n}: deviation {:.2e} exceeds {:.1e}",
                                kind.name(),
                                m.max_deviation,
                                config.tol
                            ),
                        )
                    }
                    Err(e) => return section("spectrum-oracle", Status::Fail, e.to_string()),
                }
                cases += 1;
            }
        }
    }
    section(
        "spectrum-oracle",
        Status::Pass,
        format!("{cases} spectra matched, max deviation {worst:.2e}"),
    )
}

fn qw_consistency(config: &VerifyConfig) -> SectionResult {
    // Reference point first: the two-step balanced walk.
    let coin = QuantumCoin::hadamard();
    let init = reference_init();
    let reference = corrw::qw_distribution(&coin, &init, 2);
    let expect = [(-2i64, 0.25), (0, 0.5), (2, 0.25)];
    for ((x, p), (ex, ep)) in reference.iter().zip(expect.iter()) {
        if x != ex || (p - ep).abs() > 1e-12 {
            return section(
                "qw-consistency",
                Status::Fail,
                format!("two-step reference failed at x={x}: {p}"),
            );
        }
    }

    let mut rng = SplitMix64::new(config.seed ^ 0x9091);
    let mut worst = 0.0f64;
    for round in 0..config.random_coins.min(8) {
        let coin = random_coin(&mut rng);
        let init = random_state(&mut rng);
        let n = 1 + round % config.oracle_n_max;
        let blocks = match decomat_core::decoherence::qw_distribution_from_blocks(&coin, &init, n) {
            Ok(b) => b,
            Err(e) => return section("qw-consistency", Status::Fail, e.to_string()),
        };
        let amp = corrw::qw_distribution(&coin, &init, n);
        let mut total = 0.0;
        for ((x1, p1), (x2, p2)) in blocks.iter().zip(amp.iter()) {
            if x1 != x2 {
                return section(
                    "qw-consistency",
                    Status::Fail,
                    "position grids differ".into(),
                );
            }
            worst = worst.max((p1 - p2).abs());
            total += p1;
        }
        worst = worst.max((total - 1.0).abs());
    }
    if worst > 1e-12 {
        return section(
            "qw-consistency",
            Status::Fail,
            format!("block sums vs amplitude evolution deviate by {worst:.2e}"),
        );
    }
    section(
        "qw-consistency",
        Status::Pass,
        format!("block q-measures match amplitudes, max deviation {worst:.2e}"),
    )
}

fn precedes_relations(config: &VerifyConfig) -> SectionResult {
    let mut rng = SplitMix64::new(config.seed ^ 0xbeef);
    for round in 0..config.random_coins.min(6) {
        let coin = random_coin(&mut rng);
        let init = random_state(&mut rng);
        let n = 2 + round % 5;
        let chain = [
            (RestrictionKind::A1, RestrictionKind::B, true),
            (RestrictionKind::B, RestrictionKind::Ap, true),
            (RestrictionKind::Ap, RestrictionKind::A0, true),
            (RestrictionKind::Full, RestrictionKind::A0, true),
            (RestrictionKind::A0, RestrictionKind::Full, true),
            (RestrictionKind::A0, RestrictionKind::A1, false),
        ];
        for (a, b, expect) in chain {
            match precedes(a, b, &coin, &init, n) {
                Ok(got) if got == expect => {}
                Ok(got) => {
                    return section(
                        "precedes-relations",
                        Status::Fail,
                        format!(
                            "{} vs {} at n={n}: got {got}, expected {expect}",
                            a.name(),
                            b.name()
                        ),
                    )
                }
                Err(e) => return section("precedes-relations", Status::Fail, e.to_string()),
            }
        }
    }
    section(
        "precedes-relations",
        Status::Pass,
        "zero-pattern chain a1 < b < ap < a0 ~ full".into(),
    )
}

fn monotonicity(config: &VerifyConfig) -> SectionResult {
    let mut rng = SplitMix64::new(config.seed ^ 0x107010);
    let coins = config.random_coins.max(20);
    for _ in 0..coins {
        let coin = random_coin(&mut rng);
        let init = random_state(&mut rng);
        let params = CorrelatedRwParams::from_coin(&coin, &init).expect("valid random coin");
        for n in 1..=12 {
            let a1 = exact_entropy_a1(&params, n).bits;
            let b = exact_entropy_b(&params, n).bits;
            let ap = exact_entropy_ap(&params, n).bits;
            let a0 = exact_entropy_a0(&params, n).bits;
            if !(a1 >= b - 1e-9 && b >= ap - 1e-9 && ap >= a0 - 1e-9) {
                // A counterexample to the ordering conjecture is surfaced,
                // not treated as an implementation failure.
                return section(
                    "monotonicity-conjecture",
                    Status::Warn,
                    format!(
                        "counterexample at n={n}: S_a1={a1:.6} S_b={b:.6} S_ap={ap:.6} S_a0={a0:.6} (p0={:.4}, p={:.4})",
                        params.p0(),
                        params.p()
                    ),
                );
            }
        }
    }
    section(
        "monotonicity-conjecture",
        Status::Pass,
        format!("S_a1 >= S_b >= S_ap >= S_a0 across {coins} random coins, n <= 12"),
    )
}

fn endpoint_marginals_section(config: &VerifyConfig) -> SectionResult {
    let mut rng = SplitMix64::new(config.seed ^ 0xe4d);
    let mut worst = 0.0f64;
    for _ in 0..config.random_coins.max(10) {
        let p = rng.uniform(0.05, 0.95);
        let p0 = rng.uniform(0.0, 1.0);
        let params = CorrelatedRwParams::new(p0, p).expect("in-range parameters");
        for n in 1..=30 {
            let sums = corrw::evolve(&params, n).endpoint_sums();
            let (mut l, mut r) = corrw::endpoint_marginals(&params, n);
            if config.inject_sign_flip {
                // Flip the correction term around 1/2.
                (l, r) = (r, l);
            }
            worst = worst.max((sums.0 - l).abs().max((sums.1 - r).abs()));
        }
    }
    if worst > 1e-12 {
        return section(
            "endpoint-marginals",
            Status::Fail,
            format!("closed form vs column sums deviate by {worst:.2e}"),
        );
    }
    section(
        "endpoint-marginals",
        Status::Pass,
        format!("closed form matches column sums, max deviation {worst:.2e}"),
    )
}

fn ap_reports(n_max: usize) -> decomat_core::Result<Vec<ConvergenceReport>> {
    let n_list = log_n_list(n_max);
    let mut out = theorem1_sequences(
        ScalingFamily::Ap,
        &CorrelatedRwParams::new(0.5, 0.5).unwrap(),
        &n_list,
    )?;
    out.extend(theorem1_sequences(
        ScalingFamily::Ap,
        &CorrelatedRwParams::new(0.5, 0.7).unwrap(),
        &n_list,
    )?);
    Ok(out)
}

fn corollary_reports(n_max: usize) -> decomat_core::Result<Vec<ConvergenceReport>> {
    let n_list = log_n_list(n_max);
    let mut out = corollary_sequence(&CorrelatedRwParams::new(0.5, 0.5).unwrap(), &n_list)?;
    out.extend(corollary_sequence(
        &CorrelatedRwParams::new(0.5, 0.7).unwrap(),
        &n_list,
    )?);
    Ok(out)
}

fn b_reports(n_max: usize) -> decomat_core::Result<Vec<ConvergenceReport>> {
    let n_list = log_n_list(n_max);
    let mut out = b_subset_sequence(&CorrelatedRwParams::new(0.5, 0.5).unwrap(), &n_list)?;
    out.extend(b_subset_sequence(
        &CorrelatedRwParams::new(0.3, 0.7).unwrap(),
        &n_list,
    )?);
    Ok(out)
}

fn log_n_list(n_max: usize) -> Vec<usize> {
    let n_max = n_max.max(100);
    vec![n_max / 100, n_max / 10, n_max]
}

fn scaling_section(
    name: &'static str,
    reports: decomat_core::Result<Vec<ConvergenceReport>>,
) -> SectionResult {
    let reports = match reports {
        Ok(r) => r,
        Err(e) => return section(name, Status::Fail, e.to_string()),
    };
    let mut warn_lines = Vec::new();
    for r in &reports {
        match r.verdict {
            Verdict::Confirmed => {}
            Verdict::ConstantMismatch => warn_lines.push(format!(
                "{}: stabilized {:.4} vs printed {:.4}{}",
                r.claim,
                r.last_scaled(),
                r.predicted,
                match r.derived {
                    Some(d) => format!(" (derived {d:.4})"),
                    None => String::new(),
                }
            )),
            Verdict::Diverging => {
                return section(
                    name,
                    Status::Fail,
                    format!("{} diverges: last scaled {:.4}", r.claim, r.last_scaled()),
                )
            }
        }
    }
    if warn_lines.is_empty() {
        section(
            name,
            Status::Pass,
            format!("{} claims confirmed", reports.len()),
        )
    } else {
        section(name, Status::Warn, warn_lines.join("; "))
    }
}

fn gaussian_limit(config: &VerifyConfig) -> SectionResult {
    let params = CorrelatedRwParams::new(0.5, 0.5).unwrap();
    let n = config.asymptotic_n;
    let d = asymptotics::gaussian_ks_distance(&params, n);
    // Lattice discreteness bounds KS from below by O(1/sqrt(n)); the gate
    // is 0.01 at n = 1e4 and scales accordingly for shorter runs.
    let threshold = 0.01 * (10_000.0 / n as f64).sqrt();
    if d >= threshold {
        return section(
            "gaussian-limit",
            Status::Fail,
            format!("KS distance {d:.4} at n={n} (threshold {threshold:.4})"),
        );
    }
    section(
        "gaussian-limit",
        Status::Pass,
        format!("KS distance {d:.2e} at n={n} (threshold {threshold:.4})"),
    )
}

fn dft_consistency() -> SectionResult {
    let params = CorrelatedRwParams::new(0.3, 0.7).unwrap();
    let mut worst = 0.0f64;
    for &n in &[1usize, 2, 7, 50, 200] {
        let dist = corrw::evolve(&params, n);
        for k in 0..16 {
            let xi = k as f64 * std::f64::consts::TAU / 16.0;
            let direct = asymptotics::directional_dft(&dist, xi);
            let predicted = asymptotics::directional_dft_predicted(&params, n, xi);
            worst = worst
                .max((direct[0] - predicted[0]).norm())
                .max((direct[1] - predicted[1]).norm());
        }
    }
    if worst > 1e-10 {
        return section(
            "dft-consistency",
            Status::Fail,
            format!("transform vs symbol power deviates by {worst:.2e}"),
        );
    }
    section(
        "dft-consistency",
        Status::Pass,
        format!("spatial transform matches symbol powers, max deviation {worst:.2e}"),
    )
}

fn qw_entropy_trend(config: &VerifyConfig) -> SectionResult {
    let coin = QuantumCoin::hadamard();
    let init = reference_init();
    let n = config.asymptotic_n;
    let h = corrw::shannon_entropy_qw(&coin, &init, n);
    let ratio = h / (n as f64).log2();
    if !(0.85..=1.15).contains(&ratio) {
        return section(
            "qw-entropy-trend",
            Status::Fail,
            format!("H_qw / log2(n) = {ratio:.4} outside (0.85, 1.15) at n={n}"),
        );
    }
    section(
        "qw-entropy-trend",
        Status::Pass,
        format!("H_qw / log2(n) = {ratio:.4} at n={n}"),
    )
}
