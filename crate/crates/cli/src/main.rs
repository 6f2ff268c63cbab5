//! `decomat`: decoherence matrices of quantum walks on path spaces —
//! construction, spectra, entropies, scaling scans, and verification.

mod config;
mod format;
mod golden;
mod verify;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::{
    dense_cap, parse_kind, parse_n_range, parse_ordering, resolve_source, CliError, CliResult,
    Source,
};
use decomat_core::asymptotics::{
    b_subset_sequence, corollary_sequence, theorem1_sequences, ScalingFamily,
};
use decomat_core::corrw;
use decomat_core::decoherence::{build_matrix_capped, two_site_matrix_ordered};
use decomat_core::math;
use decomat_core::pathspace::RestrictionKind;
use decomat_core::spectra::{
    self, closed_form_spectrum, hermitian_eigenvalues, von_neumann_entropy, EntropyMethod,
    EntropyReport, Spectrum,
};

#[derive(Parser)]
#[command(
    name = "decomat",
    version,
    about = "Decoherence matrices of quantum walks: spectra, entropies, scaling"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SourceArgs {
    /// Coin: "hadamard", "gudder-sorkin", or four re,im pairs (a b c d).
    /// Pairs with a leading minus need the equals form: --coin="-0.5,0"
    #[arg(long, num_args = 1..=4, action = clap::ArgAction::Append)]
    coin: Option<Vec<String>>,

    /// Initial state: "e-1", "e+1", or two re,im pairs (alpha beta)
    #[arg(long, num_args = 1..=2, action = clap::ArgAction::Append)]
    init: Option<Vec<String>>,

    /// Persistence probability (direct walk-parameter mode)
    #[arg(long)]
    p: Option<f64>,

    /// First-step-right probability (direct walk-parameter mode)
    #[arg(long)]
    p0: Option<f64>,
}

impl SourceArgs {
    fn resolve(&self) -> CliResult<Source> {
        resolve_source(&self.coin, &self.init, self.p, self.p0)
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    format: String,

    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutputArgs {
    fn write(&self, content: &str) -> CliResult<()> {
        match &self.out {
            Some(path) => std::fs::write(path, content)?,
            None => print!("{content}"),
        }
        Ok(())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a decoherence matrix and export it
    Matrix {
        #[command(flatten)]
        source: SourceArgs,
        /// Path length
        #[arg(long)]
        n: usize,
        /// Restriction kind: full, a0, ap, apx:<x>, a1, b
        #[arg(long, default_value = "a0")]
        kind: String,
        /// Path ordering along the axes
        #[arg(long, default_value = "paper", value_parser = ["paper", "binary"])]
        ordering: String,
        /// Build via the two-site step-amplitude product instead of coin
        /// weights (fixes the stay/move coin and left start)
        #[arg(long)]
        two_site: bool,
        /// Compare against the shipped n=3 reference and exit nonzero on
        /// mismatch
        #[arg(long)]
        golden: bool,
        /// Comparison tolerance for --golden
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Eigenvalue spectrum, closed form by default
    Spectrum {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "a0")]
        kind: String,
        /// Force the dense Jacobi route (path length capped at 10)
        #[arg(long)]
        oracle: bool,
        /// Eigensolver tolerance
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Von Neumann entropy, closed form by default
    Entropy {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "a0")]
        kind: String,
        /// Compute through the dense spectrum instead of the closed form
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Entropy columns over a range of times, as CSV
    Scan {
        #[command(flatten)]
        source: SourceArgs,
        /// Comma-separated ascending times, e.g. 10,100,1000
        #[arg(long = "n-range")]
        n_range: String,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write per-claim convergence reports as CSV (needs >= 3 times)
        #[arg(long)]
        reports: Option<PathBuf>,
        /// Also write the per-claim JSON summary (needs >= 3 times)
        #[arg(long = "reports-json")]
        reports_json: Option<PathBuf>,
    },
    /// Walk position distribution: quantum with --coin/--init, directional
    /// classical with --p/--p0
    Qw {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full verification suite
    Verify {
        /// Seed for randomized sections
        #[arg(long, default_value_t = 20240816)]
        seed: u64,
        /// Number of random coins per randomized section
        #[arg(long = "random-coins", default_value_t = 12)]
        random_coins: usize,
        /// Largest path length for dense-oracle sections
        #[arg(long = "oracle-n-max", default_value_t = 8)]
        oracle_n_max: usize,
        /// Largest time for asymptotic sections
        #[arg(long = "asymptotic-n", default_value_t = 10_000)]
        asymptotic_n: usize,
        /// Spectrum match tolerance
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Test hook: corrupt the endpoint-marginal sign to prove the
        /// pipeline catches it
        #[arg(long, hide = true)]
        inject_sign_flip: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err.message);
            err.code
        }
    };
    std::process::exit(code);
}

fn run(command: Command) -> CliResult<i32> {
    match command {
        Command::Matrix {
            source,
            n,
            kind,
            ordering,
            two_site,
            golden,
            tol,
            output,
        } => cmd_matrix(source, n, &kind, &ordering, two_site, golden, tol, output),
        Command::Spectrum {
            source,
            n,
            kind,
            oracle,
            tol,
            output,
        } => cmd_spectrum(source, n, &kind, oracle, tol, output),
        Command::Entropy {
            source,
            n,
            kind,
            oracle,
            tol,
            output,
        } => cmd_entropy(source, n, &kind, oracle, tol, output),
        Command::Scan {
            source,
            n_range,
            out,
            reports,
            reports_json,
        } => cmd_scan(source, &n_range, out, reports, reports_json),
        Command::Qw { source, n, out } => cmd_qw(source, n, out),
        Command::Verify {
            seed,
            random_coins,
            oracle_n_max,
            asymptotic_n,
            tol,
            inject_sign_flip,
        } => cmd_verify(verify::VerifyConfig {
            seed,
            random_coins,
            oracle_n_max: oracle_n_max.clamp(2, 10),
            asymptotic_n: asymptotic_n.max(1000),
            tol,
            inject_sign_flip,
        }),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_matrix(
    source: SourceArgs,
    n: usize,
    kind: &str,
    ordering: &str,
    two_site: bool,
    golden: bool,
    tol: f64,
    output: OutputArgs,
) -> CliResult<i32> {
    let kind = parse_kind(kind)?;
    let ordering = parse_ordering(ordering)?;
    let matrix = if two_site {
        if !matches!(kind, RestrictionKind::A0 | RestrictionKind::Full) {
            return Err(CliError::invalid("--two-site builds the a0 restriction"));
        }
        two_site_matrix_ordered(n, ordering)?
    } else {
        let (coin, init) = source.resolve()?.realize();
        build_matrix_capped(&coin, &init, n, kind, ordering, dense_cap())?
    };
    if golden {
        let deviation = golden::compare_golden(&matrix, tol)?;
        println!("golden match: max deviation {deviation:.3e}");
        return Ok(0);
    }
    let content = match output.format.as_str() {
        "json" => format::matrix_to_json(&matrix),
        _ => format::matrix_to_csv(&matrix),
    };
    output.write(&content)?;
    Ok(0)
}

/// Builds the requested spectrum, enforcing the dense cap for the oracle.
fn spectrum_for(
    source: &Source,
    n: usize,
    kind: RestrictionKind,
    oracle: bool,
    tol: f64,
) -> CliResult<Spectrum> {
    if oracle {
        if n > 10 {
            return Err(CliError::oracle_cap(format!(
                "dense oracle is capped at path length 10, got {n}"
            )));
        }
        let (coin, init) = source.realize();
        let matrix = build_matrix_capped(
            &coin,
            &init,
            n,
            kind,
            decomat_core::pathspace::PathOrdering::Paper,
            dense_cap(),
        )?;
        Ok(hermitian_eigenvalues(&matrix, tol)?)
    } else {
        Ok(closed_form_spectrum(source.params(), n, &kind)?)
    }
}

fn cmd_spectrum(
    source: SourceArgs,
    n: usize,
    kind: &str,
    oracle: bool,
    tol: f64,
    output: OutputArgs,
) -> CliResult<i32> {
    let kind = parse_kind(kind)?;
    let source = source.resolve()?;
    let spectrum = spectrum_for(&source, n, kind, oracle, tol)?;
    let content = match output.format.as_str() {
        "json" => format::spectrum_to_json(&spectrum),
        _ => format::spectrum_to_csv(&spectrum),
    };
    output.write(&content)?;
    Ok(0)
}

fn cmd_entropy(
    source: SourceArgs,
    n: usize,
    kind: &str,
    oracle: bool,
    tol: f64,
    output: OutputArgs,
) -> CliResult<i32> {
    let kind = parse_kind(kind)?;
    let source = source.resolve()?;
    let params = *source.params();
    let report = if oracle {
        let spectrum = spectrum_for(&source, n, kind, true, tol)?;
        let mut r = von_neumann_entropy(&spectrum)?;
        r.params = Some(params);
        r
    } else {
        match kind {
            RestrictionKind::A0 | RestrictionKind::Full => spectra::exact_entropy_a0(&params, n),
            RestrictionKind::Ap => spectra::exact_entropy_ap(&params, n),
            RestrictionKind::A1 => spectra::exact_entropy_a1(&params, n),
            RestrictionKind::B => spectra::exact_entropy_b(&params, n),
            RestrictionKind::ApAt(_) | RestrictionKind::Custom { .. } => {
                // No dedicated closed form: go through the spectrum, which
                // is still the closed-form route.
                let spectrum = closed_form_spectrum(&params, n, &kind)?;
                let value: f64 = spectrum
                    .lines()
                    .iter()
                    .map(|l| -(l.multiplicity as f64) * math::xlog2(l.value))
                    .sum();
                EntropyReport {
                    bits: value,
                    n,
                    kind: Some(kind),
                    params: Some(params),
                    method: EntropyMethod::ClosedForm,
                }
            }
        }
    };
    let content = match output.format.as_str() {
        "json" => format::entropy_to_json(&report),
        _ => format::entropy_to_csv(&report),
    };
    output.write(&content)?;
    Ok(0)
}

fn cmd_scan(
    source: SourceArgs,
    n_range: &str,
    out: Option<PathBuf>,
    reports: Option<PathBuf>,
    reports_json: Option<PathBuf>,
) -> CliResult<i32> {
    let source = source.resolve()?;
    let n_list = parse_n_range(n_range)?;
    let params = *source.params();
    let quantum = source.is_quantum();
    let (coin, init) = source.realize();

    if reports.is_some() || reports_json.is_some() {
        let all = scaling_reports_all(&params, &n_list)?;
        if let Some(path) = &reports {
            std::fs::write(path, format::reports_to_csv(&all))?;
        }
        if let Some(path) = &reports_json {
            std::fs::write(path, format::reports_to_json(&all))?;
        }
    }

    let mut content = String::from(
        "n,s_a0,s_ap,s_a1,s_b,h_rw,h_qw,a0_scaled_second,ap_scaled_first,ap_scaled_second,a1_scaled_first,a1_scaled_second\n",
    );
    for &n in &n_list {
        let s_a0 = spectra::exact_entropy_a0(&params, n).bits;
        let s_ap = spectra::exact_entropy_ap(&params, n).bits;
        let s_a1 = spectra::exact_entropy_a1(&params, n).bits;
        let s_b = spectra::exact_entropy_b(&params, n).bits;
        let h_rw = corrw::shannon_entropy_rw(&params, n);
        let h_qw = if quantum {
            format::fmt_f64(corrw::shannon_entropy_qw(&coin, &init, n))
        } else {
            String::new()
        };
        let a0_second = if params.p() != 0.5 {
            let deficit = spectra::exact_entropy_a0_deficit(&params, n);
            let pq = (params.p() - params.q()).abs();
            format::fmt_f64(-math::exp(
                math::ln(deficit) - 2.0 * n as f64 * math::ln(pq),
            ))
        } else {
            String::new()
        };
        let log_sqrt = math::log2(math::sqrt(n as f64));
        let rate = params.step_entropy();
        let row = [
            n.to_string(),
            format::fmt_f64(s_a0),
            format::fmt_f64(s_ap),
            format::fmt_f64(s_a1),
            format::fmt_f64(s_b),
            format::fmt_f64(h_rw),
            h_qw,
            a0_second,
            format::fmt_f64(s_ap / log_sqrt),
            format::fmt_f64(s_ap - log_sqrt),
            format::fmt_f64(s_a1 / (rate * n as f64)),
            format::fmt_f64((s_a1 / (rate * n as f64) - 1.0) * n as f64),
        ];
        content.push_str(&row.join(","));
        content.push('\n');
    }
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(0)
}

fn cmd_qw(source: SourceArgs, n: usize, out: Option<PathBuf>) -> CliResult<i32> {
    let source = source.resolve()?;
    let content = match &source {
        Source::Quantum { coin, init, .. } => {
            let dist = corrw::qw_distribution(coin, init, n);
            format::qw_to_csv(n, &dist)
        }
        Source::RwOnly { params } => {
            let dist = corrw::evolve(params, n);
            format::directional_to_csv(&dist)
        }
    };
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(0)
}

fn cmd_verify(config: verify::VerifyConfig) -> CliResult<i32> {
    println!(
        "verification run: seed={} random-coins={} oracle-n-max={} asymptotic-n={}",
        config.seed, config.random_coins, config.oracle_n_max, config.asymptotic_n
    );
    let (results, code) = verify::run(&config, |r| {
        println!("[{}] {:<24} {}", r.status.label(), r.name, r.detail);
    });
    let warns = results
        .iter()
        .filter(|r| r.status == verify::Status::Warn)
        .count();
    let fails = results
        .iter()
        .filter(|r| r.status == verify::Status::Fail)
        .count();
    println!(
        "{} sections: {} passed, {warns} warnings, {fails} failures",
        results.len(),
        results.len() - warns - fails
    );
    Ok(code)
}

/// Every scaling claim for one parameter set, in claim order.
fn scaling_reports_all(
    params: &decomat_core::corrw::CorrelatedRwParams,
    n_list: &[usize],
) -> decomat_core::Result<Vec<decomat_core::asymptotics::ConvergenceReport>> {
    let mut out = Vec::new();
    out.extend(theorem1_sequences(ScalingFamily::A0, params, n_list)?);
    out.extend(theorem1_sequences(ScalingFamily::Ap, params, n_list)?);
    out.extend(theorem1_sequences(ScalingFamily::A1, params, n_list)?);
    out.extend(corollary_sequence(params, n_list)?);
    out.extend(b_subset_sequence(params, n_list)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaling_reports_compose() {
        let params = decomat_core::corrw::CorrelatedRwParams::new(0.3, 0.7).unwrap();
        let reports = scaling_reports_all(&params, &[50, 100, 200]).unwrap();
        assert!(reports.len() >= 8);
        let csv = format::reports_to_csv(&reports);
        assert!(csv.lines().count() > reports.len());
        let json = format::reports_to_json(&reports);
        assert!(json.contains("Thm1.2-second-order"));
        assert!(json.contains("\"verdict\""));
    }
}
