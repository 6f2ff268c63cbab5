//! Flag parsing helpers: coins, states, kinds, orderings, ranges, and the
//! exit-code error type.

use decomat_core::corrw::{self, CorrelatedRwParams};
use decomat_core::pathspace::{InitialState, PathOrdering, QuantumCoin, RestrictionKind};
use decomat_core::Complex64;

/// Exit codes: 1 verification failure, 2 invalid input, 3 golden mismatch,
/// 4 dense-oracle cap exceeded.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn golden(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }

    pub fn oracle_cap(message: impl Into<String>) -> Self {
        Self {
            code: 4,
            message: message.into(),
        }
    }
}

impl From<decomat_core::Error> for CliError {
    fn from(err: decomat_core::Error) -> Self {
        CliError::invalid(err.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::invalid(format!("io error: {err}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn parse_complex(token: &str) -> CliResult<Complex64> {
    let parts: Vec<&str> = token.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::invalid(format!(
            "expected re,im pair, got '{token}'"
        )));
    }
    let re: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| CliError::invalid(format!("bad real part in '{token}'")))?;
    let im: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| CliError::invalid(format!("bad imaginary part in '{token}'")))?;
    Ok(Complex64::new(re, im))
}

/// Coin spec: a named coin or four `re,im` pairs for a, b, c, d.
pub fn parse_coin(tokens: &[String]) -> CliResult<QuantumCoin> {
    match tokens {
        [name] if name == "hadamard" => Ok(QuantumCoin::hadamard()),
        [name] if name == "gudder-sorkin" => Ok(QuantumCoin::gudder_sorkin()),
        [a, b, c, d] => {
            let coin = QuantumCoin::new(
                parse_complex(a)?,
                parse_complex(b)?,
                parse_complex(c)?,
                parse_complex(d)?,
            )?;
            Ok(coin)
        }
        _ => Err(CliError::invalid(
            "coin must be 'hadamard', 'gudder-sorkin', or four re,im pairs",
        )),
    }
}

/// Init spec: `e-1` / `e+1`, or two `re,im` pairs for alpha, beta.
pub fn parse_init(tokens: &[String]) -> CliResult<InitialState> {
    match tokens {
        [name] if name == "e-1" => Ok(InitialState::left()),
        [name] if name == "e+1" || name == "e1" => Ok(InitialState::right()),
        [alpha, beta] => Ok(InitialState::new(
            parse_complex(alpha)?,
            parse_complex(beta)?,
        )?),
        _ => Err(CliError::invalid(
            "init must be 'e-1', 'e+1', or two re,im pairs",
        )),
    }
}

pub fn parse_kind(token: &str) -> CliResult<RestrictionKind> {
    match token {
        "full" => Ok(RestrictionKind::Full),
        "a0" => Ok(RestrictionKind::A0),
        "ap" => Ok(RestrictionKind::Ap),
        "a1" => Ok(RestrictionKind::A1),
        "b" => Ok(RestrictionKind::B),
        other => {
            if let Some(x) = other.strip_prefix("apx:") {
                let x: i64 = x
                    .parse()
                    .map_err(|_| CliError::invalid(format!("bad position in '{other}'")))?;
                Ok(RestrictionKind::ApAt(x))
            } else {
                Err(CliError::invalid(format!(
                    "unknown kind '{other}' (expected full, a0, ap, apx:<x>, a1, b)"
                )))
            }
        }
    }
}

pub fn parse_ordering(token: &str) -> CliResult<PathOrdering> {
    match token {
        "paper" => Ok(PathOrdering::Paper),
        "binary" => Ok(PathOrdering::Binary),
        other => Err(CliError::invalid(format!(
            "unknown ordering '{other}' (expected paper or binary)"
        ))),
    }
}

/// Comma-separated ascending list of times, e.g. `10,100,1000`.
pub fn parse_n_range(token: &str) -> CliResult<Vec<usize>> {
    let mut out = Vec::new();
    for part in token.split(',') {
        let n: usize = part
            .trim()
            .parse()
            .map_err(|_| CliError::invalid(format!("bad n value '{part}'")))?;
        out.push(n);
    }
    if out.is_empty() || out.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::invalid("n-range must be strictly increasing"));
    }
    Ok(out)
}

/// Resolved input: full quantum data, or walk parameters only.
pub enum Source {
    Quantum {
        coin: QuantumCoin,
        init: InitialState,
        params: CorrelatedRwParams,
    },
    RwOnly {
        params: CorrelatedRwParams,
    },
}

impl Source {
    pub fn params(&self) -> &CorrelatedRwParams {
        match self {
            Source::Quantum { params, .. } => params,
            Source::RwOnly { params } => params,
        }
    }

    /// Coin and state: the given ones, or the canonical real realization of
    /// the walk parameters.
    pub fn realize(&self) -> (QuantumCoin, InitialState) {
        match self {
            Source::Quantum { coin, init, .. } => (*coin, *init),
            Source::RwOnly { params } => corrw::canonical_realization(params),
        }
    }

    pub fn is_quantum(&self) -> bool {
        matches!(self, Source::Quantum { .. })
    }
}

/// Combines `--coin`/`--init` or `--p`/`--p0` into one source.
pub fn resolve_source(
    coin: &Option<Vec<String>>,
    init: &Option<Vec<String>>,
    p: Option<f64>,
    p0: Option<f64>,
) -> CliResult<Source> {
    match (coin, init, p, p0) {
        (Some(coin), Some(init), None, None) => {
            let coin = parse_coin(coin)?;
            let init = parse_init(init)?;
            let params = CorrelatedRwParams::from_coin(&coin, &init)?;
            Ok(Source::Quantum { coin, init, params })
        }
        (None, None, Some(p), Some(p0)) => Ok(Source::RwOnly {
            params: CorrelatedRwParams::new(p0, p)?,
        }),
        (Some(_), None, ..) | (None, Some(_), ..) => Err(CliError::invalid(
            "--coin and --init must be given together",
        )),
        (None, None, Some(_), None) | (None, None, None, Some(_)) => {
            Err(CliError::invalid("--p and --p0 must be given together"))
        }
        (None, None, None, None) => Err(CliError::invalid(
            "specify either --coin/--init or --p/--p0",
        )),
        _ => Err(CliError::invalid(
            "choose one input mode: --coin/--init or --p/--p0",
        )),
    }
}

/// Dense-construction cap: `DECO_MAX_N` overrides the built-in default.
pub fn dense_cap() -> usize {
    std::env::var("DECO_MAX_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(decomat_core::decoherence::DEFAULT_DENSE_CAP)
}
