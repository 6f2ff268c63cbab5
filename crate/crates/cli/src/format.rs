//! Deterministic text output: fixed 17-significant-digit floats, hand-built
//! JSON, and CSV writers.
//!
//! Identical configurations must produce byte-identical files, so floats
//! never go through shortest-roundtrip formatting and negative zero is
//! normalized away.

use decomat_core::asymptotics::ConvergenceReport;
use decomat_core::corrw::DirectionalDistribution;
use decomat_core::decoherence::DecoherenceMatrix;
use decomat_core::pathspace::RestrictionKind;
use decomat_core::spectra::{EntropyReport, Spectrum};
use decomat_core::Complex64;
use std::fmt::Write as _;

/// 17 significant digits, lowercase scientific notation.
pub fn fmt_f64(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

fn fmt_pair(z: Complex64) -> String {
    format!("[{},{}]", fmt_f64(z.re), fmt_f64(z.im))
}

/// Kind spelling used in files and flags: `full`, `a0`, `ap`, `apx:<x>`,
/// `a1`, `b`.
pub fn kind_token(kind: &RestrictionKind) -> String {
    match kind {
        RestrictionKind::ApAt(x) => format!("apx:{x}"),
        other => other.name().to_string(),
    }
}

pub fn matrix_to_json(m: &DecoherenceMatrix) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"n\": {},", m.n());
    let _ = writeln!(out, "  \"ordering\": \"{}\",", m.ordering().name());
    let _ = writeln!(out, "  \"kind\": \"{}\",", kind_token(m.kind()));
    let _ = writeln!(
        out,
        "  \"coin\": {{\"a\": {}, \"b\": {}, \"c\": {}, \"d\": {}}},",
        fmt_pair(m.coin().a()),
        fmt_pair(m.coin().b()),
        fmt_pair(m.coin().c()),
        fmt_pair(m.coin().d())
    );
    let _ = writeln!(
        out,
        "  \"init\": {{\"alpha\": {}, \"beta\": {}}},",
        fmt_pair(m.init().alpha()),
        fmt_pair(m.init().beta())
    );
    out.push_str("  \"entries\": [");
    for (i, z) in m.entries().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&fmt_pair(*z));
    }
    out.push_str("]\n}\n");
    out
}

/// Sparse CSV: 1-based row/col indices matching the displayed layout,
/// exact zeros omitted.
pub fn matrix_to_csv(m: &DecoherenceMatrix) -> String {
    let mut out = String::from("row,col,re,im\n");
    let dim = m.dim();
    for row in 0..dim {
        for col in 0..dim {
            let z = m.entry(row, col);
            if z.re == 0.0 && z.im == 0.0 {
                continue;
            }
            let _ = writeln!(
                out,
                "{},{},{},{}",
                row + 1,
                col + 1,
                fmt_f64(z.re),
                fmt_f64(z.im)
            );
        }
    }
    out
}

pub fn spectrum_to_json(s: &Spectrum) -> String {
    let kind = s
        .kind()
        .map(kind_token)
        .unwrap_or_else(|| "unknown".to_string());
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"kind\": \"{kind}\",");
    let _ = writeln!(out, "  \"n\": {},", s.n());
    let _ = writeln!(out, "  \"method\": \"{}\",", s.source().name());
    out.push_str("  \"eigenvalues\": [");
    for (i, line) in s.lines().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(
            out,
            "{{\"value\": {}, \"multiplicity\": {}}}",
            fmt_f64(line.value),
            line.multiplicity
        );
    }
    out.push_str("]\n}\n");
    out
}

pub fn spectrum_to_csv(s: &Spectrum) -> String {
    let mut out = String::from("value,multiplicity\n");
    for line in s.lines() {
        let _ = writeln!(out, "{},{}", fmt_f64(line.value), line.multiplicity);
    }
    out
}

pub fn entropy_to_json(r: &EntropyReport) -> String {
    let kind = r
        .kind
        .as_ref()
        .map(kind_token)
        .unwrap_or_else(|| "unknown".to_string());
    let (p0, p) = match r.params {
        Some(params) => (fmt_f64(params.p0()), fmt_f64(params.p())),
        None => ("null".to_string(), "null".to_string()),
    };
    format!(
        "{{\n  \"kind\": \"{kind}\",\n  \"n\": {},\n  \"method\": \"{}\",\n  \"p0\": {p0},\n  \"p\": {p},\n  \"bits\": {}\n}}\n",
        r.n,
        r.method.name(),
        fmt_f64(r.bits)
    )
}

pub fn entropy_to_csv(r: &EntropyReport) -> String {
    let kind = r
        .kind
        .as_ref()
        .map(kind_token)
        .unwrap_or_else(|| "unknown".to_string());
    let (p0, p) = match r.params {
        Some(params) => (fmt_f64(params.p0()), fmt_f64(params.p())),
        None => (String::new(), String::new()),
    };
    format!(
        "kind,n,method,p0,p,bits\n{kind},{},{},{p0},{p},{}\n",
        r.n,
        r.method.name(),
        fmt_f64(r.bits)
    )
}

/// Quantum walk distribution: one row per reachable position.
pub fn qw_to_csv(n: usize, dist: &[(i64, f64)]) -> String {
    let mut out = String::from("n,x,probability\n");
    for &(x, p) in dist {
        let _ = writeln!(out, "{n},{x},{}", fmt_f64(p));
    }
    out
}

/// Directional walk distribution: positions ascending.
pub fn directional_to_csv(dist: &DirectionalDistribution) -> String {
    let mut out = String::from("n,j,pl,pr,total\n");
    for (j, pl, pr) in dist.iter() {
        let _ = writeln!(
            out,
            "{},{j},{},{},{}",
            dist.n(),
            fmt_f64(pl),
            fmt_f64(pr),
            fmt_f64(pl + pr)
        );
    }
    out
}

/// Convergence reports: CSV with one row per (claim, n).
pub fn reports_to_csv(reports: &[ConvergenceReport]) -> String {
    let mut out = String::from("claim,n,raw,scaled,predicted,estimated,verdict\n");
    for r in reports {
        for &(n, raw, scaled) in &r.points {
            let _ = writeln!(
                out,
                "{},{n},{},{},{},{},{}",
                r.claim,
                fmt_f64(raw),
                fmt_f64(scaled),
                fmt_f64(r.predicted),
                fmt_f64(r.estimated),
                r.verdict.name()
            );
        }
    }
    out
}

/// JSON summary of convergence reports keyed by claim identifier.
pub fn reports_to_json(reports: &[ConvergenceReport]) -> String {
    let mut out = String::from("{\n");
    for (i, r) in reports.iter().enumerate() {
        let derived = r.derived.map(fmt_f64).unwrap_or_else(|| "null".to_string());
        let _ = write!(
            out,
            "  \"{}\": {{\"predicted\": {}, \"estimated\": {}, \"last_scaled\": {}, \"derived\": {derived}, \"verdict\": \"{}\"}}",
            r.claim,
            fmt_f64(r.predicted),
            fmt_f64(r.estimated),
            fmt_f64(r.last_scaled()),
            r.verdict.name()
        );
        out.push_str(if i + 1 < reports.len() { ",\n" } else { "\n" });
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_fixed_width() {
        assert_eq!(fmt_f64(0.125), "1.2500000000000000e-1");
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_f64(0.0), "0.0000000000000000e0");
        assert_eq!(fmt_f64(-0.0), "0.0000000000000000e0");
        assert_eq!(fmt_f64(-3.0), "-3.0000000000000000e0");
        // 17 significant digits of the stored double, not of the literal.
        assert_eq!(fmt_f64(0.1), "1.0000000000000001e-1");
    }

    #[test]
    fn round_trip_through_parse() {
        for &x in &[0.1, 1.0 / 3.0, 2.0f64.sqrt(), 1e-300, 123456.789] {
            let s = fmt_f64(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, x);
        }
    }
}
