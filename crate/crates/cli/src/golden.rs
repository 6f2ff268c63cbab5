//! Shipped reference matrices for the three `n = 3` restriction kinds
//! (Hadamard coin, initial state `[1/sqrt2, i/sqrt2]`, paper ordering).

use decomat_core::decoherence::DecoherenceMatrix;
use decomat_core::pathspace::RestrictionKind;
use decomat_core::Complex64;

use crate::config::{CliError, CliResult};

const GOLDEN_A0: &str = include_str!("../golden/d_a0_n3.json");
const GOLDEN_AP: &str = include_str!("../golden/d_ap_n3.json");
const GOLDEN_A1: &str = include_str!("../golden/d_a1_n3.json");

/// The embedded reference file for a kind, if one ships.
pub fn golden_source(kind: &RestrictionKind) -> Option<&'static str> {
    match kind {
        // The unrestricted matrix coincides with a0 entrywise.
        RestrictionKind::A0 | RestrictionKind::Full => Some(GOLDEN_A0),
        RestrictionKind::Ap => Some(GOLDEN_AP),
        RestrictionKind::A1 => Some(GOLDEN_A1),
        _ => None,
    }
}

/// Parsed golden entries, row-major.
pub fn golden_entries(source: &str) -> CliResult<(usize, Vec<Complex64>)> {
    let value: serde_json::Value = serde_json::from_str(source)
        .map_err(|e| CliError::invalid(format!("golden file parse error: {e}")))?;
    let n = value["n"]
        .as_u64()
        .ok_or_else(|| CliError::invalid("golden file missing n"))? as usize;
    let entries = value["entries"]
        .as_array()
        .ok_or_else(|| CliError::invalid("golden file missing entries"))?;
    let mut out = Vec::with_capacity(entries.len());
    for pair in entries {
        let re = pair[0]
            .as_f64()
            .ok_or_else(|| CliError::invalid("bad golden entry"))?;
        let im = pair[1]
            .as_f64()
            .ok_or_else(|| CliError::invalid("bad golden entry"))?;
        out.push(Complex64::new(re, im));
    }
    Ok((n, out))
}

/// Compares a computed matrix against the shipped reference at `tol`.
pub fn compare_golden(matrix: &DecoherenceMatrix, tol: f64) -> CliResult<f64> {
    let source = golden_source(matrix.kind()).ok_or_else(|| {
        CliError::invalid(format!(
            "no golden reference ships for kind '{}'",
            matrix.kind().name()
        ))
    })?;
    let (n, golden) = golden_entries(source)?;
    if matrix.n() != n || matrix.entries().len() != golden.len() {
        return Err(CliError::golden(format!(
            "golden reference covers n = {n}; matrix has n = {}",
            matrix.n()
        )));
    }
    let mut worst = 0.0f64;
    for (got, want) in matrix.entries().iter().zip(golden.iter()) {
        worst = worst.max((got - want).norm());
    }
    if worst > tol {
        return Err(CliError::golden(format!(
            "golden mismatch: max deviation {worst:.3e} exceeds {tol:.1e}"
        )));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use decomat_core::decoherence::build_matrix;
    use decomat_core::pathspace::{InitialState, PathOrdering, QuantumCoin};

    fn reference_init() -> InitialState {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        InitialState::new(Complex64::new(s, 0.0), Complex64::new(0.0, s)).unwrap()
    }

    #[test]
    fn all_three_references_match_construction() {
        for kind in [
            RestrictionKind::A0,
            RestrictionKind::Ap,
            RestrictionKind::A1,
        ] {
            let m = build_matrix(
                &QuantumCoin::hadamard(),
                &reference_init(),
                3,
                kind,
                PathOrdering::Paper,
            )
            .unwrap();
            let worst = compare_golden(&m, 1e-12).unwrap();
            assert!(worst < 1e-15, "kind {kind:?}: deviation {worst:.3e}");
        }
    }

    #[test]
    fn wrong_coin_fails_golden() {
        let m = build_matrix(
            &QuantumCoin::gudder_sorkin(),
            &InitialState::left(),
            3,
            RestrictionKind::A0,
            PathOrdering::Paper,
        )
        .unwrap();
        let err = compare_golden(&m, 1e-12).unwrap_err();
        assert_eq!(err.code, 3);
    }
}
