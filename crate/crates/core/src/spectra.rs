//! Spectra of decoherence matrices, two ways, and von Neumann entropies.
//!
//! The oracle route runs cyclic Jacobi rotations on the dense Hermitian
//! matrix. The closed-form route uses the structure of the matrices: for an
//! equivalence restriction, each class block is a rank-one Gram outer
//! product, so its single nonzero eigenvalue is the correlated-random-walk
//! probability mass of that class. Classes refine by final-step chirality
//! (weights are chirality-aligned), giving per class the pair
//! `{P(class, last step left), P(class, last step right)}` with zeros
//! dropped.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::corrw::{self, CorrelatedRwParams};
use crate::decoherence::DecoherenceMatrix;
use crate::math;
use crate::pathspace::{enumerate_paths, PathOrdering, RestrictionKind};
use crate::{Error, Result};

/// Default dimension cap for the dense eigensolver (path length 10).
pub const ORACLE_DIM_CAP: usize = 1024;

/// Jacobi sweep cap.
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues below this count as zero in entropy sums.
pub const EIGENVALUE_FLOOR: f64 = 1e-12;

/// Negative eigenvalues above this clip to zero; below it the matrix is not
/// positive semidefinite to within roundoff and the computation errors out.
pub const PSD_CLIP: f64 = -1e-9;

/// Largest path length whose binomial eigenvalue multiplicities fit in
/// `u64`; `C(67, 33)` is the last one that does.
pub const A1_SPECTRUM_CAP: usize = 68;

/// Path-length cap for distribution-backed closed forms.
pub const DP_SPECTRUM_CAP: usize = 10_000;

/// How a spectrum was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumSource {
    Oracle,
    ClosedForm,
}

impl SpectrumSource {
    pub fn name(&self) -> &'static str {
        match self {
            SpectrumSource::Oracle => "oracle",
            SpectrumSource::ClosedForm => "closed-form",
        }
    }
}

/// One eigenvalue with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralLine {
    pub value: f64,
    pub multiplicity: u64,
}

/// Eigenvalue multiset of a decoherence matrix, sorted descending.
///
/// Only nonzero lines are stored; the ambient dimension is `2^n`, and the
/// implied remaining eigenvalues are zero. Oracle spectra store every
/// computed value, including clipped zeros.
#[derive(Debug, Clone)]
pub struct Spectrum {
    n: usize,
    source: SpectrumSource,
    kind: Option<RestrictionKind>,
    lines: Vec<SpectralLine>,
}

impl Spectrum {
    pub fn from_lines(
        n: usize,
        source: SpectrumSource,
        kind: Option<RestrictionKind>,
        mut lines: Vec<SpectralLine>,
    ) -> Self {
        lines.retain(|l| l.multiplicity > 0);
        lines.sort_by(|a, b| b.value.total_cmp(&a.value));
        Self {
            n,
            source,
            kind,
            lines,
        }
    }

    pub fn from_values(
        n: usize,
        source: SpectrumSource,
        kind: Option<RestrictionKind>,
        values: &[f64],
    ) -> Self {
        let lines = values
            .iter()
            .map(|&value| SpectralLine {
                value,
                multiplicity: 1,
            })
            .collect();
        Self::from_lines(n, source, kind, lines)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn source(&self) -> SpectrumSource {
        self.source
    }

    pub fn kind(&self) -> Option<&RestrictionKind> {
        self.kind.as_ref()
    }

    /// Lines sorted by value descending.
    pub fn lines(&self) -> &[SpectralLine] {
        &self.lines
    }

    /// Sum of all eigenvalues (the trace).
    pub fn sum(&self) -> f64 {
        self.lines
            .iter()
            .map(|l| l.value * l.multiplicity as f64)
            .sum()
    }

    /// Number of stored values counting multiplicity.
    pub fn count(&self) -> u64 {
        self.lines.iter().map(|l| l.multiplicity).sum()
    }

    /// Number of lines above the zero floor, counting multiplicity.
    pub fn nonzero_count(&self) -> u64 {
        self.lines
            .iter()
            .filter(|l| l.value > EIGENVALUE_FLOOR)
            .map(|l| l.multiplicity)
            .sum()
    }

    /// Full eigenvalue list, descending, padded with implied zeros to the
    /// ambient dimension `2^n`.
    pub fn expanded(&self) -> Result<Vec<f64>> {
        if self.n > 20 {
            return Err(Error::NTooLarge { n: self.n, cap: 20 });
        }
        let dim = 1usize << self.n;
        let stored = self.count();
        if stored > dim as u64 {
            return Err(Error::SizeMismatch(stored as usize, dim));
        }
        let mut out = Vec::with_capacity(dim);
        for line in &self.lines {
            for _ in 0..line.multiplicity {
                out.push(line.value);
            }
        }
        out.resize(dim, 0.0);
        out.sort_by(|a, b| b.total_cmp(a));
        Ok(out)
    }
}

/// Raw cyclic Jacobi eigensolver for a Hermitian matrix given row-major.
///
/// Iterates sweeps until the off-diagonal Frobenius norm drops below `tol`,
/// rotating only pivots above `tol / (2 dim)` so the skipped mass stays
/// inside the target. Returns eigenvalues in descending order.
pub fn jacobi_hermitian(entries: &[Complex64], dim: usize, tol: f64) -> Result<Vec<f64>> {
    assert_eq!(entries.len(), dim * dim, "entries must be dim x dim");
    if dim == 0 {
        return Ok(Vec::new());
    }
    let mut a = entries.to_vec();
    let pivot_floor = tol / (2.0 * dim as f64);

    for _sweep in 0..MAX_SWEEPS {
        let mut off_sq = 0.0f64;
        for i in 0..dim {
            for j in (i + 1)..dim {
                off_sq += 2.0 * a[i * dim + j].norm_sqr();
            }
        }
        if math::sqrt(off_sq) < tol {
            let mut eigs: Vec<f64> = (0..dim).map(|i| a[i * dim + i].re).collect();
            eigs.sort_by(|x, y| y.total_cmp(x));
            return Ok(eigs);
        }

        for p in 0..dim - 1 {
            for q in (p + 1)..dim {
                let beta = a[p * dim + q];
                let absb = beta.norm();
                if absb <= pivot_floor {
                    continue;
                }
                let u = beta / absb;
                let app = a[p * dim + p].re;
                let aqq = a[q * dim + q].re;
                let tau = (aqq - app) / (2.0 * absb);
                let t = if tau >= 0.0 {
                    1.0 / (tau + math::sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + math::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / math::sqrt(1.0 + t * t);
                let s = t * c;
                let us = u * s;
                let uc = u * c;

                // Rows p and q are contiguous; columns mirror by symmetry.
                for k in 0..dim {
                    if k == p || k == q {
                        continue;
                    }
                    let apk = a[p * dim + k];
                    let aqk = a[q * dim + k];
                    let new_pk = apk * c - aqk * us;
                    let new_qk = apk * s + aqk * uc;
                    a[p * dim + k] = new_pk;
                    a[q * dim + k] = new_qk;
                    a[k * dim + p] = new_pk.conj();
                    a[k * dim + q] = new_qk.conj();
                }
                a[p * dim + p] = Complex64::new(app - t * absb, 0.0);
                a[q * dim + q] = Complex64::new(aqq + t * absb, 0.0);
                a[p * dim + q] = Complex64::new(0.0, 0.0);
                a[q * dim + p] = Complex64::new(0.0, 0.0);
            }
        }
    }
    Err(Error::NoConvergence(MAX_SWEEPS))
}

/// Dense eigensolver oracle for a decoherence matrix.
///
/// Checks Hermitian symmetry to `1e-10`, runs Jacobi to `tol`, clips
/// roundoff negatives above [`PSD_CLIP`] to zero, and errors on anything
/// more negative.
pub fn hermitian_eigenvalues(matrix: &DecoherenceMatrix, tol: f64) -> Result<Spectrum> {
    if matrix.dim() > ORACLE_DIM_CAP {
        return Err(Error::NTooLarge {
            n: matrix.n(),
            cap: 10,
        });
    }
    let defect = matrix.hermiticity_defect();
    if defect > 1e-10 {
        return Err(Error::NotHermitian(defect));
    }
    let mut eigs = jacobi_hermitian(matrix.entries(), matrix.dim(), tol)?;
    for value in eigs.iter_mut() {
        if *value < 0.0 {
            if *value < PSD_CLIP {
                return Err(Error::NegativeEigenvalue(*value));
            }
            *value = 0.0;
        }
    }
    Ok(Spectrum::from_values(
        matrix.n(),
        SpectrumSource::Oracle,
        Some(*matrix.kind()),
        &eigs,
    ))
}

/// Closed-form spectrum of `D_A` from the correlated-walk class masses.
pub fn closed_form_spectrum(
    params: &CorrelatedRwParams,
    n: usize,
    kind: &RestrictionKind,
) -> Result<Spectrum> {
    if n == 0 {
        return Err(Error::EmptyPath);
    }
    kind.validate_for_len(n)?;
    let mut lines: Vec<SpectralLine> = Vec::new();
    let mut push = |value: f64, multiplicity: u64| {
        if value > 0.0 && multiplicity > 0 {
            lines.push(SpectralLine {
                value,
                multiplicity,
            });
        }
    };

    match kind {
        RestrictionKind::Full | RestrictionKind::A0 => {
            let (rho_l, rho_r) = corrw::endpoint_marginals(params, n);
            push(rho_l, 1);
            push(rho_r, 1);
        }
        RestrictionKind::Ap => {
            check_dp_cap(n)?;
            for (_, pl, pr) in corrw::evolve(params, n).iter() {
                push(pl, 1);
                push(pr, 1);
            }
        }
        RestrictionKind::ApAt(x) => {
            check_dp_cap(n)?;
            let dist = corrw::evolve(params, n);
            push(dist.pl(*x), 1);
            push(dist.pr(*x), 1);
        }
        RestrictionKind::A1 => {
            if n > A1_SPECTRUM_CAP {
                return Err(Error::NTooLarge {
                    n,
                    cap: A1_SPECTRUM_CAP,
                });
            }
            // One eigenvalue per path: first-step factor times a
            // persistence/switch product, with binomial multiplicity over
            // the number of switches.
            for j in 0..n as u64 {
                let mult = math::binomial_u64(n as u64 - 1, j).ok_or(Error::NTooLarge {
                    n,
                    cap: A1_SPECTRUM_CAP,
                })?;
                let tail = math::powi(params.p(), (n as u64 - 1 - j) as i32)
                    * math::powi(params.q(), j as i32);
                push(params.p0() * tail, mult);
                push(params.q0() * tail, mult);
            }
        }
        RestrictionKind::B => {
            check_dp_cap(n)?;
            for (weight, first) in [(params.q0(), -1i8), (params.p0(), 1i8)] {
                if weight == 0.0 {
                    continue;
                }
                let cond = corrw::evolve(&params.with_first_step(first), n);
                for (_, pl, pr) in cond.iter() {
                    push(weight * pl, 1);
                    push(weight * pr, 1);
                }
            }
        }
        RestrictionKind::Custom { label, .. } => {
            // Classes are only known by enumeration; feasible to n = 20.
            let paths = enumerate_paths(n, PathOrdering::Binary)?;
            let mut masses: BTreeMap<(Vec<i64>, i8), f64> = BTreeMap::new();
            for path in &paths {
                let key = (label(path), path.last_step());
                *masses.entry(key).or_insert(0.0) += corrw::path_probability(params, path);
            }
            for (_, mass) in masses {
                push(mass, 1);
            }
        }
    }

    Ok(Spectrum::from_lines(
        n,
        SpectrumSource::ClosedForm,
        Some(*kind),
        lines,
    ))
}

fn check_dp_cap(n: usize) -> Result<()> {
    if n > DP_SPECTRUM_CAP {
        return Err(Error::NTooLarge {
            n,
            cap: DP_SPECTRUM_CAP,
        });
    }
    Ok(())
}

/// How an entropy value was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntropyMethod {
    Spectral,
    ClosedForm,
}

impl EntropyMethod {
    pub fn name(&self) -> &'static str {
        match self {
            EntropyMethod::Spectral => "spectral",
            EntropyMethod::ClosedForm => "closed-form",
        }
    }
}

/// A computed von Neumann entropy with its provenance.
#[derive(Debug, Clone, Copy)]
pub struct EntropyReport {
    pub bits: f64,
    pub n: usize,
    pub kind: Option<RestrictionKind>,
    pub params: Option<CorrelatedRwParams>,
    pub method: EntropyMethod,
}

/// `-sum(lambda log2 lambda)` over eigenvalues above the floor.
///
/// The spectrum must sum to 1 within `1e-9` (unit trace).
pub fn von_neumann_entropy(spectrum: &Spectrum) -> Result<EntropyReport> {
    let total = spectrum.sum();
    if math::abs(total - 1.0) > 1e-9 {
        return Err(Error::SpectrumNotNormalized(total));
    }
    let bits = -spectrum
        .lines()
        .iter()
        .filter(|l| l.value > EIGENVALUE_FLOOR)
        .map(|l| l.multiplicity as f64 * math::xlog2(l.value))
        .sum::<f64>();
    Ok(EntropyReport {
        bits,
        n: spectrum.n(),
        kind: spectrum.kind().copied(),
        params: None,
        method: EntropyMethod::Spectral,
    })
}

fn closed_report(
    bits: f64,
    n: usize,
    kind: RestrictionKind,
    params: &CorrelatedRwParams,
) -> EntropyReport {
    EntropyReport {
        bits,
        n,
        kind: Some(kind),
        params: Some(*params),
        method: EntropyMethod::ClosedForm,
    }
}

/// Exact `S_A0 = H(rho_L)`: binary entropy of the final-step marginal.
pub fn exact_entropy_a0(params: &CorrelatedRwParams, n: usize) -> EntropyReport {
    let deficit = exact_entropy_a0_deficit(params, n);
    closed_report(1.0 - deficit, n, RestrictionKind::A0, params)
}

/// Stable complement `1 - S_A0`, exact even where `S_A0` rounds to 1.
///
/// The marginal sits at `1/2 (1 +- delta)` with `delta` exponentially small
/// in `n`; the deficit is `~ delta^2 log2(e) / 2`, far below machine epsilon
/// relative to 1 long before `delta` itself underflows.
pub fn exact_entropy_a0_deficit(params: &CorrelatedRwParams, n: usize) -> f64 {
    math::binary_entropy_deficit(2.0 * corrw::endpoint_spread(params, n))
}

/// Exact `S_Ap`: joint entropy of (position, incoming direction).
pub fn exact_entropy_ap(params: &CorrelatedRwParams, n: usize) -> EntropyReport {
    let bits = corrw::evolve(params, n).joint_entropy();
    closed_report(bits, n, RestrictionKind::Ap, params)
}

/// Exact `S_B` from the explicit eigenvalues: first-step-conditioned
/// directional masses scaled by the first-step probabilities.
pub fn exact_entropy_b(params: &CorrelatedRwParams, n: usize) -> EntropyReport {
    let mut bits = 0.0;
    for (weight, first) in [(params.q0(), -1i8), (params.p0(), 1i8)] {
        if weight == 0.0 {
            continue;
        }
        let cond = corrw::evolve(&params.with_first_step(first), n);
        for (_, pl, pr) in cond.iter() {
            bits -= math::xlog2(weight * pl) + math::xlog2(weight * pr);
        }
    }
    closed_report(bits, n, RestrictionKind::B, params)
}

/// Exact `S_A1 = (n-1) |p log2 p + q log2 q| + |p0 log2 p0 + q0 log2 q0|`.
pub fn exact_entropy_a1(params: &CorrelatedRwParams, n: usize) -> EntropyReport {
    let bits = (n as f64 - 1.0) * params.step_entropy() + params.first_step_entropy();
    closed_report(bits, n, RestrictionKind::A1, params)
}

/// Result of a sorted-multiset spectrum comparison.
#[derive(Debug, Clone, Copy)]
pub struct SpectrumMatch {
    pub matched: bool,
    pub max_deviation: f64,
}

/// Compares two spectra as sorted multisets over the same ambient dimension.
pub fn spectrum_match(s1: &Spectrum, s2: &Spectrum, tol: f64) -> Result<SpectrumMatch> {
    if s1.n() != s2.n() {
        return Err(Error::SizeMismatch(s1.n(), s2.n()));
    }
    let a = s1.expanded()?;
    let b = s2.expanded()?;
    let mut max_deviation = 0.0f64;
    for (x, y) in a.iter().zip(b.iter()) {
        max_deviation = max_deviation.max(math::abs(x - y));
    }
    Ok(SpectrumMatch {
        matched: max_deviation <= tol,
        max_deviation,
    })
}
