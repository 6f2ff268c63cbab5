//! Dense decoherence matrices over `n`-step path spaces.
//!
//! `D_A(xi, eta) = I[(xi, eta) in A] * <w(xi), w(eta)>`, with the inner
//! product conjugate-linear in the *second* argument. That orientation is
//! pinned by the `n = 3` reference matrix (its `(1, 2)` entry is `+i/8`);
//! the opposite convention flips those signs.
//!
//! Matrices are stored dense and row-major. The default size cap is
//! `n = 12` (a 4096 x 4096 complex matrix, about 268 MB); callers with more
//! memory can raise it explicitly.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::math;
use crate::pathspace::{
    class_label, enumerate_paths, path_weight, ClassLabel, InitialState, Path, PathOrdering,
    QuantumCoin, RestrictionKind,
};
use crate::{Error, Result};

/// Default dense-construction cap on the path length.
pub const DEFAULT_DENSE_CAP: usize = 12;

/// Cap for the exhaustive zero-pattern comparison in [`precedes`].
pub const PRECEDES_CAP: usize = 10;

/// Entries with modulus at or below this are treated as zero by the
/// zero-pattern diagnostics.
pub const ZERO_TOL: f64 = 1e-12;

/// A dense Hermitian decoherence matrix with its construction metadata.
#[derive(Debug, Clone)]
pub struct DecoherenceMatrix {
    n: usize,
    dim: usize,
    ordering: PathOrdering,
    kind: RestrictionKind,
    coin: QuantumCoin,
    init: InitialState,
    paths: Vec<Path>,
    /// Row-major `dim x dim` entries.
    entries: Vec<Complex64>,
}

impl DecoherenceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ordering(&self) -> PathOrdering {
        self.ordering
    }

    pub fn kind(&self) -> &RestrictionKind {
        &self.kind
    }

    pub fn coin(&self) -> &QuantumCoin {
        &self.coin
    }

    pub fn init(&self) -> &InitialState {
        &self.init
    }

    /// Paths along the matrix axes, in storage order.
    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    /// Entry at 0-based `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    /// Raw row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entry(i, i)).sum()
    }

    /// Maximum deviation from Hermitian symmetry.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                let d = (self.entry(i, j) - self.entry(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyPath);
    }
    if n > cap {
        return Err(Error::NTooLarge { n, cap });
    }
    Ok(())
}

/// Builds `D_A` for the given coin, initial state, and restriction kind,
/// under the default size cap.
pub fn build_matrix(
    coin: &QuantumCoin,
    init: &InitialState,
    n: usize,
    kind: RestrictionKind,
    ordering: PathOrdering,
) -> Result<DecoherenceMatrix> {
    build_matrix_capped(coin, init, n, kind, ordering, DEFAULT_DENSE_CAP)
}

/// [`build_matrix`] with an explicit size cap.
pub fn build_matrix_capped(
    coin: &QuantumCoin,
    init: &InitialState,
    n: usize,
    kind: RestrictionKind,
    ordering: PathOrdering,
    cap: usize,
) -> Result<DecoherenceMatrix> {
    check_cap(n, cap)?;
    kind.validate_for_len(n)?;
    let paths = enumerate_paths(n, ordering)?;
    let dim = paths.len();
    let weights: Vec<[Complex64; 2]> = paths.iter().map(|p| path_weight(coin, init, p)).collect();

    // Intern class labels so the pair test inside the fill loop is an
    // integer compare. `Full` keeps the all-pairs semantics.
    let class_ids: Option<Vec<u32>> = match kind {
        RestrictionKind::Full => None,
        _ => {
            let mut ids = Vec::with_capacity(dim);
            let mut seen: BTreeMap<ClassLabel, u32> = BTreeMap::new();
            for p in &paths {
                let label = class_label(&kind, p);
                let next = seen.len() as u32;
                ids.push(*seen.entry(label).or_insert(next));
            }
            Some(ids)
        }
    };
    // ApAt additionally kills diagonal blocks away from the fixed position.
    let alive: Option<Vec<bool>> = match kind {
        RestrictionKind::ApAt(x) => Some(paths.iter().map(|p| p.position() == x).collect()),
        _ => None,
    };

    let zero = Complex64::new(0.0, 0.0);
    let mut entries = vec![zero; dim * dim];
    for row in 0..dim {
        let wr = weights[row];
        for col in 0..dim {
            let related = match &class_ids {
                None => true,
                Some(ids) => {
                    ids[row] == ids[col] && alive.as_ref().is_none_or(|a| a[row] && a[col])
                }
            };
            if related {
                let wc = weights[col];
                entries[row * dim + col] = wr[0] * wc[0].conj() + wr[1] * wc[1].conj();
            }
        }
    }

    Ok(DecoherenceMatrix {
        n,
        dim,
        ordering,
        kind,
        coin: *coin,
        init: *init,
        paths,
        entries,
    })
}

/// The two-site walk matrix built directly from the step-amplitude product
/// form: each trajectory over sites `{0, 1}` starting at site `0` carries
/// amplitude `prod_k i^{|a_k - a_(k-1)|} / sqrt(2)`, and entries are
/// `I[a_n = a_n'] * amp * conj(amp')`.
///
/// Renaming site `0` to `-1` identifies trajectories with paths (the site at
/// time `k` becomes step `xi_k`), under which this equals the decoherence
/// matrix of the stay/move coin with left initial chirality restricted to
/// `A0` - the equality is exercised by tests, not assumed here.
pub fn two_site_matrix(n: usize) -> Result<DecoherenceMatrix> {
    two_site_matrix_ordered(n, PathOrdering::Paper)
}

/// [`two_site_matrix`] with an explicit path ordering.
pub fn two_site_matrix_ordered(n: usize, ordering: PathOrdering) -> Result<DecoherenceMatrix> {
    check_cap(n, DEFAULT_DENSE_CAP)?;
    let paths = enumerate_paths(n, ordering)?;
    let dim = paths.len();
    let stay = Complex64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
    let hop = Complex64::new(0.0, core::f64::consts::FRAC_1_SQRT_2);
    let amplitude = |path: &Path| -> Complex64 {
        let mut amp = Complex64::new(1.0, 0.0);
        let mut site = -1i8; // both trajectories start on the left site
        for &s in path.steps() {
            amp *= if s == site { stay } else { hop };
            site = s;
        }
        amp
    };
    let amps: Vec<Complex64> = paths.iter().map(amplitude).collect();

    let zero = Complex64::new(0.0, 0.0);
    let mut entries = vec![zero; dim * dim];
    for row in 0..dim {
        for col in 0..dim {
            if paths[row].last_step() == paths[col].last_step() {
                entries[row * dim + col] = amps[row] * amps[col].conj();
            }
        }
    }

    Ok(DecoherenceMatrix {
        n,
        dim,
        ordering,
        kind: RestrictionKind::A0,
        coin: QuantumCoin::gudder_sorkin(),
        init: InitialState::left(),
        paths,
        entries,
    })
}

/// The q-measure of an event: `sum over (j, k) in E x E of D(j, k)`.
///
/// The sum must be real up to `1e-10`; the imaginary part is checked and
/// discarded.
pub fn qmeasure(matrix: &DecoherenceMatrix, event: &[usize]) -> Result<f64> {
    for &idx in event {
        if idx >= matrix.dim() {
            return Err(Error::IndexOutOfRange(idx, matrix.dim()));
        }
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for &j in event {
        for &k in event {
            sum += matrix.entry(j, k);
        }
    }
    if math::abs(sum.im) > 1e-10 {
        return Err(Error::NonRealMeasure(sum.im));
    }
    Ok(sum.re)
}

/// Quantum walk position distribution recovered from the per-position
/// blocks of `D_Ap`: the probability of position `x` is the q-measure of the
/// event `{paths ending at x}`.
///
/// This is the dense-matrix route; it cross-checks the `O(n^2)` amplitude
/// recursion in [`corrw::qw_distribution`].
pub fn qw_distribution_from_blocks(
    coin: &QuantumCoin,
    init: &InitialState,
    n: usize,
) -> Result<Vec<(i64, f64)>> {
    let matrix = build_matrix(coin, init, n, RestrictionKind::Ap, PathOrdering::Binary)?;
    let mut events: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (idx, path) in matrix.paths().iter().enumerate() {
        events.entry(path.position()).or_default().push(idx);
    }
    let mut out = Vec::with_capacity(events.len());
    for (x, event) in events {
        out.push((x, qmeasure(&matrix, &event)?));
    }
    Ok(out)
}

/// Zero-pattern order `A ≺ B`: wherever `D_B` vanishes, `D_A` vanishes too.
/// Exhaustive over all `4^n` pairs with `|entry| <= 1e-12` as "zero".
pub fn precedes(
    kind_a: RestrictionKind,
    kind_b: RestrictionKind,
    coin: &QuantumCoin,
    init: &InitialState,
    n: usize,
) -> Result<bool> {
    check_cap(n, PRECEDES_CAP)?;
    let da = build_matrix(coin, init, n, kind_a, PathOrdering::Binary)?;
    let db = build_matrix(coin, init, n, kind_b, PathOrdering::Binary)?;
    for i in 0..da.dim() {
        for j in 0..da.dim() {
            if db.entry(i, j).norm() <= ZERO_TOL && da.entry(i, j).norm() > ZERO_TOL {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
