//! Paths, path orderings, the quantum coin, path weights, and restriction
//! subsets.
//!
//! A path `xi` in the `n`-step path space is a sequence of steps
//! `xi_1, ..., xi_n`, each `-1` (left) or `+1` (right); `xi_1` is the first
//! step taken. Paths *display* last step first, `(xi_n, ..., xi_1)`, and all
//! tuple-valued conventions in this crate follow that display order.
//!
//! The walk's internal state is a 2-vector over the chirality basis
//! `e_{-1} = [1, 0]`, `e_{+1} = [0, 1]`. One step of the walk applies the
//! coin `U` and then projects onto the chirality of the step taken, so the
//! weight of a path is `w(xi) = P_{xi_n} ... P_{xi_1} phi0` with
//! `P_j = e_j e_j^dagger U`. The weight always ends up proportional to
//! `e_{xi_n}`: the final step fixes the chirality.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::math;
use crate::{Error, Result};

/// Unitarity / normalization tolerance for input validation.
pub const VALIDATION_TOL: f64 = 1e-12;

/// Enumeration cap: `2^20` paths is the practical desk-scale limit.
pub const ENUMERATION_CAP: usize = 20;

/// The 2x2 unitary coin driving the walk's chirality each step.
///
/// All four entries must be nonzero; a zero entry degenerates the associated
/// correlated random walk (persistence probability 0 or 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumCoin {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl QuantumCoin {
    /// Validates unitarity and the nonzero-entry requirement.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let coin = Self { a, b, c, d };
        coin.validate()?;
        Ok(coin)
    }

    /// The Hadamard coin: `a = b = c = 1/sqrt(2)`, `d = -1/sqrt(2)`.
    pub fn hadamard() -> Self {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        Self {
            a: Complex64::new(s, 0.0),
            b: Complex64::new(s, 0.0),
            c: Complex64::new(s, 0.0),
            d: Complex64::new(-s, 0.0),
        }
    }

    /// The two-site walk coin: `a = d = 1/sqrt(2)`, `b = c = i/sqrt(2)`
    /// (stay amplitude `1/sqrt(2)`, move amplitude `i/sqrt(2)`).
    pub fn gudder_sorkin() -> Self {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        Self {
            a: Complex64::new(s, 0.0),
            b: Complex64::new(0.0, s),
            c: Complex64::new(0.0, s),
            d: Complex64::new(s, 0.0),
        }
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    pub fn d(&self) -> Complex64 {
        self.d
    }

    /// Determinant `ad - bc`.
    pub fn determinant(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    fn validate(&self) -> Result<()> {
        for z in [self.a, self.b, self.c, self.d] {
            let m = z.norm();
            if m <= VALIDATION_TOL {
                return Err(Error::ZeroEntry(m));
            }
        }
        // Column norms and column orthogonality.
        let col1 = self.a.norm_sqr() + self.c.norm_sqr();
        let col2 = self.b.norm_sqr() + self.d.norm_sqr();
        let ortho = self.a * self.b.conj() + self.c * self.d.conj();
        let mut residual = math::abs(col1 - 1.0);
        residual = residual.max(math::abs(col2 - 1.0));
        residual = residual.max(ortho.norm());
        // Derived identities: |a|^2 = |d|^2 = 1 - |b|^2 = 1 - |c|^2 and
        // d = det * conj(a), c = -det * conj(b).
        let det = self.determinant();
        residual = residual.max(math::abs(self.a.norm_sqr() - self.d.norm_sqr()));
        residual = residual.max(math::abs(self.b.norm_sqr() - self.c.norm_sqr()));
        residual = residual.max((self.d - det * self.a.conj()).norm());
        residual = residual.max((self.c + det * self.b.conj()).norm());
        if residual > VALIDATION_TOL {
            return Err(Error::NotUnitary(residual));
        }
        Ok(())
    }
}

/// Validates a coin, returning it unchanged if all invariants hold.
pub fn validate_coin(coin: QuantumCoin) -> Result<QuantumCoin> {
    coin.validate()?;
    Ok(coin)
}

/// Normalized initial chirality state `phi0 = [alpha, beta]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialState {
    alpha: Complex64,
    beta: Complex64,
}

impl InitialState {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        if math::abs(norm - 1.0) > VALIDATION_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { alpha, beta })
    }

    /// `e_{-1} = [1, 0]`: the left-chirality basis state.
    pub fn left() -> Self {
        Self {
            alpha: Complex64::new(1.0, 0.0),
            beta: Complex64::new(0.0, 0.0),
        }
    }

    /// `e_{+1} = [0, 1]`: the right-chirality basis state.
    pub fn right() -> Self {
        Self {
            alpha: Complex64::new(0.0, 0.0),
            beta: Complex64::new(1.0, 0.0),
        }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }
}

/// An `n`-step path with steps in `{-1, +1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    steps: Vec<i8>,
}

impl Path {
    /// Builds a path from steps in first-to-last order `(xi_1, ..., xi_n)`.
    pub fn from_steps(steps: &[i8]) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::EmptyPath);
        }
        for &s in steps {
            if s != -1 && s != 1 {
                return Err(Error::EmptyPath);
            }
        }
        Ok(Self {
            steps: steps.to_vec(),
        })
    }

    /// Builds a path from a display tuple `(xi_n, ..., xi_1)`.
    pub fn from_display(display: &[i8]) -> Result<Self> {
        let mut steps = display.to_vec();
        steps.reverse();
        Self::from_steps(&steps)
    }

    /// Path of length `n` encoded by `mask`: bit `k-1` set means `xi_k = +1`.
    pub fn from_mask(n: usize, mask: u32) -> Self {
        let steps = (0..n)
            .map(|k| if mask >> k & 1 == 1 { 1 } else { -1 })
            .collect();
        Self { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Step `xi_k`, 1-indexed.
    pub fn step(&self, k: usize) -> i8 {
        self.steps[k - 1]
    }

    /// Steps in first-to-last order.
    pub fn steps(&self) -> &[i8] {
        &self.steps
    }

    pub fn first_step(&self) -> i8 {
        self.steps[0]
    }

    pub fn last_step(&self) -> i8 {
        self.steps[self.steps.len() - 1]
    }

    /// Final position `sum_k xi_k`.
    pub fn position(&self) -> i64 {
        self.steps.iter().map(|&s| s as i64).sum()
    }

    /// Number of `+1` steps.
    pub fn ones(&self) -> u32 {
        self.steps.iter().filter(|&&s| s == 1).count() as u32
    }

    /// Number of direction changes between consecutive steps.
    pub fn switches(&self) -> u32 {
        self.steps.windows(2).filter(|w| w[0] != w[1]).count() as u32
    }

    /// Display tuple `(xi_n, ..., xi_1)`.
    pub fn display_tuple(&self) -> Vec<i8> {
        let mut d = self.steps.clone();
        d.reverse();
        d
    }

    /// Integer index under binary ordering: `xi_1` is the least significant
    /// bit, `+1` encoding 1.
    pub fn binary_index(&self) -> usize {
        self.steps
            .iter()
            .enumerate()
            .map(|(k, &s)| if s == 1 { 1usize << k } else { 0 })
            .sum()
    }
}

impl core::fmt::Display for Path {
    /// Prints the display tuple `(s_n,...,s_1)`.
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.display_tuple().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// How the `2^n` paths are laid out along matrix axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathOrdering {
    /// Number of `+1` steps ascending, then lexicographic on the display
    /// tuple `(xi_n, ..., xi_1)` with `-1 < +1`. This reproduces the
    /// reference layout of the `n = 3` example matrices.
    Paper,
    /// Index of a path is its binary encoding with `xi_1` least significant.
    Binary,
}

impl PathOrdering {
    pub fn name(&self) -> &'static str {
        match self {
            PathOrdering::Paper => "paper",
            PathOrdering::Binary => "binary",
        }
    }
}

/// All `2^n` paths of length `n` in the given ordering.
pub fn enumerate_paths(n: usize, ordering: PathOrdering) -> Result<Vec<Path>> {
    if n == 0 {
        return Err(Error::EmptyPath);
    }
    if n > ENUMERATION_CAP {
        return Err(Error::NTooLarge {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    let count = 1usize << n;
    let mut paths: Vec<Path> = (0..count as u32).map(|m| Path::from_mask(n, m)).collect();
    if ordering == PathOrdering::Paper {
        paths.sort_by(|a, b| {
            a.ones()
                .cmp(&b.ones())
                .then_with(|| a.display_tuple().cmp(&b.display_tuple()))
        });
    }
    Ok(paths)
}

/// The weight `w(xi) = P_{xi_n} ... P_{xi_1} phi0` as `[left, right]`
/// chirality components.
///
/// Exactly one component can be nonzero: the `xi_n` one. The projector step
/// writes a literal zero into the other component, so this holds to the bit.
pub fn path_weight(coin: &QuantumCoin, init: &InitialState, xi: &Path) -> [Complex64; 2] {
    let mut state = [init.alpha(), init.beta()];
    for &s in xi.steps() {
        state = apply_projected_coin(coin, s, state);
    }
    state
}

/// One step `P_j = e_j e_j^dagger U` applied to a chirality 2-vector.
#[inline]
pub fn apply_projected_coin(coin: &QuantumCoin, j: i8, state: [Complex64; 2]) -> [Complex64; 2] {
    let zero = Complex64::new(0.0, 0.0);
    if j == -1 {
        [coin.a() * state[0] + coin.b() * state[1], zero]
    } else {
        [zero, coin.c() * state[0] + coin.d() * state[1]]
    }
}

/// Canonical equivalence-class label of a path under a restriction kind.
pub type ClassLabel = Vec<i64>;

/// A restriction subset of path pairs; entries outside it are forced to
/// zero in the decoherence matrix.
///
/// Every kind here is an equivalence relation on paths (`Full` relates
/// everything; `ApAt` relates paths within the fixed-position slice and
/// excludes the rest of the diagonal).
#[derive(Debug, Clone, Copy)]
pub enum RestrictionKind {
    /// No restriction at all. Coincides entrywise with `A0` because weights
    /// of opposite final chirality are orthogonal.
    Full,
    /// Same final step: `xi_n = eta_n`.
    A0,
    /// Same final position and same final step.
    Ap,
    /// The `Ap` slice at a fixed final position `x`.
    ApAt(i64),
    /// The diagonal: `xi = eta`. No interference survives; this is the
    /// classical case.
    A1,
    /// Same final position, same final step, same first step.
    B,
    /// User-supplied equivalence via a label function.
    Custom {
        name: &'static str,
        label: fn(&Path) -> ClassLabel,
    },
}

impl PartialEq for RestrictionKind {
    /// Custom kinds compare by name; function pointer identity is not
    /// meaningful across codegen units.
    fn eq(&self, other: &Self) -> bool {
        use RestrictionKind::*;
        match (self, other) {
            (Full, Full) | (A0, A0) | (Ap, Ap) | (A1, A1) | (B, B) => true,
            (ApAt(x), ApAt(y)) => x == y,
            (Custom { name: a, .. }, Custom { name: b, .. }) => a == b,
            _ => false,
        }
    }
}

impl RestrictionKind {
    pub fn name(&self) -> &'static str {
        match self {
            RestrictionKind::Full => "full",
            RestrictionKind::A0 => "a0",
            RestrictionKind::Ap => "ap",
            RestrictionKind::ApAt(_) => "apx",
            RestrictionKind::A1 => "a1",
            RestrictionKind::B => "b",
            RestrictionKind::Custom { name, .. } => name,
        }
    }

    /// Checks an `ApAt` position against the path length: `x` must have the
    /// parity of `n` and `|x| <= n`.
    pub fn validate_for_len(&self, n: usize) -> Result<()> {
        if let RestrictionKind::ApAt(x) = self {
            let reach = *x >= -(n as i64) && *x <= n as i64 && (x - n as i64) % 2 == 0;
            if !reach {
                return Err(Error::InvalidPosition { x: *x, n });
            }
        }
        Ok(())
    }
}

/// Whether the pair `(xi, eta)` belongs to the restriction subset.
pub fn restriction_contains(kind: &RestrictionKind, xi: &Path, eta: &Path) -> Result<bool> {
    if xi.len() != eta.len() {
        return Err(Error::LengthMismatch(xi.len(), eta.len()));
    }
    Ok(match kind {
        RestrictionKind::Full => true,
        RestrictionKind::A0 => xi.last_step() == eta.last_step(),
        RestrictionKind::Ap => xi.last_step() == eta.last_step() && xi.position() == eta.position(),
        RestrictionKind::ApAt(x) => {
            xi.last_step() == eta.last_step() && xi.position() == *x && eta.position() == *x
        }
        RestrictionKind::A1 => xi == eta,
        RestrictionKind::B => {
            xi.last_step() == eta.last_step()
                && xi.position() == eta.position()
                && xi.first_step() == eta.first_step()
        }
        RestrictionKind::Custom { label, .. } => label(xi) == label(eta),
    })
}

/// Canonical class label: two paths share a label iff they are related.
///
/// `Full` labels by final step, like `A0`: cross-chirality weights are
/// orthogonal, so the unrestricted matrix has the `A0` zero pattern anyway.
pub fn class_label(kind: &RestrictionKind, xi: &Path) -> ClassLabel {
    match kind {
        RestrictionKind::Full | RestrictionKind::A0 => vec![xi.last_step() as i64],
        RestrictionKind::Ap | RestrictionKind::ApAt(_) => {
            vec![xi.position(), xi.last_step() as i64]
        }
        RestrictionKind::A1 => xi.steps().iter().map(|&s| s as i64).collect(),
        RestrictionKind::B => vec![xi.position(), xi.last_step() as i64, xi.first_step() as i64],
        RestrictionKind::Custom { label, .. } => label(xi),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const S: f64 = core::f64::consts::FRAC_1_SQRT_2;

    fn reference_init() -> InitialState {
        InitialState::new(c(S, 0.0), c(0.0, S)).unwrap()
    }

    #[test]
    fn hadamard_and_gudder_sorkin_are_valid() {
        validate_coin(QuantumCoin::hadamard()).unwrap();
        validate_coin(QuantumCoin::gudder_sorkin()).unwrap();
    }

    #[test]
    fn identity_coin_rejected_for_zero_entries() {
        let err = QuantumCoin::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::ZeroEntry(_)));
    }

    #[test]
    fn non_unitary_coin_rejected() {
        let err =
            QuantumCoin::new(c(0.9, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(-0.9, 0.0)).unwrap_err();
        assert!(matches!(err, Error::NotUnitary(_)));
    }

    #[test]
    fn state_normalization_checked() {
        assert!(InitialState::new(c(0.9, 0.0), c(0.1, 0.0)).is_err());
        InitialState::new(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
    }

    #[test]
    fn paper_order_n3_matches_reference_listing() {
        let paths = enumerate_paths(3, PathOrdering::Paper).unwrap();
        let expect: Vec<Vec<i8>> = vec![
            vec![-1, -1, -1],
            vec![-1, -1, 1],
            vec![-1, 1, -1],
            vec![1, -1, -1],
            vec![-1, 1, 1],
            vec![1, -1, 1],
            vec![1, 1, -1],
            vec![1, 1, 1],
        ];
        let got: Vec<Vec<i8>> = paths.iter().map(|p| p.display_tuple()).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn paper_order_n1() {
        let paths = enumerate_paths(1, PathOrdering::Paper).unwrap();
        assert_eq!(paths[0].steps(), &[-1]);
        assert_eq!(paths[1].steps(), &[1]);
    }

    #[test]
    fn binary_order_counts_with_first_step_least_significant() {
        let paths = enumerate_paths(2, PathOrdering::Binary).unwrap();
        // index 1 = binary 01: xi_1 = +1, xi_2 = -1
        assert_eq!(paths[1].step(1), 1);
        assert_eq!(paths[1].step(2), -1);
        for (i, p) in paths.iter().enumerate() {
            assert_eq!(p.binary_index(), i);
        }
    }

    #[test]
    fn enumeration_cap_enforced() {
        assert!(matches!(
            enumerate_paths(21, PathOrdering::Binary),
            Err(Error::NTooLarge { .. })
        ));
        assert!(enumerate_paths(0, PathOrdering::Paper).is_err());
    }

    #[test]
    fn weight_of_all_left_hadamard_path() {
        // Three left steps from [1/sqrt2, i/sqrt2]: each projected coin
        // application multiplies the surviving amplitude by 1/sqrt2.
        let coin = QuantumCoin::hadamard();
        let init = reference_init();
        let xi = Path::from_steps(&[-1, -1, -1]).unwrap();
        let w = path_weight(&coin, &init, &xi);
        assert!((w[0] - c(0.25, 0.25)).norm() < 1e-15);
        assert_eq!(w[1], c(0.0, 0.0));
        assert!(math::abs(w[0].norm_sqr() - 0.125) < 1e-15);
    }

    #[test]
    fn weight_single_step_left_is_a_alpha_plus_b_beta() {
        let coin = QuantumCoin::hadamard();
        let init = reference_init();
        let xi = Path::from_steps(&[-1]).unwrap();
        let w = path_weight(&coin, &init, &xi);
        let expect = coin.a() * init.alpha() + coin.b() * init.beta();
        assert_eq!(w[0], expect);
        assert_eq!(w[1], c(0.0, 0.0));
    }

    #[test]
    fn gudder_sorkin_one_step_move_amplitude() {
        let coin = QuantumCoin::gudder_sorkin();
        let init = InitialState::left();
        let xi = Path::from_steps(&[1]).unwrap();
        let w = path_weight(&coin, &init, &xi);
        assert_eq!(w[0], c(0.0, 0.0));
        assert!((w[1] - c(0.0, S)).norm() < 1e-15);
    }

    #[test]
    fn restriction_predicates_on_reference_pairs() {
        // Display tuples; first entry is xi_n.
        let xi = Path::from_display(&[-1, -1, 1]).unwrap();
        let eta = Path::from_display(&[-1, 1, -1]).unwrap();
        assert!(restriction_contains(&RestrictionKind::A0, &xi, &eta).unwrap());
        assert!(restriction_contains(&RestrictionKind::Ap, &xi, &eta).unwrap());

        let eta2 = Path::from_display(&[1, -1, -1]).unwrap();
        // Equal sums but different final step.
        assert_eq!(xi.position(), eta2.position());
        assert!(!restriction_contains(&RestrictionKind::Ap, &xi, &eta2).unwrap());

        assert!(restriction_contains(&RestrictionKind::A1, &xi, &xi).unwrap());
        assert!(!restriction_contains(&RestrictionKind::A1, &xi, &eta).unwrap());
    }

    #[test]
    fn length_mismatch_rejected() {
        let xi = Path::from_steps(&[1]).unwrap();
        let eta = Path::from_steps(&[1, -1]).unwrap();
        assert!(matches!(
            restriction_contains(&RestrictionKind::A0, &xi, &eta),
            Err(Error::LengthMismatch(1, 2))
        ));
    }

    #[test]
    fn class_labels_read_directly() {
        let xi = Path::from_display(&[-1, -1, 1]).unwrap();
        assert_eq!(class_label(&RestrictionKind::Ap, &xi), vec![-1, -1]);
        let eta = Path::from_display(&[1, -1, -1]).unwrap();
        assert_eq!(class_label(&RestrictionKind::B, &eta), vec![-1, 1, -1]);
        assert_eq!(
            class_label(&RestrictionKind::A1, &eta),
            vec![-1, -1, 1] // first-to-last step order
        );
    }

    #[test]
    fn labels_consistent_with_contains_exhaustively() {
        let kinds = [
            RestrictionKind::Full,
            RestrictionKind::A0,
            RestrictionKind::Ap,
            RestrictionKind::A1,
            RestrictionKind::B,
        ];
        for n in 1..=8 {
            let paths = enumerate_paths(n, PathOrdering::Binary).unwrap();
            for kind in &kinds {
                let labels: Vec<ClassLabel> = paths.iter().map(|p| class_label(kind, p)).collect();
                for (i, xi) in paths.iter().enumerate() {
                    for (j, eta) in paths.iter().enumerate() {
                        let related = restriction_contains(kind, xi, eta).unwrap();
                        let same = labels[i] == labels[j];
                        if matches!(kind, RestrictionKind::Full) {
                            // Full relates everything; its label follows A0.
                            assert!(related);
                        } else {
                            assert_eq!(related, same, "kind {kind:?} n={n} i={i} j={j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn apx_parity_validation() {
        assert!(RestrictionKind::ApAt(1).validate_for_len(3).is_ok());
        assert!(RestrictionKind::ApAt(2).validate_for_len(3).is_err());
        assert!(RestrictionKind::ApAt(-4).validate_for_len(3).is_err());
    }

    #[test]
    fn apx_contains_requires_exact_position() {
        let xi = Path::from_display(&[-1, -1, 1]).unwrap(); // position -1
        let eta = Path::from_display(&[-1, 1, -1]).unwrap(); // position -1
        assert!(restriction_contains(&RestrictionKind::ApAt(-1), &xi, &eta).unwrap());
        assert!(!restriction_contains(&RestrictionKind::ApAt(1), &xi, &eta).unwrap());
    }
}
