//! Scalar helpers: `no_std` float math via `libm`, entropy terms, and
//! log-space binomial coefficients.

/// log2(e), the factor converting natural-log entropies to bits.
pub const LOG2_E: f64 = core::f64::consts::LOG2_E;

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn log2(x: f64) -> f64 {
    libm::log2(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub fn powi(x: f64, n: i32) -> f64 {
    libm::pow(x, n as f64)
}

/// `x * log2(x)` with the convention `0 * log2(0) = 0`.
#[inline]
pub fn xlog2(x: f64) -> f64 {
    if x > 0.0 {
        x * log2(x)
    } else {
        0.0
    }
}

/// Binary entropy `H(p) = -p log2 p - (1-p) log2 (1-p)` in bits.
pub fn binary_entropy(p: f64) -> f64 {
    -xlog2(p) - xlog2(1.0 - p)
}

/// `1 - H((1 + delta) / 2)` evaluated without cancellation.
///
/// The naive route `1.0 - binary_entropy(...)` loses all precision once
/// `delta^2` drops below machine epsilon; the deficit itself stays well
/// inside the normal range down to `delta ~ 1e-150`. Small arguments use the
/// series `log2(e) * sum_k delta^(2k) / (2k (2k-1))`, larger ones the direct
/// `log1p` expression.
pub fn binary_entropy_deficit(delta: f64) -> f64 {
    let d = abs(delta);
    if d >= 1.0 {
        return 1.0;
    }
    if d > 0.1 {
        let plus = (1.0 + d) * libm::log1p(d);
        let minus = (1.0 - d) * libm::log1p(-d);
        return 0.5 * (plus + minus) * LOG2_E;
    }
    let d2 = d * d;
    let mut term = d2; // delta^(2k)
    let mut sum = 0.0;
    let mut k = 1u32;
    loop {
        let contrib = term / ((2 * k) as f64 * (2 * k - 1) as f64);
        sum += contrib;
        if contrib < sum * 1e-18 || k > 40 {
            break;
        }
        term *= d2;
        k += 1;
    }
    sum * LOG2_E
}

/// Natural log of the binomial coefficient `C(n, k)`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    if k == 0 || k == n {
        return 0.0;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// `C(n, k)` as an exact `u64`, or `None` on overflow.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    // The running value is always a binomial coefficient, so only the
    // intermediate product needs the wider type.
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    u64::try_from(acc).ok()
}

fn ln_factorial(n: u64) -> f64 {
    if n < 2 {
        0.0
    } else {
        libm::lgamma(n as f64 + 1.0)
    }
}

/// Standard normal cumulative distribution function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / core::f64::consts::SQRT_2)
}
