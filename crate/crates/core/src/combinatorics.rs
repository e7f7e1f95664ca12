//! Log-space combinatorial primitives and the truncated binomial profile.
//!
//! Everything here works in natural logarithms. Sums of terms of the form
//! `gamma^i * C(delta, i)` are rescaled by their largest term before they are
//! accumulated, so moments stay finite long after the raw sums overflow.

use std::f64::consts::PI;
use std::sync::OnceLock;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CombinatoricsError {
    #[error("double factorial normalizer needs an even argument, got {0}")]
    OddArgument(u64),
    #[error("invalid truncated binomial profile: {0}")]
    InvalidProfile(String),
}

/// Below this, `ln n!` is taken from exactly representable factorials.
const EXACT_FACTORIAL_LIMIT: u64 = 16;

fn exact_log_factorials() -> &'static [f64; EXACT_FACTORIAL_LIMIT as usize] {
    static TABLE: OnceLock<[f64; EXACT_FACTORIAL_LIMIT as usize]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [0.0; EXACT_FACTORIAL_LIMIT as usize];
        let mut fact = 1.0f64;
        for (k, slot) in table.iter_mut().enumerate().skip(1) {
            // 15! < 2^53, so every product here is exact.
            fact *= k as f64;
            *slot = fact.ln();
        }
        table
    })
}

/// Stirling remainder `ln n! - [(n + 1/2) ln n - n + ln(2 pi)/2]`.
fn stirling_remainder(n: u64) -> f64 {
    if n < EXACT_FACTORIAL_LIMIT {
        if n == 0 {
            return 0.0;
        }
        let x = n as f64;
        return exact_log_factorials()[n as usize] - ((x + 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln());
    }
    let x = n as f64;
    let x2 = x * x;
    // Truncation error of this series is below 1e-17 for n >= 16.
    (1.0 / 12.0
        - (1.0 / 360.0
            - (1.0 / 1260.0 - (1.0 / 1680.0 - 1.0 / (1188.0 * x2)) / x2) / x2)
            / x2)
        / x
}

/// Natural log of `n!`.
pub fn log_factorial(n: u64) -> f64 {
    if n < EXACT_FACTORIAL_LIMIT {
        return exact_log_factorials()[n as usize];
    }
    let x = n as f64;
    (x + 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + stirling_remainder(n)
}

/// Natural log of `C(n, k)`; `-inf` when `k` lies outside `[0, n]`.
///
/// Uses the entropy form of Stirling's formula so that no large
/// log-factorials are subtracted from each other.
pub fn log_binomial(n: u64, k: i64) -> f64 {
    if k < 0 || k as u64 > n {
        return f64::NEG_INFINITY;
    }
    let k = k as u64;
    let rest = n - k;
    if k == 0 || rest == 0 {
        return 0.0;
    }
    if n < EXACT_FACTORIAL_LIMIT {
        let table = exact_log_factorials();
        return table[n as usize] - table[k as usize] - table[rest as usize];
    }
    let (nf, kf, rf) = (n as f64, k as f64, rest as f64);
    // `a ln(n / a)`, through ln_1p when `a` is close to `n`.
    let entropy = |a: f64, other: f64| {
        if 2.0 * a <= nf {
            a * (nf / a).ln()
        } else {
            -a * (-other / nf).ln_1p()
        }
    };
    let bulk = entropy(kf, rf) + entropy(rf, kf);
    let correction = 0.5 * (nf / (2.0 * PI * kf * rf)).ln();
    bulk + correction + stirling_remainder(n) - stirling_remainder(k) - stirling_remainder(rest)
}

/// Natural log of `(m-1)(m-3)...1`, the number of perfect matchings on `m`
/// points.
pub fn log_odd_double_factorial(m: u64) -> Result<f64, CombinatoricsError> {
    if m % 2 == 1 {
        return Err(CombinatoricsError::OddArgument(m));
    }
    if m <= 2 {
        return Ok(0.0);
    }
    let half = m / 2;
    Ok(log_factorial(m) - half as f64 * std::f64::consts::LN_2 - log_factorial(half))
}

/// `ln C(delta, i)` for `i = 0..=delta`.
pub fn log_binomial_row(delta: usize) -> Vec<f64> {
    (0..=delta)
        .map(|i| log_binomial(delta as u64, i as i64))
        .collect()
}

/// Weights `gamma^i * C(delta, i)` restricted to `i <= cap`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedBinomialProfile {
    delta: usize,
    cap: usize,
    gamma: f64,
}

impl TruncatedBinomialProfile {
    pub fn new(delta: usize, cap: usize, gamma: f64) -> Result<Self, CombinatoricsError> {
        if delta == 0 {
            return Err(CombinatoricsError::InvalidProfile("delta must be positive".into()));
        }
        if cap > delta {
            return Err(CombinatoricsError::InvalidProfile(format!(
                "cap {cap} exceeds delta {delta}"
            )));
        }
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(CombinatoricsError::InvalidProfile(format!(
                "gamma must be positive and finite, got {gamma}"
            )));
        }
        Ok(Self { delta, cap, gamma })
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `ln w_i` for `i = 0..=cap`.
    pub fn log_weights(&self) -> Vec<f64> {
        let ln_gamma = self.gamma.ln();
        (0..=self.cap)
            .map(|i| log_binomial(self.delta as u64, i as i64) + i as f64 * ln_gamma)
            .collect()
    }
}

/// Zeroth and first moments of a truncated profile, kept in log form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedMoments {
    /// `ln S0`, `S0 = sum_{i<=cap} gamma^i C(delta, i)`.
    pub log_s0: f64,
    /// `ln S1`, `S1 = sum_{i<=cap} i gamma^i C(delta, i)`; `-inf` when `cap = 0`.
    pub log_s1: f64,
    /// `S1 / S0`.
    pub mean: f64,
}

impl TruncatedMoments {
    pub fn s0(&self) -> f64 {
        self.log_s0.exp()
    }

    pub fn s1(&self) -> f64 {
        self.log_s1.exp()
    }
}

pub fn truncated_moments(profile: &TruncatedBinomialProfile) -> TruncatedMoments {
    let row = log_binomial_row(profile.delta);
    moments_from_row(&row, profile.cap, profile.gamma.ln())
}

/// Moments for a precomputed `ln C(delta, .)` row; shared with the solvers,
/// which evaluate many `gamma` values for the same `delta`.
pub(crate) fn moments_from_row(row: &[f64], cap: usize, ln_gamma: f64) -> TruncatedMoments {
    let terms = &row[..=cap];
    let peak = terms
        .iter()
        .enumerate()
        .map(|(i, lc)| lc + i as f64 * ln_gamma)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    for (i, lc) in terms.iter().enumerate() {
        let w = (lc + i as f64 * ln_gamma - peak).exp();
        s0 += w;
        s1 += i as f64 * w;
    }
    TruncatedMoments {
        log_s0: peak + s0.ln(),
        log_s1: if s1 > 0.0 { peak + s1.ln() } else { f64::NEG_INFINITY },
        mean: s1 / s0,
    }
}

/// `Pr[B(delta, p) = k]`.
pub fn binomial_pmf(delta: usize, p: f64, k: usize) -> f64 {
    if k > delta {
        return 0.0;
    }
    if p <= 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if p >= 1.0 {
        return if k == delta { 1.0 } else { 0.0 };
    }
    log_binomial_pmf(delta, p.ln(), (-p).ln_1p(), k).exp()
}

/// `Pr[B(delta, p) <= cap]` by direct summation of the point masses.
pub fn binomial_tail(delta: usize, p: f64, cap: usize) -> f64 {
    if cap >= delta {
        return 1.0;
    }
    if p <= 0.0 {
        return 1.0;
    }
    if p >= 1.0 {
        return 0.0;
    }
    binomial_tail_ln(delta, p.ln(), (-p).ln_1p(), cap)
}

pub(crate) fn log_binomial_pmf(delta: usize, ln_p: f64, ln_q: f64, k: usize) -> f64 {
    log_binomial(delta as u64, k as i64) + k as f64 * ln_p + (delta - k) as f64 * ln_q
}

/// Tail sum taking `ln p` and `ln(1 - p)` directly, for callers that know
/// them more accurately than `p` itself.
pub(crate) fn binomial_tail_ln(delta: usize, ln_p: f64, ln_q: f64, cap: usize) -> f64 {
    if cap >= delta {
        return 1.0;
    }
    let sum: f64 = (0..=cap)
        .map(|k| log_binomial_pmf(delta, ln_p, ln_q, k).exp())
        .sum();
    sum.min(1.0)
}
