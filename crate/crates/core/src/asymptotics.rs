//! One-sided cap analysis for general `delta`.
//!
//! Capping only the smaller side at `d = delta / 2` and leaving the other
//! side uncapped, the side constraints can be written through binomial
//! probabilities at `p = gamma / (gamma + 1)`:
//!
//! * `P1 = Pr[B(delta, p) <= d]`
//! * `P2 = Pr[B(delta - 1, p) <= d - 1]`
//! * `P3 = Pr[B(delta, p) = d]`
//!
//! with `P1 = P2 + ((delta - d) / delta) P3` and
//! `theta = ((delta - d) / delta) P3 / P1`. The ratio parameter then solves
//! the fixed point `gamma = (1 - eta) / (1 + eta - 2 theta(gamma))`.
//! All probabilities are exact binomial sums.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certifier::{baseline_root, min_eta, CertifyError};
use crate::combinatorics::{binomial_tail_ln, log_binomial_pmf};

/// `2 sqrt(ln 2)`, the baseline coefficient of `sqrt(delta)` in `eta`.
pub const TWO_SQRT_LN2: f64 = 1.665_109_222_315_395_5;

const FIXED_POINT_TOLERANCE: f64 = 1e-12;
const MAX_ITERATIONS: usize = 1_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymptoticsError {
    #[error("delta must be a positive even integer, got {0}")]
    OddDelta(usize),
    #[error("cap {d} is outside 1..={delta}")]
    InvalidCap { delta: usize, d: usize },
    #[error("gamma must be positive and finite, got {0}")]
    InvalidGamma(f64),
    #[error("eta must lie in (0, 1), got {0}")]
    InvalidEta(f64),
    #[error("fixed point did not settle after {iterations} iterations (last step {step:e})")]
    NoConvergence { iterations: usize, step: f64 },
    #[error(transparent)]
    Certify(#[from] CertifyError),
}

/// Solved one-sided parameters at a given `(delta, eta)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticPoint {
    pub delta: usize,
    pub d: usize,
    pub gamma: f64,
    /// `ln beta`, with `beta = ((1 + eta - 2 theta) / (2 - 2 theta))^delta / P1`.
    pub log_beta: f64,
    pub p: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub theta: f64,
    pub eta: f64,
    /// `eta * sqrt(delta)`.
    pub alpha: f64,
    pub iterations: usize,
}

impl AsymptoticPoint {
    pub fn beta(&self) -> f64 {
        self.log_beta.exp()
    }
}

/// `(ln p, ln(1 - p))` for `p = gamma / (gamma + 1)`.
fn log_success_odds(gamma: f64) -> (f64, f64) {
    let ln1p = gamma.ln_1p();
    (gamma.ln() - ln1p, -ln1p)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapProbabilities {
    pub p: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
}

impl CapProbabilities {
    pub fn theta(&self, delta: usize, d: usize) -> f64 {
        (delta - d) as f64 / delta as f64 * self.p3 / self.p1
    }
}

pub fn cap_probabilities(delta: usize, d: usize, gamma: f64) -> Result<CapProbabilities, AsymptoticsError> {
    if d == 0 || d > delta {
        return Err(AsymptoticsError::InvalidCap { delta, d });
    }
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(AsymptoticsError::InvalidGamma(gamma));
    }
    let (ln_p, ln_q) = log_success_odds(gamma);
    Ok(CapProbabilities {
        p: gamma / (gamma + 1.0),
        p1: binomial_tail_ln(delta, ln_p, ln_q, d),
        p2: binomial_tail_ln(delta - 1, ln_p, ln_q, d - 1),
        p3: log_binomial_pmf(delta, ln_p, ln_q, d).exp(),
    })
}

/// `theta` from the point masses scaled by the one at `d`, which stays
/// finite when `P1` itself underflows.
fn theta_at(delta: usize, d: usize, gamma: f64) -> Result<f64, AsymptoticsError> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(AsymptoticsError::InvalidGamma(gamma));
    }
    let (ln_p, ln_q) = log_success_odds(gamma);
    let top = log_binomial_pmf(delta, ln_p, ln_q, d);
    let scaled: f64 = (0..=d)
        .map(|k| (log_binomial_pmf(delta, ln_p, ln_q, k) - top).exp())
        .sum();
    Ok((delta - d) as f64 / delta as f64 / scaled)
}

/// `|P1 - P2 - ((delta - d) / delta) P3|`.
pub fn check_p1p3_identity(delta: usize, d: usize, gamma: f64) -> Result<f64, AsymptoticsError> {
    let probs = cap_probabilities(delta, d, gamma)?;
    let weight = (delta - d) as f64 / delta as f64;
    Ok((probs.p1 - probs.p2 - weight * probs.p3).abs())
}

/// Solve the one-sided system at cap `delta / 2`.
pub fn solve_one_sided(delta: usize, eta: f64) -> Result<AsymptoticPoint, AsymptoticsError> {
    if delta == 0 || delta % 2 == 1 {
        return Err(AsymptoticsError::OddDelta(delta));
    }
    if !(eta.is_finite() && eta > 0.0 && eta < 1.0) {
        return Err(AsymptoticsError::InvalidEta(eta));
    }
    let d = delta / 2;
    let update = |theta: f64| (1.0 - eta) / (1.0 + eta - 2.0 * theta);
    // theta grows with gamma, so iterating the update from theta = 0 climbs
    // monotonically to the smallest fixed point. Larger fixed points exist
    // (theta tends to 1/2 as gamma grows) and are not wanted. Each step
    // probes ahead for a sign change and bisects once one is bracketed.
    let image = |ln_gamma: f64| -> Result<f64, AsymptoticsError> {
        Ok(update(theta_at(delta, d, ln_gamma.exp())?).ln())
    };
    let mut x = update(0.0).ln();
    let ceiling = update(0.5).ln();
    let mut iterations = 0;
    let mut reach = 2.0;
    let (mut lo, mut hi) = loop {
        if iterations == MAX_ITERATIONS {
            return Err(AsymptoticsError::NoConvergence { iterations, step: f64::NAN });
        }
        iterations += 1;
        let next = image(x)?;
        let step = next - x;
        if step <= FIXED_POINT_TOLERANCE {
            break (x, x);
        }
        let probe = (x + reach * step).min(ceiling);
        if image(probe)? <= probe {
            break (next, probe);
        }
        x = next;
        reach *= 2.0;
    };
    while hi - lo > FIXED_POINT_TOLERANCE {
        if iterations == MAX_ITERATIONS {
            return Err(AsymptoticsError::NoConvergence { iterations, step: hi - lo });
        }
        iterations += 1;
        let mid = 0.5 * (lo + hi);
        if image(mid)? > mid {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let gamma = (0.5 * (lo + hi)).exp();

    let probs = cap_probabilities(delta, d, gamma)?;
    let theta = theta_at(delta, d, gamma)?;
    let log_beta =
        delta as f64 * ((1.0 + eta - 2.0 * theta) / (2.0 - 2.0 * theta)).ln() - probs.p1.ln();
    Ok(AsymptoticPoint {
        delta,
        d,
        gamma,
        log_beta,
        p: probs.p,
        p1: probs.p1,
        p2: probs.p2,
        p3: probs.p3,
        theta,
        eta,
        alpha: eta * (delta as f64).sqrt(),
        iterations,
    })
}

/// Certified `eta` for each `delta`, reported as `alpha = eta sqrt(delta)`
/// together with the one-sided solution at that `eta`.
pub fn alpha_trend(
    deltas: &[usize],
    margin: f64,
    precision: u32,
) -> Result<Vec<AsymptoticPoint>, AsymptoticsError> {
    deltas
        .iter()
        .map(|&delta| {
            if delta < 4 || delta % 2 == 1 {
                return Err(AsymptoticsError::OddDelta(delta));
            }
            let cert = min_eta(delta, margin, precision)?;
            solve_one_sided(delta, cert.eta)
        })
        .collect()
}

/// `alpha` of the uncapped baseline, from the unrounded root.
pub fn baseline_alpha(delta: usize) -> f64 {
    baseline_root(delta) * (delta as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::side_solver::solve_side;

    #[test]
    fn identity_by_hand() {
        let probs = cap_probabilities(4, 2, 1.0).unwrap();
        assert!((probs.p1 - 11.0 / 16.0).abs() < 1e-15);
        assert!((probs.p2 - 0.5).abs() < 1e-15);
        assert!((probs.p3 - 6.0 / 16.0).abs() < 1e-15);
        assert!(check_p1p3_identity(4, 2, 1.0).unwrap() < 1e-15);
    }

    #[test]
    fn degenerate_cap() {
        let probs = cap_probabilities(9, 9, 0.4).unwrap();
        assert_eq!(probs.p1, 1.0);
        assert_eq!(probs.p2, 1.0);
        assert!(check_p1p3_identity(9, 9, 0.4).unwrap() < 1e-15);
    }

    #[test]
    fn agrees_with_side_solver() {
        for (delta, eta) in [(10usize, 0.507), (40, 0.255), (100, 0.165)] {
            let point = solve_one_sided(delta, eta).unwrap();
            let side = solve_side(delta, delta / 2, eta).unwrap();
            assert!((point.gamma - side.gamma).abs() < 1e-9, "delta={delta}");
            assert!((point.beta() - side.beta).abs() < 1e-9, "delta={delta}");
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(solve_one_sided(9, 0.3), Err(AsymptoticsError::OddDelta(9)));
        assert_eq!(solve_one_sided(10, 0.0), Err(AsymptoticsError::InvalidEta(0.0)));
        assert!(matches!(
            check_p1p3_identity(5, 0, 1.0),
            Err(AsymptoticsError::InvalidCap { .. })
        ));
        assert_eq!(
            check_p1p3_identity(5, 2, -1.0),
            Err(AsymptoticsError::InvalidGamma(-1.0))
        );
    }

    #[test]
    fn baseline_alpha_below_limit() {
        for delta in [40usize, 400, 4000] {
            assert!(baseline_alpha(delta) < TWO_SQRT_LN2);
        }
        assert!((TWO_SQRT_LN2 - 2.0 * 2f64.ln().sqrt()).abs() < 1e-15);
    }
}
