//! Per-side constraint solver.
//!
//! For one side of a bisection with maximum out-degree `cap`, the most likely
//! out-degree profile is `s_i = beta * gamma^i * C(delta, i)` (as fractions of
//! the side), and `(beta, gamma)` are pinned down by
//!
//! ```text
//! sum_{i<=cap} beta gamma^i C(delta, i)     = 1
//! sum_{i<=cap} i beta gamma^i C(delta, i)   = (1 - eta) delta / 2
//! ```
//!
//! Dividing the two leaves a single equation `mean(gamma) = target` where
//! `mean` is the mean of the truncated profile. That map is strictly
//! increasing, so `gamma` is found by bracketing bisection.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::{log_binomial, log_binomial_row, log_factorial, moments_from_row};
use crate::graphlab::OutDegreeVector;

/// Relative bracket width at which the `gamma` bisection stops.
pub const GAMMA_RELATIVE_WIDTH: f64 = 1e-13;
/// Largest admissible `|sum beta gamma^i C(delta,i) - 1|`.
pub const MASS_TOLERANCE: f64 = 1e-10;
/// Largest admissible `|sum i beta gamma^i C(delta,i) - target|`.
pub const MEAN_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("target mean {target} is unreachable with cap {cap} (delta = {delta})")]
    InfeasibleTarget { delta: usize, cap: usize, target: f64 },
    #[error("eta must lie in [0, 1), got {0}")]
    InvalidEta(f64),
    #[error("cap {cap} is outside 0..={delta}")]
    InvalidCap { delta: usize, cap: usize },
    #[error("gamma bracket escaped the representable range (delta = {delta}, cap = {cap}, eta = {eta})")]
    BracketOverflow { delta: usize, cap: usize, eta: f64 },
    #[error("solution misses the constraints: mass residual {mass:e}, mean residual {mean:e}")]
    Residual { mass: f64, mean: f64 },
}

/// Solved `(beta, gamma)` for one side, with the residuals of both constraints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SideSolution {
    pub delta: usize,
    pub cap: usize,
    #[serde(with = "crate::real")]
    pub eta: f64,
    #[serde(with = "crate::real")]
    pub beta: f64,
    /// `ln beta`; stays finite when `beta` underflows for large `delta`.
    #[serde(with = "crate::real")]
    pub log_beta: f64,
    #[serde(with = "crate::real")]
    pub gamma: f64,
    #[serde(with = "crate::real")]
    pub residual_mass: f64,
    #[serde(with = "crate::real")]
    pub residual_mean: f64,
}

/// Average out-degree `(1 - eta) delta / 2` of a bisection side cutting
/// `(1 - eta) delta n / 4` edges.
pub fn target_mean(delta: usize, eta: f64) -> f64 {
    (1.0 - eta) * delta as f64 / 2.0
}

fn check_eta(eta: f64) -> Result<(), SolveError> {
    if eta.is_finite() && (0.0..1.0).contains(&eta) {
        Ok(())
    } else {
        Err(SolveError::InvalidEta(eta))
    }
}

/// `true` when a side with maximum out-degree `cap` can realise the cut.
pub fn is_feasible(delta: usize, cap: usize, eta: f64) -> bool {
    let target = target_mean(delta, eta);
    cap >= 1 && target > 0.0 && target < cap as f64
}

pub fn solve_side(delta: usize, cap: usize, eta: f64) -> Result<SideSolution, SolveError> {
    check_eta(eta)?;
    if delta == 0 || cap > delta {
        return Err(SolveError::InvalidCap { delta, cap });
    }
    let target = target_mean(delta, eta);
    if !is_feasible(delta, cap, eta) {
        return Err(SolveError::InfeasibleTarget { delta, cap, target });
    }

    let row = log_binomial_row(delta);
    let mean_at = |gamma: f64| moments_from_row(&row, cap, gamma.ln()).mean;
    let overflow = || SolveError::BracketOverflow { delta, cap, eta };

    let (mut lo, mut hi) = if mean_at(1.0) < target {
        let (mut lo, mut hi) = (1.0, 2.0);
        while mean_at(hi) < target {
            lo = hi;
            hi *= 2.0;
            if !hi.is_finite() {
                return Err(overflow());
            }
        }
        (lo, hi)
    } else {
        let (mut lo, mut hi) = (0.5, 1.0);
        while mean_at(lo) >= target {
            hi = lo;
            lo *= 0.5;
            if lo < f64::MIN_POSITIVE {
                return Err(overflow());
            }
        }
        (lo, hi)
    };

    while hi - lo > GAMMA_RELATIVE_WIDTH * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if mean_at(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let gamma = 0.5 * (lo + hi);
    let log_beta = -moments_from_row(&row, cap, gamma.ln()).log_s0;
    let (residual_mass, residual_mean) = side_residuals(delta, cap, eta, log_beta, gamma);
    if !(residual_mass <= MASS_TOLERANCE && residual_mean <= MEAN_TOLERANCE) {
        return Err(SolveError::Residual {
            mass: residual_mass,
            mean: residual_mean,
        });
    }
    Ok(SideSolution {
        delta,
        cap,
        eta,
        beta: log_beta.exp(),
        log_beta,
        gamma,
        residual_mass,
        residual_mean,
    })
}

/// Residuals of both side constraints for given `(ln beta, gamma)`, summed
/// term by term from scratch.
pub fn side_residuals(delta: usize, cap: usize, eta: f64, log_beta: f64, gamma: f64) -> (f64, f64) {
    let ln_gamma = gamma.ln();
    let mut mass = 0.0;
    let mut first = 0.0;
    for i in 0..=cap.min(delta) {
        let term = (log_beta + i as f64 * ln_gamma + log_binomial(delta as u64, i as i64)).exp();
        mass += term;
        first += i as f64 * term;
    }
    (
        (mass - 1.0).abs(),
        (first - target_mean(delta, eta)).abs(),
    )
}

/// `ln F(s) = sum_i [s_i ln C(delta, i) - ln s_i!]`, the multinomial weight
/// of an out-degree vector up to the `|S|!` factor.
pub fn log_f(svec: &OutDegreeVector) -> f64 {
    let delta = svec.delta() as u64;
    svec.counts()
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            if s == 0 {
                0.0
            } else {
                s as f64 * log_binomial(delta, i as i64) - log_factorial(s)
            }
        })
        .sum()
}
