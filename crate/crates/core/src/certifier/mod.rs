//! Union-bound certification of expansion lower bounds.
//!
//! A bisection cutting `c = (1 - eta) delta n / 4` edges whose two sides have
//! maximum out-degrees `d`, `d'` occurs with probability at most `2^{n * rhs}`
//! (up to lower-order terms), where
//!
//! ```text
//! rhs = 1 - log(beta)/2 - log(beta')/2 - (1-eta)(delta/4)(log gamma + log gamma') - delta
//!         + ((1+eta) delta / 4) log(1+eta) + ((1-eta) delta / 4) log(1-eta)
//! ```
//!
//! in base-2 logarithms, with `(beta, gamma)` and `(beta', gamma')` solved for
//! caps `d` and `d'`. A locally optimal set may be assumed to satisfy
//! `d + d' = delta`, so `eta` is certified once `rhs` is negative for every
//! such pair.

mod certificate;

pub use certificate::{
    BoundCertificate, CertificateError, Check, PairBound, PairRecord, VacuousPair,
    VerificationReport, SCHEMA_VERSION,
};
pub use certificate::verify_certificate;

use rayon::prelude::*;
use std::f64::consts::LN_2;
use thiserror::Error;

use crate::side_solver::{is_feasible, solve_side, target_mean, SideSolution, SolveError};

/// Default separation below zero required of every pair's exponent.
pub const DEFAULT_MARGIN: f64 = 1e-4;
/// Default number of decimals `eta` is rounded up to.
pub const DEFAULT_PRECISION: u32 = 3;

/// Ratio between consecutive probes of the downward scan in [`min_eta`].
const SCAN_RATIO: f64 = 0.9;
/// Bisection width on `eta` before rounding to the requested precision.
const ETA_BISECTION_WIDTH: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("delta must be at least 3, got {0}")]
    DeltaTooSmall(usize),
    #[error("margin must be positive and finite, got {0}")]
    InvalidMargin(f64),
    #[error("precision must lie in 1..=12, got {0}")]
    InvalidPrecision(u32),
    #[error("invalid delta range {min}..={max}")]
    InvalidRange { min: usize, max: usize },
    #[error("no eta below 1 certifies delta = {0}")]
    NoBound(usize),
}

fn log2(x: f64) -> f64 {
    x.ln() / LN_2
}

/// `x log2 x` with `0 log 0 = 0`.
fn xlog2x(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * log2(x)
    }
}

/// Exponent bound from already solved side parameters, given as
/// `(ln beta, gamma)` per side.
pub fn rhs_from_params(delta: usize, eta: f64, side: (f64, f64), side_prime: (f64, f64)) -> f64 {
    let dl = delta as f64;
    let (log_beta, gamma) = side;
    let (log_beta_p, gamma_p) = side_prime;
    1.0 - 0.5 * (log_beta + log_beta_p) / LN_2 - (1.0 - eta) * dl / 4.0 * (log2(gamma) + log2(gamma_p))
        - dl
        + dl / 4.0 * (xlog2x(1.0 + eta) + xlog2x(1.0 - eta))
}

pub fn rhs_from_sides(eta: f64, side: &SideSolution, side_prime: &SideSolution) -> f64 {
    rhs_from_params(
        side.delta,
        eta,
        (side.log_beta, side.gamma),
        (side_prime.log_beta, side_prime.gamma),
    )
}

/// Exponent bound (bits per vertex) for degree caps `d`, `d'`.
pub fn bound_rhs(delta: usize, d: usize, d_prime: usize, eta: f64) -> Result<f64, SolveError> {
    let side = solve_side(delta, d, eta)?;
    let side_prime = if d_prime == d {
        side.clone()
    } else {
        solve_side(delta, d_prime, eta)?
    };
    Ok(rhs_from_sides(eta, &side, &side_prime))
}

/// Every split `d + d' = delta` with `1 <= d <= d'`, balanced first.
pub fn all_pairs(delta: usize) -> Vec<(usize, usize)> {
    (1..=delta / 2).rev().map(|d| (d, delta - d)).collect()
}

/// The splits of [`all_pairs`] whose smaller cap can carry the target mean.
pub fn feasible_pairs(delta: usize, eta: f64) -> Vec<(usize, usize)> {
    all_pairs(delta)
        .into_iter()
        .filter(|&(d, _)| is_feasible(delta, d, eta))
        .collect()
}

/// Solved record for every split of `delta` at this `eta`.
pub fn evaluate_pairs(delta: usize, eta: f64) -> Result<Vec<PairRecord>, SolveError> {
    all_pairs(delta)
        .into_iter()
        .map(|(d, d_prime)| {
            if is_feasible(delta, d, eta) {
                let side = solve_side(delta, d, eta)?;
                let side_prime = if d_prime == d {
                    side.clone()
                } else {
                    solve_side(delta, d_prime, eta)?
                };
                let rhs = rhs_from_sides(eta, &side, &side_prime);
                Ok(PairRecord::Feasible(PairBound {
                    d,
                    d_prime,
                    side,
                    side_prime,
                    rhs,
                }))
            } else {
                Ok(PairRecord::Vacuous(VacuousPair {
                    d,
                    d_prime,
                    target_mean: target_mean(delta, eta),
                }))
            }
        })
        .collect()
}

/// Largest exponent over the feasible pairs, with the pair attaining it.
pub fn worst_pair(delta: usize, eta: f64) -> Result<Option<(f64, (usize, usize))>, SolveError> {
    let mut worst: Option<(f64, (usize, usize))> = None;
    for (d, d_prime) in feasible_pairs(delta, eta) {
        let rhs = bound_rhs(delta, d, d_prime, eta)?;
        if worst.map_or(true, |(w, _)| rhs > w) {
            worst = Some((rhs, (d, d_prime)));
        }
    }
    Ok(worst)
}

/// Whether every feasible pair has exponent at most `-margin`. Stops at the
/// first pair that does not.
pub fn is_certified(delta: usize, eta: f64, margin: f64) -> Result<bool, SolveError> {
    for (d, d_prime) in feasible_pairs(delta, eta) {
        if bound_rhs(delta, d, d_prime, eta)? > -margin {
            return Ok(false);
        }
    }
    Ok(true)
}

fn validate(delta: usize, margin: f64, precision: u32) -> Result<(), CertifyError> {
    if delta < 3 {
        return Err(CertifyError::DeltaTooSmall(delta));
    }
    if !(margin.is_finite() && margin > 0.0) {
        return Err(CertifyError::InvalidMargin(margin));
    }
    if !(1..=12).contains(&precision) {
        return Err(CertifyError::InvalidPrecision(precision));
    }
    Ok(())
}

fn grid_eta(ticks: u64, precision: u32) -> f64 {
    ticks as f64 / 10f64.powi(precision as i32)
}

/// Smallest `eta` on the `10^-precision` grid from which every larger cut
/// deficiency is certified, packaged as a certificate.
///
/// The exponent is not monotone over all of `[0, 1)`: right above the point
/// where the balanced pair becomes feasible it can dip below zero again. The
/// search therefore walks down from `eta` near 1 until the condition first
/// fails, bisects that bracket, and rounds the threshold up.
pub fn min_eta(delta: usize, margin: f64, precision: u32) -> Result<BoundCertificate, CertifyError> {
    validate(delta, margin, precision)?;
    let holds = |eta: f64| is_certified(delta, eta, margin);

    let mut pass = 1.0 - 1.0 / 64.0;
    if !holds(pass)? {
        return Err(CertifyError::NoBound(delta));
    }
    let mut fail = None;
    let mut probe = pass * SCAN_RATIO;
    while probe > ETA_BISECTION_WIDTH {
        if holds(probe)? {
            pass = probe;
            probe *= SCAN_RATIO;
        } else {
            fail = Some(probe);
            break;
        }
    }
    let mut fail = fail.unwrap_or(0.0);
    while pass - fail > ETA_BISECTION_WIDTH {
        let mid = 0.5 * (pass + fail);
        if holds(mid)? {
            pass = mid;
        } else {
            fail = mid;
        }
    }

    let scale = 10f64.powi(precision as i32);
    let mut ticks = (pass * scale).ceil() as u64;
    while ticks > 1 && holds(grid_eta(ticks - 1, precision))? && grid_eta(ticks - 1, precision) > fail {
        ticks -= 1;
    }
    while !holds(grid_eta(ticks, precision))? {
        ticks += 1;
        if grid_eta(ticks, precision) >= 1.0 {
            return Err(CertifyError::NoBound(delta));
        }
    }
    let eta = grid_eta(ticks, precision);
    let below = grid_eta(ticks - 1, precision);
    let refuted_eta = if ticks > 1 && !holds(below)? {
        Some(below)
    } else if fail >= below && fail < eta && !holds(fail)? {
        Some(fail)
    } else {
        None
    };
    let (baseline_eta, baseline_bound) = baseline_eta(delta, precision)?;
    Ok(BoundCertificate {
        schema: SCHEMA_VERSION.to_string(),
        delta,
        eta,
        expansion_bound: expansion_bound(delta, eta),
        margin,
        precision,
        refuted_eta,
        pair_bounds: evaluate_pairs(delta, eta)?,
        baseline_eta,
        baseline_bound,
    })
}

/// `(1 - eta) delta / 2`.
pub fn expansion_bound(delta: usize, eta: f64) -> f64 {
    (1.0 - eta) * delta as f64 / 2.0
}

/// `(1-eta) log2(1-eta) + (1+eta) log2(1+eta)`, strictly increasing on `[0, 1]`.
pub fn baseline_lhs(eta: f64) -> f64 {
    xlog2x(1.0 - eta) + xlog2x(1.0 + eta)
}

/// Unrounded root of `baseline_lhs(eta) = 4 / delta`.
pub fn baseline_root(delta: usize) -> f64 {
    let target = 4.0 / delta as f64;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-16 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if baseline_lhs(mid) > target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Baseline `eta` without degree caps, rounded up to `precision` decimals,
/// and the bound `(1 - eta) delta / 2` it yields.
pub fn baseline_eta(delta: usize, precision: u32) -> Result<(f64, f64), CertifyError> {
    if delta < 3 {
        return Err(CertifyError::DeltaTooSmall(delta));
    }
    if !(1..=12).contains(&precision) {
        return Err(CertifyError::InvalidPrecision(precision));
    }
    let scale = 10f64.powi(precision as i32);
    let root = baseline_root(delta);
    let mut ticks = (root * scale).ceil() as u64;
    while baseline_lhs(grid_eta(ticks, precision)) <= 4.0 / delta as f64 {
        ticks += 1;
    }
    let eta = grid_eta(ticks, precision);
    Ok((eta, expansion_bound(delta, eta)))
}

/// One certificate per `delta` in the range, in increasing order.
pub fn build_table(
    delta_min: usize,
    delta_max: usize,
    margin: f64,
    precision: u32,
) -> Result<Vec<BoundCertificate>, CertifyError> {
    if delta_min < 3 || delta_min > delta_max {
        return Err(CertifyError::InvalidRange {
            min: delta_min,
            max: delta_max,
        });
    }
    (delta_min..=delta_max)
        .into_par_iter()
        .map(|delta| min_eta(delta, margin, precision))
        .collect()
}
