use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{all_pairs, baseline_eta, expansion_bound, is_certified, rhs_from_params};
use crate::side_solver::{is_feasible, side_residuals, target_mean, SideSolution, MASS_TOLERANCE, MEAN_TOLERANCE};

pub const SCHEMA_VERSION: &str = "cert-v1";

/// Agreement required between a stored exponent and its recomputation.
const RHS_AGREEMENT: f64 = 1e-9;
/// Agreement required between stored and recomputed closed-form quantities.
const EXACT_AGREEMENT: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("malformed certificate at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("certificate could not be rendered: {0}")]
    Render(String),
}

impl From<serde_json::Error> for CertificateError {
    fn from(e: serde_json::Error) -> Self {
        CertificateError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

/// Exponent bound for one feasible split `d + d' = delta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairBound {
    pub d: usize,
    pub d_prime: usize,
    pub side: SideSolution,
    pub side_prime: SideSolution,
    /// Bits per vertex; negative means the configuration is exponentially unlikely.
    #[serde(with = "crate::real")]
    pub rhs: f64,
}

/// A split that cannot occur: the mean out-degree is at least `d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VacuousPair {
    pub d: usize,
    pub d_prime: usize,
    #[serde(with = "crate::real")]
    pub target_mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum PairRecord {
    Feasible(PairBound),
    Vacuous(VacuousPair),
}

impl PairRecord {
    pub fn caps(&self) -> (usize, usize) {
        match self {
            PairRecord::Feasible(p) => (p.d, p.d_prime),
            PairRecord::Vacuous(v) => (v.d, v.d_prime),
        }
    }

    pub fn as_feasible(&self) -> Option<&PairBound> {
        match self {
            PairRecord::Feasible(p) => Some(p),
            PairRecord::Vacuous(_) => None,
        }
    }
}

/// Everything needed to re-check an expansion bound without repeating the
/// search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub schema: String,
    pub delta: usize,
    #[serde(with = "crate::real")]
    pub eta: f64,
    /// `(1 - eta) delta / 2`.
    #[serde(with = "crate::real")]
    pub expansion_bound: f64,
    #[serde(with = "crate::real")]
    pub margin: f64,
    pub precision: u32,
    /// A point in `[eta - 10^-precision, eta)` where some feasible pair
    /// misses the margin, showing `eta` is the first certified grid point
    /// from above. `None` only when `eta` is the smallest grid point.
    #[serde(with = "crate::real::option")]
    pub refuted_eta: Option<f64>,
    pub pair_bounds: Vec<PairRecord>,
    #[serde(with = "crate::real")]
    pub baseline_eta: f64,
    #[serde(with = "crate::real")]
    pub baseline_bound: f64,
}

impl BoundCertificate {
    pub fn to_json(&self) -> Result<String, CertificateError> {
        serde_json::to_string(self).map_err(|e| CertificateError::Render(e.to_string()))
    }

    pub fn to_json_pretty(&self) -> Result<String, CertificateError> {
        serde_json::to_string_pretty(self).map_err(|e| CertificateError::Render(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        Ok(serde_json::from_str(text)?)
    }

    /// All certificates in a stream of concatenated or newline-separated
    /// JSON documents.
    pub fn parse_stream(text: &str) -> Result<Vec<Self>, CertificateError> {
        serde_json::Deserializer::from_str(text)
            .into_iter::<Self>()
            .map(|doc| doc.map_err(CertificateError::from))
            .collect()
    }

    pub fn feasible_pairs(&self) -> impl Iterator<Item = &PairBound> {
        self.pair_bounds.iter().filter_map(PairRecord::as_feasible)
    }

    /// Feasible pair with the largest stored exponent.
    pub fn worst_pair(&self) -> Option<&PairBound> {
        self.feasible_pairs()
            .max_by(|a, b| a.rhs.total_cmp(&b.rhs))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    fn record(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + b.abs())
}

fn check_side(
    report: &mut VerificationReport,
    label: &str,
    cert: &BoundCertificate,
    cap: usize,
    side: &SideSolution,
) -> Option<(f64, f64)> {
    let header_ok = side.delta == cert.delta && side.cap == cap && side.eta.to_bits() == cert.eta.to_bits();
    report.record(
        format!("{label}.header"),
        header_ok,
        format!(
            "delta {} cap {} eta {} (expected {} {} {})",
            side.delta, side.cap, side.eta, cert.delta, cap, cert.eta
        ),
    );
    let params_ok = side.gamma.is_finite()
        && side.gamma > 0.0
        && side.beta > 0.0
        && side.beta <= 1.0
        && close(side.beta.ln(), side.log_beta, EXACT_AGREEMENT);
    report.record(
        format!("{label}.parameters"),
        params_ok,
        format!("beta {} (ln {}), gamma {}", side.beta, side.log_beta, side.gamma),
    );
    if !params_ok {
        return None;
    }
    let (mass, mean) = side_residuals(cert.delta, cap, cert.eta, side.beta.ln(), side.gamma);
    report.record(
        format!("{label}.mass"),
        mass <= MASS_TOLERANCE && side.residual_mass <= MASS_TOLERANCE && close(side.residual_mass, mass, MASS_TOLERANCE),
        format!("recomputed {mass:e}, stored {:e}", side.residual_mass),
    );
    report.record(
        format!("{label}.mean"),
        mean <= MEAN_TOLERANCE && side.residual_mean <= MEAN_TOLERANCE && close(side.residual_mean, mean, MEAN_TOLERANCE),
        format!("recomputed {mean:e}, stored {:e}", side.residual_mean),
    );
    Some((side.beta.ln(), side.gamma))
}

/// Re-check a certificate from its stored parameters alone.
pub fn verify_certificate(cert: &BoundCertificate) -> VerificationReport {
    let mut report = VerificationReport::default();
    report.record(
        "schema",
        cert.schema == SCHEMA_VERSION,
        format!("`{}`", cert.schema),
    );
    let header_ok = cert.delta >= 3
        && cert.eta.is_finite()
        && cert.eta > 0.0
        && cert.eta < 1.0
        && cert.margin.is_finite()
        && cert.margin > 0.0
        && (1..=12).contains(&cert.precision);
    report.record(
        "header",
        header_ok,
        format!(
            "delta {}, eta {}, margin {}, precision {}",
            cert.delta, cert.eta, cert.margin, cert.precision
        ),
    );
    if !header_ok {
        return report;
    }

    let scale = 10f64.powi(cert.precision as i32);
    report.record(
        "eta.grid",
        ((cert.eta * scale).round() - cert.eta * scale).abs() < 1e-6,
        format!("eta {} on the 1e-{} grid", cert.eta, cert.precision),
    );
    let step = 1.0 / scale;
    match cert.refuted_eta {
        Some(r) => {
            let in_range = r.is_finite() && r >= cert.eta - step * (1.0 + 1e-9) && r < cert.eta;
            let refuted = in_range && matches!(is_certified(cert.delta, r, cert.margin), Ok(false));
            report.record(
                "eta.minimal",
                refuted,
                format!("condition at {r} (must fail, within {step} below eta)"),
            );
        }
        None => report.record(
            "eta.minimal",
            (cert.eta - step).abs() < 1e-12,
            format!("no refutation below eta {}", cert.eta),
        ),
    }
    let bound = expansion_bound(cert.delta, cert.eta);
    report.record(
        "expansion_bound",
        close(cert.expansion_bound, bound, EXACT_AGREEMENT),
        format!("stored {}, recomputed {bound}", cert.expansion_bound),
    );

    let expected: Vec<_> = all_pairs(cert.delta);
    let stored: Vec<_> = cert.pair_bounds.iter().map(PairRecord::caps).collect();
    report.record(
        "pairs.exhaustive",
        expected == stored,
        format!("stored {stored:?}, expected {expected:?}"),
    );

    let target = target_mean(cert.delta, cert.eta);
    for record in &cert.pair_bounds {
        match record {
            PairRecord::Vacuous(v) => {
                let label = format!("pair({},{})", v.d, v.d_prime);
                report.record(
                    format!("{label}.vacuous"),
                    !is_feasible(cert.delta, v.d, cert.eta) && close(v.target_mean, target, EXACT_AGREEMENT),
                    format!("target mean {target} against cap {}", v.d),
                );
            }
            PairRecord::Feasible(p) => {
                let label = format!("pair({},{})", p.d, p.d_prime);
                report.record(
                    format!("{label}.feasible"),
                    is_feasible(cert.delta, p.d, cert.eta) && is_feasible(cert.delta, p.d_prime, cert.eta),
                    format!("target mean {target} against caps {} and {}", p.d, p.d_prime),
                );
                let a = check_side(&mut report, &format!("{label}.side"), cert, p.d, &p.side);
                let b = check_side(&mut report, &format!("{label}.side_prime"), cert, p.d_prime, &p.side_prime);
                if let (Some(a), Some(b)) = (a, b) {
                    let rhs = rhs_from_params(cert.delta, cert.eta, a, b);
                    report.record(
                        format!("{label}.rhs"),
                        rhs <= -cert.margin && close(p.rhs, rhs, RHS_AGREEMENT),
                        format!("recomputed {rhs:.6e}, stored {:.6e}, margin {}", p.rhs, cert.margin),
                    );
                }
            }
        }
    }

    match baseline_eta(cert.delta, cert.precision) {
        Ok((eta, bound)) => {
            report.record(
                "baseline",
                close(cert.baseline_eta, eta, EXACT_AGREEMENT) && close(cert.baseline_bound, bound, EXACT_AGREEMENT),
                format!(
                    "stored ({}, {}), recomputed ({eta}, {bound})",
                    cert.baseline_eta, cert.baseline_bound
                ),
            );
        }
        Err(e) => report.record("baseline", false, e.to_string()),
    }
    report.record(
        "dominance",
        cert.expansion_bound >= cert.baseline_bound,
        format!("bound {} against baseline {}", cert.expansion_bound, cert.baseline_bound),
    );
    report
}
