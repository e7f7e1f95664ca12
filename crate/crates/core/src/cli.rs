//! Command-line front end. [`run`] parses arguments, dispatches, and returns
//! the captured output together with the exit code, so the binary is a thin
//! wrapper and tests can drive every command in-process.
//!
//! Exit codes: 0 when the command's verdict holds (certified, verified,
//! experiment consistent), 1 when it does not, 2 for usage errors.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::certifier::{
    baseline_eta, baseline_root, build_table, evaluate_pairs, verify_certificate, BoundCertificate, CertifyError,
    PairRecord, DEFAULT_MARGIN, DEFAULT_PRECISION,
};
use crate::graphlab::{
    brute_force_expansion, expansion_experiment, sample_pairing, ExperimentConfig, TieRule,
};
use crate::side_solver::{is_feasible, target_mean};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "EXPANDER_CERT_THREADS";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TieArg {
    Best,
    First,
}

impl From<TieArg> for TieRule {
    fn from(t: TieArg) -> Self {
        match t {
            TieArg::Best => TieRule::BestImprovement,
            TieArg::First => TieRule::FirstImprovement,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "expander-cert",
    version,
    about = "Certified expansion lower bounds for random regular graphs"
)]
pub struct RunConfig {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct SearchArgs {
    /// Required separation of every exponent below zero.
    #[arg(long, default_value_t = DEFAULT_MARGIN)]
    pub margin: f64,
    /// Decimals `eta` is rounded up to.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify the smallest eta for every delta in a range.
    Table {
        #[arg(long)]
        delta_min: usize,
        #[arg(long)]
        delta_max: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Evaluate the exponent of every degree-cap split at a given eta.
    Bound {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        eta: f64,
    },
    /// Re-verify certificates stored in a file.
    Certify {
        #[arg(long)]
        file: std::path::PathBuf,
    },
    /// Baseline eta and bound without degree caps.
    Baseline {
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: u32,
    },
    /// Sample graphs and run swap descent from random balanced sets.
    Simulate {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        restarts: usize,
        /// Reject multigraphs with loops or parallel edges.
        #[arg(long)]
        simple: bool,
        #[arg(long, value_enum, default_value_t = TieArg::Best)]
        tie_rule: TieArg,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Exact expansion of one sampled graph by exhaustive enumeration.
    Oracle {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }

    fn verdict(ok: bool, stdout: String) -> Self {
        Self {
            code: if ok { EXIT_PASS } else { EXIT_FAIL },
            stdout,
            stderr: String::new(),
        }
    }
}

/// Parse `args` (program name first) and run the selected command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_PASS,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let threads = match std::env::var(THREADS_ENV) {
        Err(_) => None,
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(t) if t > 0 => Some(t),
            _ => return Outcome::usage(format!("{THREADS_ENV} must be a positive integer, got `{raw}`")),
        },
    };
    match threads {
        None => dispatch(&config),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(&config)),
            Err(e) => Outcome::usage(e),
        },
    }
}

fn dispatch(config: &RunConfig) -> Outcome {
    let format = config.format;
    match &config.command {
        Command::Table {
            delta_min,
            delta_max,
            search,
        } => table(*delta_min, *delta_max, *search, format),
        Command::Bound { delta, eta } => bound(*delta, *eta, format),
        Command::Certify { file } => certify(file, format),
        Command::Baseline { delta, precision } => baseline(*delta, *precision, format),
        Command::Simulate {
            delta,
            n,
            trials,
            seed,
            restarts,
            simple,
            tie_rule,
            search,
        } => {
            let mut cfg = ExperimentConfig::new(*delta, *n, *trials, *seed);
            cfg.restarts = *restarts;
            cfg.simple_only = *simple;
            cfg.tie_rule = (*tie_rule).into();
            cfg.margin = search.margin;
            cfg.precision = search.precision;
            simulate(&cfg, format)
        }
        Command::Oracle { delta, n, seed } => oracle(*delta, *n, *seed, format),
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("output types serialise");
    s.push('\n');
    s
}

fn table(delta_min: usize, delta_max: usize, search: SearchArgs, format: Format) -> Outcome {
    let certs = match build_table(delta_min, delta_max, search.margin, search.precision) {
        Ok(c) => c,
        Err(e @ (CertifyError::InvalidRange { .. }
        | CertifyError::InvalidMargin(_)
        | CertifyError::InvalidPrecision(_)
        | CertifyError::DeltaTooSmall(_))) => return Outcome::usage(e),
        Err(e) => {
            return Outcome {
                code: EXIT_FAIL,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let mut out = String::new();
    match format {
        Format::Json => {
            for cert in &certs {
                out.push_str(&cert.to_json().expect("certificates serialise"));
                out.push('\n');
            }
        }
        Format::Csv => {
            out.push_str(
                "delta,eta,bound,previous_bound,worst_d,worst_d_prime,d,d_prime,beta,gamma,beta_prime,gamma_prime,rhs\n",
            );
            for cert in &certs {
                let (wd, wdp) = cert.worst_pair().map_or((0, 0), |p| (p.d, p.d_prime));
                for p in cert.feasible_pairs() {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{wd},{wdp},{},{},{},{},{},{},{}",
                        cert.delta,
                        cert.eta,
                        cert.expansion_bound,
                        cert.baseline_bound,
                        p.d,
                        p.d_prime,
                        p.side.beta,
                        p.side.gamma,
                        p.side_prime.beta,
                        p.side_prime.gamma,
                        p.rhs
                    );
                }
            }
        }
        Format::Text => {
            let _ = writeln!(out, "{:>5} {:>6} {:>7} {:>7} {:>6}  pairs (d/d': beta gamma beta' gamma')", "delta", "eta", "i", "prev_i", "worst");
            for cert in &certs {
                out.push_str(&text_row(cert));
            }
        }
    }
    Outcome::verdict(true, out)
}

fn text_row(cert: &BoundCertificate) -> String {
    let worst = cert
        .worst_pair()
        .map_or("-".to_string(), |p| format!("{}/{}", p.d, p.d_prime));
    let pairs: Vec<String> = cert
        .feasible_pairs()
        .map(|p| {
            format!(
                "{}/{}: {:.5} {:.5} {:.5} {:.5}",
                p.d, p.d_prime, p.side.beta, p.side.gamma, p.side_prime.beta, p.side_prime.gamma
            )
        })
        .collect();
    format!(
        "{:>5} {:>6.3} {:>7.3} {:>7.3} {:>6}  {}\n",
        cert.delta,
        cert.eta,
        cert.expansion_bound,
        cert.baseline_bound,
        worst,
        pairs.join("; ")
    )
}

#[derive(Serialize)]
struct BoundReport {
    delta: usize,
    eta: f64,
    target_mean: f64,
    certified: bool,
    pairs: Vec<PairRecord>,
}

fn bound(delta: usize, eta: f64, format: Format) -> Outcome {
    if delta < 3 {
        return Outcome::usage(CertifyError::DeltaTooSmall(delta));
    }
    if !(eta.is_finite() && eta > 0.0 && eta < 1.0) {
        return Outcome::usage(format!("eta must lie in (0, 1), got {eta}"));
    }
    let pairs = match evaluate_pairs(delta, eta) {
        Ok(p) => p,
        Err(e) => {
            return Outcome {
                code: EXIT_FAIL,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let certified = pairs
        .iter()
        .filter_map(PairRecord::as_feasible)
        .all(|p| p.rhs < 0.0);
    let report = BoundReport {
        delta,
        eta,
        target_mean: target_mean(delta, eta),
        certified,
        pairs,
    };
    let mut out = String::new();
    match format {
        Format::Json => out = json_line(&report),
        Format::Csv => {
            out.push_str("delta,eta,d,d_prime,status,beta,gamma,beta_prime,gamma_prime,rhs\n");
            for record in &report.pairs {
                match record {
                    PairRecord::Feasible(p) => {
                        let _ = writeln!(
                            out,
                            "{delta},{eta},{},{},feasible,{},{},{},{},{}",
                            p.d, p.d_prime, p.side.beta, p.side.gamma, p.side_prime.beta, p.side_prime.gamma, p.rhs
                        );
                    }
                    PairRecord::Vacuous(v) => {
                        let _ = writeln!(out, "{delta},{eta},{},{},vacuous,,,,,", v.d, v.d_prime);
                    }
                }
            }
        }
        Format::Text => {
            let _ = writeln!(
                out,
                "delta {delta}, eta {eta}, mean out-degree {:.6}",
                report.target_mean
            );
            for record in &report.pairs {
                match record {
                    PairRecord::Feasible(p) => {
                        let _ = writeln!(
                            out,
                            "  ({}, {})  rhs {:+.6e}  beta {:.5} gamma {:.5}  beta' {:.5} gamma' {:.5}",
                            p.d, p.d_prime, p.rhs, p.side.beta, p.side.gamma, p.side_prime.beta, p.side_prime.gamma
                        );
                    }
                    PairRecord::Vacuous(v) => {
                        debug_assert!(!is_feasible(delta, v.d, eta));
                        let _ = writeln!(out, "  ({}, {})  vacuous: mean exceeds cap {}", v.d, v.d_prime, v.d);
                    }
                }
            }
            let _ = writeln!(out, "{}", if certified { "certified" } else { "not certified" });
        }
    }
    Outcome::verdict(certified, out)
}

#[derive(Serialize)]
struct CertifySummary<'a> {
    delta: usize,
    eta: f64,
    passed: bool,
    checks: &'a [crate::certifier::Check],
}

fn certify(path: &std::path::Path, format: Format) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::usage(format!("cannot read {}: {e}", path.display())),
    };
    let certs = match BoundCertificate::parse_stream(&text) {
        Ok(c) if c.is_empty() => {
            return Outcome {
                code: EXIT_FAIL,
                stdout: String::new(),
                stderr: format!("{}: no certificate found\n", path.display()),
            }
        }
        Ok(c) => c,
        Err(e) => {
            return Outcome {
                code: EXIT_FAIL,
                stdout: String::new(),
                stderr: format!("{}: {e}\n", path.display()),
            }
        }
    };
    let mut out = String::new();
    let mut all_ok = true;
    for cert in &certs {
        let report = verify_certificate(cert);
        all_ok &= report.passed();
        match format {
            Format::Json => {
                out.push_str(&json_line(&CertifySummary {
                    delta: cert.delta,
                    eta: cert.eta,
                    passed: report.passed(),
                    checks: &report.checks,
                }));
            }
            Format::Csv => {
                if out.is_empty() {
                    out.push_str("delta,eta,check,passed\n");
                }
                for c in &report.checks {
                    let _ = writeln!(out, "{},{},{},{}", cert.delta, cert.eta, c.name, c.passed);
                }
            }
            Format::Text => {
                let _ = writeln!(out, "certificate delta {} eta {}", cert.delta, cert.eta);
                for c in &report.checks {
                    let _ = writeln!(out, "  {} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
                }
                let _ = writeln!(out, "{}", if report.passed() { "verified" } else { "rejected" });
            }
        }
    }
    Outcome::verdict(all_ok, out)
}

#[derive(Serialize)]
struct BaselineReport {
    delta: usize,
    eta: f64,
    bound: f64,
    root: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
}

const DELTA3_NOTE: &str = "a sharper bound for delta = 3 is known from other methods";

fn baseline(delta: usize, precision: u32, format: Format) -> Outcome {
    let (eta, bound) = match baseline_eta(delta, precision) {
        Ok(v) => v,
        Err(e) => return Outcome::usage(e),
    };
    let report = BaselineReport {
        delta,
        eta,
        bound,
        root: baseline_root(delta),
        note: (delta == 3).then_some(DELTA3_NOTE),
    };
    let out = match format {
        Format::Json => json_line(&report),
        Format::Csv => format!(
            "delta,eta,bound,root\n{},{},{},{}\n",
            report.delta, report.eta, report.bound, report.root
        ),
        Format::Text => {
            let mut s = format!(
                "delta {delta}: eta {:.prec$}, bound {:.prec$}\n",
                eta,
                bound,
                prec = precision as usize
            );
            if let Some(note) = report.note {
                let _ = writeln!(s, "note: {note}");
            }
            s
        }
    };
    Outcome::verdict(true, out)
}

fn simulate(config: &ExperimentConfig, format: Format) -> Outcome {
    let report = match expansion_experiment(config) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e),
    };
    let s = &report.summary;
    let ok = s.cap_sum_violations == 0 && s.consistent_with_bound() != Some(false);
    let mut out = String::new();
    match format {
        Format::Json => {
            out.push_str(&json_line(&report.config));
            out.push_str(&report.to_json_lines());
        }
        Format::Csv | Format::Text => {
            let _ = writeln!(
                out,
                "# seed {} delta {} n {} trials {} restarts {}",
                config.seed, config.delta, config.n, config.trials, config.restarts
            );
            out.push_str(&report.to_csv());
            let _ = writeln!(out, "# min expansion {:.6}, mean {:.6}", s.min_expansion, s.mean_expansion);
            let _ = writeln!(
                out,
                "# d + d' <= delta in {:.4} of descents; d + d' > delta + 1 in {}",
                s.fraction_within_delta, s.cap_sum_violations
            );
            match (s.certified_bound, s.fraction_at_or_above_bound) {
                (Some(b), Some(f)) => {
                    let _ = writeln!(
                        out,
                        "# certified bound {b:.6}: reached in {f:.4} of trials, exceptions {:?}",
                        s.exceptions
                    );
                }
                _ => {
                    let _ = writeln!(out, "# no certified bound for delta {}", config.delta);
                }
            }
        }
    }
    Outcome::verdict(ok, out)
}

#[derive(Serialize)]
struct OracleReport {
    delta: usize,
    n: usize,
    seed: u64,
    numer: u64,
    denom: u64,
    value: f64,
    cut: u64,
    argmin: Vec<usize>,
}

fn oracle(delta: usize, n: usize, seed: u64, format: Format) -> Outcome {
    let graph = match sample_pairing(delta, n, seed) {
        Ok(g) => g,
        Err(e) => return Outcome::usage(e),
    };
    let exact = match brute_force_expansion(&graph) {
        Ok(e) => e,
        // Includes the size guard, whose message points at `simulate`.
        Err(e) => return Outcome::usage(e),
    };
    let report = OracleReport {
        delta,
        n,
        seed,
        numer: *exact.value.numer(),
        denom: *exact.value.denom(),
        value: *exact.value.numer() as f64 / *exact.value.denom() as f64,
        cut: exact.cut,
        argmin: exact.argmin,
    };
    let out = match format {
        Format::Json => json_line(&report),
        Format::Csv => format!(
            "seed,delta,n,numer,denom,value,cut\n{},{},{},{},{},{},{}\n",
            seed, delta, n, report.numer, report.denom, report.value, report.cut
        ),
        Format::Text => format!(
            "# seed {seed}\ndelta {delta}, n {n}: i(G) = {}/{} = {:.6} (cut {} over |S| = {})\nargmin {:?}\n",
            report.numer,
            report.denom,
            report.value,
            report.cut,
            report.argmin.len(),
            report.argmin
        ),
    };
    Outcome::verdict(true, out)
}
