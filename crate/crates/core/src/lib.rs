//! Certified lower bounds on the edge expansion of random `delta`-regular
//! graphs, plus a pairing-model laboratory for checking them empirically.
//!
//! The numerical side ([`combinatorics`], [`side_solver`], [`certifier`],
//! [`asymptotics`]) searches for the smallest `eta` such that every
//! admissible cut of size `(1 - eta) delta n / 4` is exponentially unlikely,
//! and writes the result as a [`certifier::BoundCertificate`] that can be
//! re-checked without repeating the search. [`graphlab`] samples graphs and
//! looks at their cuts directly.
//!
//! ```
//! use expander_cert::certifier::{min_eta, verify_certificate, DEFAULT_MARGIN};
//!
//! let cert = min_eta(6, DEFAULT_MARGIN, 3).unwrap();
//! assert!((cert.eta - 0.648).abs() < 1e-9);
//! assert!(verify_certificate(&cert).passed());
//! ```

pub mod asymptotics;
pub mod certifier;
pub mod cli;
pub mod combinatorics;
pub mod graphlab;
pub(crate) mod real;
pub mod side_solver;

pub use certifier::{min_eta, verify_certificate, BoundCertificate};
pub use graphlab::{sample_pairing, RegularMultigraph};
pub use side_solver::{solve_side, SideSolution};
