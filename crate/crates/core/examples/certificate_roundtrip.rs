// Emit a certificate, serialise it, read it back and verify it; then show
// that changing a single parameter is caught.

use expander_cert::certifier::{min_eta, verify_certificate, BoundCertificate, PairRecord, DEFAULT_MARGIN};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cert = min_eta(7, DEFAULT_MARGIN, 3)?;
    let text = cert.to_json_pretty()?;
    println!("{} bytes of JSON for delta {} at eta {}", text.len(), cert.delta, cert.eta);

    let back = BoundCertificate::from_json(&text)?;
    assert_eq!(back, cert);
    let report = verify_certificate(&back);
    println!("{} checks, all passed: {}", report.checks.len(), report.passed());
    assert!(report.passed());

    let mut tampered = back.clone();
    if let Some(PairRecord::Feasible(p)) = tampered.pair_bounds.first_mut() {
        p.side.beta *= 1.01;
    }
    let report = verify_certificate(&tampered);
    for failure in report.failures() {
        println!("rejected: {} ({})", failure.name, failure.detail);
    }
    assert!(!report.passed());
    Ok(())
}

fn main() {
    run_example().expect("round trip failed");
}
