#[allow(dead_code)]
mod eta_table {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/eta_table.rs"));
}

#[test]
fn eta_table_runs() {
    eta_table::run_example().expect("eta_table example should run");
}

#[allow(dead_code)]
mod bound_report {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/bound_report.rs"));
}

#[test]
fn bound_report_runs() {
    bound_report::run_example().expect("bound_report example should run");
}

#[allow(dead_code)]
mod baseline {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/baseline.rs"));
}

#[test]
fn baseline_runs() {
    baseline::run_example().expect("baseline example should run");
}

#[allow(dead_code)]
mod certificate_roundtrip {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/certificate_roundtrip.rs"));
}

#[test]
fn certificate_roundtrip_runs() {
    certificate_roundtrip::run_example().expect("certificate_roundtrip example should run");
}

#[allow(dead_code)]
mod asymptotic_trend {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/asymptotic_trend.rs"));
}

#[test]
fn asymptotic_trend_runs() {
    asymptotic_trend::run_example().expect("asymptotic_trend example should run");
}

#[allow(dead_code)]
mod pairing_model {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/pairing_model.rs"));
}

#[test]
fn pairing_model_runs() {
    pairing_model::run_example().expect("pairing_model example should run");
}

#[allow(dead_code)]
mod local_descent {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/local_descent.rs"));
}

#[test]
fn local_descent_runs() {
    local_descent::run_example().expect("local_descent example should run");
}

#[allow(dead_code)]
mod exact_expansion {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/exact_expansion.rs"));
}

#[test]
fn exact_expansion_runs() {
    exact_expansion::run_example().expect("exact_expansion example should run");
}

#[allow(dead_code)]
mod simulate {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/simulate.rs"));
}

#[test]
fn simulate_runs() {
    simulate::run_example().expect("simulate example should run");
}
