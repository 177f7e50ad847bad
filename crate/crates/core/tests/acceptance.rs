//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use compcount::verify::{self, CheckResult, VerifyOptions};
use compcount::Kernels;

struct Line {
    id: u32,
    title: &'static str,
    ok: bool,
    summary: String,
}

fn timed(limit: Option<Duration>, checks: impl FnOnce() -> Vec<CheckResult>) -> (bool, String) {
    let start = Instant::now();
    let results = checks();
    let elapsed = start.elapsed();
    let mut ok = results.iter().all(CheckResult::passed);
    let mut parts: Vec<String> = results
        .iter()
        .map(|r| format!("{} {}/{} failed", r.name, r.failures, r.cases_run))
        .collect();
    for r in &results {
        parts.extend(r.detail.iter().take(3).cloned());
    }
    if let Some(limit) = limit {
        if elapsed > limit {
            ok = false;
            parts.push(format!("over time limit {limit:?}"));
        }
    }
    parts.push(format!("{:.2}s", elapsed.as_secs_f64()));
    (ok, parts.join("; "))
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

/// A mutated run must fail every listed check.
fn must_fail(kernels: Kernels, label: &str, checks: &[fn(&VerifyOptions) -> CheckResult]) -> (bool, String) {
    let opts = VerifyOptions {
        kernels,
        ..VerifyOptions::default()
    };
    let mut ok = true;
    let mut parts = Vec::new();
    for check in checks {
        let r = check(&opts);
        ok &= !r.passed();
        parts.push(format!("{label}: {} {}/{} failed", r.name, r.failures, r.cases_run));
    }
    (ok, parts.join("; "))
}

fn main() -> ExitCode {
    let o = VerifyOptions::default();
    let mut lines = Vec::new();
    let mut run = |id, title, (ok, summary): (bool, String)| {
        let line = Line { id, title, ok, summary };
        println!(
            "{} criterion {:>2} {}: {}",
            if line.ok { "PASS" } else { "FAIL" },
            line.id,
            line.title,
            line.summary
        );
        lines.push(line);
    };

    run(1, "R-family oracle equivalence", timed(secs(10), || vec![verify::r_family(&o)]));
    run(2, "A-family identity vs enumeration", timed(secs(120), || vec![verify::a_family(&o)]));
    run(3, "B-family identity vs enumeration", timed(secs(120), || vec![verify::b_family(&o)]));
    run(
        4,
        "convolution identities",
        timed(secs(60), || {
            vec![verify::convolution_exhaustive_k3(&o), verify::convolution_random_k4(&o)]
        }),
    );
    run(5, "Lambert partition of binomials", timed(None, || vec![verify::lambert_partition(&o)]));
    run(6, "constraint polynomial structure", timed(None, || vec![verify::polynomial_structure(&o)]));
    run(7, "Euler factor identities", timed(None, || vec![verify::euler_factor_identities(&o)]));
    run(8, "constant stability", timed(secs(30), || vec![verify::constant_stability(&o)]));
    run(9, "main-term accuracy", timed(secs(120), || vec![verify::main_term_accuracy(&o)]));
    run(10, "quasi-polynomial differences", timed(None, || vec![verify::quasipolynomial(&o)]));
    run(11, "local factor bounds", timed(None, || vec![verify::local_factor_bounds(&o)]));

    let (lambda_ok, lambda_msg) = must_fail(
        Kernels::flipped_lambda(),
        "flipped lambda",
        &[verify::a_family, verify::convolution_exhaustive_k3, verify::convolution_random_k4],
    );
    let (psi_ok, psi_msg) = must_fail(
        Kernels::flipped_psi(),
        "flipped psi",
        &[verify::b_family, verify::convolution_exhaustive_k3, verify::convolution_random_k4],
    );
    run(12, "mutation sanity", (lambda_ok && psi_ok, format!("{lambda_msg}; {psi_msg}")));

    let failed: Vec<u32> = lines.iter().filter(|l| !l.ok).map(|l| l.id).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", lines.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
