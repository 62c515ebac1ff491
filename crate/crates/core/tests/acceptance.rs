//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use mfx_core::selftest::{catalog_checks, run_criterion, SelftestOptions, CRITERIA};

fn main() -> ExitCode {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let opts = SelftestOptions { data_dir: data.join("MANIFEST").exists().then_some(data), ..Default::default() };
    let mut all_ok = true;
    for (k, title) in CRITERIA {
        let start = Instant::now();
        let checks = run_criterion(k, &opts);
        let failed: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
        let status = if failed.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {k:>2} {status} {title}: {} checks, {} failed ({:.1}s)",
            checks.len(),
            failed.len(),
            start.elapsed().as_secs_f64()
        );
        for c in failed {
            println!("    {c}");
        }
        all_ok &= status == "PASS";
    }
    let cat = catalog_checks(&opts);
    let failed: Vec<_> = cat.iter().filter(|c| !c.pass).collect();
    println!("catalog self-checks {}: {} checks", if failed.is_empty() { "PASS" } else { "FAIL" }, cat.len());
    for c in &failed {
        println!("    {c}");
    }
    all_ok &= failed.is_empty();
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
