//! Recovers the depolarizing fraction from accept statistics alone: simulate
//! runs where the noisy channel always acts (q = 1) and invert the accept
//! rate, p_est = (4/3)(1 - accept rate).
//!
//! Run with: cargo run --release --example estimate_noise

use gatecert::certify::{build_protocol, estimate_noise, run_certification, CertificationConfig};
use gatecert::gates;

fn main() -> gatecert::Result<()> {
    let protocol = build_protocol(&gates::cnot(), None)?;
    println!("{:>7} {:>12} {:>12} {:>9}", "p_true", "p_est", "stderr", "in range");
    for (i, p_true) in [0.0, 0.1, 0.3, 0.5, 0.9, 1.0].into_iter().enumerate() {
        let config = CertificationConfig::new(1.0, p_true, 100_000, 40 + i as u64)?;
        let report = run_certification(&protocol, &config)?;
        let est = estimate_noise(&report.counts_noisy, &protocol)?;
        println!(
            "{p_true:>7.2} {:>12.6} {:>12.6} {:>9}",
            est.p_est, est.stderr, est.in_range
        );
    }
    println!();
    println!("At p_true = 0 every trial accepts, so the estimate is exactly 0;");
    println!("elsewhere the error is binomial, shrinking as 1/sqrt(trials).");
    Ok(())
}
