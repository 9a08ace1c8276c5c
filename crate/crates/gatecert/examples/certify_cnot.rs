//! End-to-end certification of a CNOT: build the local protocol, simulate
//! device uses under an unknown-channel prior, and compare the estimate
//! against the exact value.
//!
//! Run with: cargo run --release --example certify_cnot

use gatecert::certify::{build_protocol, exact_locc_guessing, run_certification, CertificationConfig};
use gatecert::gates;

fn main() -> gatecert::Result<()> {
    let gate = gates::cnot();
    let protocol = build_protocol(&gate, None)?;

    println!("input state amplitudes: {:?}", amplitudes(&protocol.input));
    println!(
        "Alice measures {{{:?}, {:?}}}, Bob measures {{{:?}, {:?}}}",
        amplitudes(&protocol.alice_basis.0),
        amplitudes(&protocol.alice_basis.1),
        amplitudes(&protocol.bob_basis.0),
        amplitudes(&protocol.bob_basis.1),
    );
    println!("accept on joint outcome {:?}", protocol.accept_outcome);
    println!();

    let (q, p) = (0.5, 1.0);
    let config = CertificationConfig::new(q, p, 1_000_000, 7)?;
    let report = run_certification(&protocol, &config)?;
    let exact = exact_locc_guessing(&protocol, q, p)?;

    println!("q = {q}, p = {p}, {} trials, seed {}", config.trials, config.seed);
    println!("counts | noiseless: {:?}", report.counts_noiseless);
    println!("counts | noisy:     {:?}", report.counts_noisy);
    println!("p_guess_est = {:.6} +- {:.6}", report.p_guess_est, report.p_guess_stderr);
    println!("exact       = {exact:.6}");
    println!("p_est       = {:.6} +- {:.6} (true p = {p})", report.p_est, report.p_est_stderr);
    Ok(())
}

fn amplitudes(state: &gatecert::qcore::PureState) -> Vec<(f64, f64)> {
    (0..state.dim()).map(|k| (state.amplitude(k).re, state.amplitude(k).im)).collect()
}
