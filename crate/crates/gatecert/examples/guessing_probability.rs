//! Computes the single-copy guessing probability three independent ways and
//! shows where measuring stops being worthwhile.
//!
//! Run with: cargo run --example guessing_probability

use gatecert::certify::{build_protocol, optimal_locc_guessing};
use gatecert::channels::DepolarizingGateChannel;
use gatecert::discrimination::{analytic_guessing, helstrom_numeric, regime};
use gatecert::gates;

fn main() -> gatecert::Result<()> {
    let gate = gates::cnot();
    let protocol = build_protocol(&gate, None)?;

    println!("CNOT, input {:?}-like product state", (0, 0));
    println!("{:>5} {:>5} {:>16} {:>16} {:>16}  regime", "q", "p", "analytic", "helstrom", "exact LOCC");
    for (q, p) in [(0.5, 1.0), (0.5, 0.5), (0.5, 0.0), (0.25, 0.8), (0.9, 0.1), (0.8, 1.0)] {
        let analytic = analytic_guessing(q, p);
        let noiseless = DepolarizingGateChannel::new(gate.clone(), 0.0)?;
        let noisy = DepolarizingGateChannel::new(gate.clone(), p)?;
        let helstrom = helstrom_numeric(
            &noiseless.apply_pure(&protocol.input),
            &noisy.apply_pure(&protocol.input),
            q,
        )?;
        let exact = optimal_locc_guessing(&protocol, q, p)?;
        println!(
            "{q:>5.2} {p:>5.2} {analytic:>16.12} {helstrom:>16.12} {exact:>16.12}  {}",
            regime(q, p)
        );
    }

    println!();
    println!("The q = 1/2, p = 1 entry is the headline value 0.875: one use of");
    println!("the gate suffices to tell \"noise-free\" from \"fully depolarized\"");
    println!("with 7/8 confidence, using only local measurements.");
    Ok(())
}
