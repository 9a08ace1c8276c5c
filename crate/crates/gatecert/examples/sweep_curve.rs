//! Reproduces the guessing-probability curve for a CNOT at even priors:
//! exact value 1/2 + 3p/8 alongside Monte Carlo estimates. Writes CSV to
//! stdout, ready for plotting.
//!
//! Run with: cargo run --release --example sweep_curve

use gatecert::cli::{cmd_sweep, SweepSpec};
use gatecert::gates;

fn main() -> gatecert::Result<()> {
    let spec = SweepSpec {
        q: 0.5,
        p_start: 0.0,
        p_end: 1.0,
        p_step: 0.1,
        trials: 200_000,
        seed: 1,
    };
    let result = cmd_sweep(&gates::cnot(), &spec, None)?;
    print!("{}", result.to_csv());
    eprintln!();
    eprintln!("# exact column follows 1/2 + 3p/8; mc_est should sit within a");
    eprintln!("# few stderr of it at every p");
    Ok(())
}
