//! Checks that the local protocol is globally optimal: wherever measuring
//! helps at all, the product-state protocol attains the Helstrom bound, for
//! any two-qubit gate. Also shows the perfect discrimination of the optimal
//! POVM's normalized states.
//!
//! Run with: cargo run --release --example locc_optimality

use gatecert::certify::{build_protocol, verify_locc_optimality, verify_perfect_povm_discrimination};
use gatecert::gates;
use gatecert::qcore::haar_random_unitary;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gatecert::Result<()> {
    let grid: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();

    println!("max |exact LOCC - analytic| over an 11x11 (q, p) grid");
    for (name, gate) in [("cnot", gates::cnot()), ("swap", gates::swap()), ("cz", gates::cz())] {
        let dev = verify_locc_optimality(&gate, &grid, &grid)?;
        println!("  {name:<6} {dev:.3e}");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut worst: f64 = 0.0;
    for _ in 0..25 {
        let gate = haar_random_unitary(4, &mut rng);
        worst = worst.max(verify_locc_optimality(&gate, &grid, &grid)?);
    }
    println!("  25 Haar-random gates, worst deviation: {worst:.3e}");

    println!();
    println!("POVM discrimination errors (should both vanish):");
    let protocol = build_protocol(&gates::cnot(), None)?;
    let (err0, err1) = verify_perfect_povm_discrimination(&protocol)?;
    println!("  P(reject | ideal-image state) = {err0:.3e}");
    println!("  P(accept | complement state)  = {err1:.3e}");
    Ok(())
}
