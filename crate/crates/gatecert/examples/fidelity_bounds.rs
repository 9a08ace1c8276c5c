//! Channel-level consistency checks: the 16-term Pauli twirl depolarizes
//! completely, the Choi-based process fidelity of a depolarized CNOT follows
//! its closed form, and two truth-table fidelities bracket it.
//!
//! Run with: cargo run --example fidelity_bounds

use gatecert::channels::{
    fidelity_bounds, process_fidelity, truth_table_fidelity, twirl_depolarize,
    DepolarizingGateChannel, TruthTableBasis,
};
use gatecert::gates;
use gatecert::qcore::random_density;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gatecert::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let rho = random_density(4, &mut rng);
        let twirled = twirl_depolarize(&rho);
        let dev = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .map(|(i, j)| {
                let expected = if i == j { 0.25 } else { 0.0 };
                (twirled.operator().matrix()[(i, j)] - expected).norm()
            })
            .fold(0.0, f64::max);
        worst = worst.max(dev);
    }
    println!("Pauli twirl vs I/4, worst entry deviation over 50 states: {worst:.3e}");
    println!();

    let reference = gates::cnot();
    let ideal = DepolarizingGateChannel::new(reference.clone(), 0.0)?.choi();
    println!("{:>5} {:>12} {:>12} {:>22}", "p", "closed form", "tr[chi0 chi]", "truth-table bounds");
    for k in 0..=5 {
        let p = 0.2 * k as f64;
        let ch = DepolarizingGateChannel::new(reference.clone(), p)?;
        let f = process_fidelity(&ideal, &ch.choi())?;
        let f_zz = truth_table_fidelity(&ch, TruthTableBasis::Zz, &reference)?;
        let f_xx = truth_table_fidelity(&ch, TruthTableBasis::Xx, &reference)?;
        let (lo, hi) = fidelity_bounds(f_zz, f_xx);
        let closed = (1.0 - p) + p / 16.0;
        println!("{p:>5.1} {closed:>12.6} {f:>12.6}       [{lo:.6}, {hi:.6}]");
    }
    println!();

    let (lo, hi) = fidelity_bounds(0.96, 0.96);
    println!("measured truth-table fidelities (0.96, 0.96) imply F in [{lo:.3}, {hi:.3}]");
    Ok(())
}
