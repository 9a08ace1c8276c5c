//! Canonical (KAK) decomposition and the product pair behind the protocol:
//! every two-qubit gate maps some product state to a product state, and this
//! example shows how that pair is found through the magic basis.
//!
//! Run with: cargo run --example kak_product_pair

use gatecert::canonical::{find_product_pair, kak_decompose};
use gatecert::gates;
use gatecert::qcore::{haar_random_unitary, PureState};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gatecert::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let random = haar_random_unitary(4, &mut rng);
    let named = [
        ("cnot", gates::cnot()),
        ("iswap", gates::iswap()),
        ("random", random),
    ];
    for (name, gate) in named {
        let kak = kak_decompose(&gate)?;
        let pair = find_product_pair(&gate)?;
        println!("=== {name} ===");
        println!("lambdas        : {:?}", kak.lambdas);
        println!("global phase   : {:.12}", kak.global_phase);
        println!("reconstruction : {:.3e}", kak.residual(&gate));
        println!("input          : {}", pretty(&pair.input));
        println!("output         : {}", pretty(&pair.output));
        println!(
            "Schmidt residuals: input {:.3e}, output {:.3e}",
            pair.input_schmidt_residual(),
            pair.output_schmidt_residual()
        );
        pair.verify(&gate)?;
        println!("pair verified against the gate");
        println!();
    }
    Ok(())
}

fn pretty(state: &PureState) -> String {
    let parts: Vec<String> = (0..state.dim())
        .map(|k| {
            let a = state.amplitude(k);
            format!("{:+.4}{:+.4}i", a.re, a.im)
        })
        .collect();
    format!("[{}]", parts.join(", "))
}
