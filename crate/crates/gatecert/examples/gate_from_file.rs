//! Loads a gate from the JSON file format and runs the whole pipeline on it.
//! Writes the file itself first, so this doubles as a format reference.
//!
//! Run with: cargo run --example gate_from_file

use gatecert::cli::{cmd_kak, cmd_pguess, load_gate_file};

fn main() -> gatecert::Result<()> {
    // iSWAP, row-major in the |00>, |01>, |10>, |11> ordering; each entry
    // is a [re, im] pair.
    let json = r#"{
  "matrix": [
    [[1, 0], [0, 0], [0, 0], [0, 0]],
    [[0, 0], [0, 0], [0, 1], [0, 0]],
    [[0, 0], [0, 1], [0, 0], [0, 0]],
    [[0, 0], [0, 0], [0, 0], [1, 0]]
  ]
}"#;
    let dir = std::env::temp_dir().join("gatecert-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("iswap.json");
    std::fs::write(&path, json)?;

    let gate = load_gate_file(&path)?;
    println!("loaded {} (unitarity checked at 1e-10)", path.display());

    let report = cmd_pguess(&gate, "iswap-from-file", 0.5, 1.0, None)?;
    print!("{}", report.render_human());
    println!();

    let kak = cmd_kak(&gate, "iswap-from-file")?;
    println!("lambdas: {:?}", kak.decomposition.lambdas);
    println!("reconstruction residual: {:.3e}", kak.reconstruction_residual);
    Ok(())
}
