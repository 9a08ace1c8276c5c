//! Named two-qubit gates with pinned matrix conventions.
//!
//! Qubit A (the control where applicable) is the left tensor factor and the
//! basis is ordered |00>, |01>, |10>, |11>. The full matrices are written out
//! in `docs/gates.md`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::qcore::Operator;

/// The built-in gate set accepted by name on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateName {
    Cnot,
    Swap,
    Cz,
    Iswap,
    Identity,
}

impl GateName {
    pub const ALL: [GateName; 5] = [
        GateName::Cnot,
        GateName::Swap,
        GateName::Cz,
        GateName::Iswap,
        GateName::Identity,
    ];

    pub fn operator(self) -> Operator {
        match self {
            GateName::Cnot => cnot(),
            GateName::Swap => swap(),
            GateName::Cz => cz(),
            GateName::Iswap => iswap(),
            GateName::Identity => Operator::identity(4),
        }
    }
}

impl fmt::Display for GateName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            GateName::Cnot => "cnot",
            GateName::Swap => "swap",
            GateName::Cz => "cz",
            GateName::Iswap => "iswap",
            GateName::Identity => "identity",
        };
        f.write_str(name)
    }
}

impl FromStr for GateName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "cnot" => Ok(GateName::Cnot),
            "swap" => Ok(GateName::Swap),
            "cz" => Ok(GateName::Cz),
            "iswap" => Ok(GateName::Iswap),
            "identity" | "id" => Ok(GateName::Identity),
            other => Err(Error::UnknownGate(other.to_string())),
        }
    }
}

fn real_gate(rows: [[f64; 4]; 4]) -> Operator {
    Operator::from_fn(4, |i, j| Complex64::new(rows[i][j], 0.0))
}

/// CNOT with qubit A as control: |10> <-> |11>.
pub fn cnot() -> Operator {
    real_gate([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
    ])
}

/// SWAP: |ab> -> |ba>.
pub fn swap() -> Operator {
    real_gate([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])
}

/// Controlled-Z: diag(1, 1, 1, -1).
pub fn cz() -> Operator {
    real_gate([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
    ])
}

/// iSWAP: |01> -> i|10>, |10> -> i|01>.
pub fn iswap() -> Operator {
    let z = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    Operator::from_row_slice(4, &[
        l, z, z, z,
        z, z, i, z,
        z, i, z, z,
        z, z, z, l,
    ])
}
