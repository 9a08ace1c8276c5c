//! Single-copy certification of two-qubit gates under depolarizing noise.
//!
//! The crate answers three related questions about a noisy two-qubit gate
//! that acts as the ideal unitary with probability 1 - p and completely
//! depolarizes with probability p:
//!
//! * how well can a single use distinguish the noisy gate from the ideal one
//!   (Helstrom bound, closed form, and the optimal measurement);
//! * how the same optimum is reached with only local measurements, by feeding
//!   in a product state that the gate maps to a product state (found through
//!   the canonical/KAK decomposition of the gate);
//! * how accept/reject counts from repeated runs estimate the noise fraction.
//!
//! Start with [`certify::build_protocol`] and the `examples/` directory; the
//! `gatecert` binary exposes the same flows as subcommands.

pub mod canonical;
pub mod certify;
pub mod channels;
pub mod cli;
pub mod discrimination;
pub mod error;
pub mod gates;
pub mod qcore;

pub use error::{Error, Result};

/// Shared numerical tolerances.
pub mod tol {
    /// Structural checks: unitarity, Hermiticity, normalization.
    pub const STRUCTURAL: f64 = 1e-12;
    /// Derived numerical equalities (closed forms vs. numerics).
    pub const DERIVED: f64 = 1e-10;
    /// Separability decisions (minimum Schmidt coefficient).
    pub const PRODUCT: f64 = 1e-8;
    /// End-to-end reconstruction of a gate from its canonical form.
    pub const RECONSTRUCTION: f64 = 1e-8;
}
