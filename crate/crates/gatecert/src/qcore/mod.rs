//! Core linear algebra for one- and two-qubit systems: operators, pure and
//! mixed states, Schmidt decomposition and the magic (Bell) basis.
//!
//! Conventions fixed here and relied on everywhere else:
//! * qubit A is the **left** tensor factor, so `kron(a, b)` acts as A ⊗ B;
//! * the two-qubit computational basis is ordered |00>, |01>, |10>, |11>;
//! * Pauli operators are indexed I, X, Y, Z.

mod magic;
mod operator;
mod random;
mod schmidt;
mod state;

pub use magic::{magic_basis, MagicCoeffs};
pub use operator::Operator;
pub use random::{haar_random_unitary, random_density, random_pure_state};
pub use schmidt::{amplitude_determinant, is_product, schmidt_decompose, SchmidtForm};
pub use state::{DensityOperator, PureState, Subsystem};
