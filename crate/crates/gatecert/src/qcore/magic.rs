//! The Bell ("magic") basis and coefficients of two-qubit states in it.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};

use super::PureState;

/// The four real Bell vectors, in the fixed order
/// Phi1 = (|00>+|11>)/sqrt2, Phi2 = (|00>-|11>)/sqrt2,
/// Phi3 = (|01>-|10>)/sqrt2, Phi4 = (|01>+|10>)/sqrt2.
pub fn magic_basis() -> [PureState; 4] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    let h = Complex64::new(s, 0.0);
    let phi = |a, b, c, d| PureState::from_slice(&[a, b, c, d]).expect("Bell vectors are normalized");
    [
        phi(h, z, z, h),
        phi(h, z, z, -h),
        phi(z, h, -h, z),
        phi(z, h, h, z),
    ]
}

/// Coefficients alpha_j = <Phi_j|psi> of a state in the Bell basis.
#[derive(Debug, Clone, PartialEq)]
pub struct MagicCoeffs {
    pub alpha: [Complex64; 4],
}

impl MagicCoeffs {
    /// Projects a normalized two-qubit state onto the Bell basis.
    pub fn from_state(psi: &PureState) -> Result<Self> {
        if psi.dim() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, got: psi.dim() });
        }
        let basis = magic_basis();
        let mut alpha = [Complex64::new(0.0, 0.0); 4];
        for (a, phi) in alpha.iter_mut().zip(basis.iter()) {
            *a = phi.inner(psi);
        }
        Ok(Self { alpha })
    }

    /// Rebuilds sum_j alpha_j |Phi_j>.
    pub fn to_state(&self) -> Result<PureState> {
        let basis = magic_basis();
        let mut v = DVector::zeros(4);
        for (a, phi) in self.alpha.iter().zip(basis.iter()) {
            v += phi.vector() * *a;
        }
        PureState::new(v)
    }

    /// |alpha1^2 - alpha2^2 + alpha3^2 - alpha4^2|: zero iff the state is a
    /// product (equals twice the amplitude-matrix determinant magnitude).
    pub fn product_residual(&self) -> f64 {
        let [a1, a2, a3, a4] = self.alpha;
        (a1 * a1 - a2 * a2 + a3 * a3 - a4 * a4).norm()
    }
}
