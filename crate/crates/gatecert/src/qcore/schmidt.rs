//! Schmidt decomposition of two-qubit pure states.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

use super::PureState;

/// |psi> = mu1 |c>|d> + mu2 |c_perp>|d_perp> with mu1 >= mu2 >= 0.
///
/// The A-side factors are phase-fixed (first significant amplitude real
/// positive); the B-side factors absorb the opposite phases, so
/// [`SchmidtForm::reconstruct`] reproduces the input exactly, not just up to
/// a global phase.
#[derive(Debug, Clone)]
pub struct SchmidtForm {
    pub coeffs: [f64; 2],
    pub a_factors: (PureState, PureState),
    pub b_factors: (PureState, PureState),
}

impl SchmidtForm {
    pub fn min_coeff(&self) -> f64 {
        self.coeffs[1]
    }

    /// Residual of the product condition, 2*mu1*mu2 = 2|det| of the
    /// amplitude matrix. Zero iff the state is a product.
    pub fn product_residual(&self) -> f64 {
        2.0 * self.coeffs[0] * self.coeffs[1]
    }

    pub fn reconstruct(&self) -> PureState {
        let t1 = self.a_factors.0.tensor(&self.b_factors.0);
        let t2 = self.a_factors.1.tensor(&self.b_factors.1);
        let v = t1.vector() * Complex64::new(self.coeffs[0], 0.0)
            + t2.vector() * Complex64::new(self.coeffs[1], 0.0);
        PureState::normalized(v).expect("Schmidt coefficients have unit square sum")
    }
}

/// Schmidt-decomposes a two-qubit state via the 2x2 amplitude matrix
/// Psi[i][j] = psi[2i+j]: an eigendecomposition of Psi^dag Psi yields the
/// B-side directions, and mapping them through Psi yields coefficients and
/// A-side directions.
pub fn schmidt_decompose(psi: &PureState) -> Result<SchmidtForm> {
    if psi.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: psi.dim() });
    }
    let amp = DMatrix::from_fn(2, 2, |i, j| psi.amplitude(2 * i + j));
    let gram = amp.adjoint() * &amp;
    let eig = gram.symmetric_eigen();

    // Right-singular directions, largest singular value first.
    let mut order = [0usize, 1];
    if eig.eigenvalues[0] < eig.eigenvalues[1] {
        order = [1, 0];
    }
    let mut coeffs = [0.0; 2];
    let mut a_parts: Vec<PureState> = Vec::with_capacity(2);
    let mut b_parts: Vec<PureState> = Vec::with_capacity(2);
    for (slot, &k) in order.iter().enumerate() {
        let v: DVector<Complex64> = eig.eigenvectors.column(k).into_owned();
        let image = &amp * &v;
        let sigma = image.norm();
        coeffs[slot] = sigma;
        let a = if sigma > 1e-12 {
            PureState::normalized(image)?
        } else {
            // Rank one up to noise: the image direction is meaningless, so
            // complete orthonormally instead. The coefficient is negligible,
            // so this choice moves any reconstruction by at most 2 sigma.
            // (Only the second slot can land here; the leading coefficient of
            // a normalized state is at least 1/sqrt(2).)
            a_parts[slot - 1].complement()
        };
        let b = PureState::normalized(v.map(|z| z.conj()))?;
        // Transfer the A-side phase onto the B side so each term is unchanged.
        let fixed = a.phase_fixed();
        let phase = fixed.inner(&a);
        let b = PureState::normalized(b.vector() * phase)?;
        a_parts.push(fixed);
        b_parts.push(b);
    }

    Ok(SchmidtForm {
        coeffs,
        a_factors: (a_parts[0].clone(), a_parts[1].clone()),
        b_factors: (b_parts[0].clone(), b_parts[1].clone()),
    })
}

/// True iff the smaller Schmidt coefficient is below `tol`.
pub fn is_product(psi: &PureState, tol: f64) -> Result<bool> {
    Ok(schmidt_decompose(psi)?.min_coeff() < tol)
}

/// Magnitude of the determinant of the 2x2 amplitude matrix; an independent
/// separability witness (vanishes iff the state is a product).
pub fn amplitude_determinant(psi: &PureState) -> f64 {
    let det = psi.amplitude(0) * psi.amplitude(3) - psi.amplitude(1) * psi.amplitude(2);
    det.norm()
}
