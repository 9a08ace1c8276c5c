//! Canonical (KAK) decomposition of two-qubit gates and the constructive
//! search for a product input whose image under the gate is again a product.
//!
//! Every two-qubit unitary factors as (ua (x) ub) * U_d * (va (x) vb) with
//! U_d = sum_j e^{i lambda_j} |Phi_j><Phi_j| diagonal in the Bell basis. A
//! state sum_j alpha_j |Phi_j> is a product iff
//! alpha1^2 - alpha2^2 + alpha3^2 - alpha4^2 = 0, and its image under U_d is
//! a product iff the same holds with alpha_j -> e^{i lambda_j} alpha_j.
//! Solving both conditions at once reduces to finding a real vector
//! orthogonal to three explicit vectors in R^4, which always exists.

mod kak;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcore::{magic_basis, schmidt_decompose, MagicCoeffs, Operator, PureState};
use crate::tol;

pub use kak::kak_decompose;

/// U = e^{i global_phase} (ua (x) ub) * U_d(lambdas) * (va (x) vb).
#[derive(Debug, Clone, Serialize)]
pub struct KakDecomposition {
    pub ua: Operator,
    pub ub: Operator,
    pub va: Operator,
    pub vb: Operator,
    /// Phases of the entangling core, one per Bell vector, each in (-pi, pi].
    pub lambdas: [f64; 4],
    pub global_phase: f64,
}

/// The entangling core sum_j e^{i lambda_j} |Phi_j><Phi_j| in the
/// computational basis.
pub fn entangling_core(lambdas: &[f64; 4]) -> Operator {
    let basis = magic_basis();
    let mut m = Operator::zeros(4);
    for (lambda, phi) in lambdas.iter().zip(basis.iter()) {
        m = &m + &phi.projector().scale(Complex64::from_polar(1.0, *lambda));
    }
    m
}

/// The three orthogonality constraints of the product-pair construction and
/// a solution vector.
#[derive(Debug, Clone, Serialize)]
pub struct SubspaceWitness {
    pub t: [f64; 4],
    pub u_re: [f64; 4],
    pub u_im: [f64; 4],
    /// Nonzero vector orthogonal to t, u_re and u_im, normalized to unit
    /// L1 norm, sign-fixed (first entry above 1e-9 in magnitude positive).
    pub alpha_bar: [f64; 4],
}

impl SubspaceWitness {
    /// The three dot products |t.a|, |u_re.a|, |u_im.a|; all must vanish.
    pub fn orthogonality_residuals(&self) -> [f64; 3] {
        let dot = |u: &[f64; 4]| u.iter().zip(&self.alpha_bar).map(|(x, y)| x * y).sum::<f64>().abs();
        [dot(&self.t), dot(&self.u_re), dot(&self.u_im)]
    }
}

/// Solves the two separability conditions for squared Bell coefficients.
///
/// With alpha_j^2 = abar_j real, the input-side condition is t.abar = 0 and
/// the output-side condition splits into u_re.abar = 0, u_im.abar = 0. Three
/// constraints in R^4 always leave a nonzero solution, found here as the
/// right-singular vector of the smallest singular value.
pub fn product_alpha(lambdas: &[f64; 4]) -> SubspaceWitness {
    let sign = |j: usize| if j.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut t = [0.0; 4];
    let mut u_re = [0.0; 4];
    let mut u_im = [0.0; 4];
    for j in 0..4 {
        t[j] = sign(j);
        u_re[j] = sign(j) * (2.0 * lambdas[j]).cos();
        u_im[j] = sign(j) * (2.0 * lambdas[j]).sin();
    }

    // Padded square system so the full right-singular basis is available.
    let rows = [t, u_re, u_im, [0.0; 4]];
    let m = nalgebra::DMatrix::<f64>::from_fn(4, 4, |i, j| rows[i][j]);
    let svd = m.svd(true, true);
    let v_t = svd.v_t.as_ref().expect("SVD of a real 4x4 matrix yields V^T");
    let mut min_idx = 0;
    for (i, sv) in svd.singular_values.iter().enumerate() {
        if *sv < svd.singular_values[min_idx] {
            min_idx = i;
        }
    }
    let mut alpha_bar = [0.0; 4];
    for j in 0..4 {
        alpha_bar[j] = v_t[(min_idx, j)];
    }
    if let Some(first) = alpha_bar.iter().find(|x| x.abs() > 1e-9) {
        if *first < 0.0 {
            for x in &mut alpha_bar {
                *x = -*x;
            }
        }
    }
    let l1: f64 = alpha_bar.iter().map(|x| x.abs()).sum();
    for x in &mut alpha_bar {
        *x /= l1;
    }
    SubspaceWitness { t, u_re, u_im, alpha_bar }
}

/// Takes square roots of the witness entries: alpha_j = sqrt(abar_j) for
/// nonnegative entries and i*sqrt(-abar_j) for negative ones, so that
/// alpha_j^2 = abar_j exactly and sum |alpha_j|^2 = 1.
pub fn alpha_to_state(witness: &SubspaceWitness) -> MagicCoeffs {
    let mut alpha = [Complex64::new(0.0, 0.0); 4];
    for (a, &x) in alpha.iter_mut().zip(&witness.alpha_bar) {
        *a = if x >= 0.0 {
            Complex64::new(x.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-x).sqrt())
        };
    }
    MagicCoeffs { alpha }
}

/// Residuals of the separability conditions for the state itself and for its
/// image under the entangling core.
pub fn product_condition_residuals(alpha: &MagicCoeffs, lambdas: &[f64; 4]) -> (f64, f64) {
    let rotated = MagicCoeffs {
        alpha: std::array::from_fn(|j| alpha.alpha[j] * Complex64::from_polar(1.0, lambdas[j])),
    };
    (alpha.product_residual(), rotated.product_residual())
}

/// A product input state and its (also product) image under a gate.
#[derive(Debug, Clone, Serialize)]
pub struct ProductPair {
    pub input: PureState,
    pub output: PureState,
    pub input_factors: (PureState, PureState),
    pub output_factors: (PureState, PureState),
}

impl ProductPair {
    /// Builds a pair from an explicitly chosen product input.
    pub fn from_input(gate: &Operator, input: &PureState) -> Result<Self> {
        gate.expect_unitary(tol::STRUCTURAL)?;
        let in_form = schmidt_decompose(input)?;
        if in_form.min_coeff() >= tol::PRODUCT {
            return Err(Error::NotProduct { min_schmidt: in_form.min_coeff() });
        }
        let output = input.apply(gate)?;
        let out_form = schmidt_decompose(&output)?;
        if out_form.min_coeff() >= tol::PRODUCT {
            return Err(Error::ImageNotProduct { min_schmidt: out_form.min_coeff() });
        }
        Ok(Self {
            input: input.clone(),
            output,
            input_factors: (in_form.a_factors.0, in_form.b_factors.0),
            output_factors: (out_form.a_factors.0, out_form.b_factors.0),
        })
    }

    /// Minimum Schmidt coefficient of the input (0 for an exact product).
    pub fn input_schmidt_residual(&self) -> f64 {
        schmidt_decompose(&self.input).map(|f| f.min_coeff()).unwrap_or(f64::NAN)
    }

    pub fn output_schmidt_residual(&self) -> f64 {
        schmidt_decompose(&self.output).map(|f| f.min_coeff()).unwrap_or(f64::NAN)
    }

    /// Checks the pair against a gate: image matches up to global phase and
    /// both sides are products.
    pub fn verify(&self, gate: &Operator) -> Result<()> {
        let image = self.input.apply(gate)?;
        let mismatch = image.max_abs_diff_up_to_phase(&self.output);
        if mismatch > tol::RECONSTRUCTION {
            return Err(Error::InconsistentPair {
                reason: format!("gate.input differs from output by {mismatch:.3e}"),
            });
        }
        for (label, residual, factors, state) in [
            ("input", self.input_schmidt_residual(), &self.input_factors, &self.input),
            ("output", self.output_schmidt_residual(), &self.output_factors, &self.output),
        ] {
            // Fail closed on NaN, which < would silently accept.
            if residual.is_nan() || residual >= tol::PRODUCT {
                return Err(Error::InconsistentPair {
                    reason: format!("{label} Schmidt residual {residual:.3e}"),
                });
            }
            let tensor = factors.0.tensor(&factors.1);
            let diff = tensor.max_abs_diff_up_to_phase(state);
            if diff > tol::RECONSTRUCTION {
                return Err(Error::InconsistentPair {
                    reason: format!("{label} factors do not reproduce the state ({diff:.3e})"),
                });
            }
        }
        Ok(())
    }
}

/// Runs the full constructive pipeline: KAK, witness, Bell-coefficient state,
/// then undo the right local layer. Verified before returning; failure is an
/// internal error (existence is guaranteed for every unitary).
pub fn find_product_pair(gate: &Operator) -> Result<ProductPair> {
    let kak = kak_decompose(gate)?;
    let witness = product_alpha(&kak.lambdas);
    let coeffs = alpha_to_state(&witness);
    let ab = coeffs.to_state().map_err(|e| Error::Internal(e.to_string()))?;
    let undo_right = kak.va.dagger().kron(&kak.vb.dagger());
    let input = ab.apply(&undo_right)?;
    let pair = ProductPair::from_input(gate, &input).map_err(|e| match e {
        Error::NotProduct { min_schmidt } | Error::ImageNotProduct { min_schmidt } => {
            Error::Internal(format!(
                "constructed pair failed separability (min Schmidt {min_schmidt:.3e})"
            ))
        }
        other => other,
    })?;
    pair.verify(gate).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(pair)
}
