//! KAK extraction: magic-basis transform, joint diagonalization of the real
//! and imaginary parts of U^T U, and Kronecker factorization of the local
//! layers.
//!
//! In the phased magic basis (columns Phi1, i*Phi2, Phi3, i*Phi4) a unitary
//! is of the form (A (x) B) * U_d * (C (x) D) iff its matrix factors as
//! O1 * D * O2 with O1, O2 real orthogonal and D = diag(e^{i lambda_j}); the
//! phases on Phi2/Phi4 are exactly the ones that make local unitaries real
//! orthogonal in this basis. Projectors |Phi_j><Phi_j| are unchanged by the
//! column phases, so U_d is diagonal in the plain Bell basis as well.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::Operator;
use crate::tol;

use super::{entangling_core, KakDecomposition};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Column matrix of the phased magic basis.
fn magic_transform() -> DMatrix<Complex64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = c(0.0, 0.0);
    DMatrix::from_row_slice(4, 4, &[
        c(s, 0.0), c(0.0, s),  z,          z,
        z,         z,          c(s, 0.0),  c(0.0, s),
        z,         z,          c(-s, 0.0), c(0.0, s),
        c(s, 0.0), c(0.0, -s), z,          z,
    ])
}

/// Mixing angles tried in turn when jointly diagonalizing Re(S) and Im(S).
/// Any angle works unless it is perpendicular to some eigenvalue chord of S
/// on the unit circle; the residual check below detects that and moves on.
const MIX_ANGLES: [f64; 6] = [std::f64::consts::FRAC_PI_4, 0.3, 1.1, 1.9, 2.6, 0.05];

fn offdiag_max(m: &DMatrix<f64>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if i != j {
                worst = worst.max(m[(i, j)].abs());
            }
        }
    }
    worst
}

/// Finds a real orthogonal P with P^T A P and P^T B P both diagonal, for
/// commuting symmetric A, B with A^2 + B^2 = I.
fn joint_diagonalize(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let mut best: Option<(f64, DMatrix<f64>)> = None;
    for angle in MIX_ANGLES {
        let h = a * angle.cos() + b * angle.sin();
        let h = (&h + h.transpose()) * 0.5;
        let p = h.symmetric_eigen().eigenvectors;
        let res_a = offdiag_max(&(p.transpose() * a * &p));
        let res_b = offdiag_max(&(p.transpose() * b * &p));
        let res = res_a.max(res_b);
        if res < 1e-11 {
            return Ok(p);
        }
        if best.as_ref().is_none_or(|(r, _)| res < *r) {
            best = Some((res, p));
        }
    }
    // Every angle was near-degenerate; accept the best candidate if it is
    // still usable, otherwise report the failure.
    match best {
        Some((res, p)) if res < 1e-9 => Ok(p),
        Some((res, _)) => Err(Error::Internal(format!(
            "joint diagonalization failed (best off-diagonal residual {res:.3e})"
        ))),
        None => unreachable!("MIX_ANGLES is non-empty"),
    }
}

/// Splits a 4x4 unitary that equals e^{i phase} (A (x) B) into SU(2) factors
/// and the phase. Works by reshuffling into the rank-1 matrix
/// R[(2i+k),(2j+l)] = L[(2i+j),(2k+l)] = A[i,k] * B[j,l].
pub(super) fn factor_local(l: &Operator) -> Result<(Operator, Operator, f64)> {
    let m = l.matrix();
    let r = DMatrix::<Complex64>::from_fn(4, 4, |row, col| {
        let (i, k) = (row / 2, row % 2);
        let (j, q) = (col / 2, col % 2);
        m[(2 * i + j, 2 * k + q)]
    });

    // Pivot on the largest entry: for unitary factors it has magnitude
    // >= 1/2, so the divisions below are well conditioned.
    let mut pivot = (0usize, 0usize);
    let mut pivot_abs = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if r[(i, j)].norm() > pivot_abs {
                pivot_abs = r[(i, j)].norm();
                pivot = (i, j);
            }
        }
    }
    if pivot_abs < 0.25 {
        return Err(Error::Internal("local factorization pivot too small".into()));
    }
    let a_flat: Vec<Complex64> = (0..4).map(|i| r[(i, pivot.1)]).collect();
    let b_flat: Vec<Complex64> = (0..4).map(|j| r[(pivot.0, j)] / r[pivot]).collect();

    let a = su2_normalize(Operator::from_row_slice(2, &a_flat))?;
    let b = su2_normalize(Operator::from_row_slice(2, &b_flat))?;

    // Residual phase from the pivot of the original matrix.
    let kron = a.kron(&b);
    let mut best = (0usize, 0usize);
    let mut best_abs = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if m[(i, j)].norm() > best_abs {
                best_abs = m[(i, j)].norm();
                best = (i, j);
            }
        }
    }
    let phase = (m[best] / kron.matrix()[best]).arg();
    let recon = kron.scale(Complex64::from_polar(1.0, phase));
    let residual = recon.max_abs_diff(l);
    if residual > 1e-9 {
        return Err(Error::Internal(format!(
            "local layer is not a tensor product (residual {residual:.3e})"
        )));
    }
    Ok((a, b, phase))
}

/// Projects a near-unitary 2x2 matrix (possibly scaled) onto SU(2).
fn su2_normalize(m: Operator) -> Result<Operator> {
    let scale = (m.matrix().norm_squared() / 2.0).sqrt();
    if scale < 1e-12 {
        return Err(Error::Internal("degenerate local factor".into()));
    }
    let mut x = m.matrix() / c(scale, 0.0);
    // Two Newton polar steps, X <- (X + X^{-dag})/2, squash the remaining
    // non-unitarity quadratically.
    for _ in 0..2 {
        let det = x[(0, 0)] * x[(1, 1)] - x[(0, 1)] * x[(1, 0)];
        if det.norm() < 1e-12 {
            return Err(Error::Internal("singular local factor".into()));
        }
        let inv = DMatrix::from_row_slice(2, 2, &[
            x[(1, 1)] / det, -x[(0, 1)] / det,
            -x[(1, 0)] / det, x[(0, 0)] / det,
        ]);
        x = (&x + inv.adjoint()) * c(0.5, 0.0);
    }
    let det = x[(0, 0)] * x[(1, 1)] - x[(0, 1)] * x[(1, 0)];
    let root = det.sqrt();
    let u = Operator::new(x / root);
    u.expect_unitary(1e-10)
        .map_err(|_| Error::Internal("local factor failed to unitarize".into()))?;
    Ok(u)
}

pub fn kak_decompose(gate: &Operator) -> Result<KakDecomposition> {
    if gate.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: gate.dim() });
    }
    gate.expect_unitary(tol::STRUCTURAL)?;

    // Strip the global phase so det = 1, then move to the magic basis.
    let det = gate.matrix().determinant();
    let phase0 = det.arg() / 4.0;
    let q = magic_transform();
    let m = q.adjoint() * (gate.matrix() * Complex64::from_polar(1.0, -phase0)) * &q;

    // S = M^T M is complex symmetric unitary; its real and imaginary parts
    // commute and are simultaneously diagonalized by a real orthogonal P.
    let s = m.transpose() * &m;
    let a = s.map(|z| z.re);
    let b = s.map(|z| z.im);
    let mut p = joint_diagonalize(&a, &b)?;
    if p.determinant() < 0.0 {
        for i in 0..4 {
            p[(i, 0)] = -p[(i, 0)];
        }
    }

    // Eigenvalues e_j = e^{2 i lambda_j} of S, read off the diagonal.
    let da = p.transpose() * &a * &p;
    let db = p.transpose() * &b * &p;
    let mut lambdas = [0.0f64; 4];
    for j in 0..4 {
        let e = c(da[(j, j)], db[(j, j)]);
        if (e.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::Internal(format!(
                "eigenvalue of M^T M off the unit circle (|e| = {})",
                e.norm()
            )));
        }
        lambdas[j] = e.arg() / 2.0;
    }
    // det D = prod e^{i lambda_j} is +-1 (det S = 1); flip one branch by pi
    // if needed so that D, and hence O1 below, has determinant +1.
    let prod_re: f64 = lambdas.iter().copied().sum::<f64>().cos();
    if prod_re < 0.0 {
        lambdas[0] += std::f64::consts::PI;
        if lambdas[0] > std::f64::consts::PI {
            lambdas[0] -= 2.0 * std::f64::consts::PI;
        }
    }

    // M = O1 D O2 with O2 = P^T and O1 = M P D^{-1}; O1 is real orthogonal
    // because O1^T O1 = D^{-1} (P^T S P) D^{-1} = I together with unitarity.
    let p_c = p.map(|x| c(x, 0.0));
    let d_inv = DMatrix::from_fn(4, 4, |i, j| {
        if i == j {
            Complex64::from_polar(1.0, -lambdas[i])
        } else {
            c(0.0, 0.0)
        }
    });
    let o1 = &m * &p_c * d_inv;
    let max_im = o1.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if max_im > 1e-9 {
        return Err(Error::Internal(format!(
            "left orthogonal factor has imaginary residue {max_im:.3e}"
        )));
    }

    // Back to the computational basis and into local factors.
    let l1 = Operator::new(&q * o1 * q.adjoint());
    let l2 = Operator::new(&q * p_c.transpose() * q.adjoint());
    let (ua, ub, phase1) = factor_local(&l1)?;
    let (va, vb, phase2) = factor_local(&l2)?;

    let mut global_phase = phase0 + phase1 + phase2;
    while global_phase > std::f64::consts::PI {
        global_phase -= 2.0 * std::f64::consts::PI;
    }
    while global_phase <= -std::f64::consts::PI {
        global_phase += 2.0 * std::f64::consts::PI;
    }

    let kak = KakDecomposition { ua, ub, va, vb, lambdas, global_phase };
    let residual = kak.residual(gate);
    if residual > tol::RECONSTRUCTION {
        return Err(Error::Internal(format!(
            "KAK reconstruction residual {residual:.3e} on unitary input"
        )));
    }
    Ok(kak)
}

impl KakDecomposition {
    /// e^{i phase} (ua (x) ub) U_d (va (x) vb): equals the source gate.
    pub fn reconstruct(&self) -> Operator {
        let left = self.ua.kron(&self.ub);
        let right = self.va.kron(&self.vb);
        let core = entangling_core(&self.lambdas);
        (&(&left * &core) * &right).scale(Complex64::from_polar(1.0, self.global_phase))
    }

    /// Max-entry deviation of the reconstruction from `gate`.
    pub fn residual(&self, gate: &Operator) -> f64 {
        self.reconstruct().max_abs_diff(gate)
    }
}
