//! Complex matrices with the small set of validations this crate needs.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A complex square matrix acting on a 2- or 4-dimensional Hilbert space.
///
/// Dereferences to [`nalgebra::DMatrix`] for read access; construction and
/// the quantum-specific checks live here.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    m: DMatrix<Complex64>,
}

impl Operator {
    pub fn new(m: DMatrix<Complex64>) -> Self {
        assert_eq!(m.nrows(), m.ncols(), "operator must be square");
        Self { m }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(DMatrix::identity(dim, dim))
    }

    /// Builds from a row-major slice of `dim * dim` entries.
    pub fn from_row_slice(dim: usize, entries: &[Complex64]) -> Self {
        Self::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        Self::new(DMatrix::from_fn(dim, dim, f))
    }

    /// Pauli operator by index: 0 = I, 1 = X, 2 = Y, 3 = Z.
    pub fn pauli(idx: usize) -> Self {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let entries = match idx {
            0 => [l, o, o, l],
            1 => [o, l, l, o],
            2 => [o, -i, i, o],
            3 => [l, o, o, -l],
            _ => panic!("Pauli index must be 0..=3"),
        };
        Self::from_row_slice(2, &entries)
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    /// Kronecker product; `self` is the left (A-side) factor.
    pub fn kron(&self, other: &Operator) -> Operator {
        Operator::new(self.m.kronecker(&other.m))
    }

    pub fn dagger(&self) -> Operator {
        Operator::new(self.m.adjoint())
    }

    pub fn scale(&self, z: Complex64) -> Operator {
        Operator::new(&self.m * z)
    }

    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        (&self.m - &other.m).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn hermitian_deviation(&self) -> f64 {
        self.max_abs_diff(&self.dagger())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    pub fn unitary_deviation(&self) -> f64 {
        let gram = self.m.adjoint() * &self.m;
        let eye = DMatrix::<Complex64>::identity(self.dim(), self.dim());
        (gram - eye).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitary_deviation() <= tol
    }

    pub fn expect_unitary(&self, tol: f64) -> Result<()> {
        let deviation = self.unitary_deviation();
        if deviation <= tol {
            Ok(())
        } else {
            Err(Error::NotUnitary { deviation })
        }
    }

    /// Eigenvalues of a Hermitian operator, ascending.
    ///
    /// The matrix is symmetrized as (H + H^dag)/2 before the solve so that
    /// roundoff in the input cannot leak imaginary parts into the spectrum.
    pub fn hermitian_eigenvalues(&self, tol: f64) -> Result<Vec<f64>> {
        let deviation = self.hermitian_deviation();
        if deviation > tol {
            return Err(Error::NotHermitian { deviation });
        }
        let h = (&self.m + self.m.adjoint()).scale(0.5);
        let mut eigs: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
        eigs.sort_by(|a, b| a.total_cmp(b));
        Ok(eigs)
    }

    /// Trace norm ||H||_1 = sum of |eigenvalues| of a Hermitian operator.
    pub fn trace_norm(&self, tol: f64) -> Result<f64> {
        Ok(self.hermitian_eigenvalues(tol)?.iter().map(|e| e.abs()).sum())
    }

    /// True when every eigenvalue is >= -tol (Hermitian input required).
    pub fn is_psd(&self, herm_tol: f64, eig_tol: f64) -> Result<bool> {
        Ok(self.hermitian_eigenvalues(herm_tol)?.iter().all(|&e| e >= -eig_tol))
    }
}

impl std::ops::Deref for Operator {
    type Target = DMatrix<Complex64>;

    fn deref(&self) -> &Self::Target {
        &self.m
    }
}

impl std::ops::Mul for &Operator {
    type Output = Operator;

    fn mul(self, rhs: &Operator) -> Operator {
        Operator::new(&self.m * &rhs.m)
    }
}

impl std::ops::Add for &Operator {
    type Output = Operator;

    fn add(self, rhs: &Operator) -> Operator {
        Operator::new(&self.m + &rhs.m)
    }
}

impl std::ops::Sub for &Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        Operator::new(&self.m - &rhs.m)
    }
}

// Operators serialize as row-major nested arrays of [re, im] pairs, matching
// the on-disk gate-file format.
impl Serialize for Operator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| [self.m[(i, j)].re, self.m[(i, j)].im]).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Operator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(deserializer)?;
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(D::Error::custom("operator must be a non-empty square matrix"));
        }
        let entries: Vec<Complex64> = rows
            .iter()
            .flat_map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)))
            .collect();
        Ok(Operator::from_row_slice(dim, &entries))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn paulis_are_unitary_hermitian_and_traceless() {
        for idx in 0..4 {
            let s = Operator::pauli(idx);
            assert!(s.is_unitary(tol::STRUCTURAL));
            assert!(s.is_hermitian(tol::STRUCTURAL));
            if idx > 0 {
                assert!(s.trace().norm() < tol::STRUCTURAL);
            }
            // sigma^2 = I
            assert!((&s * &s).max_abs_diff(&Operator::identity(2)) < tol::STRUCTURAL);
        }
    }

    #[test]
    fn kron_is_left_factor_a() {
        // (X (x) I)|00> = |10>: the left factor acts on the first qubit.
        let x_i = Operator::pauli(1).kron(&Operator::identity(2));
        let e00 = nalgebra::DVector::from_row_slice(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let out = x_i.matrix() * e00;
        assert!((out[2] - c(1.0, 0.0)).norm() < tol::STRUCTURAL);
        // (Z (x) Z)|01> = -|01>
        let z_z = Operator::pauli(3).kron(&Operator::pauli(3));
        assert!((z_z.matrix()[(1, 1)] + c(1.0, 0.0)).norm() < tol::STRUCTURAL);
    }

    #[test]
    fn trace_norm_rejects_non_hermitian() {
        let m = Operator::from_row_slice(2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(m.trace_norm(tol::STRUCTURAL), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn trace_norm_of_projector_difference() {
        // (1/2)|00><00| - (1/2)|01><01| has trace norm 1.
        let mut m = DMatrix::<Complex64>::zeros(4, 4);
        m[(0, 0)] = c(0.5, 0.0);
        m[(1, 1)] = c(-0.5, 0.0);
        let h = Operator::new(m);
        assert!((h.trace_norm(tol::STRUCTURAL).unwrap() - 1.0).abs() < tol::STRUCTURAL);
    }

    #[test]
    fn operator_serde_round_trip() {
        let u = Operator::pauli(2).kron(&Operator::pauli(1));
        let json = serde_json::to_string(&u).unwrap();
        let back: Operator = serde_json::from_str(&json).unwrap();
        assert!(u.max_abs_diff(&back) == 0.0);
    }
}
