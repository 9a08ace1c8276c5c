//! Pure states, density operators and the partial trace.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tol;

use super::Operator;

/// Which tensor factor survives a partial trace. `A` is the left factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// A normalized state vector of dimension 2 or 4.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    v: DVector<Complex64>,
}

impl PureState {
    /// Validates normalization to within [`tol::STRUCTURAL`].
    pub fn new(v: DVector<Complex64>) -> Result<Self> {
        let norm = v.norm();
        if (norm - 1.0).abs() > tol::STRUCTURAL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { v })
    }

    pub fn from_slice(amplitudes: &[Complex64]) -> Result<Self> {
        Self::new(DVector::from_row_slice(amplitudes))
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn normalized(v: DVector<Complex64>) -> Result<Self> {
        let norm = v.norm();
        if norm <= tol::STRUCTURAL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { v: v / Complex64::new(norm, 0.0) })
    }

    /// Computational basis state |k> in the given dimension.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = DVector::zeros(dim);
        v[k] = Complex64::new(1.0, 0.0);
        Self { v }
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    pub fn vector(&self) -> &DVector<Complex64> {
        &self.v
    }

    pub fn amplitude(&self, k: usize) -> Complex64 {
        self.v[k]
    }

    /// Inner product <self|other>.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.v.dotc(&other.v)
    }

    /// |self> (x) |other>, self on the A side.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let n = self.dim() * other.dim();
        let mut v = DVector::zeros(n);
        for i in 0..self.dim() {
            for j in 0..other.dim() {
                v[i * other.dim() + j] = self.v[i] * other.v[j];
            }
        }
        PureState { v }
    }

    /// Applies a (normally unitary) operator and renormalizes away roundoff.
    pub fn apply(&self, op: &Operator) -> Result<PureState> {
        if op.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: op.dim() });
        }
        PureState::normalized(op.matrix() * &self.v)
    }

    /// Projector |self><self|.
    pub fn projector(&self) -> Operator {
        let n = self.dim();
        Operator::from_fn(n, |i, j| self.v[i] * self.v[j].conj())
    }

    pub fn to_density(&self) -> DensityOperator {
        DensityOperator { op: self.projector() }
    }

    /// Multiplies by a global phase so the first amplitude with magnitude
    /// above `1e-6` becomes real and positive.
    pub fn phase_fixed(&self) -> PureState {
        let k = (0..self.dim()).find(|&k| self.v[k].norm() > 1e-6).unwrap_or(0);
        let phase = self.v[k] / Complex64::new(self.v[k].norm(), 0.0);
        PureState { v: &self.v * phase.conj() }
    }

    /// Orthogonal complement of a single-qubit state, phase-fixed.
    pub fn complement(&self) -> PureState {
        assert_eq!(self.dim(), 2, "complement is defined for qubits");
        let v = DVector::from_row_slice(&[-self.v[1].conj(), self.v[0].conj()]);
        PureState { v }.phase_fixed()
    }

    pub fn max_abs_diff(&self, other: &PureState) -> f64 {
        (&self.v - &other.v).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Distance up to a global phase: min over phases of max|self - e^{ip} other|.
    pub fn max_abs_diff_up_to_phase(&self, other: &PureState) -> f64 {
        let overlap = self.inner(other);
        let phase = if overlap.norm() > tol::STRUCTURAL {
            (overlap / Complex64::new(overlap.norm(), 0.0)).conj()
        } else {
            Complex64::new(1.0, 0.0)
        };
        (&self.v - &other.v * phase).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Serialize for PureState {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let amps: Vec<[f64; 2]> = self.v.iter().map(|z| [z.re, z.im]).collect();
        amps.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PureState {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let amps: Vec<[f64; 2]> = Vec::deserialize(deserializer)?;
        let v = DVector::from_iterator(amps.len(), amps.iter().map(|&[re, im]| Complex64::new(re, im)));
        PureState::new(v).map_err(D::Error::custom)
    }
}

/// A positive semidefinite, unit-trace Hermitian operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    op: Operator,
}

impl DensityOperator {
    /// Validates Hermiticity and unit trace to [`tol::STRUCTURAL`] and
    /// positivity of the spectrum to -1e-10.
    pub fn new(op: Operator) -> Result<Self> {
        let tr = op.trace();
        if (tr.re - 1.0).abs() > tol::STRUCTURAL || tr.im.abs() > tol::STRUCTURAL {
            return Err(Error::NotDensity { reason: format!("trace = {tr}") });
        }
        let eigs = op
            .hermitian_eigenvalues(tol::STRUCTURAL)
            .map_err(|e| Error::NotDensity { reason: e.to_string() })?;
        if let Some(&min) = eigs.first() {
            if min < -tol::DERIVED {
                return Err(Error::NotDensity { reason: format!("negative eigenvalue {min:.3e}") });
            }
        }
        Ok(Self { op })
    }

    pub fn from_pure(psi: &PureState) -> Self {
        psi.to_density()
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let op = Operator::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0));
        Self { op }
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn operator(&self) -> &Operator {
        &self.op
    }

    /// tr[self * op], real part (the trace is real for Hermitian `op`).
    pub fn expectation(&self, op: &Operator) -> f64 {
        (self.op.matrix() * op.matrix()).trace().re
    }

    /// Traces out one qubit of a two-qubit state.
    ///
    /// With basis order |00>, |01>, |10>, |11> the index split is
    /// row = 2i + j for (A = i, B = j).
    pub fn partial_trace(&self, keep: Subsystem) -> Result<DensityOperator> {
        if self.dim() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, got: self.dim() });
        }
        let m = self.op.matrix();
        let reduced = Operator::from_fn(2, |r, c| match keep {
            Subsystem::A => (0..2).map(|j| m[(2 * r + j, 2 * c + j)]).sum(),
            Subsystem::B => (0..2).map(|i| m[(2 * i + r, 2 * i + c)]).sum(),
        });
        DensityOperator::new(reduced)
    }
}

impl Serialize for DensityOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.op.serialize(serializer)
    }
}
