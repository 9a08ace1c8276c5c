//! The depolarizing noisy-gate family, its Pauli-twirl realization, Choi
//! matrices and process/truth-table fidelities.
//!
//! A noisy gate acts as N(rho) = (1-p) U rho U^dag + p I/4: with probability
//! 1-p the ideal unitary is applied, with probability p the state is
//! completely depolarized.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcore::{DensityOperator, Operator, PureState};
use crate::tol;

/// A two-qubit gate mixed with complete depolarization of fraction `p`.
#[derive(Debug, Clone)]
pub struct DepolarizingGateChannel {
    gate: Operator,
    p: f64,
}

impl DepolarizingGateChannel {
    pub fn new(gate: Operator, p: f64) -> Result<Self> {
        if gate.dim() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, got: gate.dim() });
        }
        gate.expect_unitary(tol::STRUCTURAL)?;
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::OutOfRange { name: "p", value: p, range: "[0, 1]" });
        }
        Ok(Self { gate, p })
    }

    pub fn gate(&self) -> &Operator {
        &self.gate
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Linear extension of the channel to arbitrary matrices:
    /// (1-p) U X U^dag + p tr(X) I/4. Used by the Choi construction.
    fn apply_linear(&self, x: &Operator) -> Operator {
        let u_x_udag = &(&self.gate * x) * &self.gate.dagger();
        let mixed = Operator::identity(4).scale(x.trace() * Complex64::new(self.p / 4.0, 0.0));
        &u_x_udag.scale(Complex64::new(1.0 - self.p, 0.0)) + &mixed
    }

    pub fn apply(&self, rho: &DensityOperator) -> DensityOperator {
        DensityOperator::new(self.apply_linear(rho.operator()))
            .expect("depolarized output of a density operator is a density operator")
    }

    pub fn apply_pure(&self, psi: &PureState) -> DensityOperator {
        self.apply(&psi.to_density())
    }

    /// Choi matrix (id (x) channel) acting on the maximally entangled state,
    /// normalized to trace 1: entries chi[(4a+i),(4b+j)] = ch(|a><b|)_{ij}/4.
    pub fn choi(&self) -> ChoiMatrix {
        let mut m = nalgebra::DMatrix::<Complex64>::zeros(16, 16);
        for a in 0..4 {
            for b in 0..4 {
                let unit = Operator::from_fn(4, |i, j| {
                    if i == a && j == b {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                });
                let block = self.apply_linear(&unit);
                for i in 0..4 {
                    for j in 0..4 {
                        m[(4 * a + i, 4 * b + j)] = block.matrix()[(i, j)] / 4.0;
                    }
                }
            }
        }
        ChoiMatrix { entries: Operator::new(m) }
    }
}

/// Averages conjugation by all 16 two-qubit Pauli operators; this realizes
/// complete depolarization, so the result is I/4 for every input.
pub fn twirl_depolarize(rho: &DensityOperator) -> DensityOperator {
    let mut sum = Operator::zeros(4);
    for i in 0..4 {
        for j in 0..4 {
            let s = Operator::pauli(i).kron(&Operator::pauli(j));
            sum = &sum + &(&(&s * rho.operator()) * &s);
        }
    }
    DensityOperator::new(sum.scale(Complex64::new(1.0 / 16.0, 0.0)))
        .expect("Pauli twirl preserves the density-operator invariants")
}

/// Trace-1 Choi matrix of a channel.
#[derive(Debug, Clone, Serialize)]
pub struct ChoiMatrix {
    entries: Operator,
}

impl ChoiMatrix {
    pub fn entries(&self) -> &Operator {
        &self.entries
    }

    pub fn expect_valid(&self) -> Result<()> {
        let tr = self.entries.trace();
        if (tr.re - 1.0).abs() > tol::STRUCTURAL || tr.im.abs() > tol::STRUCTURAL {
            return Err(Error::Internal(format!("Choi trace = {tr}, expected 1")));
        }
        if !self.entries.is_psd(tol::STRUCTURAL, tol::DERIVED)? {
            return Err(Error::Internal("Choi matrix is not PSD".into()));
        }
        Ok(())
    }
}

/// Process fidelity tr[chi0 chi_ex] between trace-1 Choi matrices.
pub fn process_fidelity(chi0: &ChoiMatrix, chi_ex: &ChoiMatrix) -> Result<f64> {
    chi0.expect_valid()?;
    chi_ex.expect_valid()?;
    Ok((chi0.entries.matrix() * chi_ex.entries.matrix()).trace().re)
}

/// Local product basis used for truth-table preparation and analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruthTableBasis {
    /// Computational basis {|0>, |1>} on both qubits.
    Zz,
    /// Hadamard basis {|+>, |->} on both qubits.
    Xx,
}

impl TruthTableBasis {
    fn single_qubit_states(self) -> [PureState; 2] {
        match self {
            TruthTableBasis::Zz => [PureState::basis(2, 0), PureState::basis(2, 1)],
            TruthTableBasis::Xx => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                let h = Complex64::new(s, 0.0);
                [
                    PureState::from_slice(&[h, h]).expect("|+> is normalized"),
                    PureState::from_slice(&[h, -h]).expect("|-> is normalized"),
                ]
            }
        }
    }

    /// The 4 two-qubit product states of the basis, A-factor index first.
    pub fn product_states(self) -> [PureState; 4] {
        let single = self.single_qubit_states();
        [
            single[0].tensor(&single[0]),
            single[0].tensor(&single[1]),
            single[1].tensor(&single[0]),
            single[1].tensor(&single[1]),
        ]
    }
}

/// Truth-table fidelity: average over the 4 basis inputs of the probability
/// that the channel output lands on the reference gate's output for that
/// input. The designated outputs are computed from `reference`, never from a
/// hardcoded table.
pub fn truth_table_fidelity(
    ch: &DepolarizingGateChannel,
    basis: TruthTableBasis,
    reference: &Operator,
) -> Result<f64> {
    reference.expect_unitary(tol::STRUCTURAL)?;
    let mut total = 0.0;
    for b in basis.product_states() {
        let designated = b.apply(reference)?;
        total += ch.apply_pure(&b).expectation(&designated.projector());
    }
    // Average of probabilities; shave off up-to-an-ulp rounding excess so
    // downstream intervals stay well ordered.
    Ok((total / 4.0).clamp(0.0, 1.0))
}

/// Process-fidelity interval implied by the two truth-table fidelities:
/// [max(0, f_zz + f_xx - 1), min(f_zz, f_xx)].
pub fn fidelity_bounds(f_zz: f64, f_xx: f64) -> (f64, f64) {
    ((f_zz + f_xx - 1.0).max(0.0), f_zz.min(f_xx))
}
