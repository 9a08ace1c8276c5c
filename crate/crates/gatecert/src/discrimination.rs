//! Minimum-error discrimination between a noiseless gate and its depolarized
//! counterpart: Helstrom bound, closed form, regime split, optimal POVM.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::channels::DepolarizingGateChannel;
use crate::error::{Error, Result};
use crate::qcore::{DensityOperator, Operator, PureState};
use crate::tol;

/// Two-outcome measurement; detection on `pi0` concludes "noiseless".
#[derive(Debug, Clone)]
pub struct Povm2 {
    pub pi0: Operator,
    pub pi1: Operator,
}

impl Povm2 {
    /// Checks PSD of both elements and completeness pi0 + pi1 = I.
    pub fn expect_valid(&self) -> Result<()> {
        for pi in [&self.pi0, &self.pi1] {
            if !pi.is_psd(tol::STRUCTURAL, tol::DERIVED)? {
                return Err(Error::Internal("POVM element is not PSD".into()));
            }
        }
        let sum = &self.pi0 + &self.pi1;
        let deviation = sum.max_abs_diff(&Operator::identity(self.pi0.dim()));
        if deviation > tol::STRUCTURAL {
            return Err(Error::Internal(format!(
                "POVM does not resolve the identity (deviation {deviation:.3e})"
            )));
        }
        Ok(())
    }
}

/// One discrimination task: noisy channel (gate, p) with prior q against the
/// noiseless gate, probed with `input`.
#[derive(Debug, Clone)]
pub struct DiscriminationInstance {
    pub gate: Operator,
    pub p: f64,
    pub q: f64,
    pub input: PureState,
}

impl DiscriminationInstance {
    pub fn new(gate: Operator, p: f64, q: f64, input: PureState) -> Result<Self> {
        gate.expect_unitary(tol::STRUCTURAL)?;
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::OutOfRange { name: "p", value: p, range: "(0, 1]" });
        }
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::OutOfRange { name: "q", value: q, range: "[0, 1]" });
        }
        if input.dim() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, got: input.dim() });
        }
        Ok(Self { gate, p, q, input })
    }
}

/// Helstrom bound for a fixed pair of states:
/// 1/2 + (1/2)||(1-q) rho0 - q rho1||_1.
pub fn helstrom_numeric(rho0: &DensityOperator, rho1: &DensityOperator, q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::OutOfRange { name: "q", value: q, range: "[0, 1]" });
    }
    let weighted = &rho0.operator().scale(Complex64::new(1.0 - q, 0.0))
        - &rho1.operator().scale(Complex64::new(q, 0.0));
    Ok(0.5 + 0.5 * weighted.trace_norm(tol::STRUCTURAL)?)
}

/// Closed-form guessing probability
/// (1/2)(1 + (3/4) p q + |1 - 2q + (3/4) p q|).
pub fn analytic_guessing(q: f64, p: f64) -> f64 {
    let c = 1.0 - 2.0 * q + 0.75 * p * q;
    0.5 * (1.0 + 0.75 * p * q + c.abs())
}

/// Whether measuring beats always guessing "noisy".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// 1 - 2q + 3pq/4 < 0: guess the noisy channel, p_guess = q.
    NoMeasurement,
    /// Otherwise p_guess = 1 - q + 3pq/4, achieved by the optimal POVM.
    /// The boundary case ties and is classified here.
    Measure,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::NoMeasurement => f.write_str("no-measurement"),
            Regime::Measure => f.write_str("measure"),
        }
    }
}

pub fn regime(q: f64, p: f64) -> Regime {
    if 1.0 - 2.0 * q + 0.75 * p * q < 0.0 {
        Regime::NoMeasurement
    } else {
        Regime::Measure
    }
}

/// The optimal two-outcome measurement: project onto the noiseless image
/// U|psi> versus its orthogonal complement. Independent of p and q.
pub fn optimal_povm(gate: &Operator, psi: &PureState) -> Result<Povm2> {
    gate.expect_unitary(tol::STRUCTURAL)?;
    let image = psi.apply(gate)?;
    let pi0 = image.projector();
    let pi1 = &Operator::identity(4) - &pi0;
    Ok(Povm2 { pi0, pi1 })
}

/// Trace-normalized POVM elements (Pi0, Pi1/3) as density operators.
/// Requires the rank-(1,3) projector pattern of [`optimal_povm`].
pub fn normalized_povm_states(povm: &Povm2) -> Result<(DensityOperator, DensityOperator)> {
    povm.expect_valid()?;
    let tr0 = povm.pi0.trace();
    let tr1 = povm.pi1.trace();
    if (tr0.re - 1.0).abs() > tol::PRODUCT || (tr1.re - 3.0).abs() > tol::PRODUCT {
        return Err(Error::RankPattern {
            reason: format!("traces ({:.6}, {:.6}), expected (1, 3)", tr0.re, tr1.re),
        });
    }
    let idem0 = (&povm.pi0 * &povm.pi0).max_abs_diff(&povm.pi0);
    if idem0 > tol::PRODUCT {
        return Err(Error::RankPattern {
            reason: format!("pi0 is not a projector (deviation {idem0:.3e})"),
        });
    }
    let s1 = DensityOperator::new(povm.pi0.clone())
        .map_err(|e| Error::RankPattern { reason: e.to_string() })?;
    let s2 = DensityOperator::new(povm.pi1.scale(Complex64::new(1.0 / 3.0, 0.0)))
        .map_err(|e| Error::RankPattern { reason: e.to_string() })?;
    Ok((s1, s2))
}

/// Guessing probability achieved by a fixed POVM:
/// (1-q) tr[U rho U^dag pi0] + q tr[N(rho) pi1].
pub fn achieved_guessing(instance: &DiscriminationInstance, povm: &Povm2) -> Result<f64> {
    let rho = instance.input.to_density();
    let noiseless = DepolarizingGateChannel::new(instance.gate.clone(), 0.0)?;
    let noisy = DepolarizingGateChannel::new(instance.gate.clone(), instance.p)?;
    let p_correct0 = noiseless.apply(&rho).expectation(&povm.pi0);
    let p_correct1 = noisy.apply(&rho).expectation(&povm.pi1);
    Ok((1.0 - instance.q) * p_correct0 + instance.q * p_correct1)
}
