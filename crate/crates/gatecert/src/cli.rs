//! Command implementations and report serialization for the `gatecert`
//! binary. The binary itself only parses flags and picks exit codes.
//!
//! Reports print as JSON with floats at 17 significant digits (lossless
//! round trip); human-readable mode rounds to 12.

use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::canonical::{find_product_pair, KakDecomposition, ProductPair};
use crate::certify::{
    build_protocol, estimate_noise, exact_locc_guessing, optimal_locc_guessing, run_certification,
    CertificationConfig, CertificationProtocol, CertificationReport,
};
use crate::channels::DepolarizingGateChannel;
use crate::discrimination::{analytic_guessing, helstrom_numeric, regime, Regime};
use crate::error::{Error, Result};
use crate::gates::GateName;
use crate::qcore::{Operator, PureState};

/// A gate named on the command line or loaded from a JSON file.
#[derive(Debug, Clone)]
pub enum GateSpec {
    Named(GateName),
    File(std::path::PathBuf),
}

impl GateSpec {
    /// The 4x4 unitary plus a label for reports.
    pub fn resolve(&self) -> Result<(Operator, String)> {
        match self {
            GateSpec::Named(name) => Ok((name.operator(), name.to_string())),
            GateSpec::File(path) => {
                let gate = load_gate_file(path)?;
                Ok((gate, path.display().to_string()))
            }
        }
    }
}

#[derive(Deserialize)]
struct GateFile {
    matrix: Operator,
}

/// Loads `{"matrix": [[[re,im]; 4]; 4]}` and checks unitarity to 1e-10.
pub fn load_gate_file(path: &Path) -> Result<Operator> {
    let fail = |reason: String| Error::GateLoad { path: path.display().to_string(), reason };
    let text = std::fs::read_to_string(path).map_err(|e| fail(e.to_string()))?;
    let file: GateFile = serde_json::from_str(&text).map_err(|e| fail(e.to_string()))?;
    let gate = file.matrix;
    if gate.dim() != 4 {
        return Err(fail(format!("matrix must be 4x4, got {0}x{0}", gate.dim())));
    }
    let deviation = gate.unitary_deviation();
    if deviation > 1e-10 {
        return Err(fail(format!("matrix is not unitary (max |U^dag U - I| = {deviation:.3e})")));
    }
    Ok(gate)
}

/// Basis-state input chosen on the command line, e.g. "10" for |10>.
pub fn parse_basis_input(bits: &str) -> Result<PureState> {
    let index = match bits {
        "00" => 0,
        "01" => 1,
        "10" => 2,
        "11" => 3,
        other => {
            return Err(Error::Usage(format!(
                "--input {other} is not a two-qubit basis state (expected 00, 01, 10 or 11)"
            )))
        }
    };
    Ok(PureState::basis(4, index))
}

fn protocol_for(gate: &Operator, input: Option<&PureState>) -> Result<CertificationProtocol> {
    match input {
        Some(state) => {
            let pair = ProductPair::from_input(gate, state)?;
            build_protocol(gate, Some(pair))
        }
        None => build_protocol(gate, None),
    }
}

/// The three guessing-probability routes evaluated at one (q, p) point.
#[derive(Debug, Clone, Serialize)]
pub struct PguessReport {
    pub gate: String,
    pub q: f64,
    pub p: f64,
    pub analytic: f64,
    pub helstrom: f64,
    pub exact_locc: f64,
    pub regime: Regime,
    pub max_disagreement: f64,
    pub flags: Vec<String>,
}

impl PguessReport {
    /// Error when the three routes drift apart beyond 1e-8.
    pub fn consistency_error(&self) -> Option<Error> {
        (self.max_disagreement > 1e-8).then(|| {
            Error::Verification(format!(
                "analytic, Helstrom and exact-LOCC values disagree by {:.3e}",
                self.max_disagreement
            ))
        })
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("gate:       {}\n", self.gate));
        out.push_str(&format!("q:          {}\n", fmt_sig(self.q, 12)));
        out.push_str(&format!("p:          {}\n", fmt_sig(self.p, 12)));
        out.push_str(&format!("regime:     {}\n", self.regime));
        out.push_str(&format!("analytic:   {}\n", fmt_sig(self.analytic, 12)));
        out.push_str(&format!("helstrom:   {}\n", fmt_sig(self.helstrom, 12)));
        out.push_str(&format!("exact-locc: {}\n", fmt_sig(self.exact_locc, 12)));
        if !self.flags.is_empty() {
            out.push_str(&format!("flags:      {}\n", self.flags.join(", ")));
        }
        out
    }
}

/// Computes the guessing probability three ways: closed form, numeric
/// Helstrom bound at the protocol's input, and the exact LOCC strategy
/// (regime-aware). They must agree; the caller checks `consistency_error`.
pub fn cmd_pguess(
    gate: &Operator,
    label: &str,
    q: f64,
    p: f64,
    input: Option<&PureState>,
) -> Result<PguessReport> {
    let protocol = protocol_for(gate, input)?;
    let analytic = analytic_guessing(q, p);
    let noiseless = DepolarizingGateChannel::new(gate.clone(), 0.0)?;
    let noisy = DepolarizingGateChannel::new(gate.clone(), p)?;
    let rho0 = noiseless.apply_pure(&protocol.input);
    let rho1 = noisy.apply_pure(&protocol.input);
    let helstrom = helstrom_numeric(&rho0, &rho1, q)?;
    let exact_locc = optimal_locc_guessing(&protocol, q, p)?;
    let max_disagreement =
        (analytic - helstrom).abs().max((analytic - exact_locc).abs());
    let mut flags = Vec::new();
    if p == 0.0 {
        flags.push("degenerate-p".to_string());
    }
    Ok(PguessReport {
        gate: label.to_string(),
        q,
        p,
        analytic,
        helstrom,
        exact_locc,
        regime: regime(q, p),
        max_disagreement,
        flags,
    })
}

/// Full certification run: protocol, tallies and estimates.
#[derive(Debug, Clone, Serialize)]
pub struct CertifyReport {
    pub gate: String,
    pub q: f64,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub protocol: CertificationProtocol,
    pub exact_locc: f64,
    pub analytic: f64,
    pub result: CertificationReport,
}

pub fn cmd_certify(
    gate: &Operator,
    label: &str,
    q: f64,
    p: f64,
    trials: u64,
    seed: u64,
    input: Option<&PureState>,
) -> Result<CertifyReport> {
    let protocol = protocol_for(gate, input)?;
    let config = CertificationConfig::new(q, p, trials, seed)?;
    let result = run_certification(&protocol, &config)?;
    Ok(CertifyReport {
        gate: label.to_string(),
        q,
        p,
        trials,
        seed,
        exact_locc: exact_locc_guessing(&protocol, q, p)?,
        analytic: analytic_guessing(q, p),
        protocol,
        result,
    })
}

/// One sweep grid point.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub p: f64,
    pub q: f64,
    pub exact: f64,
    pub analytic: f64,
    pub mc_est: f64,
    pub stderr: f64,
    pub trials: u64,
}

/// Sweep rows, sorted by p ascending.
#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,q,exact,analytic,mc_est,stderr,trials\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.p, r.q, r.exact, r.analytic, r.mc_est, r.stderr, r.trials
            ));
        }
        out
    }
}

/// Sweep parameters after validation.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub q: f64,
    pub p_start: f64,
    pub p_end: f64,
    pub p_step: f64,
    pub trials: u64,
    pub seed: u64,
}

impl SweepSpec {
    fn grid(&self) -> Result<Vec<f64>> {
        for (name, value) in [("q", self.q), ("p-start", self.p_start), ("p-end", self.p_end)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::OutOfRange { name, value, range: "[0, 1]" });
            }
        }
        if self.p_step <= 0.0 {
            return Err(Error::OutOfRange { name: "p-step", value: self.p_step, range: "(0, inf)" });
        }
        if self.p_start > self.p_end {
            return Err(Error::OutOfRange {
                name: "p-start",
                value: self.p_start,
                range: "[0, p-end]",
            });
        }
        if (self.p_end - self.p_start) / self.p_step > 1e6 {
            return Err(Error::Usage(format!(
                "p-step {} produces more than a million grid points",
                self.p_step
            )));
        }
        let mut grid = Vec::new();
        for k in 0.. {
            let p = self.p_start + k as f64 * self.p_step;
            if p > self.p_end + 1e-9 {
                break;
            }
            grid.push(p.min(1.0));
        }
        Ok(grid)
    }
}

/// Runs the certification at each grid point and cross-checks the exact
/// LOCC value against the closed form (must agree to 1e-10 on every row).
pub fn cmd_sweep(
    gate: &Operator,
    spec: &SweepSpec,
    input: Option<&PureState>,
) -> Result<SweepResult> {
    let protocol = protocol_for(gate, input)?;
    let mut rows = Vec::new();
    for (row, &p) in spec.grid()?.iter().enumerate() {
        let exact = optimal_locc_guessing(&protocol, spec.q, p)?;
        let analytic = analytic_guessing(spec.q, p);
        if (exact - analytic).abs() > 1e-10 {
            return Err(Error::Verification(format!(
                "exact and analytic columns disagree at p = {p}: {exact} vs {analytic}"
            )));
        }
        let config =
            CertificationConfig::new(spec.q, p, spec.trials, spec.seed.wrapping_add(row as u64))?;
        let report = run_certification(&protocol, &config)?;
        rows.push(SweepRow {
            p,
            q: spec.q,
            exact,
            analytic,
            mc_est: report.p_guess_est,
            stderr: report.p_guess_stderr,
            trials: spec.trials,
        });
    }
    Ok(SweepResult { rows })
}

/// Writes the CSV to `out`, or stdout when absent.
pub fn write_sweep(result: &SweepResult, out: Option<&Path>) -> Result<()> {
    let csv = result.to_csv();
    match out {
        Some(path) => {
            let mut file = std::fs::File::create(path)?;
            file.write_all(csv.as_bytes())?;
        }
        None => print!("{csv}"),
    }
    Ok(())
}

/// Noise estimation from a simulated q = 1 run.
#[derive(Debug, Clone, Serialize)]
pub struct EstimateReport {
    pub gate: String,
    pub p_true: f64,
    pub trials: u64,
    pub seed: u64,
    pub counts: [u64; 4],
    pub p_est: f64,
    pub stderr: f64,
    pub in_range: bool,
}

pub fn cmd_estimate(
    gate: &Operator,
    label: &str,
    p_true: f64,
    trials: u64,
    seed: u64,
) -> Result<EstimateReport> {
    let protocol = build_protocol(gate, None)?;
    let config = CertificationConfig::new(1.0, p_true, trials, seed)?;
    let report = run_certification(&protocol, &config)?;
    let est = estimate_noise(&report.counts_noisy, &protocol)?;
    Ok(EstimateReport {
        gate: label.to_string(),
        p_true,
        trials,
        seed,
        counts: report.counts_noisy,
        p_est: est.p_est,
        stderr: est.stderr,
        in_range: est.in_range,
    })
}

/// Canonical decomposition plus the product pair it certifies with.
#[derive(Debug, Clone, Serialize)]
pub struct KakReport {
    pub gate: String,
    pub decomposition: KakDecomposition,
    pub reconstruction_residual: f64,
    pub pair: ProductPair,
    pub input_schmidt_residual: f64,
    pub output_schmidt_residual: f64,
}

pub fn cmd_kak(gate: &Operator, label: &str) -> Result<KakReport> {
    let decomposition = crate::canonical::kak_decompose(gate)?;
    let reconstruction_residual = decomposition.residual(gate);
    let pair = find_product_pair(gate)?;
    Ok(KakReport {
        gate: label.to_string(),
        reconstruction_residual,
        input_schmidt_residual: pair.input_schmidt_residual(),
        output_schmidt_residual: pair.output_schmidt_residual(),
        decomposition,
        pair,
    })
}

struct SigDigits17;

impl serde_json::ser::Formatter for SigDigits17 {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        // 16 fractional digits in scientific notation = 17 significant.
        write!(writer, "{value:.16e}")
    }
}

/// Serializes a report to JSON with all floats at 17 significant digits.
pub fn to_json(value: &impl Serialize) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigDigits17);
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Internal(format!("report serialization failed: {e}")))?;
    String::from_utf8(buf).map_err(|e| Error::Internal(e.to_string()))
}

/// Rounds to `digits` significant digits in plain decimal notation.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Exit code for an error: 2 for usage problems (bad flags, unreadable or
/// invalid gate files), 1 for verification and consistency failures.
pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::UnknownGate(_)
        | Error::GateLoad { .. }
        | Error::OutOfRange { .. }
        | Error::NoTrials
        | Error::Usage(_)
        | Error::Io(_) => 2,
        _ => 1,
    }
}
