//! The entanglement-free certification protocol: local measurement bases
//! built from a product pair, exact outcome statistics, Monte Carlo runs and
//! the noise-fraction estimator.
//!
//! Alice and Bob feed the product input through the device and each measure
//! their own qubit in the basis containing their factor of the ideal output.
//! Seeing that factor pair ("accept") is evidence for the noiseless gate;
//! anything else can only come from the depolarized branch.

use rayon::prelude::*;
use serde::Serialize;

use crate::canonical::{find_product_pair, ProductPair};
use crate::channels::DepolarizingGateChannel;
use crate::discrimination::{analytic_guessing, normalized_povm_states, optimal_povm, regime, Regime};
use crate::error::{Error, Result};
use crate::qcore::{Operator, PureState};
use crate::tol;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Local measurement setup certifying one gate.
#[derive(Debug, Clone, Serialize)]
pub struct CertificationProtocol {
    pub gate: Operator,
    /// Product input state fed through the device on every use.
    pub input: PureState,
    pub alice_basis: (PureState, PureState),
    pub bob_basis: (PureState, PureState),
    /// Pair of basis indices whose joint outcome concludes "noise-free".
    pub accept_outcome: (usize, usize),
}

impl CertificationProtocol {
    /// Index of the accept outcome in the flattened (alice, bob) ordering.
    pub fn accept_index(&self) -> usize {
        2 * self.accept_outcome.0 + self.accept_outcome.1
    }

    /// The product state whose detection concludes "noise-free".
    pub fn accept_state(&self) -> PureState {
        let a = [&self.alice_basis.0, &self.alice_basis.1][self.accept_outcome.0];
        let b = [&self.bob_basis.0, &self.bob_basis.1][self.accept_outcome.1];
        a.tensor(b)
    }

    fn expect_valid(&self) -> Result<()> {
        for basis in [&self.alice_basis, &self.bob_basis] {
            if basis.0.inner(&basis.1).norm() > tol::DERIVED {
                return Err(Error::InconsistentPair { reason: "measurement basis not orthonormal".into() });
            }
        }
        let image = self.input.apply(&self.gate)?;
        let mismatch = self.accept_state().max_abs_diff_up_to_phase(&image);
        if mismatch > tol::DERIVED {
            return Err(Error::InconsistentPair {
                reason: format!("accept state differs from the ideal image by {mismatch:.3e}"),
            });
        }
        Ok(())
    }
}

/// Builds the protocol from a gate and (optionally) a precomputed pair; the
/// pair is found through the canonical decomposition when absent.
pub fn build_protocol(gate: &Operator, pair: Option<ProductPair>) -> Result<CertificationProtocol> {
    let pair = match pair {
        Some(p) => {
            p.verify(gate)?;
            p
        }
        None => find_product_pair(gate)?,
    };
    let (fa, fb) = pair.output_factors.clone();
    let protocol = CertificationProtocol {
        gate: gate.clone(),
        input: pair.input.clone(),
        alice_basis: (fa.clone(), fa.complement()),
        bob_basis: (fb.clone(), fb.complement()),
        accept_outcome: (0, 0),
    };
    protocol.expect_valid()?;
    Ok(protocol)
}

/// Born probabilities of the four joint outcomes, ordered by
/// index = 2*alice + bob.
pub fn outcome_distribution(
    protocol: &CertificationProtocol,
    channel: &DepolarizingGateChannel,
) -> Result<[f64; 4]> {
    let rho = channel.apply_pure(&protocol.input);
    let alice = [&protocol.alice_basis.0, &protocol.alice_basis.1];
    let bob = [&protocol.bob_basis.0, &protocol.bob_basis.1];
    let mut dist = [0.0; 4];
    for i in 0..2 {
        for j in 0..2 {
            let proj = alice[i].tensor(bob[j]).projector();
            dist[2 * i + j] = rho.expectation(&proj).max(0.0);
        }
    }
    let sum: f64 = dist.iter().sum();
    if (sum - 1.0).abs() > tol::STRUCTURAL {
        return Err(Error::Internal(format!("outcome probabilities sum to {sum}")));
    }
    Ok(dist)
}

/// Exact guessing probability of the measuring strategy:
/// (1-q) P(accept | noiseless) + q P(not accept | noisy).
pub fn exact_locc_guessing(protocol: &CertificationProtocol, q: f64, p: f64) -> Result<f64> {
    check_prob("q", q)?;
    check_prob("p", p)?;
    let noiseless = DepolarizingGateChannel::new(protocol.gate.clone(), 0.0)?;
    let noisy = DepolarizingGateChannel::new(protocol.gate.clone(), p)?;
    let du = outcome_distribution(protocol, &noiseless)?;
    let dn = outcome_distribution(protocol, &noisy)?;
    let k = protocol.accept_index();
    Ok((1.0 - q) * du[k] + q * (1.0 - dn[k]))
}

/// LOCC-optimal guessing probability: the measuring strategy in its regime,
/// plain prior guessing (value q) where measuring cannot help.
pub fn optimal_locc_guessing(protocol: &CertificationProtocol, q: f64, p: f64) -> Result<f64> {
    match regime(q, p) {
        Regime::Measure => exact_locc_guessing(protocol, q, p),
        Regime::NoMeasurement => Ok(q),
    }
}

fn check_prob(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfRange { name, value, range: "[0, 1]" });
    }
    Ok(())
}

/// Monte Carlo parameters. `input_override` replaces the protocol's product
/// input (and hence its bases) before the run.
#[derive(Debug, Clone)]
pub struct CertificationConfig {
    pub q: f64,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub input_override: Option<PureState>,
}

impl CertificationConfig {
    pub fn new(q: f64, p: f64, trials: u64, seed: u64) -> Result<Self> {
        check_prob("q", q)?;
        check_prob("p", p)?;
        if trials == 0 {
            return Err(Error::NoTrials);
        }
        Ok(Self { q, p, trials, seed, input_override: None })
    }
}

/// Outcome tallies and estimates of one certification run.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CertificationReport {
    /// Joint-outcome counts from trials where the noiseless gate acted.
    pub counts_noiseless: [u64; 4],
    /// Joint-outcome counts from trials where the noisy channel acted.
    pub counts_noisy: [u64; 4],
    /// (1-q) n_acc(U)/n(U) + q n_rej(N)/n(N), per-trial correct-guess rate.
    pub p_guess_est: f64,
    pub p_guess_stderr: f64,
    /// Noise fraction estimated from the noisy-channel counts alone.
    pub p_est: f64,
    pub p_est_stderr: f64,
    /// Degeneracies of the run: empty conditional samples, p = 0, estimates
    /// out of physical range.
    pub flags: Vec<String>,
}

#[derive(Clone, Copy, Default)]
struct Tally {
    counts: [[u64; 4]; 2],
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        for c in 0..2 {
            for k in 0..4 {
                self.counts[c][k] += other.counts[c][k];
            }
        }
        self
    }
}

fn sample_outcome(dist: &[f64; 4], u: f64) -> usize {
    let mut acc = 0.0;
    for (k, pr) in dist.iter().enumerate() {
        acc += pr;
        if u < acc {
            return k;
        }
    }
    3
}

/// Samples `trials` uses of the device. Each trial draws the acting channel
/// (noisy with probability q) and then a joint outcome; tallies key on the
/// true channel. The per-trial RNG is a fixed-seed ChaCha stream indexed by
/// the trial counter, so results do not depend on thread count or order.
pub fn run_certification(
    protocol: &CertificationProtocol,
    config: &CertificationConfig,
) -> Result<CertificationReport> {
    check_prob("q", config.q)?;
    check_prob("p", config.p)?;
    if config.trials == 0 {
        return Err(Error::NoTrials);
    }
    let protocol = match &config.input_override {
        Some(input) => {
            let pair = ProductPair::from_input(&protocol.gate, input)?;
            build_protocol(&protocol.gate, Some(pair))?
        }
        None => protocol.clone(),
    };
    let noiseless = DepolarizingGateChannel::new(protocol.gate.clone(), 0.0)?;
    let noisy = DepolarizingGateChannel::new(protocol.gate.clone(), config.p)?;
    let dist = [
        outcome_distribution(&protocol, &noiseless)?,
        outcome_distribution(&protocol, &noisy)?,
    ];

    const CHUNK: u64 = 16_384;
    let n_chunks = config.trials.div_ceil(CHUNK);
    let seed = config.seed;
    let q = config.q;
    let trials = config.trials;
    let tally = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut acc = Tally::default();
            let lo = chunk * CHUNK;
            let hi = (lo + CHUNK).min(trials);
            for trial in lo..hi {
                rng.set_stream(trial);
                rng.set_word_pos(0);
                let channel = usize::from(rng.random::<f64>() < q);
                let outcome = sample_outcome(&dist[channel], rng.random::<f64>());
                acc.counts[channel][outcome] += 1;
            }
            acc
        })
        .reduce(Tally::default, Tally::merge);

    let k = protocol.accept_index();
    let mut flags = Vec::new();
    if config.p == 0.0 {
        flags.push("degenerate-p".to_string());
    }
    let n_u: u64 = tally.counts[0].iter().sum();
    let n_n: u64 = tally.counts[1].iter().sum();
    let (f_u, var_u) = match n_u {
        0 => {
            flags.push("no-noiseless-trials".to_string());
            (0.0, 0.0)
        }
        n => {
            let f = tally.counts[0][k] as f64 / n as f64;
            (f, f * (1.0 - f) / n as f64)
        }
    };
    let (f_n, var_n) = match n_n {
        0 => {
            flags.push("no-noisy-trials".to_string());
            (0.0, 0.0)
        }
        n => {
            let f = tally.counts[1][k] as f64 / n as f64;
            (f, f * (1.0 - f) / n as f64)
        }
    };
    let p_guess_est = (1.0 - q) * f_u + q * (1.0 - f_n);
    let p_guess_stderr = ((1.0 - q).powi(2) * var_u + q.powi(2) * var_n).sqrt();

    let (p_est, p_est_stderr) = if n_n == 0 {
        (0.0, 0.0)
    } else {
        let est = estimate_noise(&tally.counts[1], &protocol)?;
        if !est.in_range {
            flags.push("p-est-out-of-range".to_string());
        }
        (est.p_est, est.stderr)
    };

    Ok(CertificationReport {
        counts_noiseless: tally.counts[0],
        counts_noisy: tally.counts[1],
        p_guess_est,
        p_guess_stderr,
        p_est,
        p_est_stderr,
        flags,
    })
}

/// Noise fraction recovered from accept statistics under the noisy channel.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NoiseEstimate {
    /// (4/3)(1 - accept rate); unclamped, see `in_range`.
    pub p_est: f64,
    pub stderr: f64,
    /// False when sampling noise pushed the raw estimate outside [0, 1].
    pub in_range: bool,
}

/// Estimates p from counts collected under the noisy channel alone
/// (the q = 1 scenario): accept rate (1-p) + p/4 inverts to
/// p = (4/3)(1 - accept rate).
pub fn estimate_noise(counts: &[u64; 4], protocol: &CertificationProtocol) -> Result<NoiseEstimate> {
    let n: u64 = counts.iter().sum();
    if n == 0 {
        return Err(Error::ZeroCounts { which: "noisy-channel outcomes" });
    }
    let f = counts[protocol.accept_index()] as f64 / n as f64;
    let p_est = 4.0 / 3.0 * (1.0 - f);
    let stderr = 4.0 / 3.0 * (f * (1.0 - f) / n as f64).sqrt();
    Ok(NoiseEstimate { p_est, stderr, in_range: (0.0..=1.0).contains(&p_est) })
}

/// Max deviation |exact_locc_guessing - analytic_guessing| over the grid,
/// evaluated at Measure-regime points (elsewhere the optimal strategy skips
/// the measurement and the comparison is vacuous).
pub fn verify_locc_optimality(gate: &Operator, q_grid: &[f64], p_grid: &[f64]) -> Result<f64> {
    let protocol = build_protocol(gate, None)?;
    let mut worst: f64 = 0.0;
    for &q in q_grid {
        for &p in p_grid {
            if regime(q, p) == Regime::NoMeasurement {
                continue;
            }
            let exact = exact_locc_guessing(&protocol, q, p)?;
            worst = worst.max((exact - analytic_guessing(q, p)).abs());
        }
    }
    Ok(worst)
}

/// Misidentification probabilities of the local protocol on the normalized
/// optimal-POVM states: err0 = P(not accept | Pi0-state),
/// err1 = P(accept | Pi1-state). Both vanish exactly when the ideal image is
/// a product state.
pub fn verify_perfect_povm_discrimination(protocol: &CertificationProtocol) -> Result<(f64, f64)> {
    let povm = optimal_povm(&protocol.gate, &protocol.input)?;
    let (s1, s2) = normalized_povm_states(&povm)?;
    let accept = protocol.accept_state().projector();
    let err0 = (1.0 - s1.expectation(&accept)).max(0.0);
    let err1 = s2.expectation(&accept).max(0.0);
    Ok((err0, err1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates;
    use crate::qcore::haar_random_unitary;
    use num_complex::Complex64;

    fn cnot_protocol_from(k: usize) -> CertificationProtocol {
        let gate = gates::cnot();
        let pair = ProductPair::from_input(&gate, &PureState::basis(4, k)).unwrap();
        build_protocol(&gate, Some(pair)).unwrap()
    }

    #[test]
    fn cnot_default_pair_gives_computational_bases() {
        let protocol = cnot_protocol_from(0);
        assert_eq!(protocol.accept_outcome, (0, 0));
        assert!(protocol.alice_basis.0.max_abs_diff(&PureState::basis(2, 0)) < tol::STRUCTURAL);
        assert!(protocol.alice_basis.1.max_abs_diff(&PureState::basis(2, 1)) < tol::STRUCTURAL);
        assert!(protocol.bob_basis.0.max_abs_diff(&PureState::basis(2, 0)) < tol::STRUCTURAL);
        assert!(protocol.accept_state().max_abs_diff(&PureState::basis(4, 0)) < tol::STRUCTURAL);
    }

    #[test]
    fn cnot_from_input_11_accepts_on_measured_10() {
        // CNOT|11> = |10>: the accept outcome is Alice reading |1> and Bob
        // reading |0>.
        let protocol = cnot_protocol_from(3);
        let a = [&protocol.alice_basis.0, &protocol.alice_basis.1][protocol.accept_outcome.0];
        let b = [&protocol.bob_basis.0, &protocol.bob_basis.1][protocol.accept_outcome.1];
        assert!((a.inner(&PureState::basis(2, 1)).norm() - 1.0).abs() < tol::DERIVED);
        assert!((b.inner(&PureState::basis(2, 0)).norm() - 1.0).abs() < tol::DERIVED);
    }

    #[test]
    fn swap_accepts_on_exchanged_factors() {
        let gate = gates::swap();
        let a_in = PureState::basis(2, 1);
        let b_in = PureState::basis(2, 0);
        let pair = ProductPair::from_input(&gate, &a_in.tensor(&b_in)).unwrap();
        let protocol = build_protocol(&gate, Some(pair)).unwrap();
        let a = [&protocol.alice_basis.0, &protocol.alice_basis.1][protocol.accept_outcome.0];
        let b = [&protocol.bob_basis.0, &protocol.bob_basis.1][protocol.accept_outcome.1];
        // Accept states are (b, a): each side detects the other's input.
        assert!((a.inner(&b_in).norm() - 1.0).abs() < tol::DERIVED);
        assert!((b.inner(&a_in).norm() - 1.0).abs() < tol::DERIVED);
    }

    #[test]
    fn rejects_inconsistent_pairs() {
        // CNOT|10> = |11> but SWAP|10> = |01>, so the pair contradicts SWAP.
        // (|00> would be a fixed point of both and pass.)
        let pair = ProductPair::from_input(&gates::cnot(), &PureState::basis(4, 2)).unwrap();
        assert!(matches!(
            build_protocol(&gates::swap(), Some(pair)),
            Err(Error::InconsistentPair { .. })
        ));
    }

    #[test]
    fn outcome_distributions() {
        let protocol = cnot_protocol_from(0);
        let at = |p: f64| {
            let ch = DepolarizingGateChannel::new(protocol.gate.clone(), p).unwrap();
            outcome_distribution(&protocol, &ch).unwrap()
        };
        let d = at(0.0);
        assert!((d[0] - 1.0).abs() < tol::STRUCTURAL);
        assert!(d[1] + d[2] + d[3] < tol::STRUCTURAL);
        let d = at(1.0);
        for pr in d {
            assert!((pr - 0.25).abs() < tol::STRUCTURAL);
        }
        let d = at(0.6);
        assert!((d[0] - 0.55).abs() < tol::STRUCTURAL);
        for pr in &d[1..] {
            assert!((pr - 0.15).abs() < tol::STRUCTURAL);
        }
    }

    #[test]
    fn exact_guessing_values() {
        let protocol = cnot_protocol_from(0);
        assert!((exact_locc_guessing(&protocol, 0.5, 1.0).unwrap() - 0.875).abs() < tol::STRUCTURAL);
        assert!((exact_locc_guessing(&protocol, 0.5, 0.0).unwrap() - 0.5).abs() < tol::STRUCTURAL);
        assert!((exact_locc_guessing(&protocol, 0.5, 0.4).unwrap() - 0.65).abs() < tol::STRUCTURAL);
        // Regime-aware value: guessing the prior wins at q=0.9, p=0.1.
        assert!((optimal_locc_guessing(&protocol, 0.9, 0.1).unwrap() - 0.9).abs() < tol::STRUCTURAL);
    }

    #[test]
    fn degenerate_noise_gives_coin_flip() {
        let protocol = cnot_protocol_from(0);
        let config = CertificationConfig::new(0.5, 0.0, 10_000, 1).unwrap();
        let report = run_certification(&protocol, &config).unwrap();
        assert!((report.p_guess_est - 0.5).abs() < tol::STRUCTURAL);
        assert!(report.flags.iter().any(|f| f == "degenerate-p"));
        let total: u64 =
            report.counts_noiseless.iter().sum::<u64>() + report.counts_noisy.iter().sum::<u64>();
        assert_eq!(total, 10_000);
    }

    #[test]
    fn monte_carlo_matches_exact_value() {
        let protocol = cnot_protocol_from(0);
        let config = CertificationConfig::new(0.5, 1.0, 200_000, 7).unwrap();
        let report = run_certification(&protocol, &config).unwrap();
        assert!((report.p_guess_est - 0.875).abs() < 3.0 * report.p_guess_stderr);
        assert!(report.p_guess_stderr > 0.0);
    }

    #[test]
    fn fixed_seed_is_reproducible_and_thread_independent() {
        let protocol = cnot_protocol_from(0);
        let config = CertificationConfig::new(0.5, 0.7, 50_000, 99).unwrap();
        let a = run_certification(&protocol, &config).unwrap();
        let b = run_certification(&protocol, &config).unwrap();
        assert_eq!(a, b);
        for threads in [1, 3] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            let c = pool.install(|| run_certification(&protocol, &config).unwrap());
            assert_eq!(a, c);
        }
    }

    #[test]
    fn estimates_stay_within_four_sigma_across_seeds() {
        let protocol = cnot_protocol_from(0);
        let exact = exact_locc_guessing(&protocol, 0.5, 0.6).unwrap();
        let mut hits = 0;
        for seed in 0..100 {
            let config = CertificationConfig::new(0.5, 0.6, 20_000, seed).unwrap();
            let report = run_certification(&protocol, &config).unwrap();
            if (report.p_guess_est - exact).abs() < 4.0 * report.p_guess_stderr {
                hits += 1;
            }
        }
        assert!(hits >= 99, "only {hits}/100 seeds within 4 sigma");
    }

    #[test]
    fn noise_estimator_edge_cases() {
        let protocol = cnot_protocol_from(0);
        let est = estimate_noise(&[400, 0, 0, 0], &protocol).unwrap();
        assert_eq!(est.p_est, 0.0);
        assert!(est.in_range);
        let est = estimate_noise(&[100, 100, 100, 100], &protocol).unwrap();
        assert!((est.p_est - 1.0).abs() < tol::STRUCTURAL);
        assert!(matches!(
            estimate_noise(&[0, 0, 0, 0], &protocol),
            Err(Error::ZeroCounts { .. })
        ));
        // Fewer accepts than the depolarized floor: raw estimate above 1.
        let est = estimate_noise(&[10, 100, 100, 100], &protocol).unwrap();
        assert!(est.p_est > 1.0);
        assert!(!est.in_range);
    }

    #[test]
    fn noise_estimator_round_trip() {
        let protocol = cnot_protocol_from(0);
        let mut config = CertificationConfig::new(1.0, 0.5, 100_000, 11).unwrap();
        config.input_override = None;
        let report = run_certification(&protocol, &config).unwrap();
        assert!((report.p_est - 0.5).abs() < 3.0 * report.p_est_stderr);
        assert!(report.flags.iter().any(|f| f == "no-noiseless-trials"));
    }

    #[test]
    fn noise_estimator_is_unbiased() {
        let protocol = cnot_protocol_from(0);
        let mut sum = 0.0;
        for seed in 0..100 {
            let config = CertificationConfig::new(1.0, 0.3, 10_000, 1000 + seed).unwrap();
            let report = run_certification(&protocol, &config).unwrap();
            sum += report.p_est;
        }
        assert!((sum / 100.0 - 0.3).abs() < 0.01);
    }

    #[test]
    fn locc_optimality_for_named_gates() {
        let grid: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
        for gate in [gates::cnot(), gates::swap()] {
            let dev = verify_locc_optimality(&gate, &grid, &grid).unwrap();
            assert!(dev < tol::DERIVED, "deviation {dev:.3e}");
        }
    }

    #[test]
    fn locc_optimality_for_random_gates() {
        let grid: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for _ in 0..10 {
            let gate = haar_random_unitary(4, &mut rng);
            let dev = verify_locc_optimality(&gate, &grid, &grid).unwrap();
            assert!(dev < tol::DERIVED);
        }
    }

    #[test]
    fn povm_discrimination_is_perfect_for_valid_protocols() {
        for gate in [gates::cnot(), gates::swap(), gates::cz()] {
            let protocol = build_protocol(&gate, None).unwrap();
            let (err0, err1) = verify_perfect_povm_discrimination(&protocol).unwrap();
            assert!(err0 < tol::STRUCTURAL && err1 < tol::STRUCTURAL);
        }
    }

    #[test]
    fn entangled_image_breaks_perfect_discrimination() {
        // Hand-built "protocol" whose input CNOT maps to a Bell state: the
        // only-if direction of the perfect-discrimination lemma.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = PureState::from_slice(&[Complex64::new(s, 0.0), Complex64::new(s, 0.0)]).unwrap();
        let protocol = CertificationProtocol {
            gate: gates::cnot(),
            input: plus.tensor(&PureState::basis(2, 0)),
            alice_basis: (PureState::basis(2, 0), PureState::basis(2, 1)),
            bob_basis: (PureState::basis(2, 0), PureState::basis(2, 1)),
            accept_outcome: (0, 0),
        };
        let (_, err1) = verify_perfect_povm_discrimination(&protocol).unwrap();
        assert!((err1 - 1.0 / 6.0).abs() < tol::DERIVED);
    }

    #[test]
    fn distributions_are_valid_for_all_p() {
        let protocol = cnot_protocol_from(0);
        for k in 0..=10 {
            let p = k as f64 / 10.0;
            let ch = DepolarizingGateChannel::new(protocol.gate.clone(), p).unwrap();
            let dist = outcome_distribution(&protocol, &ch).unwrap();
            assert!(dist.iter().all(|&x| x >= 0.0));
            assert!((dist.iter().sum::<f64>() - 1.0).abs() < tol::STRUCTURAL);
        }
    }
}
