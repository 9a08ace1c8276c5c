//! Acceptance checks for the toolkit, one test per criterion. Each prints a
//! single PASS line on success (visible with --nocapture); a failure panics
//! with the offending numbers.

use gatecert::canonical::{find_product_pair, kak_decompose};
use gatecert::certify::{
    build_protocol, exact_locc_guessing, run_certification, verify_locc_optimality,
    verify_perfect_povm_discrimination, CertificationConfig,
};
use gatecert::channels::{
    fidelity_bounds, process_fidelity, truth_table_fidelity, twirl_depolarize,
    DepolarizingGateChannel, TruthTableBasis,
};
use gatecert::discrimination::{analytic_guessing, helstrom_numeric, regime, Regime};
use gatecert::gates;
use gatecert::qcore::{haar_random_unitary, random_density};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn criterion_1_headline_value() {
    let analytic = analytic_guessing(0.5, 1.0);
    assert_eq!(analytic, 0.875, "closed form at q=1/2, p=1 must be exact");
    let protocol = build_protocol(&gates::cnot(), None).unwrap();
    let exact = exact_locc_guessing(&protocol, 0.5, 1.0).unwrap();
    assert!(
        (exact - 0.875).abs() < 1e-12,
        "exact LOCC value for CNOT is {exact}, expected 0.875"
    );
    println!("acceptance 1: PASS  headline guessing probability 0.875 (closed form exact, CNOT protocol within 1e-12)");
}

#[test]
fn criterion_2_curve_reproduction() {
    let protocol = build_protocol(&gates::cnot(), None).unwrap();
    let mut within = 0;
    for k in 0..=10 {
        let p = k as f64 / 10.0;
        let exact = exact_locc_guessing(&protocol, 0.5, p).unwrap();
        let line = 0.5 + 3.0 * p / 8.0;
        assert!(
            (exact - line).abs() < 1e-10,
            "exact curve deviates from 1/2 + 3p/8 at p={p}: {exact} vs {line}"
        );
        let config = CertificationConfig::new(0.5, p, 1_000_000, 100 + k).unwrap();
        let report = run_certification(&protocol, &config).unwrap();
        if (report.p_guess_est - exact).abs() <= 3.0 * report.p_guess_stderr + 1e-12 {
            within += 1;
        }
    }
    assert!(within >= 10, "only {within}/11 Monte Carlo points within 3 sigma");
    println!("acceptance 2: PASS  curve equals 1/2 + 3p/8 to 1e-10; {within}/11 million-trial estimates within 3 sigma");
}

#[test]
fn criterion_3_locc_optimality() {
    let grid: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(300);
    let mut worst_dev: f64 = 0.0;
    let mut worst_err: f64 = 0.0;
    for _ in 0..100 {
        let gate = haar_random_unitary(4, &mut rng);
        let dev = verify_locc_optimality(&gate, &grid, &grid).unwrap();
        assert!(dev < 1e-10, "LOCC/analytic deviation {dev:.3e}");
        worst_dev = worst_dev.max(dev);
        let protocol = build_protocol(&gate, None).unwrap();
        let (e0, e1) = verify_perfect_povm_discrimination(&protocol).unwrap();
        assert!(e0 < 1e-12 && e1 < 1e-12, "POVM errors ({e0:.3e}, {e1:.3e})");
        worst_err = worst_err.max(e0.max(e1));
    }
    println!("acceptance 3: PASS  100 Haar gates: worst grid deviation {worst_dev:.3e}, worst POVM error {worst_err:.3e}");
}

#[test]
fn criterion_4_product_pair_existence() {
    let mut rng = ChaCha8Rng::seed_from_u64(400);
    let mut worst_schmidt: f64 = 0.0;
    let mut worst_recon: f64 = 0.0;
    for i in 0..1000 {
        let gate = haar_random_unitary(4, &mut rng);
        let pair = find_product_pair(&gate)
            .unwrap_or_else(|e| panic!("gate {i}: no product pair ({e})"));
        let rs = pair.input_schmidt_residual().max(pair.output_schmidt_residual());
        assert!(rs < 1e-8, "gate {i}: Schmidt residual {rs:.3e}");
        worst_schmidt = worst_schmidt.max(rs);
        let recon = kak_decompose(&gate).unwrap().residual(&gate);
        assert!(recon < 1e-8, "gate {i}: reconstruction residual {recon:.3e}");
        worst_recon = worst_recon.max(recon);
    }
    println!("acceptance 4: PASS  1000 Haar gates: worst Schmidt residual {worst_schmidt:.3e}, worst KAK reconstruction {worst_recon:.3e}");
}

#[test]
fn criterion_5_noise_estimator() {
    let protocol = build_protocol(&gates::cnot(), None).unwrap();
    let mut close = 0;
    for (i, p_true) in [0.1, 0.3, 0.5, 0.9, 1.0].into_iter().enumerate() {
        let config = CertificationConfig::new(1.0, p_true, 100_000, 500 + i as u64).unwrap();
        let report = run_certification(&protocol, &config).unwrap();
        if (report.p_est - p_true).abs() < 3.0 * report.p_est_stderr {
            close += 1;
        }
    }
    assert!(close >= 4, "only {close}/5 estimates within 3 stderr");

    let mut sum = 0.0;
    for seed in 0..100 {
        let config = CertificationConfig::new(1.0, 0.3, 10_000, 5000 + seed).unwrap();
        sum += run_certification(&protocol, &config).unwrap().p_est;
    }
    let bias = (sum / 100.0 - 0.3).abs();
    assert!(bias < 0.01, "mean bias {bias:.4} at p = 0.3");
    println!("acceptance 5: PASS  {close}/5 point estimates within 3 stderr; mean bias {bias:.2e} at p = 0.3");
}

#[test]
fn criterion_6_channel_consistency() {
    let mut rng = ChaCha8Rng::seed_from_u64(600);
    for _ in 0..100 {
        let rho = random_density(4, &mut rng);
        let twirled = twirl_depolarize(&rho);
        let mut dev: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j { 0.25 } else { 0.0 };
                dev = dev.max((twirled.operator().matrix()[(i, j)] - expected).norm());
            }
        }
        assert!(dev < 1e-12, "twirl deviates from I/4 by {dev:.3e}");
    }

    let reference = gates::cnot();
    let ideal = DepolarizingGateChannel::new(reference.clone(), 0.0).unwrap().choi();
    for k in 0..=5 {
        let p = 0.2 * k as f64;
        let ch = DepolarizingGateChannel::new(reference.clone(), p).unwrap();
        let f = process_fidelity(&ideal, &ch.choi()).unwrap();
        let f_zz = truth_table_fidelity(&ch, TruthTableBasis::Zz, &reference).unwrap();
        let f_xx = truth_table_fidelity(&ch, TruthTableBasis::Xx, &reference).unwrap();
        let (lo, hi) = fidelity_bounds(f_zz, f_xx);
        assert!(
            f >= lo - 1e-12 && f <= hi + 1e-12,
            "p={p}: process fidelity {f} outside [{lo}, {hi}]"
        );
    }

    let (lo, hi) = fidelity_bounds(0.96, 0.96);
    // 0.96 + 0.96 - 1.0 is the correctly rounded f64 result, one ulp under
    // the 0.92 literal.
    assert!((lo - 0.92).abs() <= f64::EPSILON, "lower bound {lo} vs 0.92");
    assert_eq!(hi, 0.96, "upper bound must be exact");
    println!("acceptance 6: PASS  twirl = I/4 to 1e-12 on 100 states; fidelity bracketed at all p; (0.96, 0.96) -> [0.92, 0.96]");
}

#[test]
fn criterion_7_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(700);
    let q_grid = [0.1, 0.3, 0.5, 0.7, 0.9];
    let p_grid = [0.2, 0.4, 0.6, 0.8, 1.0];
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let gate = haar_random_unitary(4, &mut rng);
        let protocol = build_protocol(&gate, None).unwrap();
        let noiseless = DepolarizingGateChannel::new(gate.clone(), 0.0).unwrap();
        let rho0 = noiseless.apply_pure(&protocol.input);
        for q in q_grid {
            for p in p_grid {
                let noisy = DepolarizingGateChannel::new(gate.clone(), p).unwrap();
                let rho1 = noisy.apply_pure(&protocol.input);
                let numeric = helstrom_numeric(&rho0, &rho1, q).unwrap();
                let closed = analytic_guessing(q, p);
                let dev = (numeric - closed).abs();
                assert!(dev < 1e-10, "q={q}, p={p}: Helstrom {numeric} vs closed {closed}");
                worst = worst.max(dev);
                // Sanity: the regime function agrees with which branch of
                // the closed form is active.
                let c = 1.0 - 2.0 * q + 0.75 * p * q;
                assert_eq!(regime(q, p) == Regime::Measure, c >= 0.0);
            }
        }
    }
    println!("acceptance 7: PASS  trace-norm Helstrom equals the closed form at 50 gates x 25 (q, p) points, worst deviation {worst:.3e}");
}
