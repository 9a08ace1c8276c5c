//! Haar-random unitaries and random states for tests and examples.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{DensityOperator, Operator, PureState};

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Haar-distributed random unitary: orthonormalize the columns of a Gaussian
/// complex matrix (QR with the R diagonal made real positive, which the
/// modified Gram-Schmidt below produces directly).
pub fn haar_random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Operator {
    loop {
        let mut cols: Vec<DVector<Complex64>> = (0..dim)
            .map(|_| DVector::from_fn(dim, |_, _| gaussian_complex(rng)))
            .collect();
        let mut ok = true;
        for k in 0..dim {
            for j in 0..k {
                let proj = cols[j].dotc(&cols[k]);
                let prev = cols[j].clone();
                cols[k] -= prev * proj;
            }
            let norm = cols[k].norm();
            if norm < 1e-8 {
                // Astronomically unlikely near-singular draw; resample.
                ok = false;
                break;
            }
            cols[k] /= Complex64::new(norm, 0.0);
        }
        if !ok {
            continue;
        }
        let m = DMatrix::from_fn(dim, dim, |i, j| cols[j][i]);
        return Operator::new(m);
    }
}

/// Uniformly random normalized state vector.
pub fn random_pure_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> PureState {
    loop {
        let v = DVector::from_fn(dim, |_, _| gaussian_complex(rng));
        if let Ok(psi) = PureState::normalized(v) {
            return psi;
        }
    }
}

/// Random full-rank density operator, G G^dag / tr(G G^dag) for Gaussian G.
pub fn random_density<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityOperator {
    let g = DMatrix::from_fn(dim, dim, |_, _| gaussian_complex(rng));
    let w = &g * g.adjoint();
    let tr = w.trace();
    DensityOperator::new(Operator::new(w / tr)).expect("Wishart matrix is a valid density operator")
}
