//! Test-only numerics that deliberately avoid the linear-algebra crate the
//! library uses, so spectral results are cross-checked by an independent
//! route.

use num_complex::Complex64;

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
/// Returns them sorted ascending. Panics if the sweep count explodes, which
/// for the 4x4 inputs used in tests it never does.
// Indexed loops match the textbook rotation formulas; iterators would not.
#[allow(clippy::needless_range_loop)]
pub fn jacobi_eigenvalues(h: &[Vec<Complex64>]) -> Vec<f64> {
    let n = h.len();
    let mut a: Vec<Vec<Complex64>> = h.to_vec();
    for sweep in 0.. {
        assert!(sweep < 100, "Jacobi did not converge");
        let off: f64 = (0..n)
            .flat_map(|p| (0..n).map(move |q| (p, q)))
            .filter(|(p, q)| p != q)
            .map(|(p, q)| a[p][q].norm_sqr())
            .sum();
        if off < 1e-28 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq.norm() < 1e-300 {
                    continue;
                }
                // Unitary rotation in the (p, q) plane zeroing a[p][q]:
                // diagonalize the 2x2 Hermitian block.
                let app = a[p][p].re;
                let aqq = a[q][q].re;
                let phi = apq.arg();
                let theta = 0.5 * (2.0 * apq.norm()).atan2(app - aqq);
                let (c, s) = (theta.cos(), theta.sin());
                let e_phi = Complex64::from_polar(1.0, phi);

                // Columns: v_p -> c v_p + s e^{-i phi} v_q,
                //          v_q -> -s e^{i phi} v_p + c v_q.
                for r in 0..n {
                    let (arp, arq) = (a[r][p], a[r][q]);
                    a[r][p] = arp * c + arq * s * e_phi.conj();
                    a[r][q] = -arp * s * e_phi + arq * c;
                }
                for r in 0..n {
                    let (apr, aqr) = (a[p][r], a[q][r]);
                    a[p][r] = apr * c + aqr * s * e_phi;
                    a[q][r] = -apr * s * e_phi.conj() + aqr * c;
                }
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|k| a[k][k].re).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eigs
}

/// Sum of absolute eigenvalues: the trace norm of a Hermitian matrix.
pub fn jacobi_trace_norm(h: &[Vec<Complex64>]) -> f64 {
    jacobi_eigenvalues(h).iter().map(|x| x.abs()).sum()
}
