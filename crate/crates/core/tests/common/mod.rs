//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use nalgebra::{DMatrix, Matrix3, Vector3};
use num_complex::Complex64;
use qrelax::encoding::{Observable, PauliAxis};
use qrelax::graph::Graph;

/// Plain 2^n enumeration of the maximum cut.
pub fn naive_max_cut(g: &Graph) -> f64 {
    (0u64..1 << g.n())
        .map(|mask| {
            g.edges()
                .iter()
                .filter(|e| (mask >> e.u & 1) != (mask >> e.v & 1))
                .map(|e| e.w)
                .sum::<f64>()
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Least-squares fit of `A cos t + B sin t + C` to samples; returns the
/// largest absolute residual.
pub fn sinusoid_residual(samples: &[(f64, f64)]) -> f64 {
    let mut ata = Matrix3::zeros();
    let mut atb = Vector3::zeros();
    for &(t, y) in samples {
        let row = Vector3::new(t.cos(), t.sin(), 1.0);
        ata += row * row.transpose();
        atb += row * y;
    }
    let coef = ata.lu().solve(&atb).expect("well-posed fit");
    samples
        .iter()
        .map(|&(t, y)| (coef[0] * t.cos() + coef[1] * t.sin() + coef[2] - y).abs())
        .fold(0.0, f64::max)
}

fn pauli(axis: Option<PauliAxis>) -> DMatrix<Complex64> {
    let (o, l, i) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0));
    let entries = match axis {
        None => [l, o, o, l],
        Some(PauliAxis::X) => [o, l, l, o],
        Some(PauliAxis::Y) => [o, -i, i, o],
        Some(PauliAxis::Z) => [l, o, o, -l],
    };
    DMatrix::from_row_slice(2, 2, &entries)
}

/// Dense Hermitian matrix of an observable built from Kronecker products,
/// qubit 0 rightmost.
pub fn dense_matrix(o: &Observable, q: usize) -> DMatrix<Complex64> {
    let dim = 1 << q;
    let mut m = DMatrix::<Complex64>::identity(dim, dim) * Complex64::new(o.constant, 0.0);
    for t in &o.terms {
        let mut p = DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
        for k in (0..q).rev() {
            p = p.kronecker(&pauli(t.paulis.get(&k).copied()));
        }
        m += p * Complex64::new(t.coeff, 0.0);
    }
    m
}

/// Largest eigenvalue by full Hermitian diagonalization.
pub fn lambda_max(o: &Observable, q: usize) -> f64 {
    let m = dense_matrix(o, q);
    m.symmetric_eigen().eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// Probability that magic rounding of a single qubit holding the QRAC code
/// word `x` decodes to `y`, brute-forced from the eight projector overlaps
/// `|<mu(y)|rho_x>|^2` over the four bases (each chosen with probability 1/4).
pub fn magic_decode_probability(x: [bool; 3], y: [bool; 3]) -> f64 {
    use qrelax::encoding::{bloch_to_amplitudes, qrac_bloch};
    use qrelax::rounding::MagicBasis;
    let psi = bloch_to_amplitudes(qrac_bloch(x));
    let mut p = 0.0;
    for basis in MagicBasis::ALL {
        for outcome in [false, true] {
            if basis.decode(outcome) != y {
                continue;
            }
            let mu = bloch_to_amplitudes(basis.bloch(outcome));
            let overlap = (mu[0].conj() * psi[0] + mu[1].conj() * psi[1]).norm_sqr();
            p += 0.25 * overlap;
        }
    }
    p
}

pub fn triple(code: u8) -> [bool; 3] {
    [code & 1 == 1, code >> 1 & 1 == 1, code >> 2 & 1 == 1]
}
