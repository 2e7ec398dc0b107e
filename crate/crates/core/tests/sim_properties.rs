use std::f64::consts::TAU;

use num_complex::Complex64;
use proptest::prelude::*;
use qrelax::encoding::{Observable, PauliAxis};
use qrelax::sim::{identity, sample_product_basis, Gate, Mat2, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_unitary(rng: &mut ChaCha8Rng) -> Mat2 {
    // e^{i a} [[e^{i b} cos t, e^{i d} sin t], [-e^{-i d} sin t, e^{-i b} cos t]]
    let (a, b, d, t) = (rng.random_range(0.0..TAU), rng.random_range(0.0..TAU), rng.random_range(0.0..TAU), rng.random_range(0.0..TAU));
    let g = Complex64::from_polar(1.0, a);
    [
        [g * Complex64::from_polar(t.cos(), b), g * Complex64::from_polar(t.sin(), d)],
        [-g * Complex64::from_polar(t.sin(), -d), g * Complex64::from_polar(t.cos(), -b)],
    ]
}

fn random_gate(rng: &mut ChaCha8Rng, q: usize) -> Gate {
    let k = rng.random_range(0..q);
    match rng.random_range(0..4) {
        0 => Gate::Ry(k, rng.random_range(-TAU..TAU)),
        1 => Gate::Rz(k, rng.random_range(-TAU..TAU)),
        2 if q > 1 => {
            let t = (k + rng.random_range(1..q)) % q;
            Gate::Cnot { control: k, target: t }
        }
        _ => Gate::U1q(k, random_unitary(rng)),
    }
}

fn random_state(rng: &mut ChaCha8Rng, q: usize, gates: usize) -> StateVector {
    let mut s = StateVector::zero(q).unwrap();
    for _ in 0..gates {
        s.apply(&random_gate(rng, q)).unwrap();
    }
    s
}

fn random_paulis(rng: &mut ChaCha8Rng, q: usize, p: f64) -> Vec<(usize, PauliAxis)> {
    let mut paulis = Vec::new();
    for k in 0..q {
        if rng.random::<f64>() < p {
            paulis.push((k, PauliAxis::ALL[rng.random_range(0..3)]));
        }
    }
    paulis
}

fn random_observable(rng: &mut ChaCha8Rng, q: usize, terms: usize) -> Observable {
    let mut o = Observable::constant(rng.random_range(-1.0..1.0));
    for _ in 0..terms {
        let paulis = random_paulis(rng, q, 0.6);
        o.push(rng.random_range(-2.0..2.0), paulis);
    }
    o
}

type Dense = Vec<Vec<Complex64>>;

fn pauli_matrix(axis: Option<PauliAxis>) -> Dense {
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    match axis {
        None => vec![vec![l, o], vec![o, l]],
        Some(PauliAxis::X) => vec![vec![o, l], vec![l, o]],
        Some(PauliAxis::Y) => vec![vec![o, -i], vec![i, o]],
        Some(PauliAxis::Z) => vec![vec![l, o], vec![o, -l]],
    }
}

fn kron(a: &Dense, b: &Dense) -> Dense {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0, 0.0); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// Dense matrix of an observable; qubit 0 is the rightmost Kronecker factor.
fn dense_observable(o: &Observable, q: usize) -> Dense {
    let dim = 1 << q;
    let mut m = vec![vec![c(0.0, 0.0); dim]; dim];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = c(o.constant, 0.0);
    }
    for t in &o.terms {
        let mut p = vec![vec![c(1.0, 0.0)]];
        for k in (0..q).rev() {
            p = kron(&p, &pauli_matrix(t.paulis.get(&k).copied()));
        }
        for i in 0..dim {
            for j in 0..dim {
                m[i][j] += p[i][j] * t.coeff;
            }
        }
    }
    m
}

fn dense_expectation(m: &Dense, s: &StateVector) -> Complex64 {
    let a = s.amplitudes();
    let mut acc = c(0.0, 0.0);
    for i in 0..a.len() {
        for j in 0..a.len() {
            acc += a[i].conj() * m[i][j] * a[j];
        }
    }
    acc
}

#[test]
fn norm_survives_long_random_circuits() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for q in [1, 3, 6] {
        let s = random_state(&mut rng, q, 1000);
        assert!((s.norm_sqr().sqrt() - 1.0).abs() <= 1e-9);
    }
}

#[test]
fn sampled_z_matches_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let q = 4;
    let s = random_state(&mut rng, q, 40);
    let shots = 100_000;
    let out = sample_product_basis(&s, &vec![identity(); q], shots, &mut rng).unwrap();
    for k in 0..q {
        let mut z = Observable::default();
        z.push(1.0, [(k, PauliAxis::Z)]);
        let exact = s.expectation(&z).unwrap();
        let mean = out.iter().map(|&b| if b >> k & 1 == 0 { 1.0 } else { -1.0 }).sum::<f64>() / shots as f64;
        let se = ((1.0 - exact * exact) / shots as f64).sqrt().max(1e-12);
        assert!((mean - exact).abs() <= 5.0 * se, "qubit {k}: {mean} vs {exact}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expectation_matches_dense_matrix(seed in any::<u64>(), q in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_state(&mut rng, q, 30);
        let o = random_observable(&mut rng, q, 6);
        let fast = s.expectation(&o).unwrap();
        let dense = dense_expectation(&dense_observable(&o, q), &s);
        prop_assert!(dense.im.abs() <= 1e-9);
        prop_assert!((fast - dense.re).abs() <= 1e-10, "{} vs {}", fast, dense.re);
    }

    #[test]
    fn single_pauli_expectation_is_bounded(seed in any::<u64>(), q in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_state(&mut rng, q, 50);
        let mut o = Observable::default();
        let paulis = random_paulis(&mut rng, q, 0.5);
        o.push(1.0, paulis);
        prop_assume!(!o.terms.is_empty());
        let e = s.expectation(&o).unwrap();
        prop_assert!((-1.0 - 1e-9..=1.0 + 1e-9).contains(&e));
    }

    #[test]
    fn every_gate_preserves_norm(seed in any::<u64>(), q in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = random_state(&mut rng, q, 5);
        for _ in 0..20 {
            let before = s.norm_sqr();
            s.apply(&random_gate(&mut rng, q)).unwrap();
            prop_assert!((s.norm_sqr() - before).abs() <= 1e-12);
        }
    }
}
