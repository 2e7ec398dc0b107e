//! Dense pure-state simulator.
//!
//! Qubit 0 is the least-significant bit of the amplitude index.
//! `Ry(t) = exp(-i t Y / 2)`, `Rz(t) = exp(-i t Z / 2)`.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::encoding::{Observable, PauliAxis, PauliTerm};
use crate::error::{Error, Result};
use crate::graph::check_len;

/// Memory guard: 2^24 amplitudes is 256 MiB.
pub const MAX_QUBITS: usize = 24;

/// Row-major 2x2 complex matrix.
pub type Mat2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn identity() -> Mat2 {
    [[ONE, ZERO], [ZERO, ONE]]
}

pub fn hadamard() -> Mat2 {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

pub fn ry_matrix(theta: f64) -> Mat2 {
    let (s, c) = (theta / 2.0).sin_cos();
    [[Complex64::new(c, 0.0), Complex64::new(-s, 0.0)], [Complex64::new(s, 0.0), Complex64::new(c, 0.0)]]
}

pub fn rz_matrix(theta: f64) -> Mat2 {
    [[Complex64::from_polar(1.0, -theta / 2.0), ZERO], [ZERO, Complex64::from_polar(1.0, theta / 2.0)]]
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn dagger(a: &Mat2) -> Mat2 {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

/// Largest entry of `|U^dagger U - I|`.
pub fn unitarity_defect(u: &Mat2) -> f64 {
    let p = mat_mul(&dagger(u), u);
    let id = identity();
    (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .map(|(i, j)| (p[i][j] - id[i][j]).norm())
        .fold(0.0, f64::max)
}

/// Basis change mapping the +1 eigenvector of `axis` to `|0>`.
pub fn axis_rotation(axis: PauliAxis) -> Mat2 {
    match axis {
        PauliAxis::X => hadamard(),
        // H S^dagger
        PauliAxis::Y => mat_mul(&hadamard(), &[[ONE, ZERO], [ZERO, Complex64::new(0.0, -1.0)]]),
        PauliAxis::Z => identity(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    Ry(usize, f64),
    Rz(usize, f64),
    Cnot { control: usize, target: usize },
    U1q(usize, Mat2),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

fn check_qubits(q: usize) -> Result<()> {
    if (1..=MAX_QUBITS).contains(&q) {
        Ok(())
    } else {
        Err(Error::QubitCount(q))
    }
}

impl StateVector {
    /// `|0...0>` on `q` qubits.
    pub fn zero(q: usize) -> Result<Self> {
        check_qubits(q)?;
        let mut amps = vec![ZERO; 1 << q];
        amps[0] = ONE;
        Ok(Self { num_qubits: q, amps })
    }

    /// Takes raw amplitudes; the length must be a power of two and the norm 1
    /// within 1e-9.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let q = amps.len().trailing_zeros() as usize;
        if !amps.len().is_power_of_two() {
            return Err(Error::Parse(format!("{} amplitudes is not a power of two", amps.len())));
        }
        check_qubits(q)?;
        let s = Self { num_qubits: q, amps };
        let norm = s.norm_sqr();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::Parse(format!("state norm^2 is {norm}, expected 1")));
        }
        Ok(s)
    }

    /// Tensor product of single-qubit states; `factors[k]` is qubit `k`.
    pub fn product(factors: &[[Complex64; 2]]) -> Result<Self> {
        check_qubits(factors.len())?;
        let mut amps = vec![ONE];
        for f in factors.iter().rev() {
            amps = amps.iter().flat_map(|&a| [a * f[0], a * f[1]]).collect();
        }
        Ok(Self { num_qubits: factors.len(), amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index < self.num_qubits {
            Ok(())
        } else {
            Err(Error::QubitIndex { index, num_qubits: self.num_qubits })
        }
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        match *gate {
            Gate::Ry(q, theta) => {
                self.check_index(q)?;
                let (s, c) = (theta / 2.0).sin_cos();
                self.for_each_pair(q, |a0, a1| {
                    let (x, y) = (*a0, *a1);
                    *a0 = x * c - y * s;
                    *a1 = x * s + y * c;
                });
            }
            Gate::Rz(q, theta) => {
                self.check_index(q)?;
                let lo = Complex64::from_polar(1.0, -theta / 2.0);
                let hi = lo.conj();
                self.for_each_pair(q, |a0, a1| {
                    *a0 *= lo;
                    *a1 *= hi;
                });
            }
            Gate::Cnot { control, target } => {
                self.check_index(control)?;
                self.check_index(target)?;
                if control == target {
                    return Err(Error::SameControlTarget(control));
                }
                let (cbit, tbit) = (1usize << control, 1usize << target);
                for i in 0..self.amps.len() {
                    if i & cbit != 0 && i & tbit == 0 {
                        self.amps.swap(i, i | tbit);
                    }
                }
            }
            Gate::U1q(q, ref m) => {
                self.check_index(q)?;
                self.apply_matrix(q, m);
            }
        }
        Ok(())
    }

    pub(crate) fn apply_matrix(&mut self, q: usize, m: &Mat2) {
        self.for_each_pair(q, |a0, a1| {
            let (x, y) = (*a0, *a1);
            *a0 = m[0][0] * x + m[0][1] * y;
            *a1 = m[1][0] * x + m[1][1] * y;
        });
    }

    /// Visits every amplitude pair differing only in bit `q`.
    fn for_each_pair(&mut self, q: usize, mut f: impl FnMut(&mut Complex64, &mut Complex64)) {
        let stride = 1usize << q;
        for block in self.amps.chunks_exact_mut(stride << 1) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a0, a1) in lo.iter_mut().zip(hi) {
                f(a0, a1);
            }
        }
    }

    /// `<s|P|s>` for one Pauli string (coefficient ignored).
    pub fn pauli_expectation(&self, term: &PauliTerm) -> Result<f64> {
        let (mut flip, mut sign_mask, mut ny) = (0usize, 0usize, 0u32);
        for (&q, &axis) in &term.paulis {
            self.check_index(q)?;
            let bit = 1usize << q;
            match axis {
                PauliAxis::X => flip |= bit,
                PauliAxis::Y => {
                    flip |= bit;
                    sign_mask |= bit;
                    ny += 1;
                }
                PauliAxis::Z => sign_mask |= bit,
            }
        }
        Ok(self.masked_expectation(flip, sign_mask, ny))
    }

    /// P|i> = i^ny (-1)^{popcount(i & sign_mask)} |i ^ flip>.
    fn masked_expectation(&self, flip: usize, sign_mask: usize, ny: u32) -> f64 {
        let amps = &self.amps;
        if flip == 0 {
            return amps
                .iter()
                .enumerate()
                .map(|(i, a)| if (i & sign_mask).count_ones() & 1 == 0 { a.norm_sqr() } else { -a.norm_sqr() })
                .sum();
        }
        let mut acc = ZERO;
        for (i, a) in amps.iter().enumerate() {
            let v = amps[i ^ flip].conj() * a;
            if (i & sign_mask).count_ones() & 1 == 0 {
                acc += v;
            } else {
                acc -= v;
            }
        }
        // i^ny
        match ny % 4 {
            0 => acc.re,
            1 => -acc.im,
            2 => -acc.re,
            _ => acc.im,
        }
    }

    /// Exact `<s|O|s>`.
    pub fn expectation(&self, o: &Observable) -> Result<f64> {
        let mut total = o.constant;
        for t in &o.terms {
            total += t.coeff * self.pauli_expectation(t)?;
        }
        Ok(total)
    }

    /// Copy of the state with `rotations[q]` applied to qubit `q`.
    pub fn rotated(&self, rotations: &[Mat2]) -> Result<Self> {
        check_len(self.num_qubits, rotations.len())?;
        let mut out = self.clone();
        for (q, m) in rotations.iter().enumerate() {
            let defect = unitarity_defect(m);
            if defect > 1e-9 {
                return Err(Error::NotUnitary(defect));
            }
            out.apply_matrix(q, m);
        }
        Ok(out)
    }
}

/// Cumulative distribution over basis states for repeated sampling.
#[derive(Debug, Clone)]
pub struct Sampler {
    cdf: Vec<f64>,
}

impl Sampler {
    pub fn new(s: &StateVector) -> Self {
        let mut acc = 0.0;
        let cdf = s
            .amps
            .iter()
            .map(|a| {
                acc += a.norm_sqr();
                acc
            })
            .collect();
        Self { cdf }
    }

    /// One basis-state index; bit `q` is the outcome on qubit `q`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = *self.cdf.last().expect("non-empty");
        let r = rng.random::<f64>() * total;
        self.cdf.partition_point(|&c| c <= r).min(self.cdf.len() - 1)
    }
}

/// Measures every qubit after its basis change `rotations[q]`, `shots` times.
pub fn sample_product_basis<R: Rng + ?Sized>(
    s: &StateVector,
    rotations: &[Mat2],
    shots: usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    let sampler = Sampler::new(&s.rotated(rotations)?);
    Ok((0..shots).map(|_| sampler.sample(rng)).collect())
}

/// Serialized form of a state: `{"num_qubits": q, "amps": [[re, im], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub num_qubits: usize,
    pub amps: Vec<[f64; 2]>,
}

impl From<&StateVector> for StateFile {
    fn from(s: &StateVector) -> Self {
        Self { num_qubits: s.num_qubits, amps: s.amps.iter().map(|a| [a.re, a.im]).collect() }
    }
}

impl TryFrom<StateFile> for StateVector {
    type Error = Error;

    fn try_from(f: StateFile) -> Result<Self> {
        let s = Self::from_amplitudes(f.amps.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())?;
        check_len(f.num_qubits, s.num_qubits)?;
        Ok(s)
    }
}
