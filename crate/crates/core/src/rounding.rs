//! Rounding a relaxed state back to a cut.
//!
//! Pauli rounding reads each vertex from the sign of its own Pauli
//! expectation. Magic-state rounding measures every qubit in one of four
//! randomly chosen bases whose two outcomes are antipodal QRAC code words,
//! decoding all three bits of the qubit at once.

use std::collections::HashMap;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::encoding::{bloch_to_amplitudes, PauliAxis, QubitAssignment};
use crate::error::Result;
use crate::graph::{check_len, cut_value, Graph};
use crate::sim::{axis_rotation, sample_product_basis, Mat2, Sampler, StateVector};

/// Default shot count for both rounding procedures.
pub const DEFAULT_SHOTS: usize = 1000;

/// Exact expectations closer to zero than this count as zero.
pub const EXACT_ZERO: f64 = 1e-12;

/// Cap on cached rotated distributions in [`magic_round`].
const MAGIC_CACHE_LIMIT: usize = 4096;

/// One of the four magic measurement bases `{mu+_i, mu-_i}`, `i` in 1..=4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MagicBasis(u8);

impl MagicBasis {
    pub const ALL: [MagicBasis; 4] = [MagicBasis(1), MagicBasis(2), MagicBasis(3), MagicBasis(4)];

    pub fn new(index: u8) -> Option<Self> {
        (1..=4).contains(&index).then_some(Self(index))
    }

    pub fn index(self) -> u8 {
        self.0
    }

    /// Axis signs `(s_X, s_Y, s_Z)` of `mu+_i`.
    pub fn signs(self) -> [f64; 3] {
        match self.0 {
            1 => [1.0, 1.0, 1.0],
            2 => [1.0, -1.0, -1.0],
            3 => [-1.0, 1.0, -1.0],
            _ => [-1.0, -1.0, 1.0],
        }
    }

    /// Bloch vector of `mu+_i` (outcome 0) or `mu-_i` (outcome 1).
    pub fn bloch(self, outcome: bool) -> [f64; 3] {
        let s = if outcome { -1.0 } else { 1.0 } / 3f64.sqrt();
        self.signs().map(|x| x * s)
    }

    /// Bits `(b_X, b_Y, b_Z)` decoded from a measurement outcome.
    pub fn decode(self, outcome: bool) -> [bool; 3] {
        self.signs().map(|s| (s < 0.0) != outcome)
    }
}

/// Unitary `V` with `V mu+_i V^dagger = |0><0|` (and so `mu-_i` to `|1>`).
pub fn magic_basis_rotation(basis: MagicBasis) -> Mat2 {
    let [c, e] = bloch_to_amplitudes(basis.bloch(false));
    // U = [[c, -conj(e)], [e, c]] maps |0> to mu+_i; V = U^dagger.
    [[c.conj(), e.conj()], [-e, c]]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PauliMode {
    /// Exact expectations from the state vector.
    Exact,
    /// Empirical means from this many shots per Pauli basis.
    Shots(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RoundingMethod {
    Pauli,
    Magic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundingReport {
    pub best_bits: Vec<bool>,
    pub best_value: f64,
    /// Cut value of every shot, magic rounding only.
    pub per_shot_values: Vec<f64>,
    pub method: RoundingMethod,
}

/// Per qubit, the expectation of X, Y and Z.
pub fn pauli_estimates<R: Rng + ?Sized>(s: &StateVector, mode: PauliMode, rng: &mut R) -> Result<Vec<[f64; 3]>> {
    let q = s.num_qubits();
    let mut est = vec![[0.0; 3]; q];
    match mode {
        PauliMode::Exact => {
            for (qubit, row) in est.iter_mut().enumerate() {
                for axis in PauliAxis::ALL {
                    let term = crate::encoding::PauliTerm { coeff: 1.0, paulis: [(qubit, axis)].into() };
                    row[axis.index()] = s.pauli_expectation(&term)?;
                }
            }
        }
        PauliMode::Shots(shots) => {
            for axis in PauliAxis::ALL {
                let rotations = vec![axis_rotation(axis); q];
                let mut ones = vec![0usize; q];
                for outcome in sample_product_basis(s, &rotations, shots, rng)? {
                    for (qubit, count) in ones.iter_mut().enumerate() {
                        *count += outcome >> qubit & 1;
                    }
                }
                for (row, &n1) in est.iter_mut().zip(&ones) {
                    row[axis.index()] = (shots as f64 - 2.0 * n1 as f64) / shots.max(1) as f64;
                }
            }
        }
    }
    Ok(est)
}

/// Pauli rounding: bit 0 for a positive estimate, 1 for negative, a fair coin
/// at zero.
pub fn pauli_round<R: Rng + ?Sized>(
    s: &StateVector,
    a: &QubitAssignment,
    g: &Graph,
    mode: PauliMode,
    rng: &mut R,
) -> Result<RoundingReport> {
    check_len(a.num_qubits(), s.num_qubits())?;
    check_len(g.n(), a.num_vertices())?;
    let est = pauli_estimates(s, mode, rng)?;
    let zero = match mode {
        PauliMode::Exact => EXACT_ZERO,
        PauliMode::Shots(_) => 0.0,
    };
    let bits: Vec<bool> = a
        .slots()
        .iter()
        .map(|slot| {
            let e = est[slot.qubit][slot.axis.index()];
            if e.abs() <= zero {
                rng.random()
            } else {
                e < 0.0
            }
        })
        .collect();
    let value = cut_value(g, &bits)?;
    Ok(RoundingReport { best_bits: bits, best_value: value, per_shot_values: Vec::new(), method: RoundingMethod::Pauli })
}

/// Draws magic-state measurement shots from a fixed relaxed state.
///
/// Each shot picks a basis per qubit uniformly, samples the joint outcome of
/// the rotated state, and decodes every vertex on each qubit from that
/// qubit's outcome. Rotated distributions are cached per basis choice, which
/// leaves the sampled statistics unchanged.
pub struct MagicSampler<'a> {
    state: &'a StateVector,
    contents: Vec<[Option<usize>; 3]>,
    rotations: [Mat2; 4],
    cache: HashMap<Vec<u8>, Sampler>,
    choice: Vec<u8>,
    bits: Vec<bool>,
}

impl<'a> MagicSampler<'a> {
    pub fn new(state: &'a StateVector, a: &QubitAssignment) -> Result<Self> {
        check_len(a.num_qubits(), state.num_qubits())?;
        Ok(Self {
            state,
            contents: a.qubit_contents(),
            rotations: MagicBasis::ALL.map(magic_basis_rotation),
            cache: HashMap::new(),
            choice: vec![0; a.num_qubits()],
            bits: vec![false; a.num_vertices()],
        })
    }

    /// Bases chosen for the most recent shot.
    pub fn last_bases(&self) -> impl Iterator<Item = MagicBasis> + '_ {
        self.choice.iter().map(|&c| MagicBasis::ALL[c as usize])
    }

    /// One shot; returns the decoded vertex bits.
    pub fn shot<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<&[bool]> {
        for c in self.choice.iter_mut() {
            *c = rng.random_range(0..4);
        }
        let outcome = match self.cache.get(&self.choice) {
            Some(sampler) => sampler.sample(rng),
            None => {
                let rots: Vec<Mat2> = self.choice.iter().map(|&c| self.rotations[c as usize]).collect();
                let sampler = Sampler::new(&self.state.rotated(&rots)?);
                let outcome = sampler.sample(rng);
                if self.cache.len() < MAGIC_CACHE_LIMIT {
                    self.cache.insert(self.choice.clone(), sampler);
                }
                outcome
            }
        };
        for (qubit, slots) in self.contents.iter().enumerate() {
            let decoded = MagicBasis::ALL[self.choice[qubit] as usize].decode(outcome >> qubit & 1 == 1);
            for (axis, v) in slots.iter().enumerate() {
                if let Some(v) = *v {
                    self.bits[v] = decoded[axis];
                }
            }
        }
        Ok(&self.bits)
    }
}

/// Magic-state rounding: the best cut over `shots` independent shots. Ties
/// keep the earliest shot.
pub fn magic_round<R: Rng + ?Sized>(
    s: &StateVector,
    a: &QubitAssignment,
    g: &Graph,
    shots: usize,
    rng: &mut R,
) -> Result<RoundingReport> {
    check_len(g.n(), a.num_vertices())?;
    let mut sampler = MagicSampler::new(s, a)?;
    let mut per_shot = Vec::with_capacity(shots);
    let mut best: Option<(f64, Vec<bool>)> = None;
    for _ in 0..shots {
        let bits = sampler.shot(rng)?;
        let value = cut_value(g, bits)?;
        per_shot.push(value);
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, bits.to_vec()));
        }
    }
    let (best_value, best_bits) = best.unwrap_or_else(|| {
        let bits = vec![true; g.n()];
        (cut_value(g, &bits).expect("length checked"), bits)
    });
    Ok(RoundingReport { best_bits, best_value, per_shot_values: per_shot, method: RoundingMethod::Magic })
}

/// `|<0|V|psi>|^2` helper used for checking rotations.
pub fn outcome_zero_probability(v: &Mat2, psi: [Complex64; 2]) -> f64 {
    (v[0][0] * psi[0] + v[0][1] * psi[1]).norm_sqr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::{assign_qubits, encode_classical_state};
    use crate::graph::{greedy_color, Coloring};
    use crate::sim::{dagger, mat_mul, unitarity_defect};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn decode_tables() {
        let b = |i| MagicBasis::new(i).unwrap();
        assert_eq!(b(1).decode(false), [false, false, false]);
        assert_eq!(b(1).decode(true), [true, true, true]);
        assert_eq!(b(2).decode(false), [false, true, true]);
        assert_eq!(b(3).decode(false), [true, false, true]);
        assert_eq!(b(4).decode(false), [true, true, false]);
        assert_eq!(b(4).decode(true), [false, false, true]);
        assert!(MagicBasis::new(0).is_none() && MagicBasis::new(5).is_none());
    }

    #[test]
    fn rotations_map_magic_states_to_basis() {
        for basis in MagicBasis::ALL {
            let v = magic_basis_rotation(basis);
            assert!(unitarity_defect(&v) < 1e-12);
            let plus = bloch_to_amplitudes(basis.bloch(false));
            let minus = bloch_to_amplitudes(basis.bloch(true));
            assert!((outcome_zero_probability(&v, plus) - 1.0).abs() < 1e-12);
            assert!(outcome_zero_probability(&v, minus).abs() < 1e-12);
            let id = mat_mul(&dagger(&v), &v);
            assert!((id[0][1]).norm() < 1e-12 && (id[0][0].re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn pauli_exact_decodes_single_qubit_codewords() {
        let g = Graph::unweighted(3, []).unwrap();
        let a = assign_qubits(&g, &Coloring { colors: vec![0; 3] }).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for code in 0..8u8 {
            let bits: Vec<bool> = (0..3).map(|k| code >> k & 1 == 1).collect();
            let s = encode_classical_state(&a, &bits).unwrap();
            let rep = pauli_round(&s, &a, &g, PauliMode::Exact, &mut rng).unwrap();
            assert_eq!(rep.best_bits, bits);
        }
    }

    #[test]
    fn pauli_zero_estimate_is_coin_flip() {
        let g = Graph::unweighted(1, []).unwrap();
        let a = assign_qubits(&g, &greedy_color(&g)).unwrap();
        let s = StateVector::zero(1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let ones = (0..400)
            .filter(|_| pauli_round(&s, &a, &g, PauliMode::Exact, &mut rng).unwrap().best_bits[0])
            .count();
        assert!((100..300).contains(&ones), "{ones}");
    }

    #[test]
    fn magic_best_is_max_of_shots() {
        let g = crate::graph::generate_regular(10, 3, 2).unwrap();
        let a = assign_qubits(&g, &greedy_color(&g)).unwrap();
        let s = crate::vqe::prepare_state(
            &crate::vqe::AnsatzSpec::new(a.num_qubits(), 0, vec![]).unwrap(),
            &(0..2 * a.num_qubits()).map(|i| 0.37 * i as f64).collect::<Vec<_>>(),
        )
        .unwrap();
        let rep = magic_round(&s, &a, &g, 200, &mut ChaCha8Rng::seed_from_u64(8)).unwrap();
        let max = rep.per_shot_values.iter().copied().fold(f64::MIN, f64::max);
        assert_eq!(rep.best_value, max);
        assert_eq!(rep.best_value, cut_value(&g, &rep.best_bits).unwrap());
        assert_eq!(rep.per_shot_values.len(), 200);
    }
}
