//! Vertex-to-qubit packing with the (3,1) quantum random access code.
//!
//! Each qubit holds up to three vertices of one color class, one per Pauli
//! axis. A classical assignment `(b_X, b_Y, b_Z)` of those vertices becomes
//! the pure single-qubit state with Bloch vector
//! `((-1)^b_X, (-1)^b_Y, (-1)^b_Z) / sqrt(3)`, and the relaxed Hamiltonian
//! `sum_e w_e (I - 3 P_u P_v) / 2` reproduces the cut value on every such
//! product state.
//!
//! Qubits carrying fewer than three vertices are still encoded as full
//! three-axis states, with the unused axes treated as bits fixed to 0. The
//! relaxed Hamiltonian never touches those axes, so the energy identity holds
//! unchanged.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{check_len, Coloring, Graph};
use crate::sim::StateVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 3] = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

    pub fn index(self) -> usize {
        match self {
            PauliAxis::X => 0,
            PauliAxis::Y => 1,
            PauliAxis::Z => 2,
        }
    }
}

/// Where a vertex lives: a qubit and the Pauli axis that reads it out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slot {
    pub qubit: usize,
    pub axis: PauliAxis,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QubitAssignment {
    slots: Vec<Slot>,
    num_qubits: usize,
}

impl QubitAssignment {
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn num_vertices(&self) -> usize {
        self.slots.len()
    }

    pub fn slot(&self, vertex: usize) -> Slot {
        self.slots[vertex]
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    /// Per qubit, the vertex stored on each axis (`None` for padding).
    pub fn qubit_contents(&self) -> Vec<[Option<usize>; 3]> {
        let mut table = vec![[None; 3]; self.num_qubits];
        for (v, s) in self.slots.iter().enumerate() {
            table[s.qubit][s.axis.index()] = Some(v);
        }
        table
    }
}

/// Packs each color class, in ascending vertex order, into chunks of up to
/// three vertices per fresh qubit with axes X, Y, Z in order.
pub fn assign_qubits(g: &Graph, c: &Coloring) -> Result<QubitAssignment> {
    check_len(g.n(), c.colors.len())?;
    if let Some((u, v)) = c.conflict(g) {
        return Err(Error::ImproperColoring(u, v));
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); c.num_colors()];
    for (v, &col) in c.colors.iter().enumerate() {
        classes[col].push(v);
    }
    let mut slots = vec![Slot { qubit: 0, axis: PauliAxis::X }; g.n()];
    let mut num_qubits = 0;
    for class in &classes {
        for chunk in class.chunks(3) {
            for (&v, axis) in chunk.iter().zip(PauliAxis::ALL) {
                slots[v] = Slot { qubit: num_qubits, axis };
            }
            num_qubits += 1;
        }
    }
    Ok(QubitAssignment { slots, num_qubits })
}

/// A product of single-qubit Paulis with a real coefficient.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliTerm {
    pub coeff: f64,
    pub paulis: BTreeMap<usize, PauliAxis>,
}

/// `constant * I + sum_k coeff_k * P_k`. Identity mass lives only in
/// `constant`; no term has an empty Pauli map.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Observable {
    pub constant: f64,
    pub terms: Vec<PauliTerm>,
}

impl Observable {
    pub fn constant(value: f64) -> Self {
        Self { constant: value, terms: Vec::new() }
    }

    /// Adds a term; an empty Pauli map is folded into the constant.
    pub fn push(&mut self, coeff: f64, paulis: impl IntoIterator<Item = (usize, PauliAxis)>) {
        let paulis: BTreeMap<_, _> = paulis.into_iter().collect();
        if paulis.is_empty() {
            self.constant += coeff;
        } else {
            self.terms.push(PauliTerm { coeff, paulis });
        }
    }

    pub fn negated(&self) -> Self {
        Self {
            constant: -self.constant,
            terms: self
                .terms
                .iter()
                .map(|t| PauliTerm { coeff: -t.coeff, paulis: t.paulis.clone() })
                .collect(),
        }
    }

    /// One past the largest qubit index any term touches.
    pub fn min_qubits(&self) -> usize {
        self.terms
            .iter()
            .filter_map(|t| t.paulis.keys().next_back())
            .max()
            .map_or(0, |&q| q + 1)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("observable serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// `H_relax = sum_e w_e (I - 3 P_u P_v) / 2`.
pub fn build_relaxed_hamiltonian(g: &Graph, a: &QubitAssignment) -> Result<Observable> {
    check_len(g.n(), a.num_vertices())?;
    let mut h = Observable::default();
    for e in g.edges() {
        let (su, sv) = (a.slot(e.u), a.slot(e.v));
        if su.qubit == sv.qubit {
            return Err(Error::SharedQubit(e.u, e.v, su.qubit));
        }
        h.constant += 0.5 * e.w;
        h.push(-1.5 * e.w, [(su.qubit, su.axis), (sv.qubit, sv.axis)]);
    }
    Ok(h)
}

/// `H = sum_e w_e (I - Z_u Z_v) / 2` with one qubit per vertex.
pub fn build_diagonal_hamiltonian(g: &Graph) -> Observable {
    let mut h = Observable::default();
    for e in g.edges() {
        h.constant += 0.5 * e.w;
        h.push(-0.5 * e.w, [(e.u, PauliAxis::Z), (e.v, PauliAxis::Z)]);
    }
    h
}

/// Amplitudes `(cos(theta/2), e^{i phi} sin(theta/2))` of the pure qubit
/// state with unit Bloch vector `r`.
pub fn bloch_to_amplitudes(r: [f64; 3]) -> [Complex64; 2] {
    let theta = r[2].clamp(-1.0, 1.0).acos();
    let phi = r[1].atan2(r[0]);
    [
        Complex64::new((theta / 2.0).cos(), 0.0),
        Complex64::from_polar((theta / 2.0).sin(), phi),
    ]
}

/// Bloch vector of the (3,1)-QRAC state for three bits.
pub fn qrac_bloch(bits: [bool; 3]) -> [f64; 3] {
    let s = 1.0 / 3f64.sqrt();
    bits.map(|b| if b { -s } else { s })
}

/// Per-qubit bit triples `(b_X, b_Y, b_Z)` with padding axes set to 0.
pub fn qubit_triples(a: &QubitAssignment, bits: &[bool]) -> Result<Vec<[bool; 3]>> {
    check_len(a.num_vertices(), bits.len())?;
    let mut triples = vec![[false; 3]; a.num_qubits()];
    for (v, s) in a.slots().iter().enumerate() {
        triples[s.qubit][s.axis.index()] = bits[v];
    }
    Ok(triples)
}

/// Product QRAC state encoding a classical cut assignment.
pub fn encode_classical_state(a: &QubitAssignment, bits: &[bool]) -> Result<StateVector> {
    let factors: Vec<[Complex64; 2]> = qubit_triples(a, bits)?
        .into_iter()
        .map(|t| bloch_to_amplitudes(qrac_bloch(t)))
        .collect();
    StateVector::product(&factors)
}
