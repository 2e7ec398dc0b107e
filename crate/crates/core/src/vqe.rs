//! Hardware-efficient Ry-Rz ansatz and the NFT sequential optimizer.
//!
//! The circuit is an initial Ry-Rz rotation layer on every qubit followed by
//! `layers` repetitions of (CNOT entangler, Ry-Rz layer). Parameters are laid
//! out rotation-layer-major, then by qubit, then `(Ry, Rz)`, so a depth-`L`
//! ansatz on `q` qubits has `2 q (L + 1)` angles.
//!
//! Every angle enters through a single `exp(-i t P / 2)` rotation, so with
//! the others held fixed the energy is `a cos(t - b) + c`. NFT reads off
//! `a, b, c` from the current value and two shifted evaluations at `t ± pi/2`
//! and jumps straight to the minimum.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::encoding::{Observable, QubitAssignment};
use crate::error::{Error, Result};
use crate::graph::{check_len, Graph};
use crate::sim::{Gate, StateVector};

/// Amplitudes below this are treated as a flat direction.
pub const DEGENERATE_AMPLITUDE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntanglementPattern {
    /// CNOTs between the qubits hosting the endpoints of each graph edge.
    Compatible,
    /// CNOT(i, i + 1) along the qubit chain.
    Linear,
    /// As many uniformly random qubit pairs as `Compatible` would produce.
    Random(u64),
}

/// Pattern name without the seed, as used in configs and CSV output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternKind {
    Compatible,
    Linear,
    Random,
}

impl PatternKind {
    pub fn with_seed(self, seed: u64) -> EntanglementPattern {
        match self {
            PatternKind::Compatible => EntanglementPattern::Compatible,
            PatternKind::Linear => EntanglementPattern::Linear,
            PatternKind::Random => EntanglementPattern::Random(seed),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PatternKind::Compatible => "compatible",
            PatternKind::Linear => "linear",
            PatternKind::Random => "random",
        }
    }
}

impl std::fmt::Display for PatternKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(self.as_str())
    }
}

impl std::str::FromStr for PatternKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "compatible" => Ok(PatternKind::Compatible),
            "linear" => Ok(PatternKind::Linear),
            "random" => Ok(PatternKind::Random),
            other => Err(Error::Parse(format!("unknown entanglement pattern {other:?}"))),
        }
    }
}

impl From<EntanglementPattern> for PatternKind {
    fn from(p: EntanglementPattern) -> Self {
        match p {
            EntanglementPattern::Compatible => PatternKind::Compatible,
            EntanglementPattern::Linear => PatternKind::Linear,
            EntanglementPattern::Random(_) => PatternKind::Random,
        }
    }
}

/// Layered circuit layout. The same CNOT list is used in every layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnsatzSpec {
    num_qubits: usize,
    layers: usize,
    ent_pairs: Vec<(usize, usize)>,
}

impl AnsatzSpec {
    pub fn new(num_qubits: usize, layers: usize, ent_pairs: Vec<(usize, usize)>) -> Result<Self> {
        for &(c, t) in &ent_pairs {
            for index in [c, t] {
                if index >= num_qubits {
                    return Err(Error::QubitIndex { index, num_qubits });
                }
            }
            if c == t {
                return Err(Error::SameControlTarget(c));
            }
        }
        Ok(Self { num_qubits, layers, ent_pairs })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn ent_pairs(&self) -> &[(usize, usize)] {
        &self.ent_pairs
    }

    pub fn param_count(&self) -> usize {
        2 * self.num_qubits * (self.layers + 1)
    }

    /// Total CNOTs in the circuit.
    pub fn cnot_count(&self) -> usize {
        self.ent_pairs.len() * self.layers
    }

    /// Gate sequence for a parameter vector.
    pub fn gates(&self, params: &[f64]) -> Result<Vec<Gate>> {
        check_len(self.param_count(), params.len())?;
        let q = self.num_qubits;
        let mut gates = Vec::with_capacity(self.param_count() + self.cnot_count());
        for layer in 0..=self.layers {
            if layer > 0 {
                gates.extend(self.ent_pairs.iter().map(|&(control, target)| Gate::Cnot { control, target }));
            }
            for qubit in 0..q {
                let base = 2 * (layer * q + qubit);
                gates.push(Gate::Ry(qubit, params[base]));
                gates.push(Gate::Rz(qubit, params[base + 1]));
            }
        }
        Ok(gates)
    }
}

/// Lays out the CNOT pattern for an instance.
pub fn build_ansatz(
    pattern: EntanglementPattern,
    layers: usize,
    a: &QubitAssignment,
    g: &Graph,
) -> Result<AnsatzSpec> {
    let q = a.num_qubits();
    let pairs = match pattern {
        EntanglementPattern::Compatible => compatible_pairs(a, g)?,
        EntanglementPattern::Linear => (1..q).map(|i| (i - 1, i)).collect(),
        EntanglementPattern::Random(seed) => {
            let count = compatible_pairs(a, g)?.len();
            random_pairs(q, count, seed)?
        }
    };
    AnsatzSpec::new(q, layers, pairs)
}

fn compatible_pairs(a: &QubitAssignment, g: &Graph) -> Result<Vec<(usize, usize)>> {
    check_len(g.n(), a.num_vertices())?;
    let mut pairs = BTreeSet::new();
    for e in g.edges() {
        let (qu, qv) = (a.slot(e.u).qubit, a.slot(e.v).qubit);
        if qu == qv {
            return Err(Error::SharedQubit(e.u, e.v, qu));
        }
        pairs.insert((qu.min(qv), qu.max(qv)));
    }
    Ok(pairs.into_iter().collect())
}

fn random_pairs(q: usize, count: usize, seed: u64) -> Result<Vec<(usize, usize)>> {
    let all: Vec<(usize, usize)> = (0..q).flat_map(|i| (i + 1..q).map(move |j| (i, j))).collect();
    if count > all.len() {
        return Err(Error::TooManyPairs { requested: count, available: all.len() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<_> = rand::seq::index::sample(&mut rng, all.len(), count)
        .into_iter()
        .map(|i| all[i])
        .collect();
    picked.sort_unstable();
    Ok(picked)
}

/// Runs the ansatz circuit on `|0...0>`.
pub fn prepare_state(spec: &AnsatzSpec, params: &[f64]) -> Result<StateVector> {
    let mut s = StateVector::zero(spec.num_qubits)?;
    for gate in spec.gates(params)? {
        s.apply(&gate)?;
    }
    Ok(s)
}

/// Uniform angles on `[0, 2 pi)`.
pub fn random_params(spec: &AnsatzSpec, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..spec.param_count()).map(|_| rng.random_range(0.0..TAU)).collect()
}

/// Depth-0 angles `(Ry, Rz)` per qubit preparing the product state with the
/// given unit Bloch vectors.
pub fn product_state_params(bloch: &[[f64; 3]]) -> Vec<f64> {
    bloch
        .iter()
        .flat_map(|r| [r[2].clamp(-1.0, 1.0).acos(), r[1].atan2(r[0])])
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct VqeResult {
    pub params: Vec<f64>,
    /// Final value of the minimized objective.
    pub objective: f64,
    /// Final relaxed energy, the negated objective.
    pub energy: f64,
    /// Relaxed energy after each sweep.
    pub trace: Vec<f64>,
    pub evaluations: usize,
}

/// Exact-expectation NFT minimizer over one ansatz and objective.
pub struct Nft<'a> {
    spec: &'a AnsatzSpec,
    objective: &'a Observable,
    evaluations: usize,
}

impl<'a> Nft<'a> {
    pub fn new(spec: &'a AnsatzSpec, objective: &'a Observable) -> Result<Self> {
        if objective.min_qubits() > spec.num_qubits() {
            return Err(Error::QubitIndex { index: objective.min_qubits() - 1, num_qubits: spec.num_qubits() });
        }
        Ok(Self { spec, objective, evaluations: 0 })
    }

    pub fn evaluations(&self) -> usize {
        self.evaluations
    }

    pub fn evaluate(&mut self, params: &[f64]) -> Result<f64> {
        self.evaluations += 1;
        prepare_state(self.spec, params)?.expectation(self.objective)
    }

    /// Minimizes over `params[j]` given the objective `current` at `params`.
    /// Returns the predicted objective at the updated point.
    pub fn update_parameter(&mut self, params: &mut [f64], j: usize, current: f64) -> Result<f64> {
        let theta = params[j];
        params[j] = theta + FRAC_PI_2;
        let plus = self.evaluate(params)?;
        params[j] = theta - FRAC_PI_2;
        let minus = self.evaluate(params)?;

        // E(theta + d) = a_cos cos d + a_sin sin d + c
        let c = 0.5 * (plus + minus);
        let a_cos = current - c;
        let a_sin = 0.5 * (plus - minus);
        let amplitude = a_cos.hypot(a_sin);
        if amplitude < DEGENERATE_AMPLITUDE {
            params[j] = theta;
            return Ok(current);
        }
        params[j] = (theta + a_sin.atan2(a_cos) + PI).rem_euclid(TAU);
        Ok(c - amplitude)
    }

    /// One pass over all parameters; returns the exact objective afterwards.
    pub fn sweep(&mut self, params: &mut [f64], current: f64) -> Result<f64> {
        let mut value = current;
        for j in 0..params.len() {
            value = self.update_parameter(params, j, value)?;
        }
        // Resynchronize so prediction error never accumulates across sweeps.
        self.evaluate(params)
    }
}

/// Runs `sweeps` full NFT passes minimizing `objective` from `init_params`.
pub fn nft_optimize(
    spec: &AnsatzSpec,
    objective: &Observable,
    init_params: &[f64],
    sweeps: usize,
) -> Result<VqeResult> {
    check_len(spec.param_count(), init_params.len())?;
    let mut nft = Nft::new(spec, objective)?;
    let mut params = init_params.to_vec();
    let mut value = nft.evaluate(&params)?;
    let mut trace = Vec::with_capacity(sweeps);
    for _ in 0..sweeps {
        value = nft.sweep(&mut params, value)?;
        trace.push(-value);
    }
    Ok(VqeResult { params, objective: value, energy: -value, trace, evaluations: nft.evaluations() })
}
