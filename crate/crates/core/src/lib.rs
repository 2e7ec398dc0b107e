//! MaxCut by quantum relaxation on a classical statevector simulator.
//!
//! The pipeline colors a graph, packs up to three same-colored vertices onto
//! each qubit with the (3,1) quantum random access code, searches for a
//! high-energy state of the resulting relaxed Hamiltonian with a
//! hardware-efficient VQE, and rounds that state back to a cut with either
//! Pauli rounding or magic-state rounding.
//!
//! ```
//! use qrelax::{encoding, graph, sim};
//!
//! let g = graph::Graph::cycle(5);
//! let a = encoding::assign_qubits(&g, &graph::greedy_color(&g)).unwrap();
//! let h = encoding::build_relaxed_hamiltonian(&g, &a).unwrap();
//! let bits = [false, true, false, true, true];
//! let state = encoding::encode_classical_state(&a, &bits).unwrap();
//! let energy = state.expectation(&h).unwrap();
//! assert!((energy - graph::cut_value(&g, &bits).unwrap()).abs() < 1e-9);
//! ```

pub mod encoding;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod rounding;
pub mod sim;
pub mod vqe;

pub use error::{Error, Result};
