//! Encode every cut of a small cubic graph into QRAC product states and check
//! that the relaxed energy reproduces the cut value.
//!
//! `cargo run --release --example encode_and_verify`

use qrelax::encoding::{assign_qubits, build_relaxed_hamiltonian, encode_classical_state};
use qrelax::graph::{cut_value, generate_regular, greedy_color};

fn main() -> qrelax::Result<()> {
    let g = generate_regular(10, 3, 42)?;
    let coloring = greedy_color(&g);
    let a = assign_qubits(&g, &coloring)?;
    println!(
        "{} vertices, {} edges, {} colors -> {} qubits (compression {:.2})",
        g.n(),
        g.num_edges(),
        coloring.num_colors(),
        a.num_qubits(),
        g.n() as f64 / a.num_qubits() as f64
    );
    for (q, slots) in a.qubit_contents().iter().enumerate() {
        println!("  qubit {q}: X={:?} Y={:?} Z={:?}", slots[0], slots[1], slots[2]);
    }

    let h = build_relaxed_hamiltonian(&g, &a)?;
    let mut worst = 0.0f64;
    for mask in 0u32..1 << g.n() {
        let bits: Vec<bool> = (0..g.n()).map(|k| mask >> k & 1 == 1).collect();
        let energy = encode_classical_state(&a, &bits)?.expectation(&h)?;
        worst = worst.max((energy - cut_value(&g, &bits)?).abs());
    }
    println!("max |energy - cut| over all {} cuts: {worst:.2e}", 1u32 << g.n());
    Ok(())
}
