//! Optimize the relaxed Hamiltonian with the sequential sinusoidal optimizer and
//! compare the reached energy with the exact optimum.
//!
//! `cargo run --release --example relaxed_vqe`

use qrelax::encoding::{assign_qubits, build_relaxed_hamiltonian};
use qrelax::graph::{brute_force_max_cut, generate_regular, greedy_color};
use qrelax::vqe::{build_ansatz, nft_optimize, random_params, EntanglementPattern};

fn main() -> qrelax::Result<()> {
    let g = generate_regular(18, 3, 7)?;
    let a = assign_qubits(&g, &greedy_color(&g))?;
    let objective = build_relaxed_hamiltonian(&g, &a)?.negated();
    let opt = brute_force_max_cut(&g)?.value;
    println!("n = {}, qubits = {}, OPT = {opt}", g.n(), a.num_qubits());

    for layers in 0..=2 {
        let spec = build_ansatz(EntanglementPattern::Compatible, layers, &a, &g)?;
        let res = nft_optimize(&spec, &objective, &random_params(&spec, 1), 15)?;
        let trace: Vec<String> = res.trace.iter().map(|e| format!("{e:.2}")).collect();
        println!(
            "L={layers}: {} params, {} CNOTs, energy {:.4} (normalized {:.4}), {} evaluations",
            spec.param_count(),
            spec.cnot_count(),
            res.energy,
            res.energy / opt,
            res.evaluations
        );
        println!("     per-sweep energy: {}", trace.join(" "));
    }
    Ok(())
}
