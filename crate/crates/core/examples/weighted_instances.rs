//! Signed-weight instances: random ±1 edge weights on cubic graphs, solved end
//! to end at depth 1.
//!
//! `cargo run --release --example weighted_instances`

use qrelax::experiment::{derive_seed, solve_instance, RunSeeds, SolveOptions};
use qrelax::graph::{assign_random_signs, brute_force_max_cut, generate_regular};
use qrelax::vqe::EntanglementPattern;

fn main() -> qrelax::Result<()> {
    for i in 0..5u64 {
        let g = assign_random_signs(&generate_regular(16, 3, i)?, derive_seed(i, &[1]));
        let opt = brute_force_max_cut(&g)?.value;
        if opt <= 0.0 {
            println!("instance {i}: OPT = {opt}, skipped");
            continue;
        }
        let seeds = RunSeeds { init: derive_seed(i, &[2]), rounding: derive_seed(i, &[3]) };
        let run = solve_instance(&g, EntanglementPattern::Compatible, 1, &SolveOptions::default(), seeds)?;
        println!(
            "instance {i}: W = {:+}, OPT = {opt}, relaxed {:.3}, Pauli {} ({:.3}), magic {} ({:.3})",
            g.total_weight(),
            run.vqe.energy,
            run.pauli.best_value,
            run.pauli.best_value / opt,
            run.magic.best_value,
            run.magic.best_value / opt
        );
    }
    Ok(())
}
