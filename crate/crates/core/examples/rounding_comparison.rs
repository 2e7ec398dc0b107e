//! Round one relaxed state with Pauli and magic-state rounding and compare the
//! magic-rounding mean cut with its analytic expectation.
//!
//! `cargo run --release --example rounding_comparison`

use qrelax::experiment::{solve_instance, RunSeeds, SolveOptions};
use qrelax::graph::{brute_force_max_cut, generate_regular};
use qrelax::rounding::{magic_round, pauli_round, PauliMode};
use qrelax::vqe::EntanglementPattern;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qrelax::Result<()> {
    let g = generate_regular(20, 3, 3)?;
    let opt = brute_force_max_cut(&g)?.value;
    let run = solve_instance(&g, EntanglementPattern::Linear, 1, &SolveOptions::default(), RunSeeds { init: 1, rounding: 2 })?;
    let energy = run.vqe.energy;
    println!("OPT = {opt}, relaxed energy = {energy:.4} (normalized {:.4})", energy / opt);

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let exact = pauli_round(&run.state, &run.assignment, &g, PauliMode::Exact, &mut rng)?;
    let sampled = pauli_round(&run.state, &run.assignment, &g, PauliMode::Shots(1000), &mut rng)?;
    println!("Pauli rounding, exact expectations: cut {} (ratio {:.4})", exact.best_value, exact.best_value / opt);
    println!("Pauli rounding, 1000 shots/basis:  cut {} (ratio {:.4})", sampled.best_value, sampled.best_value / opt);

    for shots in [1, 10, 100, 1000, 10_000] {
        let rep = magic_round(&run.state, &run.assignment, &g, shots, &mut ChaCha8Rng::seed_from_u64(5))?;
        let mean = rep.per_shot_values.iter().sum::<f64>() / shots as f64;
        println!("magic rounding, {shots:>5} shots: best {} (ratio {:.4}), mean {mean:.3}", rep.best_value, rep.best_value / opt);
    }
    let expected = 4.0 / 9.0 * g.total_weight() + energy / 9.0;
    println!("analytic expected magic cut (4/9) W + E / 9 = {expected:.3}; guarantee 5/9 OPT = {:.3}", 5.0 / 9.0 * opt);
    Ok(())
}
