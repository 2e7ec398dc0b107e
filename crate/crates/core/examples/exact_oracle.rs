//! Exact MaxCut by Gray-code enumeration, on a few named and random graphs.
//!
//! `cargo run --release --example exact_oracle`

use std::time::Instant;

use qrelax::graph::{assign_random_signs, brute_force_max_cut, generate_regular, Graph};

fn show(name: &str, g: &Graph) -> qrelax::Result<()> {
    let start = Instant::now();
    let sol = brute_force_max_cut(g)?;
    let bits: String = sol.bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
    println!("{name:<24} n={:<3} OPT={:<6} {bits} ({:.3}s)", g.n(), sol.value, start.elapsed().as_secs_f64());
    Ok(())
}

fn main() -> qrelax::Result<()> {
    show("cycle C5", &Graph::cycle(5))?;
    show("complete K4", &Graph::complete(4))?;
    show("Petersen", &Graph::petersen())?;
    for n in [16, 20, 24] {
        let g = generate_regular(n, 3, n as u64)?;
        show("random cubic", &g)?;
        show("random cubic, signed", &assign_random_signs(&g, 1))?;
    }
    Ok(())
}
