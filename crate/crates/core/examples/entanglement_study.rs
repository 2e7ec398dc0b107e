//! A small depth/entanglement study: runs a suite and prints how often each
//! pattern finds the optimum as circuit depth grows. Outputs land in `results/`.
//!
//! `cargo run --release --example entanglement_study`

use qrelax::experiment::{emit_outputs, run_suite, RunConfig};

fn main() -> qrelax::Result<()> {
    let cfg = RunConfig { n_list: vec![14, 16], instances_per_n: 10, master_seed: 1, ..RunConfig::default() };
    let out = run_suite(&cfg)?;
    for oc in &out.summary.optimal_counts {
        let counts: Vec<String> = oc.cumulative.iter().map(|c| format!("L<={}: {:>2}", c.max_layers, c.found)).collect();
        println!("n={} {:<10} {}", oc.n, oc.pattern, counts.join("  "));
    }
    for g in &out.summary.groups {
        println!(
            "{:<10} L={} normalized energy {:.3}..{:.3} (mean {:.3}), magic ratio mean {:.3}",
            g.pattern, g.layers, g.normalized_energy.min, g.normalized_energy.max, g.normalized_energy.mean, g.magic_ratio.mean
        );
    }
    for path in emit_outputs(&out.records, &out.summary, &cfg.output_dir)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
