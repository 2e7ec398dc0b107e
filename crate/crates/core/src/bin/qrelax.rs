use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use qrelax::encoding::{assign_qubits, build_relaxed_hamiltonian};
use qrelax::experiment::{derive_seed, emit_outputs, run_suite, solve_instance, RunConfig, RunSeeds, SolveOptions};
use qrelax::graph::{assign_random_signs, brute_force_max_cut, cut_value, generate_regular, greedy_color, Graph};
use qrelax::rounding::{magic_round, pauli_round, PauliMode};
use qrelax::sim::{StateFile, StateVector};
use qrelax::vqe::PatternKind;

#[derive(Parser)]
#[command(name = "qrelax", version, about = "Quantum-relaxation MaxCut toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate random regular graphs into text files.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        weighted: bool,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Exact MaxCut of a graph file.
    Oracle {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Encode, optimize and round a single instance.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "linear")]
        pattern: PatternKind,
        #[arg(long, default_value_t = 0)]
        layers: usize,
        #[arg(long, default_value_t = 15)]
        sweeps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Replace the file's weights with random ±1 signs.
        #[arg(long)]
        weighted: bool,
        #[arg(long, default_value_t = 1000)]
        shots: usize,
        #[arg(long, default_value_t = 1)]
        restarts: usize,
        /// Also compute the exact optimum (n <= 30).
        #[arg(long)]
        with_opt: bool,
        /// Write the relaxed state as JSON for `round`.
        #[arg(long)]
        save_state: Option<PathBuf>,
    },
    /// Run a configured suite and write records.csv, summary.json and figure data.
    Suite {
        #[arg(long)]
        config: PathBuf,
    },
    /// Re-round a saved relaxed state.
    Round {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        state: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Magic)]
        method: Method,
        #[arg(long, default_value_t = 1000)]
        shots: usize,
        /// Pauli rounding from exact expectations instead of shots.
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Pauli,
    Magic,
}

fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn run(cli: Cli) -> qrelax::Result<()> {
    match cli.cmd {
        Cmd::Generate { n, degree, count, seed, weighted, out_dir } => {
            std::fs::create_dir_all(&out_dir)?;
            for i in 0..count {
                let s = derive_seed(seed, &[n as u64, i as u64]);
                let mut g = generate_regular(n, degree, s)?;
                if weighted {
                    g = assign_random_signs(&g, derive_seed(s, &[1]));
                }
                let path = out_dir.join(format!("regular_n{n}_d{degree}_{i:03}.txt"));
                g.write(&path)?;
                println!("{}", path.display());
            }
        }
        Cmd::Oracle { graph } => {
            let g = Graph::read(graph)?;
            let sol = brute_force_max_cut(&g)?;
            println!("{}", json!({ "value": sol.value, "bits": bit_string(&sol.bits) }));
        }
        Cmd::Solve { graph, pattern, layers, sweeps, seed, weighted, shots, restarts, with_opt, save_state } => {
            let mut g = Graph::read(graph)?;
            if weighted {
                g = assign_random_signs(&g, derive_seed(seed, &[1]));
            }
            let opts = SolveOptions { sweeps, shots, restarts, pauli_mode: PauliMode::Exact };
            let seeds = RunSeeds { init: derive_seed(seed, &[2]), rounding: derive_seed(seed, &[3]) };
            let ent = pattern.with_seed(derive_seed(seed, &[4]));
            let run = solve_instance(&g, ent, layers, &opts, seeds)?;
            let opt = if with_opt { Some(brute_force_max_cut(&g)?.value) } else { None };
            if let Some(path) = save_state {
                std::fs::write(path, serde_json::to_string(&StateFile::from(&run.state))?)?;
            }
            let out = json!({
                "n": g.n(),
                "qubits": run.assignment.num_qubits(),
                "pattern": pattern,
                "L": layers,
                "cnots": run.ansatz.cnot_count(),
                "relaxed_energy": run.vqe.energy,
                "trace": run.vqe.trace,
                "opt": opt,
                "normalized_energy": opt.map(|o| run.vqe.energy / o),
                "pauli": { "value": run.pauli.best_value, "bits": bit_string(&run.pauli.best_bits) },
                "magic": { "value": run.magic.best_value, "bits": bit_string(&run.magic.best_bits) },
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Cmd::Suite { config } => {
            let cfg = RunConfig::read(config)?;
            let out = run_suite(&cfg)?;
            for path in emit_outputs(&out.records, &out.summary, &cfg.output_dir)? {
                println!("{}", path.display());
            }
        }
        Cmd::Round { graph, state, method, shots, exact, seed } => {
            let g = Graph::read(graph)?;
            let a = assign_qubits(&g, &greedy_color(&g))?;
            let file: StateFile = serde_json::from_str(&std::fs::read_to_string(state)?)?;
            let s = StateVector::try_from(file)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let report = match method {
                Method::Pauli => {
                    let mode = if exact { PauliMode::Exact } else { PauliMode::Shots(shots) };
                    pauli_round(&s, &a, &g, mode, &mut rng)?
                }
                Method::Magic => magic_round(&s, &a, &g, shots, &mut rng)?,
            };
            let energy = s.expectation(&build_relaxed_hamiltonian(&g, &a)?)?;
            let out = json!({
                "relaxed_energy": energy,
                "value": report.best_value,
                "bits": bit_string(&report.best_bits),
                "check": cut_value(&g, &report.best_bits)?,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
