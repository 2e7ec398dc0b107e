//! Entanglement-layer study: run VQE plus both roundings over a grid of
//! instances, patterns and depths, then aggregate and write plot-ready data.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::encoding::{assign_qubits, build_relaxed_hamiltonian, Observable, QubitAssignment};
use crate::error::{Error, Result};
use crate::graph::{assign_random_signs, brute_force_max_cut, generate_regular, greedy_color, Graph, ORACLE_LIMIT};
use crate::rounding::{magic_round, pauli_round, PauliMode, RoundingReport, DEFAULT_SHOTS};
use crate::sim::StateVector;
use crate::vqe::{build_ansatz, nft_optimize, prepare_state, random_params, AnsatzSpec, EntanglementPattern, PatternKind, VqeResult};

/// Tolerance for calling a rounded cut optimal.
pub const OPTIMAL_TOL: f64 = 1e-9;

/// Attempts at drawing a weighted instance with a positive optimum.
const WEIGHTED_RETRIES: u64 = 100;

const TAG_GRAPH: u64 = 1;
const TAG_SIGNS: u64 = 2;
const TAG_PATTERN: u64 = 3;
const TAG_INIT: u64 = 4;
const TAG_ROUND: u64 = 5;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stable seed for a path of integers below a parent seed.
pub fn derive_seed(parent: u64, path: &[u64]) -> u64 {
    path.iter().fold(splitmix64(parent), |acc, &p| splitmix64(acc ^ splitmix64(p)))
}

fn default_degree() -> usize {
    3
}
fn default_depths() -> Vec<usize> {
    vec![0, 1, 2]
}
fn default_patterns() -> Vec<PatternKind> {
    vec![PatternKind::Compatible, PatternKind::Linear, PatternKind::Random]
}
fn default_sweeps() -> usize {
    15
}
fn default_shots() -> usize {
    DEFAULT_SHOTS
}
fn default_restarts() -> usize {
    1
}
fn default_n_list() -> Vec<usize> {
    vec![18, 20, 22, 24]
}
fn default_instances() -> usize {
    50
}
fn default_output_dir() -> PathBuf {
    PathBuf::from("results")
}
fn default_pauli_mode() -> PauliMode {
    PauliMode::Exact
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_n_list")]
    pub n_list: Vec<usize>,
    #[serde(default = "default_instances")]
    pub instances_per_n: usize,
    #[serde(default = "default_degree")]
    pub degree: usize,
    #[serde(default)]
    pub weighted: bool,
    #[serde(default = "default_depths")]
    pub depths: Vec<usize>,
    #[serde(default = "default_patterns")]
    pub patterns: Vec<PatternKind>,
    #[serde(default = "default_sweeps")]
    pub sweeps: usize,
    #[serde(default = "default_shots")]
    pub shots: usize,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    /// How Pauli rounding estimates expectations.
    #[serde(default = "default_pauli_mode")]
    pub pauli_mode: PauliMode,
    /// CSV with columns `n,instance_id,opt` for instances beyond the oracle.
    #[serde(default)]
    pub opt_file: Option<PathBuf>,
    /// Fill `wall_time_s`; off by default so records are reproducible byte for byte.
    #[serde(default)]
    pub record_wall_time: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("all fields have defaults")
    }
}

impl RunConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.n_list.is_empty() || self.depths.is_empty() || self.patterns.is_empty() {
            return fail("n_list, depths and patterns must be non-empty".into());
        }
        if self.instances_per_n == 0 || self.sweeps == 0 || self.shots == 0 || self.restarts == 0 {
            return fail("instances_per_n, sweeps, shots and restarts must be positive".into());
        }
        if let PauliMode::Shots(0) = self.pauli_mode {
            return fail("pauli_mode shot count must be positive".into());
        }
        for &n in &self.n_list {
            if n <= self.degree || !(n * self.degree).is_multiple_of(2) {
                return fail(format!("no {}-regular graph on {n} vertices", self.degree));
            }
            if n > ORACLE_LIMIT && self.opt_file.is_none() {
                return fail(format!("n = {n} exceeds the oracle limit {ORACLE_LIMIT} and no opt_file is given"));
            }
        }
        Ok(())
    }
}

/// One (instance, pattern, depth) outcome. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance_id: usize,
    pub n: usize,
    pub pattern: PatternKind,
    #[serde(rename = "L")]
    pub layers: usize,
    pub seed: u64,
    pub relaxed_energy: f64,
    pub opt: f64,
    pub normalized_energy: f64,
    pub pauli_ratio: f64,
    pub magic_ratio: f64,
    pub pauli_optimal: bool,
    pub magic_optimal: bool,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub min: f64,
    pub mean: f64,
    pub max: f64,
}

impl Stats {
    fn of(values: impl IntoIterator<Item = f64>) -> Self {
        let (mut min, mut max, mut sum, mut count) = (f64::INFINITY, f64::NEG_INFINITY, 0.0, 0usize);
        for v in values {
            min = min.min(v);
            max = max.max(v);
            sum += v;
            count += 1;
        }
        Self { min, mean: sum / count as f64, max }
    }
}

/// Aggregates for one (pattern, depth).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub pattern: PatternKind,
    #[serde(rename = "L")]
    pub layers: usize,
    pub records: usize,
    pub normalized_energy: Stats,
    pub pauli_ratio: Stats,
    pub magic_ratio: Stats,
    pub pauli_optimal: usize,
    pub magic_optimal: usize,
}

/// Instances with an optimum found at some depth `<= max_layers`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CumulativeCount {
    pub max_layers: usize,
    /// Found by either rounding.
    pub found: usize,
    pub pauli: usize,
    pub magic: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimalCounts {
    pub n: usize,
    pub pattern: PatternKind,
    pub instances: usize,
    pub cumulative: Vec<CumulativeCount>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub groups: Vec<GroupSummary>,
    pub optimal_counts: Vec<OptimalCounts>,
}

#[derive(Debug, Clone)]
pub struct SuiteOutput {
    pub records: Vec<RunRecord>,
    pub summary: Summary,
}

/// Knobs shared by every single-instance run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub sweeps: usize,
    pub shots: usize,
    pub restarts: usize,
    pub pauli_mode: PauliMode,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { sweeps: 15, shots: DEFAULT_SHOTS, restarts: 1, pauli_mode: PauliMode::Exact }
    }
}

/// Seeds for one run: parameter initialization (per restart) and rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunSeeds {
    pub init: u64,
    pub rounding: u64,
}

/// Full pipeline state for one instance and ansatz.
#[derive(Debug, Clone)]
pub struct InstanceRun {
    pub assignment: QubitAssignment,
    pub hamiltonian: Observable,
    pub ansatz: AnsatzSpec,
    pub vqe: VqeResult,
    pub state: StateVector,
    pub pauli: RoundingReport,
    pub magic: RoundingReport,
}

/// Colors, encodes, optimizes and rounds a single graph.
pub fn solve_instance(
    g: &Graph,
    pattern: EntanglementPattern,
    layers: usize,
    opts: &SolveOptions,
    seeds: RunSeeds,
) -> Result<InstanceRun> {
    let assignment = assign_qubits(g, &greedy_color(g))?;
    let hamiltonian = build_relaxed_hamiltonian(g, &assignment)?;
    let ansatz = build_ansatz(pattern, layers, &assignment, g)?;
    let objective = hamiltonian.negated();

    let mut vqe: Option<VqeResult> = None;
    for restart in 0..opts.restarts.max(1) {
        let init = random_params(&ansatz, derive_seed(seeds.init, &[restart as u64]));
        let res = nft_optimize(&ansatz, &objective, &init, opts.sweeps)?;
        if vqe.as_ref().is_none_or(|best| res.energy > best.energy) {
            vqe = Some(res);
        }
    }
    let vqe = vqe.expect("at least one restart");
    let state = prepare_state(&ansatz, &vqe.params)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seeds.rounding);
    let pauli = pauli_round(&state, &assignment, g, opts.pauli_mode, &mut rng)?;
    let magic = magic_round(&state, &assignment, g, opts.shots, &mut rng)?;
    Ok(InstanceRun { assignment, hamiltonian, ansatz, vqe, state, pauli, magic })
}

struct Instance {
    id: usize,
    n: usize,
    seed: u64,
    graph: Graph,
    opt: f64,
}

fn read_opt_file(path: &Path) -> Result<HashMap<(usize, usize), f64>> {
    #[derive(Deserialize)]
    struct Row {
        n: usize,
        instance_id: usize,
        opt: f64,
    }
    let mut map = HashMap::new();
    for row in csv::Reader::from_path(path)?.deserialize() {
        let row: Row = row?;
        map.insert((row.n, row.instance_id), row.opt);
    }
    Ok(map)
}

/// Draws instance `id` of size `n`; weighted draws with `OPT <= 0` are redrawn.
fn build_instance(cfg: &RunConfig, n: usize, id: usize, external: &HashMap<(usize, usize), f64>) -> Result<Instance> {
    let seed = derive_seed(cfg.master_seed, &[n as u64, id as u64]);
    for attempt in 0..WEIGHTED_RETRIES {
        let mut graph = generate_regular(n, cfg.degree, derive_seed(seed, &[TAG_GRAPH, attempt]))?;
        if cfg.weighted {
            graph = assign_random_signs(&graph, derive_seed(seed, &[TAG_SIGNS, attempt]));
        }
        let opt = match external.get(&(n, id)) {
            Some(&opt) => opt,
            None => brute_force_max_cut(&graph)?.value,
        };
        if opt > 0.0 {
            return Ok(Instance { id, n, seed, graph, opt });
        }
        log::warn!("instance n={n} id={id} attempt {attempt} has OPT = {opt}; redrawing");
        if external.contains_key(&(n, id)) {
            return Err(Error::Config(format!("external OPT for n={n} id={id} is not positive")));
        }
    }
    Err(Error::Config(format!("no instance with positive OPT for n={n} id={id}")))
}

fn ratio_fields(report: &RoundingReport, opt: f64) -> (f64, bool) {
    let ratio = report.best_value / opt;
    (ratio, (ratio - 1.0).abs() <= OPTIMAL_TOL)
}

fn run_task(cfg: &RunConfig, inst: &Instance, pattern: PatternKind, layers: usize) -> Result<RunRecord> {
    let start = Instant::now();
    let opts = SolveOptions { sweeps: cfg.sweeps, shots: cfg.shots, restarts: cfg.restarts, pauli_mode: cfg.pauli_mode };
    // Initialization depends only on (instance, depth), so depth-0 runs agree across patterns.
    let seeds = RunSeeds {
        init: derive_seed(inst.seed, &[TAG_INIT, layers as u64]),
        rounding: derive_seed(inst.seed, &[TAG_ROUND, pattern as u64, layers as u64]),
    };
    let ent = pattern.with_seed(derive_seed(inst.seed, &[TAG_PATTERN]));
    let run = solve_instance(&inst.graph, ent, layers, &opts, seeds)?;
    let (pauli_ratio, pauli_optimal) = ratio_fields(&run.pauli, inst.opt);
    let (magic_ratio, magic_optimal) = ratio_fields(&run.magic, inst.opt);
    Ok(RunRecord {
        instance_id: inst.id,
        n: inst.n,
        pattern,
        layers,
        seed: inst.seed,
        relaxed_energy: run.vqe.energy,
        opt: inst.opt,
        normalized_energy: run.vqe.energy / inst.opt,
        pauli_ratio,
        magic_ratio,
        pauli_optimal,
        magic_optimal,
        wall_time_s: if cfg.record_wall_time { start.elapsed().as_secs_f64() } else { 0.0 },
    })
}

/// Runs every (n, instance, pattern, depth) combination of the config.
pub fn run_suite(cfg: &RunConfig) -> Result<SuiteOutput> {
    cfg.validate()?;
    let external = match &cfg.opt_file {
        Some(path) => read_opt_file(path)?,
        None => HashMap::new(),
    };
    let keys: Vec<(usize, usize)> =
        cfg.n_list.iter().flat_map(|&n| (0..cfg.instances_per_n).map(move |id| (n, id))).collect();
    let instances: Vec<Instance> =
        keys.par_iter().map(|&(n, id)| build_instance(cfg, n, id, &external)).collect::<Result<_>>()?;

    let tasks: Vec<(&Instance, PatternKind, usize)> = instances
        .iter()
        .flat_map(|inst| {
            cfg.patterns.iter().flat_map(move |&p| cfg.depths.iter().map(move |&l| (inst, p, l)))
        })
        .collect();
    let mut records: Vec<RunRecord> =
        tasks.par_iter().map(|&(inst, p, l)| run_task(cfg, inst, p, l)).collect::<Result<_>>()?;
    sort_records(&mut records);
    let summary = summarize(&records);
    Ok(SuiteOutput { records, summary })
}

pub fn sort_records(records: &mut [RunRecord]) {
    records.sort_by_key(|r| (r.n, r.instance_id, r.pattern, r.layers));
}

/// Aggregates per (pattern, depth) and cumulative optimal-found counts per
/// (n, pattern).
pub fn summarize(records: &[RunRecord]) -> Summary {
    let mut groups: BTreeMap<(PatternKind, usize), Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.pattern, r.layers)).or_default().push(r);
    }
    let groups = groups
        .into_iter()
        .map(|((pattern, layers), rs)| GroupSummary {
            pattern,
            layers,
            records: rs.len(),
            normalized_energy: Stats::of(rs.iter().map(|r| r.normalized_energy)),
            pauli_ratio: Stats::of(rs.iter().map(|r| r.pauli_ratio)),
            magic_ratio: Stats::of(rs.iter().map(|r| r.magic_ratio)),
            pauli_optimal: rs.iter().filter(|r| r.pauli_optimal).count(),
            magic_optimal: rs.iter().filter(|r| r.magic_optimal).count(),
        })
        .collect();

    // (n, pattern) -> instance -> depth -> (pauli, magic)
    type Hits = BTreeMap<usize, BTreeMap<usize, (bool, bool)>>;
    let mut by_key: BTreeMap<(usize, PatternKind), Hits> = BTreeMap::new();
    for r in records {
        let hits = by_key.entry((r.n, r.pattern)).or_default().entry(r.instance_id).or_default();
        let slot = hits.entry(r.layers).or_insert((false, false));
        slot.0 |= r.pauli_optimal;
        slot.1 |= r.magic_optimal;
    }
    let optimal_counts = by_key
        .into_iter()
        .map(|((n, pattern), per_instance)| {
            let mut depths: Vec<usize> = per_instance.values().flat_map(|d| d.keys().copied()).collect();
            depths.sort_unstable();
            depths.dedup();
            let cumulative = depths
                .iter()
                .map(|&max_layers| {
                    let mut c = CumulativeCount { max_layers, found: 0, pauli: 0, magic: 0 };
                    for hits in per_instance.values() {
                        let (p, m) = hits
                            .range(..=max_layers)
                            .fold((false, false), |acc, (_, &(p, m))| (acc.0 || p, acc.1 || m));
                        c.pauli += p as usize;
                        c.magic += m as usize;
                        c.found += (p || m) as usize;
                    }
                    c
                })
                .collect();
            OptimalCounts { n, pattern, instances: per_instance.len(), cumulative }
        })
        .collect();
    Summary { groups, optimal_counts }
}

pub const RECORDS_FILE: &str = "records.csv";
pub const SUMMARY_FILE: &str = "summary.json";
pub const ENERGY_FIGURE_FILE: &str = "fig_normalized_energy.csv";
pub const RATIO_FIGURE_FILE: &str = "fig_ratio.csv";

pub fn write_records(records: &[RunRecord], path: impl AsRef<Path>) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records(path: impl AsRef<Path>) -> Result<Vec<RunRecord>> {
    csv::Reader::from_path(path)?.deserialize().map(|r| r.map_err(Error::from)).collect()
}

pub fn summary_json(summary: &Summary) -> String {
    let mut s = serde_json::to_string_pretty(summary).expect("summary serializes");
    s.push('\n');
    s
}

/// Writes records, summary and the per-figure CSVs into `dir`.
pub fn emit_outputs(records: &[RunRecord], summary: &Summary, dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    if records.is_empty() {
        return Err(Error::Config("no records to write".into()));
    }
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir)?;

    let records_path = dir.join(RECORDS_FILE);
    write_records(records, &records_path)?;

    let summary_path = dir.join(SUMMARY_FILE);
    std::fs::write(&summary_path, summary_json(summary))?;

    let energy_path = dir.join(ENERGY_FIGURE_FILE);
    let mut w = csv::Writer::from_path(&energy_path)?;
    w.write_record(["pattern", "L", "min", "mean", "max", "count"])?;
    for g in &summary.groups {
        let s = g.normalized_energy;
        w.serialize((g.pattern, g.layers, s.min, s.mean, s.max, g.records))?;
    }
    w.flush()?;

    let ratio_path = dir.join(RATIO_FIGURE_FILE);
    let mut w = csv::Writer::from_path(&ratio_path)?;
    w.write_record(["pattern", "L", "method", "min", "mean", "max", "count"])?;
    for g in &summary.groups {
        for (method, s) in [("pauli", g.pauli_ratio), ("magic", g.magic_ratio)] {
            w.serialize((g.pattern, g.layers, method, s.min, s.mean, s.max, g.records))?;
        }
    }
    w.flush()?;

    Ok(vec![records_path, summary_path, energy_path, ratio_path])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_stable_and_distinct() {
        assert_eq!(derive_seed(1, &[2, 3]), derive_seed(1, &[2, 3]));
        assert_ne!(derive_seed(1, &[2, 3]), derive_seed(1, &[3, 2]));
        assert_ne!(derive_seed(1, &[2]), derive_seed(2, &[2]));
    }

    #[test]
    fn config_defaults() {
        let cfg = RunConfig::default();
        assert_eq!(cfg.n_list, vec![18, 20, 22, 24]);
        assert_eq!((cfg.degree, cfg.sweeps, cfg.shots, cfg.restarts), (3, 15, 1000, 1));
        assert_eq!(cfg.depths, vec![0, 1, 2]);
        assert!(cfg.validate().is_ok());
        let parsed = RunConfig::from_json(r#"{"patterns": ["linear"], "pauli_mode": {"Shots": 100}}"#).unwrap();
        assert_eq!(parsed.patterns, vec![PatternKind::Linear]);
        assert_eq!(parsed.pauli_mode, PauliMode::Shots(100));
        assert!(RunConfig::from_json(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn config_validation() {
        let bad = |json: &str| RunConfig::from_json(json).unwrap().validate().is_err();
        assert!(bad(r#"{"n_list": [5]}"#));
        assert!(bad(r#"{"n_list": [32]}"#));
        assert!(bad(r#"{"depths": []}"#));
        assert!(bad(r#"{"shots": 0}"#));
    }

    #[test]
    fn cumulative_counts() {
        let rec = |id, layers, p, m| RunRecord {
            instance_id: id,
            n: 6,
            pattern: PatternKind::Linear,
            layers,
            seed: 0,
            relaxed_energy: 1.0,
            opt: 1.0,
            normalized_energy: 1.0,
            pauli_ratio: if p { 1.0 } else { 0.5 },
            magic_ratio: if m { 1.0 } else { 0.5 },
            pauli_optimal: p,
            magic_optimal: m,
            wall_time_s: 0.0,
        };
        let records = vec![
            rec(0, 0, false, false),
            rec(0, 1, true, false),
            rec(0, 2, false, false),
            rec(1, 0, false, true),
            rec(1, 1, false, false),
            rec(1, 2, false, false),
            rec(2, 0, false, false),
            rec(2, 1, false, false),
            rec(2, 2, true, true),
        ];
        let s = summarize(&records);
        let c = &s.optimal_counts[0].cumulative;
        let found: Vec<_> = c.iter().map(|c| c.found).collect();
        assert_eq!(found, vec![1, 2, 3]);
        assert_eq!(c.iter().map(|c| c.pauli).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(c.iter().map(|c| c.magic).collect::<Vec<_>>(), vec![1, 1, 2]);
        assert_eq!(s.groups.len(), 3);
        assert_eq!(s.groups[0].magic_ratio.min, 0.5);
    }
}
