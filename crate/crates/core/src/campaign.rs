//! Multi-seed annealing campaigns with per-run artifacts and a summary.

use std::path::{Path, PathBuf};

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fermion::{self, encode, FermionicHamiltonian};
use crate::gate::{flatten_units, write_circuit};
use crate::hamiltonian::QubitHamiltonian;
use crate::search::{
    bfs_run, compare_conventional, ratio_f64, sa_run, Algorithm, BfsBudget, Conventional,
    ConventionalReport, CostFn, GateSetId, RunRecord, SaConfig, Schedule,
};
use crate::tree::TernaryTree;

/// Fermionic model to build.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModelSpec {
    Hopping1d {
        sites: usize,
        range: usize,
    },
    Hopping2d {
        side: usize,
    },
    Hubbard2d {
        side: usize,
        #[serde(default = "one")]
        t: f64,
        #[serde(default = "one")]
        u: f64,
    },
    SingleOps {
        n: usize,
    },
    Exchange,
    File {
        path: PathBuf,
    },
}

fn one() -> f64 {
    1.0
}

impl ModelSpec {
    pub fn build(&self) -> Result<FermionicHamiltonian> {
        match self {
            ModelSpec::Hopping1d { sites, range } => fermion::hopping_1d(*sites, *range),
            ModelSpec::Hopping2d { side } => fermion::hopping_2d(*side),
            ModelSpec::Hubbard2d { side, t, u } => fermion::hubbard_2d(*side, *t, *u),
            ModelSpec::SingleOps { n } => fermion::single_ops(*n),
            ModelSpec::Exchange => fermion::exchange(),
            ModelSpec::File { path } => FermionicHamiltonian::load(path),
        }
    }

    /// How fermionic modes are laid out, for the record.
    pub fn mode_order(&self) -> &'static str {
        match self {
            ModelSpec::Hopping2d { .. } => "snake: row-major, odd rows reversed",
            ModelSpec::Hubbard2d { .. } => "interleaved: mode 2*site + spin, sites in snake order",
            ModelSpec::File { .. } => "as given in the input file",
            _ => "mode k is site k",
        }
    }
}

/// Starting mapping for the search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialMapping {
    Jw,
    Bk,
    Balanced,
    TreeFile(PathBuf),
}

impl InitialMapping {
    pub fn tree(&self, n: usize) -> Result<TernaryTree> {
        let t = match self {
            InitialMapping::Jw => Conventional::Jw.tree(n)?,
            InitialMapping::Bk => Conventional::Bk.tree(n)?,
            InitialMapping::Balanced => Conventional::Balanced.tree(n)?,
            InitialMapping::TreeFile(path) => {
                let text = std::fs::read_to_string(path)?;
                serde_json::from_str(&text).map_err(|e| Error::Schema(e.to_string()))?
            }
        };
        if t.n_qubits() != n {
            return Err(Error::Dimension {
                expected: n,
                found: t.n_qubits(),
            });
        }
        Ok(t)
    }

    pub fn is_conventional(&self) -> bool {
        !matches!(self, InitialMapping::TreeFile(_))
    }
}

/// Seeds given explicitly, or `count` sequential integers from `master`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SeedSpec {
    List(Vec<u64>),
    Sequential { master: u64, count: u64 },
}

impl SeedSpec {
    /// Seeds in order of first appearance, duplicates removed.
    pub fn seeds(&self) -> Vec<u64> {
        match self {
            SeedSpec::List(v) => {
                let mut out: Vec<u64> = Vec::with_capacity(v.len());
                for s in v {
                    if !out.contains(s) {
                        out.push(*s);
                    }
                }
                out
            }
            SeedSpec::Sequential { master, count } => (0..*count).map(|i| master + i).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub model: ModelSpec,
    #[serde(default = "default_algorithm")]
    pub algorithm: Algorithm,
    #[serde(default = "default_initial")]
    pub initial_mapping: InitialMapping,
    #[serde(default = "default_gate_set")]
    pub gate_set: GateSetId,
    #[serde(default)]
    pub schedule: Schedule,
    #[serde(default = "default_t_max")]
    pub t_max: u64,
    #[serde(default = "default_seeds")]
    pub seeds: SeedSpec,
    #[serde(default)]
    pub cost: CostFn,
    pub output_dir: PathBuf,
    /// Worker threads; 0 uses every available core.
    #[serde(default)]
    pub workers: usize,
    #[serde(default = "default_trace_every")]
    pub trace_every: u64,
    /// Keep only the best prefix of each run's move list.
    #[serde(default)]
    pub compact: bool,
    /// Node budget for best-first search, which ignores seeds and the schedule.
    #[serde(default = "default_max_nodes")]
    pub max_nodes: u64,
}

fn default_algorithm() -> Algorithm {
    Algorithm::Sa
}
fn default_max_nodes() -> u64 {
    BfsBudget::default().max_nodes
}
fn default_initial() -> InitialMapping {
    InitialMapping::Jw
}
fn default_gate_set() -> GateSetId {
    GateSetId::CH
}
fn default_t_max() -> u64 {
    100_000
}
fn default_seeds() -> SeedSpec {
    SeedSpec::Sequential {
        master: 0,
        count: 10,
    }
}
fn default_trace_every() -> u64 {
    1000
}

impl CampaignConfig {
    /// Checks parameters and referenced files without running anything.
    pub fn validate(&self) -> Result<()> {
        self.schedule.validate()?;
        if self.t_max == 0 {
            return Err(Error::Domain("t_max must be at least 1".into()));
        }
        if self.seeds.seeds().is_empty() {
            return Err(Error::Domain("at least one seed is required".into()));
        }
        for path in [
            match &self.model {
                ModelSpec::File { path } => Some(path),
                _ => None,
            },
            match &self.initial_mapping {
                InitialMapping::TreeFile(path) => Some(path),
                _ => None,
            },
        ]
        .into_iter()
        .flatten()
        {
            if !path.is_file() {
                return Err(Error::Domain(format!(
                    "file {} does not exist",
                    path.display()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub seed: u64,
    pub initial_cost: Ratio<u64>,
    pub best_cost: Ratio<u64>,
    pub best_prefix_len: usize,
    pub accepted_moves: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub model: ModelSpec,
    pub algorithm: Algorithm,
    pub mode_order: String,
    pub n_modes: usize,
    pub n_terms: usize,
    pub initial_mapping: InitialMapping,
    pub gate_set: GateSetId,
    pub cost: CostFn,
    pub t_max: u64,
    pub runs: Vec<RunSummary>,
    pub best_seed: u64,
    pub best_cost: Ratio<u64>,
    pub best_cost_value: f64,
    pub conventional: ConventionalReport,
    /// Reduction of the best cost against the best conventional mapping.
    pub percent_reduction: f64,
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(value)? + "\n")?;
    Ok(())
}

/// Writes the record, the best circuit and the cost trace of one run.
pub fn write_run_artifacts(dir: &Path, record: &RunRecord) -> Result<()> {
    let seed = record.seed;
    write_json(&dir.join(format!("run_{seed}.json")), record)?;
    let circuit = write_circuit(&flatten_units(record.best_moves()));
    std::fs::write(dir.join(format!("circuit_{seed}.txt")), circuit)?;
    std::fs::write(dir.join(format!("trace_{seed}.csv")), record.trace_csv())?;
    Ok(())
}

/// Encodes the model, anneals every seed (in parallel) and writes
/// `config.json`, `initial.json`, per-seed artifacts and `summary.json`.
///
/// Outputs depend only on the configuration, not on thread scheduling. If a
/// run fails the campaign stops with an error; artifacts of finished runs
/// stay on disk.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignSummary> {
    cfg.validate()?;
    let hf = cfg.model.build()?;
    let n = hf.n_modes();
    let mapping = cfg.initial_mapping.tree(n)?.compile();
    let hq: QubitHamiltonian = encode(&hf, &mapping)?;
    let conventional = compare_conventional(&hf, cfg.cost)?;

    std::fs::create_dir_all(&cfg.output_dir)?;
    write_json(&cfg.output_dir.join("config.json"), cfg)?;
    hq.save(&cfg.output_dir.join("initial.json"))?;

    let seeds = match cfg.algorithm {
        Algorithm::Sa => cfg.seeds.seeds(),
        Algorithm::Bfs => vec![0],
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
    let records: Vec<Result<RunRecord>> = pool.install(|| {
        seeds
            .par_iter()
            .map(|&seed| {
                if cfg.algorithm == Algorithm::Bfs {
                    let budget = BfsBudget {
                        max_nodes: cfg.max_nodes,
                        timeout: None,
                    };
                    let record = bfs_run(&hq, cfg.gate_set, cfg.cost, budget)?;
                    write_run_artifacts(&cfg.output_dir, &record)?;
                    return Ok(record);
                }
                let sa = SaConfig {
                    gate_set: cfg.gate_set,
                    schedule: cfg.schedule,
                    t_max: cfg.t_max,
                    seed,
                    cost_fn: cfg.cost,
                    trace_every: cfg.trace_every,
                    compact: cfg.compact,
                };
                let record = sa_run(&hq, &sa)?;
                write_run_artifacts(&cfg.output_dir, &record)?;
                Ok(record)
            })
            .collect()
    });
    let records: Vec<RunRecord> = records.into_iter().collect::<Result<_>>()?;

    let best = records.iter().fold(
        &records[0],
        |b, r| if r.best_cost < b.best_cost { r } else { b },
    );
    let percent_reduction = conventional.percent_reduction(best.best_cost)?;
    let summary = CampaignSummary {
        model: cfg.model.clone(),
        algorithm: cfg.algorithm,
        mode_order: cfg.model.mode_order().to_string(),
        n_modes: n,
        n_terms: hq.len(),
        initial_mapping: cfg.initial_mapping.clone(),
        gate_set: cfg.gate_set,
        cost: cfg.cost,
        t_max: cfg.t_max,
        runs: records
            .iter()
            .map(|r| RunSummary {
                seed: r.seed,
                initial_cost: r.initial_cost,
                best_cost: r.best_cost,
                best_prefix_len: r.best_prefix_len,
                accepted_moves: r.moves.len(),
            })
            .collect(),
        best_seed: best.seed,
        best_cost: best.best_cost,
        best_cost_value: ratio_f64(best.best_cost),
        conventional,
        percent_reduction,
    };
    write_json(&cfg.output_dir.join("summary.json"), &summary)?;
    Ok(summary)
}
