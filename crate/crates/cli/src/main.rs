use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use cliffmap::campaign::{run_campaign, CampaignConfig, InitialMapping, ModelSpec};
use cliffmap::fermion::{encode, FermionicHamiltonian};
use cliffmap::search::{compare_conventional, enumerate_minimum, CostFn, GateSetId};
use cliffmap::tree::DEFAULT_MAPPING_BOUND;
use cliffmap::verify;

#[derive(Parser)]
#[command(
    name = "cliffmap",
    version,
    about = "Optimize fermion-to-qubit mappings with Clifford circuits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a fermionic Hamiltonian as JSON.
    Build {
        #[command(subcommand)]
        model: BuildModel,
        /// Output file.
        #[arg(short, long, global = true, default_value = "hamiltonian.json")]
        output: PathBuf,
    },
    /// Encode a fermionic Hamiltonian into Pauli strings.
    Encode(EncodeArgs),
    /// Run an annealing (or best-first) campaign.
    Optimize(Box<OptimizeArgs>),
    /// Exhaustively minimize Pauli weight over all ternary-tree mappings.
    EnumerateTrees(EnumerateArgs),
    /// Report Pauli weights under the Jordan-Wigner, Bravyi-Kitaev and balanced mappings.
    Compare {
        /// Fermionic Hamiltonian JSON.
        input: PathBuf,
        #[arg(long, default_value = "avg")]
        cost: CostFn,
    },
    /// Run the built-in correctness suites.
    Verify,
}

#[derive(Subcommand)]
enum BuildModel {
    /// Open chain with hopping up to distance `range`.
    Hopping1d {
        #[arg(long)]
        sites: usize,
        #[arg(long, default_value_t = 1)]
        range: usize,
    },
    /// Nearest-neighbour hopping on a square lattice.
    Hopping2d {
        #[arg(long)]
        side: usize,
    },
    /// Spinful Hubbard model on a square lattice.
    Hubbard2d {
        #[arg(long)]
        side: usize,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = 1.0)]
        u: f64,
    },
    /// Every single creation and annihilation operator.
    SingleOps {
        #[arg(long)]
        n: usize,
    },
    /// Four-mode exchange term plus its adjoint.
    Exchange,
    /// Validate and copy an existing fermionic Hamiltonian file.
    File { path: PathBuf },
}

impl BuildModel {
    fn spec(&self) -> ModelSpec {
        match self {
            BuildModel::Hopping1d { sites, range } => ModelSpec::Hopping1d {
                sites: *sites,
                range: *range,
            },
            BuildModel::Hopping2d { side } => ModelSpec::Hopping2d { side: *side },
            BuildModel::Hubbard2d { side, t, u } => ModelSpec::Hubbard2d {
                side: *side,
                t: *t,
                u: *u,
            },
            BuildModel::SingleOps { n } => ModelSpec::SingleOps { n: *n },
            BuildModel::Exchange => ModelSpec::Exchange,
            BuildModel::File { path } => ModelSpec::File { path: path.clone() },
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MappingArg {
    Jw,
    Bk,
    Balanced,
}

#[derive(Args)]
struct EncodeArgs {
    /// Fermionic Hamiltonian JSON.
    input: PathBuf,
    #[arg(long, value_enum, default_value = "jw", conflicts_with = "tree")]
    mapping: MappingArg,
    /// Ternary tree JSON to use instead of a named mapping.
    #[arg(long)]
    tree: Option<PathBuf>,
    /// Leave out the identity term.
    #[arg(long)]
    drop_identity: bool,
    #[arg(short, long, default_value = "qubit.json")]
    output: PathBuf,
}

#[derive(Args)]
struct OptimizeArgs {
    /// Campaign file (TOML, or JSON when the extension is .json).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Fermionic Hamiltonian JSON; replaces the model of the config file.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    output_dir: Option<PathBuf>,
    #[arg(long, value_parser = ["sa", "bfs"])]
    algorithm: Option<String>,
    #[arg(long, value_parser = ["jw", "bk", "balanced"], conflicts_with = "tree")]
    initial: Option<String>,
    /// Ternary tree JSON for the starting mapping.
    #[arg(long)]
    tree: Option<PathBuf>,
    #[arg(long)]
    gate_set: Option<GateSetId>,
    #[arg(long)]
    cost: Option<CostFn>,
    #[arg(long)]
    t_max: Option<u64>,
    #[arg(long)]
    c1: Option<f64>,
    #[arg(long)]
    c2: Option<f64>,
    #[arg(long)]
    c3: Option<f64>,
    #[arg(long)]
    t_min: Option<u64>,
    /// Explicit seeds, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["master_seed", "n_seeds"])]
    seeds: Option<Vec<u64>>,
    #[arg(long)]
    master_seed: Option<u64>,
    #[arg(long)]
    n_seeds: Option<u64>,
    /// Worker threads; 0 uses all cores.
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    trace_every: Option<u64>,
    #[arg(long)]
    compact: bool,
    #[arg(long)]
    max_nodes: Option<u64>,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Fermionic Hamiltonian JSON.
    input: PathBuf,
    /// Expected number of modes; defaults to the file's.
    #[arg(long)]
    n: Option<usize>,
    /// Allow more modes than the default bound.
    #[arg(long)]
    force: bool,
    #[arg(long, default_value = "total")]
    cost: CostFn,
    /// Also write the report here.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

enum Failure {
    Config(anyhow::Error),
    Run(anyhow::Error),
    Verify,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 2,
            Failure::Run(_) => 3,
            Failure::Verify => 4,
        }
    }
}

trait Classify<T> {
    fn config(self) -> Result<T, Failure>;
    fn run(self) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> Classify<T> for Result<T, E> {
    fn config(self) -> Result<T, Failure> {
        self.map_err(|e| Failure::Config(e.into()))
    }
    fn run(self) -> Result<T, Failure> {
        self.map_err(|e| Failure::Run(e.into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build { model, output } => build(&model, &output),
        Command::Encode(args) => encode_cmd(&args),
        Command::Optimize(args) => optimize(&args),
        Command::EnumerateTrees(args) => enumerate(&args),
        Command::Compare { input, cost } => compare(&input, cost),
        Command::Verify => verify_cmd(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Config(e) => eprintln!("configuration error: {e:#}"),
                Failure::Run(e) => eprintln!("run failed: {e:#}"),
                Failure::Verify => eprintln!("verification failed"),
            }
            ExitCode::from(f.code())
        }
    }
}

fn print_json(v: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("values serialize")
    );
}

fn load_fermionic(path: &Path) -> Result<FermionicHamiltonian, Failure> {
    FermionicHamiltonian::load(path)
        .with_context(|| format!("reading {}", path.display()))
        .config()
}

fn build(model: &BuildModel, output: &Path) -> Result<(), Failure> {
    let hf = model.spec().build().config()?;
    hf.save(output)
        .with_context(|| format!("writing {}", output.display()))
        .run()?;
    print_json(&json!({
        "output": output,
        "n_modes": hf.n_modes(),
        "n_terms": hf.terms().len(),
    }));
    Ok(())
}

fn encode_cmd(args: &EncodeArgs) -> Result<(), Failure> {
    let hf = load_fermionic(&args.input)?;
    let initial = match (&args.tree, args.mapping) {
        (Some(path), _) => InitialMapping::TreeFile(path.clone()),
        (None, MappingArg::Jw) => InitialMapping::Jw,
        (None, MappingArg::Bk) => InitialMapping::Bk,
        (None, MappingArg::Balanced) => InitialMapping::Balanced,
    };
    let tree = initial.tree(hf.n_modes()).config()?;
    let mut hq = encode(&hf, &tree.compile()).run()?;
    if args.drop_identity {
        hq = hq.without_identity();
    }
    hq.save(&args.output)
        .with_context(|| format!("writing {}", args.output.display()))
        .run()?;
    print_json(&json!({
        "output": args.output,
        "n_qubits": hq.n_qubits(),
        "n_terms": hq.len(),
        "total_weight": hq.total_weight(),
        "avg_weight": hq.avg_weight().ok().map(|r| r.to_string()),
    }));
    Ok(())
}

fn read_config_file(path: &Path) -> anyhow::Result<Value> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value = if path.extension().is_some_and(|e| e == "json") {
        serde_json::from_str(&text)?
    } else {
        toml::from_str(&text)?
    };
    Ok(value)
}

/// Builds the effective configuration: file values, then flag overrides.
fn campaign_config(args: &OptimizeArgs) -> anyhow::Result<CampaignConfig> {
    let mut v = match &args.config {
        Some(path) => read_config_file(path)?,
        None => Value::Object(Map::new()),
    };
    let obj = v
        .as_object_mut()
        .ok_or_else(|| anyhow!("configuration must be a table"))?;
    let mut set = |key: &str, val: Value| {
        obj.insert(key.to_string(), val);
    };
    if let Some(p) = &args.input {
        set("model", json!({"kind": "file", "path": p}));
    }
    if let Some(d) = &args.output_dir {
        set("output_dir", json!(d));
    }
    if let Some(a) = &args.algorithm {
        set("algorithm", json!(a));
    }
    if let Some(i) = &args.initial {
        set("initial_mapping", json!(i));
    }
    if let Some(t) = &args.tree {
        set("initial_mapping", json!({"tree-file": t}));
    }
    if let Some(g) = args.gate_set {
        set("gate_set", json!(g));
    }
    if let Some(c) = args.cost {
        set("cost", json!(c));
    }
    if let Some(t) = args.t_max {
        set("t_max", json!(t));
    }
    if let Some(s) = &args.seeds {
        set("seeds", json!(s));
    }
    if let Some(w) = args.workers {
        set("workers", json!(w));
    }
    if let Some(t) = args.trace_every {
        set("trace_every", json!(t));
    }
    if args.compact {
        set("compact", json!(true));
    }
    if let Some(m) = args.max_nodes {
        set("max_nodes", json!(m));
    }
    if args.master_seed.is_some() || args.n_seeds.is_some() {
        let old = obj.get("seeds").and_then(|s| s.as_object().cloned());
        let field = |k: &str, d: u64| {
            old.as_ref()
                .and_then(|o| o.get(k))
                .and_then(Value::as_u64)
                .unwrap_or(d)
        };
        let master = args.master_seed.unwrap_or_else(|| field("master", 0));
        let count = args.n_seeds.unwrap_or_else(|| field("count", 10));
        obj.insert("seeds".into(), json!({"master": master, "count": count}));
    }
    let sched_overrides = [("c1", args.c1), ("c2", args.c2), ("c3", args.c3)];
    if sched_overrides.iter().any(|(_, x)| x.is_some()) || args.t_min.is_some() {
        let sched = obj
            .entry("schedule")
            .or_insert_with(|| json!({"c1": 1.0, "c2": 1.0, "c3": 1.0, "t_min": 0}));
        let sched = sched
            .as_object_mut()
            .ok_or_else(|| anyhow!("schedule must be a table"))?;
        for (k, x) in sched_overrides {
            if let Some(x) = x {
                sched.insert(k.into(), json!(x));
            }
        }
        if let Some(t) = args.t_min {
            sched.insert("t_min".into(), json!(t));
        }
    }
    let cfg: CampaignConfig =
        serde_json::from_value(v).context("invalid campaign configuration")?;
    cfg.validate()?;
    Ok(cfg)
}

fn optimize(args: &OptimizeArgs) -> Result<(), Failure> {
    let cfg = campaign_config(args).config()?;
    cfg.model.build().context("building the model").config()?;
    let summary = run_campaign(&cfg).run()?;
    let runs: Vec<Value> = summary
        .runs
        .iter()
        .map(|r| json!({"seed": r.seed, "best_cost": r.best_cost.to_string()}))
        .collect();
    print_json(&json!({
        "output_dir": cfg.output_dir,
        "best_seed": summary.best_seed,
        "best_cost": summary.best_cost.to_string(),
        "best_conventional": summary.conventional.best,
        "best_conventional_cost": summary.conventional.best_cost.to_string(),
        "percent_reduction": summary.percent_reduction,
        "runs": runs,
    }));
    Ok(())
}

fn enumerate(args: &EnumerateArgs) -> Result<(), Failure> {
    let hf = load_fermionic(&args.input)?;
    if let Some(n) = args.n {
        if n != hf.n_modes() {
            return Err(Failure::Config(anyhow!(
                "--n {n} does not match the {} modes of {}",
                hf.n_modes(),
                args.input.display()
            )));
        }
    }
    let bound = if args.force {
        hf.n_modes().max(DEFAULT_MAPPING_BOUND)
    } else {
        DEFAULT_MAPPING_BOUND
    };
    let report = match enumerate_minimum(&hf, args.cost, bound) {
        Err(e @ cliffmap::Error::BoundExceeded { .. }) => {
            return Err(Failure::Config(anyhow!(
                "{e}; pass --force to enumerate anyway"
            )))
        }
        other => other.run()?,
    };
    let value = json!({
        "n_modes": report.n_modes,
        "mappings": report.mappings,
        "n_terms": report.n_terms,
        "min_total_weight": report.min_total_weight,
        "min_cost": report.min_cost.to_string(),
        "cost": report.cost_fn,
        "argmin": report.argmin,
    });
    if let Some(out) = &args.output {
        std::fs::write(
            out,
            serde_json::to_string_pretty(&value).expect("serializes") + "\n",
        )
        .with_context(|| format!("writing {}", out.display()))
        .run()?;
    }
    print_json(&value);
    Ok(())
}

fn compare(input: &Path, cost: CostFn) -> Result<(), Failure> {
    let hf = load_fermionic(input)?;
    let report = compare_conventional(&hf, cost).run()?;
    let costs: Map<String, Value> = report
        .costs
        .iter()
        .map(|(c, r)| {
            (
                json!(c).as_str().unwrap_or("?").to_string(),
                json!(r.to_string()),
            )
        })
        .collect();
    print_json(&json!({
        "cost": cost,
        "n_terms": report.n_terms,
        "costs": costs,
        "best": report.best,
        "best_cost": report.best_cost.to_string(),
    }));
    Ok(())
}

fn verify_cmd() -> Result<(), Failure> {
    let mut all_ok = true;
    for s in verify::run_all() {
        let status = if s.ok() { "ok" } else { "FAILED" };
        println!("{:<44} {:>5}/{:<5} {status}", s.name, s.passed, s.total);
        for f in &s.failures {
            println!("    {f}");
        }
        all_ok &= s.ok();
    }
    if all_ok {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}
