use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicU64, Ordering};

use acss::bdm::{bdm, Boundary, DEFAULT_BLOCK};
use acss::experiments::{
    self, Experiment, ExperimentConfig, Measure, DEFAULT_SAMPLES, DEFAULT_TRIALS,
};
use acss::graphs::{graph_bdm, graph_block_entropy, graph_compress, LabellingMode};
use acss::turmite::{enumerate_counts_with_progress, machine_count, DEFAULT_BUDGET};
use acss::{BinaryMatrix, CtmTable, Graph};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

/// Algorithmic complexity of binary matrices and graphs via CTM and BDM.
#[derive(Parser)]
#[command(name = "acss", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// CTM table operations.
    Ctm {
        #[command(subcommand)]
        command: CtmCommand,
    },
    /// BDM of a matrix file.
    Bdm(BdmArgs),
    /// Graph measures.
    Graph {
        #[command(subcommand)]
        command: GraphCommand,
    },
    /// Run one of the experiments and write results into a directory.
    Experiment(ExperimentArgs),
    /// Print a polyhedron from the built-in catalog as an edge list.
    Catalog {
        /// Solid name, e.g. `cube` or `truncated-icosahedron`.
        name: String,
    },
}

#[derive(Subcommand)]
enum CtmCommand {
    /// Enumerate every k-state machine and write the frequency table.
    Build {
        #[arg(long)]
        states: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u32,
        #[arg(long)]
        out: PathBuf,
        /// Pool counts over rotations, reflections and complement.
        #[arg(long)]
        symmetrize: bool,
    },
}

#[derive(Args)]
struct BlockArgs {
    #[arg(long, default_value_t = DEFAULT_BLOCK)]
    block: usize,
    #[arg(long, default_value_t = Boundary::KeepPartial)]
    boundary: Boundary,
}

#[derive(Args)]
struct BdmArgs {
    #[arg(long)]
    table: PathBuf,
    #[arg(long)]
    matrix: PathBuf,
    #[command(flatten)]
    block: BlockArgs,
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Labelling-minimized complexity of a graph file.
    Complexity(ComplexityArgs),
}

#[derive(Args)]
struct ComplexityArgs {
    #[arg(long)]
    table: PathBuf,
    #[arg(long)]
    graph: PathBuf,
    /// Minimize over all labellings.
    #[arg(long, conflicts_with = "samples")]
    exact: bool,
    /// Allow exact mode up to the raised size limit.
    #[arg(long, requires = "exact")]
    allow_large: bool,
    /// Random labellings in sampled mode.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "bdm")]
    measure: Measure,
    #[command(flatten)]
    block: BlockArgs,
}

#[derive(Args)]
struct ExperimentArgs {
    name: Experiment,
    #[arg(long)]
    table: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    /// Complete-graph sizes, e.g. `5..=20`.
    #[arg(long, default_value = "5..=20")]
    sizes: String,
    /// Hypercube dimensions, e.g. `2..=7`.
    #[arg(long, default_value = "2..=7")]
    dims: String,
    /// Comma-separated subset of bdm, entropy, compress.
    #[arg(long, value_delimiter = ',', default_value = "bdm,entropy,compress")]
    measures: Vec<Measure>,
    #[command(flatten)]
    block: BlockArgs,
}

fn parse_range(s: &str) -> Result<(u64, u64)> {
    let (a, b) = s
        .split_once("..=")
        .with_context(|| format!("range {s:?} is not of the form `a..=b`"))?;
    let parse = |x: &str| {
        x.trim()
            .parse::<u64>()
            .with_context(|| format!("bad bound {x:?}"))
    };
    Ok((parse(a)?, parse(b)?))
}

fn ctm_build(states: u32, budget: u32, out: PathBuf, symmetrize: bool) -> Result<()> {
    let total = machine_count(states)?;
    log::info!("enumerating {total} machines with {states} states, budget {budget}");
    let reported = AtomicU64::new(0);
    let counts = enumerate_counts_with_progress(states, budget, 0..total, |done| {
        let pct = done * 10 / total.max(1);
        if reported.fetch_max(pct, Ordering::Relaxed) < pct {
            log::info!("{}% of machines run", pct * 10);
        }
    })?;
    let mut table = CtmTable::build(counts, states, budget)?;
    if symmetrize {
        table = table.symmetrize();
    }
    table.save(&out)?;
    let meta = table.meta();
    println!(
        "wrote {} entries to {} (halting {} of {})",
        table.len(),
        out.display(),
        meta.total_halting,
        meta.total_run
    );
    Ok(())
}

fn graph_complexity(a: ComplexityArgs) -> Result<()> {
    let table = CtmTable::load(&a.table)?;
    let g = Graph::load(&a.graph)?;
    let mode = if a.exact {
        LabellingMode::Exact {
            allow_large: a.allow_large,
        }
    } else {
        LabellingMode::sampled(a.samples.unwrap_or(DEFAULT_SAMPLES), a.seed)
    };
    let (d, b) = (a.block.block, a.block.boundary);
    let min = match a.measure {
        Measure::Bdm => graph_bdm(&g, d, b, &table, mode)?,
        Measure::Entropy => graph_block_entropy(&g, d, b, mode)?,
        Measure::Compress => graph_compress(&g, mode)?,
    };
    println!("{}", min.value);
    let labels: Vec<String> = min
        .labelling
        .as_slice()
        .iter()
        .map(|l| l.to_string())
        .collect();
    log::info!("minimizing labelling: {}", labels.join(" "));
    Ok(())
}

fn experiment(a: ExperimentArgs) -> Result<()> {
    let (s0, s1) = parse_range(&a.sizes).map_err(config_error)?;
    let (d0, d1) = parse_range(&a.dims).map_err(config_error)?;
    let mut cfg = ExperimentConfig::new(&a.table, a.seed, &a.out);
    cfg.samples = a.samples;
    cfg.trials = a.trials;
    cfg.sizes = s0 as usize..=s1 as usize;
    cfg.dims = u32::try_from(d0).unwrap_or(u32::MAX)..=u32::try_from(d1).unwrap_or(u32::MAX);
    cfg.measures = a.measures;
    cfg.block = a.block.block;
    cfg.boundary = a.block.boundary;
    let table = cfg.load_table()?;
    let output = experiments::run(a.name, &cfg, &table)?;
    output.write(&cfg.out_dir)?;
    println!(
        "{}: {} records written to {}",
        a.name,
        output.records.len(),
        cfg.out_dir.display()
    );
    Ok(())
}

fn config_error(e: anyhow::Error) -> anyhow::Error {
    acss::Error::Config(format!("{e:#}")).into()
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Ctm {
            command:
                CtmCommand::Build {
                    states,
                    budget,
                    out,
                    symmetrize,
                },
        } => ctm_build(states, budget, out, symmetrize),
        Command::Bdm(a) => {
            let table = CtmTable::load(&a.table)?;
            let m = BinaryMatrix::load(&a.matrix)?;
            if a.block.block == 0 {
                bail!(acss::Error::Config("block size must be positive".into()));
            }
            println!("{}", bdm(&m, a.block.block, &table, a.block.boundary)?);
            Ok(())
        }
        Command::Graph {
            command: GraphCommand::Complexity(a),
        } => graph_complexity(a),
        Command::Experiment(a) => experiment(a),
        Command::Catalog { name } => {
            print!("{}", acss::graphs::polyhedron(&name)?.to_text());
            Ok(())
        }
    }
}

/// 3 for refused size guards, 2 for other library errors (bad input or
/// configuration), 1 for anything else.
fn exit_code(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<acss::Error>()) {
        Some(acss::Error::SizeGuard { .. }) => 3,
        Some(_) => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
