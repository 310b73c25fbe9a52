use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use acyclic_bounds::digraph::{read_edge_list, write_edge_list};
use acyclic_bounds::experiment::{run_experiment, to_markdown, write_csv, ExperimentConfig};
use acyclic_bounds::models::{BipartiteParams, ErParams, ModelParams, TwoTypeParams};
use acyclic_bounds::variance::CatalogFault;
use acyclic_bounds::verify::{run_verify, VerifyConfig};
use acyclic_bounds::compute_bounds;

const SEED_ENV: &str = "ACYCLIC_BOUNDS_SEED";

#[derive(Parser)]
#[command(name = "acyclic-bounds", version, about = "Lower bounds on the maximum acyclic set of a digraph")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute all bounds for an edge-list file.
    Bounds { file: PathBuf },
    /// Average bound improvements over random digraphs, one row per cell.
    Experiment(ExperimentArgs),
    /// Check the closed forms against brute-force oracles.
    Verify(VerifyArgs),
    /// Write one random digraph as an edge list.
    Gen(GenArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Er,
    TwoType,
    Bipartite,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Md,
}

/// Model parameters. Every flag takes a comma-separated list; an experiment
/// runs the cartesian product, `gen` requires single values.
#[derive(Args)]
struct ModelArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Arc probability (er, bipartite).
    #[arg(long, value_delimiter = ',')]
    p: Vec<f64>,
    /// Fraction of low-degree vertices (two-type).
    #[arg(long, value_delimiter = ',')]
    p_low: Vec<f64>,
    /// High-high arc probability (two-type).
    #[arg(long, value_delimiter = ',')]
    q1: Vec<f64>,
    /// High-low arc probability (two-type).
    #[arg(long, value_delimiter = ',')]
    q2: Vec<f64>,
    /// Low-low arc probability (two-type).
    #[arg(long, value_delimiter = ',')]
    q3: Vec<f64>,
    /// Fraction of vertices in the first part (bipartite).
    #[arg(long, value_delimiter = ',')]
    a: Vec<f64>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 100)]
    graphs: usize,
    /// Master seed; falls back to $ACYCLIC_BOUNDS_SEED, then 0.
    #[arg(long, env = SEED_ENV)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 7)]
    max_n: usize,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, env = SEED_ENV, default_value_t = 0x5eed)]
    seed: u64,
    /// Perturb one catalog term to exercise the failure path.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, env = SEED_ENV)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

fn require(name: &str, values: &[f64]) -> Result<Vec<f64>> {
    if values.is_empty() {
        bail!("--{name} is required for this model");
    }
    Ok(values.to_vec())
}

fn reject(name: &str, values: &[f64], model: &str) -> Result<()> {
    if !values.is_empty() {
        bail!("--{name} does not apply to the {model} model");
    }
    Ok(())
}

fn cells(m: &ModelArgs) -> Result<Vec<ModelParams>> {
    let mut out = Vec::new();
    match m.model {
        Model::Er => {
            for (name, v) in [("p-low", &m.p_low), ("q1", &m.q1), ("q2", &m.q2), ("q3", &m.q3), ("a", &m.a)] {
                reject(name, v, "er")?;
            }
            let ps = require("p", &m.p)?;
            for &n in &m.n {
                for &p in &ps {
                    out.push(ModelParams::Er(ErParams { n, p }));
                }
            }
        }
        Model::TwoType => {
            reject("p", &m.p, "two-type")?;
            reject("a", &m.a, "two-type")?;
            let (pl, q1s, q2s, q3s) =
                (require("p-low", &m.p_low)?, require("q1", &m.q1)?, require("q2", &m.q2)?, require("q3", &m.q3)?);
            for &n in &m.n {
                for &p_low in &pl {
                    for &q1 in &q1s {
                        for &q2 in &q2s {
                            for &q3 in &q3s {
                                out.push(ModelParams::TwoType(TwoTypeParams { n, p_low, q1, q2, q3 }));
                            }
                        }
                    }
                }
            }
        }
        Model::Bipartite => {
            for (name, v) in [("p-low", &m.p_low), ("q1", &m.q1), ("q2", &m.q2), ("q3", &m.q3)] {
                reject(name, v, "bipartite")?;
            }
            let (as_, ps) = (require("a", &m.a)?, require("p", &m.p)?);
            for &n in &m.n {
                for &a in &as_ {
                    for &p in &ps {
                        out.push(ModelParams::Bipartite(BipartiteParams { n, a, p }));
                    }
                }
            }
        }
    }
    for c in &out {
        c.validate()?;
    }
    Ok(out)
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Bounds { file } => {
            let d = read_edge_list(&file).with_context(|| format!("reading {}", file.display()))?;
            println!("{}", compute_bounds(&d)?);
        }
        Command::Experiment(args) => {
            let config = ExperimentConfig {
                cells: cells(&args.model)?,
                graphs_per_cell: args.graphs,
                master_seed: args.seed.unwrap_or(0),
            };
            let table = run_experiment(&config)?;
            let mut out = output(args.out.as_ref())?;
            match args.format {
                Format::Csv => write_csv(&table, &mut out)?,
                Format::Md => out.write_all(to_markdown(&table)?.as_bytes())?,
            }
            out.flush()?;
        }
        Command::Verify(args) => {
            let report = run_verify(&VerifyConfig {
                max_n: args.max_n,
                samples: args.samples,
                seed: args.seed,
                fault: args.inject_fault.then(CatalogFault::default),
            });
            println!("{report}");
            if !report.passed() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Gen(args) => {
            let cells = cells(&args.model)?;
            let [params] = cells.as_slice() else {
                bail!("gen takes exactly one value per model parameter");
            };
            let d = params.generate(args.seed)?;
            write_edge_list(&d, &args.out).with_context(|| format!("writing {}", args.out.display()))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
