//! Command-line interface of the benchmark toolkit.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use dynobj_cli::commands;
use dynobj_cli::config::ExperimentConfig;

#[derive(Parser)]
#[command(
    name = "dynobj",
    about = "Benchmark construction and evaluation for dynamic multi-objective \
             optimization with a changing number of objectives",
    version
)]
struct Cli {
    /// Experiment configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (overrides the config's out_dir).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Base seed (overrides the config's base_seed).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads; defaults to the machine parallelism. Never affects
    /// results, only wall-clock time.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate problems, settings and algorithms.
    List,
    /// Sample and persist the reference fronts the config needs.
    Fronts,
    /// Execute all experiment cells (resumable).
    Run,
    /// Compute per-run MHV rows and the aggregated table.
    Mhv,
    /// Friedman rank summaries and bar charts.
    Rank,
    /// Scatter plot of a front projected onto an objective pair.
    FrontPlot {
        /// Problem identifier; repeat for side-by-side panels.
        #[arg(long, required = true)]
        problem: Vec<String>,
        /// Objective pair, e.g. 1,2.
        #[arg(long)]
        pair: String,
        /// Maximum objective count defining the underlying problem.
        #[arg(long, default_value_t = 3)]
        m_max: usize,
    },
    /// Run the built-in property checks (inclusion, degeneracy, legacy).
    Verify,
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            bail!("--jobs must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("initializing the worker pool")?;
    }

    let load_config = || -> Result<ExperimentConfig> {
        let path = cli
            .config
            .as_ref()
            .ok_or_else(|| anyhow::anyhow!("this command needs --config <path>"))?;
        let mut config = ExperimentConfig::load(path)?;
        if let Some(out) = &cli.out {
            config.out_dir = out.clone();
        }
        if let Some(seed) = cli.seed {
            config.base_seed = seed;
        }
        Ok(config)
    };
    // front-plot works without a config; it only needs an output location.
    let load_config_or_default = || -> Result<ExperimentConfig> {
        match &cli.config {
            Some(_) => load_config(),
            None => {
                let mut config = ExperimentConfig::default();
                if let Some(out) = &cli.out {
                    config.out_dir = out.clone();
                }
                if let Some(seed) = cli.seed {
                    config.base_seed = seed;
                }
                Ok(config)
            }
        }
    };

    match &cli.command {
        Command::List => {
            let config = match &cli.config {
                Some(_) => Some(load_config()?),
                None => None,
            };
            print!("{}", commands::cmd_list(config.as_ref()));
        }
        Command::Fronts => print!("{}", commands::cmd_fronts(&load_config()?)?),
        Command::Run => print!("{}", commands::cmd_run(&load_config()?)?),
        Command::Mhv => print!("{}", commands::cmd_mhv(&load_config()?)?),
        Command::Rank => print!("{}", commands::cmd_rank(&load_config()?)?),
        Command::FrontPlot { problem, pair, m_max } => {
            let pair = commands::parse_pair(pair)?;
            print!(
                "{}",
                commands::cmd_front_plot(&load_config_or_default()?, problem, pair, *m_max)?
            );
        }
        Command::Verify => print!("{}", commands::cmd_verify()?),
    }
    Ok(())
}
