//! `nisq`: pick an implementation and a quantum computer for an algorithm
//! and input, then run it on the local simulator.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use nisq_analyzer::executor::{execute, StatevectorBackend};
use nisq_analyzer::pipeline::{analyze, parse_assignments, select, select_with, transpile_pair, SelectionError};
use nisq_analyzer::registry::{load_registry, validate, Registry};

/// Exit status when analysis finds nothing that can run.
const EXIT_NO_PAIR: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "nisq",
    version,
    about = "Select and run quantum algorithm implementations on suitable quantum computers"
)]
struct Cli {
    /// Registry root directory.
    #[arg(long, global = true, env = "NISQ_REGISTRY", default_value = "registry")]
    registry: PathBuf,

    /// Emit canonical JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,

    /// Sampling seed.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Number of shots.
    #[arg(long, global = true, default_value_t = 1024, value_parser = clap::value_parser!(u64).range(1..))]
    shots: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List registry entities sorted by id.
    List { kind: Kind },
    /// Report every implementation and quantum computer pair for an input.
    Analyze {
        algorithm: String,
        /// Input values as name=value.
        inputs: Vec<String>,
    },
    /// Analyze, pick a pair and run it on the simulator.
    Execute {
        algorithm: String,
        /// Input values as name=value.
        inputs: Vec<String>,
        /// Use this implementation instead of the ranked choice.
        #[arg(long = "impl")]
        implementation: Option<String>,
        /// Use this quantum computer instead of the ranked choice.
        #[arg(long)]
        qpu: Option<String>,
    },
    /// Check the registry and print every problem found.
    Validate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Algorithms,
    Implementations,
    Qpus,
    Sdks,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn load(cli: &Cli) -> anyhow::Result<Registry> {
    Ok(load_registry(&cli.registry)?)
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    match &cli.command {
        Command::List { kind } => {
            let registry = load(cli)?;
            print!("{}", render::listing(&registry, *kind, cli.json));
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate => {
            let diagnostics = validate(&cli.registry);
            if cli.json {
                println!("{}", nisq_analyzer::pipeline::canonical_json(&diagnostics));
            } else {
                for d in &diagnostics {
                    println!("{d}");
                }
            }
            if diagnostics.is_empty() {
                if !cli.json {
                    println!("registry is valid");
                }
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("{} problem(s) found", diagnostics.len());
                Ok(ExitCode::from(1))
            }
        }
        Command::Analyze { algorithm, inputs } => {
            let registry = load(cli)?;
            let input = parse_assignments(inputs).map_err(|e| anyhow!("usage: {e}"))?;
            let report = analyze(&registry, algorithm, &input)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            let recommendation = select(&report);
            print!("{}", render::analysis(&report, recommendation.as_ref(), cli.json));
            if recommendation.is_some() {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("no executable pair");
                Ok(ExitCode::from(EXIT_NO_PAIR))
            }
        }
        Command::Execute {
            algorithm,
            inputs,
            implementation,
            qpu,
        } => {
            let registry = load(cli)?;
            let input = parse_assignments(inputs).map_err(|e| anyhow!("usage: {e}"))?;
            if let Some(id) = implementation {
                registry
                    .implementation(id)
                    .ok_or_else(|| anyhow!("unknown implementation '{id}'"))?;
            }
            if let Some(id) = qpu {
                registry
                    .qpu(id)
                    .ok_or_else(|| anyhow!("unknown quantum computer '{id}'"))?;
            }
            let report = analyze(&registry, algorithm, &input)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            let choice = match select_with(&report, implementation.as_deref(), qpu.as_deref()) {
                Ok(choice) => choice,
                Err(SelectionError::NoExecutablePair) => {
                    eprintln!("no executable pair");
                    return Ok(ExitCode::from(EXIT_NO_PAIR));
                }
                Err(e) => return Err(e.into()),
            };
            let (transpiled, sdk) = transpile_pair(&registry, &choice.implementation_id, &choice.qpu_id, &input)?;
            let target = registry.qpu(&choice.qpu_id).expect("selected quantum computer exists");
            let backend = StatevectorBackend::new(target.sdks().iter().cloned());
            let result = execute(&transpiled, &sdk, &backend, cli.shots, cli.seed)
                .with_context(|| format!("running {} on {}", choice.implementation_id, choice.qpu_id))?;
            print!("{}", render::execution(&choice, &result, cli.json));
            Ok(ExitCode::SUCCESS)
        }
    }
}
