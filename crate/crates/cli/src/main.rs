use std::fs::File;
use std::io::{self, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use decohere_cli::{cmd_single, cmd_sweep, cmd_verify, write_csv, CliError, ConfigError, ExperimentConfig};

#[derive(Parser)]
#[command(name = "decohere", version, about = "Collisional decoherence of GHZ, W and cluster states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one configuration over its cuts and print CSV.
    Single {
        #[arg(long)]
        config: PathBuf,
    },
    /// Evaluate a parameter sweep and write CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the seeded invariant suite.
    Verify {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn load(path: &Path) -> Result<ExperimentConfig, CliError> {
    Ok(ExperimentConfig::from_path(path)?)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Single { config } => {
            let rows = cmd_single(&load(&config)?)?;
            write_csv(io::stdout().lock(), &rows)?;
        }
        Command::Sweep { config, out } => {
            let rows = cmd_sweep(&load(&config)?)?;
            match out {
                Some(path) => {
                    let file = File::create(&path)
                        .with_context(|| format!("creating {}", path.display()))
                        .map_err(|e| CliError::Output(format!("{e:#}")))?;
                    write_csv(BufWriter::new(file), &rows)?;
                }
                None => write_csv(io::stdout().lock(), &rows)?,
            }
        }
        Command::Verify { max_n, seed } => {
            let outcomes = cmd_verify(max_n, seed)?;
            for o in &outcomes {
                println!("{o}");
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            println!("{} of {} properties passed (max_n = {max_n}, seed = {seed})", outcomes.len() - failed, outcomes.len());
            if failed > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            if let CliError::Config(ConfigError::AllCutsTooLarge { n }) = &e {
                eprintln!("warning: cuts = \"all\" at n_qubits = {n} means {} cuts", (1u64 << (n - 1)) - 1);
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
