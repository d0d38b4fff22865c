use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use vdistill::estimate::Shots;
use vdistill_cli::experiments::LoadedFixture;
use vdistill_cli::{run_file, CliError, Overrides};

#[derive(Parser)]
#[command(
    name = "vdistill",
    version,
    about = "Virtual distillation experiments on a dense simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a JSON config.
    Run {
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Shots per circuit, or `exact`.
        #[arg(long)]
        shots: Option<Shots>,
        /// Comma-separated depolarization values.
        #[arg(long, value_delimiter = ',')]
        lambda_grid: Option<Vec<f64>>,
        /// Output file (directory for compile).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for outputs the config does not name.
        #[arg(long, env = "VDISTILL_OUT_DIR")]
        out_dir: Option<PathBuf>,
    },
    /// Check fixtures against their stored ground energies.
    CheckFixture { fixtures: Vec<PathBuf> },
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code())
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run {
            config,
            seed,
            shots,
            lambda_grid,
            out,
            out_dir,
        } => {
            let overrides = Overrides {
                seed,
                shots,
                lambda_grid,
                output: out,
                out_dir,
            };
            match run_file(&config, &overrides) {
                Ok(summary) => {
                    for p in &summary.outputs {
                        println!("{}", p.display());
                    }
                    if summary.row_errors > 0 {
                        eprintln!("{} row(s) carry estimation errors", summary.row_errors);
                    }
                    ExitCode::from(summary.exit_code())
                }
                Err(e) => fail(e),
            }
        }
        Command::CheckFixture { fixtures } => {
            for path in &fixtures {
                match LoadedFixture::load(path) {
                    Ok(f) => println!(
                        "{}: {} qubits, ground energy {}",
                        f.name(),
                        f.n_qubits(),
                        f.exact
                    ),
                    Err(e) => return fail(e),
                }
            }
            ExitCode::SUCCESS
        }
    }
}
