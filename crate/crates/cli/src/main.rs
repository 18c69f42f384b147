use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use harmonium::oracle::{self, Bound};
use harmonium_cli::{load_config, run, CliError};

#[derive(Parser)]
#[command(
    name = "harmonium",
    version,
    about = "Time-dependent harmonically confined two-electron atoms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write its CSVs and manifest.
    Run { config: PathBuf },
    /// Parse and validate a configuration without running it.
    Validate { config: PathBuf },
    /// Run the brute-force cross-checks and print a pass/fail table.
    Oracle,
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code())
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run { config } => {
            let config = match load_config(&config) {
                Ok(c) => c,
                Err(e) => return fail(&e),
            };
            match run(&config) {
                Ok(outcome) => {
                    println!(
                        "{}: {} output times in {:.2} s -> {}",
                        config.name,
                        outcome.diagnostics.output_times,
                        outcome.wall_clock_seconds,
                        outcome.output_dir.display()
                    );
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&e),
            }
        }
        Command::Validate { config } => match load_config(&config) {
            Ok(c) => {
                println!(
                    "{}: valid ({} mode, profile {}, interaction {}, {} steps)",
                    c.name,
                    c.mode.as_str(),
                    c.profile.name(),
                    c.interaction.name(),
                    c.n_steps()
                );
                ExitCode::SUCCESS
            }
            Err(e) => fail(&e),
        },
        Command::Oracle => match oracle::run_all() {
            Ok(checks) => {
                let mut all = true;
                for c in &checks {
                    let op = match c.bound {
                        Bound::AtMost => "<=",
                        Bound::AtLeast => ">=",
                    };
                    let verdict = if c.passed() { "PASS" } else { "FAIL" };
                    all &= c.passed();
                    println!(
                        "{verdict}  {:<50} {:>11.3e} {op} {:.1e}",
                        c.name, c.measured, c.threshold
                    );
                }
                if all {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(3)
                }
            }
            Err(e) => fail(&CliError::Core(e)),
        },
    }
}
