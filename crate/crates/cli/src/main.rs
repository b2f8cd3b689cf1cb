use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use folichar_cli::{report, run, CliError, Command, Options, Session};
use folichar_core::poly::DEFAULT_BUDGET;
use folichar_core::Budget;

#[derive(Debug, Parser)]
#[command(name = "folichar", version, about = "Exact computations on characteristic varieties of polynomial foliations")]
struct Cli {
    /// Emit the JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Step budget for Gröbner computations (overrides FOLICHAR_BUDGET)
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Accept a declared minimal polynomial of degree ≥ 5 without the irreducibility screen
    #[arg(long, global = true)]
    assume_irreducible: bool,
    /// Declaration to use as the vector field (default: `xi`)
    #[arg(long, global = true)]
    xi: Option<String>,
    /// Session file
    file: PathBuf,
    #[command(subcommand)]
    command: Command,
}

fn budget(flag: Option<u64>) -> Result<Budget, CliError> {
    if let Some(b) = flag {
        return Ok(Budget(b));
    }
    match std::env::var("FOLICHAR_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Budget)
            .map_err(|_| CliError::Usage(format!("FOLICHAR_BUDGET must be a step count, found '{v}'"))),
        Err(_) => Ok(Budget(DEFAULT_BUDGET)),
    }
}

fn execute(cli: &Cli) -> Result<(serde_json::Value, i32), CliError> {
    let opts = Options {
        budget: budget(cli.budget)?,
        assume_irreducible: cli.assume_irreducible,
        xi: cli.xi.clone(),
    };
    let text = std::fs::read_to_string(&cli.file).map_err(|e| CliError::Io {
        path: cli.file.display().to_string(),
        message: e.to_string(),
    })?;
    let session = Session::parse_with(&text, cli.assume_irreducible)?;
    let start = Instant::now();
    let outcome = run(&session, &cli.command, &opts)?;
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    Ok((report::success(cli.command.name(), &outcome, elapsed), report::exit_code(&outcome)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (json, code) = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            let j = report::failure(Some(cli.command.name()), &e);
            if !cli.json {
                eprintln!("error: {e}");
                return ExitCode::from(e.exit_code() as u8);
            }
            (j, e.exit_code())
        }
    };
    if cli.json {
        println!("{json}");
    } else {
        print!("{}", report::human(&json));
    }
    ExitCode::from(code as u8)
}
