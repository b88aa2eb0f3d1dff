use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bernpoly_cli::extremals::{cmd_extremals, Format};
use bernpoly_cli::render::Fmt;
use bernpoly_cli::report::{cmd_report, ReportFormat};
use bernpoly_cli::sigma_cm::cmd_sigma_cm;
use bernpoly_cli::sweep::{cmd_sweep_d4, threads_from_env};
use bernpoly_cli::verify::{cmd_verify, default_grid, Corruption};
use bernpoly_cli::{parse_p, CliError};

/// Exact polytope structure of three-dimensional Bernoulli classes with
/// equal margins p.
#[derive(Debug, Parser)]
#[command(name = "bernpoly", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the extremal points of the class for p.
    Extremals {
        /// Canonical rational "s/t" in (0, 1/2].
        #[arg(long)]
        p: String,
        /// 3 (closed form) or 4 (enumeration oracle).
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// table, json or csv.
        #[arg(long, default_value = "table")]
        format: String,
        /// Show a rounded decimal next to each rational in table output.
        #[arg(long)]
        decimals: Option<usize>,
    },
    /// Check the closed forms against the oracle on a grid of p values.
    Verify {
        /// Explicit p values; defaults to every s/t with t <= --max-t.
        #[arg(long = "p", value_delimiter = ',')]
        grid: Vec<String>,
        #[arg(long, default_value_t = 12)]
        max_t: i64,
        /// Perturb a table entry before checking: NAME:ATOM:DELTA.
        #[arg(long, hide = true)]
        corrupt: Option<String>,
    },
    /// Report on the Σ-countermonotone sub-polytope.
    SigmaCm {
        #[arg(long)]
        p: String,
        #[arg(long)]
        decimals: Option<usize>,
    },
    /// Count d = 4 extremal points for p = s/100 and write a CSV.
    SweepD4 {
        #[arg(long)]
        s_from: i64,
        #[arg(long)]
        s_to: i64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Analyse a pmf (or extremal-set) JSON file.
    Report {
        file: PathBuf,
        /// text or json.
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        decimals: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Extremals { p, d, format, decimals } => {
            let format = Format::parse(&format)?;
            cmd_extremals(&parse_p(&p)?, d, format, Fmt { decimals })
        }
        Command::Verify { grid, max_t, corrupt } => {
            let grid = if grid.is_empty() {
                if max_t < 2 {
                    return Err(CliError::Usage("--max-t must be at least 2".into()));
                }
                default_grid(max_t)
            } else {
                grid.iter().map(|s| parse_p(s)).collect::<Result<_, _>>()?
            };
            let corruption = corrupt.as_deref().map(Corruption::parse).transpose()?;
            cmd_verify(&grid, corruption.as_ref())
        }
        Command::SigmaCm { p, decimals } => cmd_sigma_cm(&parse_p(&p)?, Fmt { decimals }),
        Command::SweepD4 { s_from, s_to, out } => cmd_sweep_d4(s_from, s_to, &out, threads_from_env()?),
        Command::Report { file, format, decimals } => {
            cmd_report(&file, ReportFormat::parse(&format)?, Fmt { decimals })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
