use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dressed_trap_kit::{cmd_derive, cmd_grid, cmd_simulate, cmd_track, parse_config, CliError};

/// Exit codes: 0 success, 1 configuration error, 2 i/o error,
/// 3 tracking failure, 4 command/scenario mismatch.
#[derive(Parser)]
#[command(
    name = "dressed-trap-kit",
    version,
    about = "RF-dressed quadrupole-trap potentials: grid export, derived quantities, \
             minimum tracking, and classical trajectories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Run configuration (JSON with unit-suffixed keys)
    #[arg(long)]
    config: PathBuf,
    /// Output file (defaults: grid.csv, summary.json, track.json, trajectory.csv)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for grid evaluation
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the potential over a plane grid and export it as CSV
    Grid(CommonArgs),
    /// Report derived quantities (ring radius, well separation, minima, sweeps)
    Derive(CommonArgs),
    /// Track the moving potential minimum of a time-dependent scenario
    Track(CommonArgs),
    /// Integrate a classical test atom and export the trajectory as CSV
    Simulate(CommonArgs),
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Grid(args) => {
            let spec = parse_config(&args.config)?;
            cmd_grid(&spec, args.out.as_deref(), args.threads)
        }
        Command::Derive(args) => {
            let spec = parse_config(&args.config)?;
            cmd_derive(&spec, args.out.as_deref().or(Some("summary.json".as_ref())))
        }
        Command::Track(args) => {
            let spec = parse_config(&args.config)?;
            cmd_track(&spec, args.out.as_deref().or(Some("track.json".as_ref())))
        }
        Command::Simulate(args) => {
            let spec = parse_config(&args.config)?;
            cmd_simulate(&spec, args.out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version exit cleanly; argument errors are
            // configuration errors
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(summary) => {
            print!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
