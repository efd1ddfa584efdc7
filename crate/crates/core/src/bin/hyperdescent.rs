use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hyperdescent::cli_reports::{
    bound_input_from_json, cmd_jacobian, cmd_pillai, cmd_rank_bound, cmd_verify_d5, cmd_verify_d6, default_bound_input, Overrides, Report, Scenario,
};
use hyperdescent::elliptic_ff::Strategy;
use hyperdescent::error::Error;
use hyperdescent::rank_bounds::BoundInput;

#[derive(Parser)]
#[command(name = "hyperdescent", version, about = "Descent and Mordell-Weil lattice verification over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// scenario file (JSON); rank-bound takes a bound input or a scenario with a rank_bound entry
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[arg(long = "tower-max", global = true)]
    tower_max: Option<usize>,
    #[arg(long, global = true, value_enum)]
    strategy: Option<StrategyArg>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Cmd {
    VerifyD5,
    VerifyD6,
    Jacobian,
    RankBound,
    Pillai,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Scan,
    Eliminate,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn scenario(cli: &Cli, default: fn() -> Scenario) -> Result<Scenario, Error> {
    let sc = match &cli.config {
        Some(p) => Scenario::from_json(&read(p)?)?,
        None => default(),
    };
    let ov = Overrides {
        seed: cli.seed,
        budget: cli.budget,
        tower_max: cli.tower_max,
        strategy: cli.strategy.map(|s| match s {
            StrategyArg::Scan => Strategy::Scan,
            StrategyArg::Eliminate => Strategy::Eliminate,
            StrategyArg::Both => Strategy::Both,
        }),
    };
    Ok(ov.apply(sc))
}

fn bound_input(cli: &Cli) -> Result<BoundInput, Error> {
    let Some(p) = &cli.config else { return Ok(default_bound_input()) };
    bound_input_from_json(&read(p)?)
}

fn run(cli: &Cli) -> Result<Report, Error> {
    match cli.command {
        Cmd::VerifyD5 => cmd_verify_d5(&scenario(cli, Scenario::default_d5)?),
        Cmd::VerifyD6 => cmd_verify_d6(&scenario(cli, Scenario::default_d6)?),
        Cmd::Jacobian => cmd_jacobian(&scenario(cli, Scenario::default_jacobian)?),
        Cmd::RankBound => cmd_rank_bound(&bound_input(cli)?),
        Cmd::Pillai => Ok(cmd_pillai()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // usage errors are input errors; help and version are not errors
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(match e {
                Error::BudgetExceeded(_) => 2,
                Error::InternalConsistency(_) => 1,
                _ => 3,
            });
        }
    };
    let body = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
    };
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &body) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(3);
            }
        }
        None => print!("{body}"),
    }
    for c in &report.checks {
        eprintln!("{:<13} {}", format!("{:?}", c.status).to_uppercase(), c.id);
    }
    ExitCode::from(report.exit_code() as u8)
}
