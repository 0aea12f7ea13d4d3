use clap::{Args, Parser, Subcommand};
use crdiscs::cli::run::{cmd_attach, cmd_classify, cmd_family, RunArgs};
use std::path::PathBuf;
use std::process::ExitCode;

/// Numerical experiments on rigid hypersurfaces: pseudoconvexity
/// classification, analytic disc attachment, and disc-family runs.
#[derive(Parser)]
#[command(name = "crdiscs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Scenario configuration file (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Output directory for CSV/SVG artifacts.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Grid size override (power of two, >= 16).
    #[arg(long)]
    grid: Option<usize>,
    /// Also emit SVG plots.
    #[arg(long)]
    svg: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Sector decomposition and pseudoconvexity classification.
    Classify(CommonArgs),
    /// Attach an analytic disc and report residual and exit data.
    Attach(CommonArgs),
    /// Egg-family, perturbation-bound and translation experiments.
    Family(CommonArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, args) = match &cli.command {
        Command::Classify(a) => ("classify", a),
        Command::Attach(a) => ("attach", a),
        Command::Family(a) => ("family", a),
    };
    let run_args = RunArgs {
        config: args.config.clone(),
        out: args.out.clone(),
        grid: args.grid,
        svg: args.svg,
    };
    let result = match name {
        "classify" => cmd_classify(&run_args),
        "attach" => cmd_attach(&run_args),
        _ => cmd_family(&run_args),
    };
    match result {
        Ok(report) => {
            print!("{}", report.render());
            eprintln!("wall-clock: {} ms", report.wall_ms);
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
