use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use linkmix::cli::{self, ResultTable, SweepConfig};

#[derive(Parser)]
#[command(name = "linkmix", version = env!("LINKMIX_GIT_DESCRIBE"), about = "Mixed RF/FSO relay link performance")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// INI configuration file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// CSV output path (stdout when omitted)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Monte-Carlo seed
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Monte-Carlo samples per point
    #[arg(long, global = true)]
    samples: Option<u64>,
    /// Truncation tolerance of the gamma series (κ-μ, ill-conditioned η-μ)
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Skip the Monte-Carlo columns
    #[arg(long, global = true)]
    no_mc: bool,
    /// Skip the quadrature columns
    #[arg(long, global = true)]
    no_quad: bool,
    /// Log kernel diagnostics (same as LINKMIX_LOG=debug)
    #[arg(long, short, global = true)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the configured outputs at a single operating point
    Eval,
    /// Run the configured sweep
    Sweep,
    /// Run a built-in figure preset
    Figure {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(cli::PRESET_NAMES))]
        name: String,
    },
    /// Series length needed per tolerance (κ-μ; defaults to fig3)
    Converge,
    /// Run the built-in invariant checks
    Selftest,
}

fn load(common: &Common, fallback: Option<SweepConfig>) -> linkmix::Result<SweepConfig> {
    let cfg = match (&common.config, fallback) {
        (Some(path), _) => SweepConfig::from_path(path)?,
        (None, Some(cfg)) => cfg,
        (None, None) => {
            return Err(linkmix::Error::Config { location: "--config".into(), message: "a configuration file is required".into() })
        }
    };
    let cfg = cli::with_overrides(cfg, common.seed, common.samples, common.tol, common.no_mc, common.no_quad);
    cfg.validate()?;
    Ok(cfg)
}

fn emit(table: &ResultTable, out: &Option<PathBuf>) -> linkmix::Result<()> {
    match out {
        Some(path) => table.write_csv(path),
        None => std::io::stdout()
            .write_all(table.to_csv_string().as_bytes())
            .map_err(|source| linkmix::Error::Io { path: "<stdout>".into(), source }),
    }
}

fn run(cli: Cli) -> linkmix::Result<bool> {
    let c = &cli.common;
    match cli.command {
        Command::Eval => {
            let mut cfg = load(c, None)?;
            cfg.sweep = None;
            emit(&cli::run_sweep(&cfg)?, &c.out)?;
        }
        Command::Sweep => {
            let cfg = load(c, None)?;
            emit(&cli::run_sweep(&cfg)?, &c.out)?;
        }
        Command::Figure { name } => {
            if c.config.is_some() {
                log::warn!("--config is ignored by `figure`");
            }
            let preset = cli::preset(&name).expect("validated by clap");
            let cfg = load(&Common { config: None, ..c.clone() }, Some(preset))?;
            emit(&cli::run_sweep(&cfg)?, &c.out)?;
        }
        Command::Converge => {
            let cfg = load(c, Some(cli::presets::fig3()))?;
            emit(&cli::convergence_report(&cfg)?, &c.out)?;
        }
        Command::Selftest => {
            let checks = cli::run_selftest();
            for ch in &checks {
                println!("{} {:<32} {}", if ch.passed { "PASS" } else { "FAIL" }, ch.name, ch.detail);
            }
            return Ok(checks.iter().all(|ch| ch.passed));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let default_level = if cli.common.verbose { "debug" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("LINKMIX_LOG", default_level)).init();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("linkmix: {e}");
            ExitCode::from(2)
        }
    }
}
