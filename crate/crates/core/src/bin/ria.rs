use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ria_core::harness::{run_dmin, run_scenario, ExperimentConfig, RunReport, Scenario};
use ria_core::Error;

#[derive(Parser)]
#[command(name = "ria", version, about = "Real interference alignment experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run whatever scenario the config names.
    Run(Common),
    /// Power sweep of a channel scenario.
    Sweep(Common),
    /// Theory (and optionally measured) DOF over rational and irrational gains.
    GainScan(Common),
    /// Exhaustive property Γ check of the rational multilayer selections.
    GammaCheck(Common),
    /// Minimum distances and bound checks at the first configured power.
    Dmin(Common),
    /// Brute-force Khintchine–Groshev constants.
    Khintchine(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
    /// Working precision in bits; overrides RIA_PRECISION_BITS.
    #[arg(long)]
    precision: Option<u32>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) => 2,
        _ => 1,
    }
}

fn load(common: &Common, fixed: Option<Scenario>) -> Result<ExperimentConfig, Error> {
    let mut config = match (&common.config, fixed) {
        (Some(path), _) => ExperimentConfig::load(path)?,
        // These scenarios have full defaults; their noise variance is unused unless measuring.
        (None, Some(s @ (Scenario::GainScan | Scenario::GammaCheck | Scenario::Khintchine))) => {
            ExperimentConfig::new(s, 1.0)
        }
        (None, _) => return Err(Error::Config("--config is required for this command".into())),
    };
    if let Some(s) = fixed {
        if config.scenario != s {
            return Err(Error::Config(format!("config scenario is {}, expected {s}", config.scenario)));
        }
    }
    if let Some(seed) = common.seed {
        config.seed = seed;
    }
    if let Some(out) = &common.out {
        config.out = out.clone();
    }
    config.validate()?;
    Ok(config)
}

fn configure_runtime(common: &Common) -> Result<(), Error> {
    if let Some(bits) = common.precision {
        if !(64..=1 << 20).contains(&bits) {
            return Err(Error::Config(format!("--precision must lie in 64..=1048576, got {bits}")));
        }
        std::env::set_var("RIA_PRECISION_BITS", bits.to_string());
    }
    if let Some(w) = common.workers {
        if w == 0 {
            return Err(Error::Config("--workers must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<RunReport, Error> {
    let (common, fixed, dmin) = match &cli.command {
        Command::Run(c) => (c, None, false),
        Command::Sweep(c) => (c, None, false),
        Command::GainScan(c) => (c, Some(Scenario::GainScan), false),
        Command::GammaCheck(c) => (c, Some(Scenario::GammaCheck), false),
        Command::Dmin(c) => (c, None, true),
        Command::Khintchine(c) => (c, Some(Scenario::Khintchine), false),
    };
    configure_runtime(common)?;
    let config = load(common, fixed)?;
    if matches!(cli.command, Command::Sweep(_)) && !config.scenario.is_sweep() {
        return Err(Error::Config(format!("{} is not a sweep scenario", config.scenario)));
    }
    if dmin {
        run_dmin(&config)
    } else {
        run_scenario(&config)
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(report) => {
            for w in &report.manifest.warnings {
                eprintln!("warning: {w}");
            }
            println!("{}", serde_json::json!({ "out": report.out_dir, "summary": report.summary }));
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = exit_code(&e);
            eprintln!("{}", serde_json::json!({ "error": e.kind(), "message": e.to_string(), "exit_code": code }));
            ExitCode::from(code)
        }
    }
}
