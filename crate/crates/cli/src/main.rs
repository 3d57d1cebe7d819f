//! `tiernet`: analytic sweeps, sensing design, Monte Carlo runs and a
//! self-check, all writing CSV (or JSON for `validate`).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod output;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tiernet_core::{load_config, ChannelMode, Config};

use crate::sweep::SweepSpec;

#[derive(Parser)]
#[command(name = "tiernet", version, about = "Two-tier femtocell/macrocell coverage tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// JSON config with optional "system" and "scenario" sections.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Coverage radii and contention densities.
    Analytic {
        #[command(flatten)]
        common: Common,
        /// <var>:<start>:<stop>:<steps>, var in D, PcOverPfDb, AlphaFo, TfUf.
        #[arg(long)]
        sweep: Option<SweepSpec>,
    },
    /// Power-ratio bounds, sensing radius and detector design.
    Sensing {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        sweep: Option<SweepSpec>,
        /// Sensing window length in samples.
        #[arg(long, default_value_t = 500)]
        m_tw: u32,
        #[arg(long, default_value_t = 0.1)]
        p_false: f64,
        #[arg(long, default_value_t = 0.9)]
        p_detect: f64,
    },
    /// Monte Carlo outage and rate distribution.
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Any sweep variable except Mtw.
        #[arg(long)]
        sweep: Option<SweepSpec>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        mode: Option<ModeArg>,
        #[arg(long, default_value_t = 1000)]
        drops: usize,
        #[arg(long, default_value_t = 1000)]
        fades: usize,
        /// Also write rate quantiles (0.00 to 1.00 in steps of 0.01) here.
        #[arg(long)]
        cdf_out: Option<PathBuf>,
    },
    /// Closure and distribution checks for the configured parameters.
    Validate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        mode: Option<ModeArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    FullZf,
    Fast,
}

impl From<ModeArg> for ChannelMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::FullZf => ChannelMode::FullZf,
            ModeArg::Fast => ChannelMode::FastChi2,
        }
    }
}

/// Failure classes mapped to exit codes.
pub enum Failure {
    /// Bad input: unreadable or malformed config, invalid parameters.
    Usage(String),
    /// Computation ran but a check failed or the case is infeasible.
    Check(String),
}

fn load(common: &Common) -> Result<Config, Failure> {
    match &common.config {
        None => Ok(Config::default()),
        Some(path) => load_config(path).map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn init_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("TIERNET_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("TIERNET_THREADS must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot build thread pool: {e}")))
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    init_threads()?;
    match cli.command {
        Command::Analytic { common, sweep } => {
            let cfg = load(&common)?;
            commands::analytic(&cfg, sweep.as_ref(), common.out.as_deref())
        }
        Command::Sensing {
            common,
            sweep,
            m_tw,
            p_false,
            p_detect,
        } => {
            let cfg = load(&common)?;
            let opts = commands::SensingOpts {
                m_tw,
                p_false,
                p_detect,
            };
            commands::sensing(&cfg, sweep.as_ref(), &opts, common.out.as_deref())
        }
        Command::Simulate {
            common,
            sweep,
            seed,
            mode,
            drops,
            fades,
            cdf_out,
        } => {
            let mut cfg = load(&common)?;
            if let Some(m) = mode {
                cfg.scenario.mode = m.into();
            }
            let opts = commands::SimOpts { seed, drops, fades };
            commands::simulate(&cfg, sweep.as_ref(), &opts, common.out.as_deref(), cdf_out.as_deref())
        }
        Command::Validate { common, seed, mode } => {
            let mut cfg = load(&common)?;
            if let Some(m) = mode {
                cfg.scenario.mode = m.into();
            }
            commands::validate(&cfg, seed, common.out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors by itself.
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("tiernet: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("tiernet: {msg}");
            ExitCode::from(2)
        }
    }
}
