use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ruin_core::LossBound;

use sweep_cli::commands::{
    self, render_analysis, render_simulation, render_validation, write_sweep_csv,
    write_trials_csv, CliError,
};
use sweep_cli::config::{parse_config_str, PartialConfig, PlayersSpec, RunConfig};

/// Crowd-played game analytics: win probabilities, expected game times and
/// seeded simulations for one player or a whole crowd.
#[derive(Parser)]
#[command(name = "crowdplay", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    overrides: FlagOverrides,
}

/// Every parameter can come from a config file (`--config`) and be overridden
/// by a flag; built-in defaults fill the rest.
#[derive(Args)]
struct FlagOverrides {
    /// Config file with one `key = value` per line (# comments)
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Player input quality, in (0, 1)
    #[arg(long, global = true)]
    q: Option<f64>,
    /// Player reaction rate, 1/seconds
    #[arg(long, global = true)]
    lambda_h: Option<f64>,
    /// Observation delay, seconds
    #[arg(long, global = true)]
    t_d: Option<f64>,
    /// Net good moves needed to win
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    n: Option<u32>,
    /// Net bad moves that lose the game, or `inf` for none
    #[arg(long, global = true, value_parser = loss_bound_arg)]
    m: Option<LossBound>,
    /// Crowd size `k`, or inclusive range `lo..hi` for sweeps
    #[arg(long, global = true, value_parser = players_arg)]
    players: Option<PlayersSpec>,
    /// Monte Carlo trials per batch
    #[arg(long, global = true)]
    trials: Option<u64>,
    /// Master RNG seed; a repeat run with the same seed is byte-identical
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Round/step budget per trial for walks with no losing barrier
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    round_cap: Option<u64>,
    /// Write primary output here instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form report for one configuration
    Analyze,
    /// CSV sweep of the closed forms over a range of crowd sizes
    Sweep,
    /// Monte Carlo crowd playthroughs at the configured size
    Simulate {
        /// Also emit one CSV row per trial
        #[arg(long)]
        per_trial: bool,
    },
    /// Run the simulators against the closed forms; exit 1 on any FAIL
    Validate {
        /// Harness self-test: skews every closed-form reference so the gate
        /// must fail
        #[arg(long, hide = true, default_value_t = 0.0, allow_hyphen_values = true)]
        oracle_skew: f64,
    },
}

fn players_arg(s: &str) -> Result<PlayersSpec, String> {
    s.parse()
}

fn loss_bound_arg(s: &str) -> Result<LossBound, String> {
    sweep_cli::parse_loss_bound(s)
}

impl FlagOverrides {
    fn to_partial(&self) -> PartialConfig {
        PartialConfig {
            quality: self.q,
            lambda_h: self.lambda_h,
            t_d: self.t_d,
            win_distance: self.n,
            loss_bound: self.m,
            players: self.players,
            trials: self.trials,
            seed: self.seed,
            round_cap: self.round_cap,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let from_file = match &cli.overrides.config {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            parse_config_str(&text)
                .map_err(|err| CliError::Config(format!("{}: {err}", path.display())))?
        }
        None => PartialConfig::default(),
    };
    let cfg = RunConfig::default()
        .apply(&from_file)
        .apply(&cli.overrides.to_partial());

    // The output file is only created once the command has something to say.
    let open_out = || -> Result<Box<dyn Write>, CliError> {
        Ok(match &cli.overrides.out {
            Some(path) => Box::new(io::BufWriter::new(fs::File::create(path)?)),
            None => Box::new(io::BufWriter::new(io::stdout().lock())),
        })
    };

    match cli.command {
        Command::Analyze => {
            let analysis = commands::analyze(&cfg)?;
            let mut out = open_out()?;
            render_analysis(&analysis, &mut out)?;
            out.flush()?;
        }
        Command::Sweep => {
            let rows = commands::sweep_rows(&cfg)?;
            let mut out = open_out()?;
            write_sweep_csv(&rows, &mut out)?;
            out.flush()?;
        }
        Command::Simulate { per_trial } => {
            let run = commands::simulate(&cfg)?;
            let mut out = open_out()?;
            if per_trial {
                write_trials_csv(&run.trials, &mut out)?;
                out.flush()?;
                if cli.overrides.out.is_some() {
                    // CSV went to the file; the report keeps standard output.
                    render_simulation(&run, &mut io::stdout().lock())?;
                } else {
                    render_simulation(&run, &mut io::stderr().lock())?;
                }
            } else {
                render_simulation(&run, &mut out)?;
                out.flush()?;
            }
        }
        Command::Validate { oracle_skew } => {
            if cfg.trials < 1000 {
                eprintln!(
                    "warning: {} trials make the standard errors too wide to be \
                     meaningful; running anyway",
                    cfg.trials
                );
            }
            let report = commands::run_validation_with(&cfg, oracle_skew)?;
            let mut out = open_out()?;
            render_validation(&report, &mut out)?;
            out.flush()?;
            if !report.all_passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
