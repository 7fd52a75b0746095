use std::io::{self, Write};

use crowd_model::{
    expected_game_time_crowd, max_guaranteed_win_players, n_player_effective_model,
    optimal_player_count, win_probability_crowd, CrowdError, EffectiveModel, Environment,
    GuaranteeLimit, OptimalCrowd, PlayerProfile,
};
use ruin_core::{Expectation, GameRules, JumpProbability, LossBound, ModelError};
use sim_engine::{
    estimate_collision_probability, estimate_round_progress, run_crowd_trials, run_ctmc_batch,
    run_jump_batch, BatchEstimate, TrialResult,
};
use thiserror::Error;

use crate::config::{ConfigError, RunConfig};
use crate::format;

/// Top-level failure of a command. Exit codes: 2 for anything wrong with the
/// configuration, 1 for runtime failures (validation failures are not errors;
/// the caller inspects the report).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(err: ConfigError) -> Self {
        CliError::Config(err.to_string())
    }
}

impl From<CrowdError> for CliError {
    fn from(err: CrowdError) -> Self {
        CliError::Config(err.to_string())
    }
}

impl From<ModelError> for CliError {
    fn from(err: ModelError) -> Self {
        CliError::Config(err.to_string())
    }
}

fn profile(cfg: &RunConfig) -> Result<PlayerProfile, CliError> {
    PlayerProfile::new(cfg.quality, cfg.lambda_h).map_err(CliError::from)
}

fn rules(cfg: &RunConfig) -> Result<GameRules, CliError> {
    GameRules::new(cfg.win_distance, cfg.loss_bound).map_err(CliError::from)
}

fn effective_jump(model: &EffectiveModel) -> JumpProbability {
    JumpProbability::new(model.effective_quality)
        .expect("effective quality lies strictly in (0,1)")
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

/// Everything `analyze` computes for one configuration.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub config: RunConfig,
    pub n_players: u64,
    pub model: EffectiveModel,
    pub p_win: f64,
    pub expected_game_time_s: Expectation,
    /// Retry-adjusted time; present only with a finite losing distance.
    pub expected_time_to_win_s: Option<Expectation>,
    pub max_guaranteed: GuaranteeLimit,
    /// Fastest guaranteed-win crowd; absent when no size is guaranteed or
    /// when zero delay makes every additional player an improvement.
    pub optimal: Option<OptimalCrowd>,
}

pub fn analyze(cfg: &RunConfig) -> Result<Analysis, CliError> {
    let profile = profile(cfg)?;
    let n_players = cfg.single_players()?;
    let env = Environment::new(cfg.t_d, n_players)?;
    let model = n_player_effective_model(profile, env);

    let (p_win, game_time, time_to_win) = match cfg.loss_bound {
        LossBound::Unbounded => (
            win_probability_crowd(profile, env, cfg.win_distance),
            expected_game_time_crowd(profile, env, cfg.win_distance),
            None,
        ),
        LossBound::Finite(_) => {
            // With a losing barrier the effective chain is the bounded walk;
            // wall-clock time still costs reaction plus delay per move.
            let rules = rules(cfg)?;
            let jump = effective_jump(&model);
            let p_win = ruin_core::win_probability(jump, rules);
            let game = ruin_core::expected_steps(jump, rules)
                .map(|steps| steps * model.time_per_move_s);
            let retry = if p_win > 0.0 {
                game.map(|t| t / p_win)
            } else {
                Expectation::Infinite
            };
            (p_win, game, Some(retry))
        }
    };

    let max_guaranteed = max_guaranteed_win_players(profile, cfg.t_d);
    // The exhaustive size search is skipped when the guarantee boundary is
    // too large to walk in reasonable time; `sweep` over a chosen range is
    // the tool for those regimes.
    let searchable = !matches!(max_guaranteed, GuaranteeLimit::Bounded(b) if b > 10_000_000);
    let optimal = if searchable {
        match optimal_player_count(profile, cfg.t_d, cfg.win_distance, None) {
            Ok(best) => Some(best),
            Err(CrowdError::NoGuarantee | CrowdError::SearchNeedsCap) => None,
            Err(other) => return Err(other.into()),
        }
    } else {
        None
    };

    Ok(Analysis {
        config: *cfg,
        n_players,
        model,
        p_win,
        expected_game_time_s: game_time,
        expected_time_to_win_s: time_to_win,
        max_guaranteed,
        optimal,
    })
}

pub fn render_analysis<W: Write>(analysis: &Analysis, out: &mut W) -> io::Result<()> {
    let cfg = &analysis.config;
    let loss = match cfg.loss_bound {
        LossBound::Finite(m) => m.to_string(),
        LossBound::Unbounded => "inf".to_string(),
    };
    writeln!(out, "configuration")?;
    writeln!(out, "  quality (q)                {}", format::number(cfg.quality))?;
    writeln!(out, "  reaction rate (lambda_h)   {} /s", format::number(cfg.lambda_h))?;
    writeln!(out, "  observation delay (t_d)    {} s", format::number(cfg.t_d))?;
    writeln!(out, "  winning distance (n)       {}", cfg.win_distance)?;
    writeln!(out, "  losing distance (m)        {loss}")?;
    writeln!(out, "  players (N)                {}", analysis.n_players)?;
    writeln!(out)?;
    writeln!(out, "effective chain")?;
    writeln!(
        out,
        "  collision-free probability (P_c)   {}",
        format::number(analysis.model.p_collision_free)
    )?;
    writeln!(
        out,
        "  effective quality (q')             {}",
        format::number(analysis.model.effective_quality)
    )?;
    writeln!(
        out,
        "  good-move rate (lambda)            {} /s",
        format::number(analysis.model.rates.lambda())
    )?;
    writeln!(
        out,
        "  bad-move rate (mu)                 {} /s",
        format::number(analysis.model.rates.mu())
    )?;
    writeln!(out)?;
    writeln!(out, "outlook")?;
    writeln!(
        out,
        "  win probability (P)                {}",
        format::number(analysis.p_win)
    )?;
    writeln!(
        out,
        "  expected game time (T_g)           {}",
        render_time(analysis.expected_game_time_s)
    )?;
    if let Some(retry) = analysis.expected_time_to_win_s {
        writeln!(out, "  expected time to win (T_w)         {}", render_time(retry))?;
    }
    let boundary = match analysis.max_guaranteed {
        GuaranteeLimit::Bounded(n) => n.to_string(),
        GuaranteeLimit::Unbounded => "unbounded (zero observation delay)".to_string(),
        GuaranteeLimit::NoGuarantee => "none (quality at or below 1/2)".to_string(),
    };
    writeln!(out, "  max guaranteed-win players (N_max) {boundary}")?;
    let optimal = match (&analysis.optimal, analysis.max_guaranteed) {
        (Some(best), _) => format!(
            "{} ({})",
            best.n_players,
            render_time(Expectation::Finite(best.expected_time_s))
        ),
        (None, GuaranteeLimit::Unbounded) => {
            "n/a (time keeps dropping with every added player)".to_string()
        }
        (None, GuaranteeLimit::Bounded(_)) => {
            "n/a (boundary too large for an exhaustive search; use sweep)".to_string()
        }
        (None, GuaranteeLimit::NoGuarantee) => "n/a (no guaranteed win)".to_string(),
    };
    writeln!(out, "  optimal players (N_opt)            {optimal}")?;
    Ok(())
}

fn render_time(value: Expectation) -> String {
    match value {
        Expectation::Finite(seconds) => {
            format!("{} s  ({})", format::number(seconds), format::human_duration(seconds))
        }
        Expectation::Infinite => "inf".to_string(),
    }
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

/// Exact column order of the sweep CSV.
pub const SWEEP_CSV_HEADER: &str =
    "n_players,p_collision_free,effective_quality,p_win,expected_time_s,speedup_vs_single";

/// One line of the crowd-size sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub n_players: u64,
    pub p_collision_free: f64,
    pub effective_quality: f64,
    pub p_win: f64,
    pub expected_time_s: Expectation,
    /// `T(1) / T(N)`; exactly 1 at `N = 1`, and 0 where the time at `N`
    /// diverges (adding players bought nothing).
    pub speedup_vs_single: f64,
}

pub fn sweep_rows(cfg: &RunConfig) -> Result<Vec<SweepRow>, CliError> {
    let profile = profile(cfg)?;
    let (lo, hi) = cfg.players_range();
    let single_time =
        expected_game_time_crowd(profile, Environment::new(cfg.t_d, 1)?, cfg.win_distance);
    let mut rows = Vec::with_capacity((hi - lo + 1) as usize);
    for n_players in lo..=hi {
        let env = Environment::new(cfg.t_d, n_players)?;
        let model = n_player_effective_model(profile, env);
        let expected_time_s = expected_game_time_crowd(profile, env, cfg.win_distance);
        let speedup_vs_single = if n_players == 1 {
            1.0
        } else {
            match (single_time.finite(), expected_time_s.finite()) {
                (Some(t1), Some(tn)) => t1 / tn,
                _ => 0.0,
            }
        };
        rows.push(SweepRow {
            n_players,
            p_collision_free: model.p_collision_free,
            effective_quality: model.effective_quality,
            p_win: win_probability_crowd(profile, env, cfg.win_distance),
            expected_time_s,
            speedup_vs_single,
        });
    }
    Ok(rows)
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: &mut W) -> io::Result<()> {
    writeln!(out, "{SWEEP_CSV_HEADER}")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            row.n_players,
            format::number(row.p_collision_free),
            format::number(row.effective_quality),
            format::number(row.p_win),
            format::expectation(row.expected_time_s),
            format::number(row.speedup_vs_single),
        )?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

/// A batch of crowd playthroughs plus the closed form it should agree with.
#[derive(Debug, Clone)]
pub struct SimulationRun {
    pub config: RunConfig,
    pub n_players: u64,
    pub estimate: BatchEstimate,
    pub closed_form_time_s: Expectation,
    pub trials: Vec<TrialResult>,
}

pub fn simulate(cfg: &RunConfig) -> Result<SimulationRun, CliError> {
    if cfg.trials == 0 {
        return Err(ConfigError::NoTrials.into());
    }
    let profile = profile(cfg)?;
    let n_players = cfg.single_players()?;
    let env = Environment::new(cfg.t_d, n_players)?;
    let trials = run_crowd_trials(
        profile,
        env,
        cfg.win_distance,
        cfg.round_cap,
        cfg.trials,
        cfg.seed,
        true,
    );
    let estimate = BatchEstimate::from_results(&trials, cfg.seed);
    let closed_form_time_s = expected_game_time_crowd(profile, env, cfg.win_distance);
    Ok(SimulationRun {
        config: *cfg,
        n_players,
        estimate,
        closed_form_time_s,
        trials,
    })
}

pub fn render_simulation<W: Write>(run: &SimulationRun, out: &mut W) -> io::Result<()> {
    let est = &run.estimate;
    writeln!(
        out,
        "crowd simulation  N={} n={} trials={} seed={}",
        run.n_players, run.config.win_distance, est.trials, est.seed
    )?;
    writeln!(out, "  rng                 {}", est.generator)?;
    writeln!(out, "  absorbed trials     {}", est.absorbed)?;
    writeln!(out, "  capped trials       {}", est.capped)?;
    writeln!(
        out,
        "  win frequency       {}  (stderr {})",
        format::number(est.p_win_hat),
        format::number(est.stderr_p_win)
    )?;
    writeln!(
        out,
        "  mean rounds         {}  (stderr {})",
        format::number(est.mean_steps),
        format::number(est.stderr_steps)
    )?;
    writeln!(
        out,
        "  mean game time      {} s  ({}, stderr {})",
        format::number(est.mean_elapsed_s),
        format::human_duration(est.mean_elapsed_s),
        format::number(est.stderr_elapsed)
    )?;
    writeln!(
        out,
        "  closed-form time    {}",
        render_time(run.closed_form_time_s)
    )?;
    Ok(())
}

/// Per-trial CSV: one row per playthrough in trial order.
pub fn write_trials_csv<W: Write>(trials: &[TrialResult], out: &mut W) -> io::Result<()> {
    writeln!(out, "trial,outcome,rounds,elapsed_s")?;
    for (index, trial) in trials.iter().enumerate() {
        match trial {
            TrialResult::Absorbed(outcome) => writeln!(
                out,
                "{index},{},{},{}",
                if outcome.won { "won" } else { "lost" },
                outcome.steps,
                format::number(outcome.elapsed_s)
            )?,
            TrialResult::Capped { steps, elapsed_s } => {
                writeln!(out, "{index},capped,{steps},{}", format::number(*elapsed_s))?
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

/// One simulator-vs-closed-form comparison at the four-standard-error gate.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationCheck {
    pub name: &'static str,
    pub estimate: f64,
    pub reference: f64,
    pub stderr: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub n_players: u64,
    pub trials: u64,
    pub seed: u64,
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|check| check.pass)
    }
}

pub fn run_validation(cfg: &RunConfig) -> Result<ValidationReport, CliError> {
    run_validation_with(cfg, 0.0)
}

/// Validation with every closed-form reference multiplied by
/// `1 + reference_skew`. The skew exists so the harness can prove the gate
/// actually rejects a wrong oracle; real runs use zero.
pub fn run_validation_with(
    cfg: &RunConfig,
    reference_skew: f64,
) -> Result<ValidationReport, CliError> {
    if cfg.trials == 0 {
        return Err(ConfigError::NoTrials.into());
    }
    let profile = profile(cfg)?;
    let n_players = cfg.single_players()?;
    let env = Environment::new(cfg.t_d, n_players)?;
    let model = n_player_effective_model(profile, env);
    let rules = rules(cfg)?;
    let jump = effective_jump(&model);

    let mut checks = Vec::new();
    let mut gate = |name: &'static str, estimate: f64, reference: f64, stderr: f64| {
        let reference = reference * (1.0 + reference_skew);
        // the epsilon covers exact checks, where the standard error is zero
        let pass = (estimate - reference).abs() <= 4.0 * stderr + 1e-12;
        checks.push(ValidationCheck {
            name,
            estimate,
            reference,
            stderr,
            pass,
        });
    };
    let binomial_stderr = |p: f64| (p * (1.0 - p) / cfg.trials as f64).sqrt();

    // Collision suite: the delay-window survival probability.
    let collisions = estimate_collision_probability(profile, env, cfg.trials, cfg.seed);
    gate(
        "collision-free probability",
        collisions.p_win_hat,
        model.p_collision_free,
        binomial_stderr(model.p_collision_free),
    );

    // Round suite: per-round progress law and round duration.
    let rounds = estimate_round_progress(profile, env, cfg.trials, cfg.seed);
    gate(
        "round up-move frequency",
        rounds.p_win_hat,
        model.effective_quality,
        binomial_stderr(model.effective_quality),
    );
    gate(
        "round duration",
        rounds.mean_elapsed_s,
        model.time_per_move_s,
        rounds.stderr_elapsed,
    );

    // Chain suite: the embedded walk and the timed chain at the effective
    // parameters. Wins are counted over all trials (a capped trial is a
    // non-win), matching the closed-form win probability.
    let walk = run_jump_batch(jump, rules, cfg.round_cap, cfg.trials, cfg.seed, true);
    let p_win = ruin_core::win_probability(jump, rules);
    let win_frequency = if walk.absorbed == 0 {
        0.0
    } else {
        walk.p_win_hat * walk.absorbed as f64 / walk.trials as f64
    };
    gate(
        "jump-walk win frequency",
        win_frequency,
        p_win,
        binomial_stderr(p_win),
    );
    if let Some(steps) = ruin_core::expected_steps(jump, rules).finite() {
        gate("jump-walk mean steps", walk.mean_steps, steps, walk.stderr_steps);
    }
    let timed = run_ctmc_batch(model.rates, rules, cfg.round_cap, cfg.trials, cfg.seed, true);
    if let Some(sojourn) = ruin_core::expected_game_time(model.rates, rules).finite() {
        gate(
            "chain mean absorption time",
            timed.mean_elapsed_s,
            sojourn,
            timed.stderr_elapsed,
        );
    }

    Ok(ValidationReport {
        n_players,
        trials: cfg.trials,
        seed: cfg.seed,
        checks,
    })
}

pub fn render_validation<W: Write>(report: &ValidationReport, out: &mut W) -> io::Result<()> {
    writeln!(
        out,
        "validation  N={} trials={} seed={}",
        report.n_players, report.trials, report.seed
    )?;
    writeln!(out, "  rng  {}", sim_engine::GENERATOR_ID)?;
    writeln!(out)?;
    writeln!(
        out,
        "  {:<28} {:>22} {:>22} {:>12}  verdict",
        "check", "estimate", "closed form", "stderr"
    )?;
    for check in &report.checks {
        writeln!(
            out,
            "  {:<28} {:>22} {:>22} {:>12}  {}",
            check.name,
            format::number(check.estimate),
            format::number(check.reference),
            format!("{:.3e}", check.stderr),
            if check.pass { "PASS" } else { "FAIL" }
        )?;
    }
    writeln!(out)?;
    let passed = report.checks.iter().filter(|c| c.pass).count();
    writeln!(out, "summary: {passed}/{} checks passed", report.checks.len())?;
    Ok(())
}
