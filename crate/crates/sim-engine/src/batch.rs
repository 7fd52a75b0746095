use crowd_model::{Environment, PlayerProfile};
use rayon::prelude::*;
use ruin_core::{GameRules, JumpProbability, TransitionRates};

use crate::chain::{walk, TrialOutcome, TrialResult};
use crate::crowd::{crowd_playthrough, crowd_round};
use crate::rng::{trial_rng, GENERATOR_ID};

/// Aggregated Monte Carlo statistics over one batch of trials.
///
/// Capped trials are counted but excluded from every mean and standard
/// error; with no absorbed trials at all the estimates are NaN ("n/a" at the
/// presentation layer). The seed and generator identify the exact random
/// streams, so the batch can be reproduced bit-for-bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatchEstimate {
    pub trials: u64,
    pub absorbed: u64,
    pub capped: u64,
    /// Fraction of absorbed trials that ended in a win.
    pub p_win_hat: f64,
    pub mean_steps: f64,
    pub mean_elapsed_s: f64,
    pub stderr_p_win: f64,
    pub stderr_steps: f64,
    pub stderr_elapsed: f64,
    pub seed: u64,
    pub generator: &'static str,
}

impl BatchEstimate {
    /// Aggregates in trial-index order, so the result does not depend on how
    /// the trials were scheduled.
    pub fn from_results(results: &[TrialResult], seed: u64) -> Self {
        let trials = results.len() as u64;
        let outcomes: Vec<&TrialOutcome> = results.iter().filter_map(TrialResult::outcome).collect();
        let absorbed = outcomes.len() as u64;
        let capped = trials - absorbed;
        let k = absorbed as f64;

        let wins = outcomes.iter().filter(|o| o.won).count() as f64;
        let p_win_hat = wins / k;
        let stderr_p_win = (p_win_hat * (1.0 - p_win_hat) / k).sqrt();

        let mean_steps = outcomes.iter().map(|o| o.steps as f64).sum::<f64>() / k;
        let mean_elapsed_s = outcomes.iter().map(|o| o.elapsed_s).sum::<f64>() / k;
        let (stderr_steps, stderr_elapsed) = if absorbed >= 2 {
            let var_steps = outcomes
                .iter()
                .map(|o| (o.steps as f64 - mean_steps).powi(2))
                .sum::<f64>()
                / (k - 1.0);
            let var_elapsed = outcomes
                .iter()
                .map(|o| (o.elapsed_s - mean_elapsed_s).powi(2))
                .sum::<f64>()
                / (k - 1.0);
            ((var_steps / k).sqrt(), (var_elapsed / k).sqrt())
        } else {
            (f64::NAN, f64::NAN)
        };

        Self {
            trials,
            absorbed,
            capped,
            p_win_hat,
            mean_steps,
            mean_elapsed_s,
            stderr_p_win,
            stderr_steps,
            stderr_elapsed,
            seed,
            generator: GENERATOR_ID,
        }
    }
}

/// Runs `trials` independent trials, one derived stream each, sequentially or
/// across threads. The output order is trial-index order either way, so both
/// modes produce identical vectors.
pub fn run_trials<F>(trials: u64, parallel: bool, simulate: F) -> Vec<TrialResult>
where
    F: Fn(u64) -> TrialResult + Send + Sync,
{
    if parallel {
        (0..trials).into_par_iter().map(simulate).collect()
    } else {
        (0..trials).map(simulate).collect()
    }
}

/// Batch of embedded-walk trials against the given rules.
pub fn run_jump_batch(
    p: JumpProbability,
    rules: GameRules,
    step_cap: u64,
    trials: u64,
    seed: u64,
    parallel: bool,
) -> BatchEstimate {
    let results = run_trials(trials, parallel, |trial| {
        walk(p.up(), rules, step_cap, None, &mut trial_rng(seed, trial))
    });
    BatchEstimate::from_results(&results, seed)
}

/// Batch of continuous-time trials against the given rules.
pub fn run_ctmc_batch(
    rates: TransitionRates,
    rules: GameRules,
    step_cap: u64,
    trials: u64,
    seed: u64,
    parallel: bool,
) -> BatchEstimate {
    let results = run_trials(trials, parallel, |trial| {
        walk(
            rates.jump_probability(),
            rules,
            step_cap,
            Some(rates.total()),
            &mut trial_rng(seed, trial),
        )
    });
    BatchEstimate::from_results(&results, seed)
}

/// Raw crowd playthroughs, one per trial; the per-trial view the CLI exports.
pub fn run_crowd_trials(
    profile: PlayerProfile,
    env: Environment,
    win_distance: u32,
    round_cap: u64,
    trials: u64,
    seed: u64,
    parallel: bool,
) -> Vec<TrialResult> {
    run_trials(trials, parallel, |trial| {
        crowd_playthrough(
            profile,
            env,
            win_distance,
            round_cap,
            &mut trial_rng(seed, trial),
        )
    })
}

/// Batch of crowd playthroughs, aggregated.
pub fn run_crowd_batch(
    profile: PlayerProfile,
    env: Environment,
    win_distance: u32,
    round_cap: u64,
    trials: u64,
    seed: u64,
    parallel: bool,
) -> BatchEstimate {
    let results = run_crowd_trials(profile, env, win_distance, round_cap, trials, seed, parallel);
    BatchEstimate::from_results(&results, seed)
}

/// Monte Carlo check of the collision-free probability: the fraction of
/// independent rounds whose first input was not duplicated, with a binomial
/// standard error. Success here is "collision-free", reported in `p_win_hat`.
pub fn estimate_collision_probability(
    profile: PlayerProfile,
    env: Environment,
    trials: u64,
    seed: u64,
) -> BatchEstimate {
    let results = run_trials(trials, true, |trial| {
        let round = crowd_round(profile, env, &mut trial_rng(seed, trial));
        TrialResult::Absorbed(TrialOutcome {
            won: !round.duplicated,
            steps: 1,
            elapsed_s: round.first_reaction_s + env.t_d(),
        })
    });
    BatchEstimate::from_results(&results, seed)
}

/// Monte Carlo check of the per-round progress law: success is a +1 net move
/// (expected frequency: effective quality), and `mean_elapsed_s` estimates
/// the mean round duration (expected: first reaction plus delay).
pub fn estimate_round_progress(
    profile: PlayerProfile,
    env: Environment,
    trials: u64,
    seed: u64,
) -> BatchEstimate {
    let results = run_trials(trials, true, |trial| {
        let round = crowd_round(profile, env, &mut trial_rng(seed, trial));
        TrialResult::Absorbed(TrialOutcome {
            won: round.net_move == 1,
            steps: 1,
            elapsed_s: round.first_reaction_s + env.t_d(),
        })
    });
    BatchEstimate::from_results(&results, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ruin_core::LossBound;

    fn bounded(n: u32, m: u32) -> GameRules {
        GameRules::new(n, LossBound::Finite(m)).unwrap()
    }

    #[test]
    fn parallel_and_sequential_runs_are_bit_identical() {
        let p = JumpProbability::new(0.6).unwrap();
        let rules = bounded(3, 2);
        let run = |parallel| {
            run_trials(5_000, parallel, |trial| {
                walk(p.up(), rules, 0, None, &mut trial_rng(77, trial))
            })
        };
        assert_eq!(run(true), run(false));

        let rates = TransitionRates::new(1.2, 0.8).unwrap();
        let a = run_ctmc_batch(rates, rules, 0, 5_000, 31, true);
        let b = run_ctmc_batch(rates, rules, 0, 5_000, 31, false);
        assert_eq!(a, b);
    }

    #[test]
    fn estimate_counts_and_moments_are_consistent() {
        let results = vec![
            TrialResult::Absorbed(TrialOutcome {
                won: true,
                steps: 2,
                elapsed_s: 1.0,
            }),
            TrialResult::Absorbed(TrialOutcome {
                won: false,
                steps: 4,
                elapsed_s: 3.0,
            }),
            TrialResult::Capped {
                steps: 10,
                elapsed_s: 9.0,
            },
        ];
        let estimate = BatchEstimate::from_results(&results, 5);
        assert_eq!(estimate.trials, 3);
        assert_eq!(estimate.absorbed, 2);
        assert_eq!(estimate.capped, 1);
        assert_eq!(estimate.p_win_hat, 0.5);
        assert_eq!(estimate.mean_steps, 3.0);
        assert_eq!(estimate.mean_elapsed_s, 2.0);
        assert_eq!(estimate.seed, 5);
        assert_eq!(estimate.generator, GENERATOR_ID);
        // one-(absorbed-)trial and zero-trial degenerate moments
        let lone = BatchEstimate::from_results(&results[..1], 5);
        assert!(lone.stderr_steps.is_nan());
        let none = BatchEstimate::from_results(&results[2..], 5);
        assert_eq!(none.absorbed, 0);
        assert!(none.p_win_hat.is_nan());
        assert!(none.mean_elapsed_s.is_nan());
    }

    #[test]
    fn collision_estimate_is_exact_for_a_lone_player() {
        let profile = PlayerProfile::new(0.99, 0.1).unwrap();
        let env = Environment::new(0.15, 1).unwrap();
        let estimate = estimate_collision_probability(profile, env, 2_000, 9);
        assert_eq!(estimate.p_win_hat, 1.0);
        assert_eq!(estimate.capped, 0);
    }

    #[test]
    fn collision_estimate_at_the_half_life_window() {
        // Two players with lambda_h · t_d = ln 2: collision-free exactly 1/2.
        let profile = PlayerProfile::new(0.9, std::f64::consts::LN_2).unwrap();
        let env = Environment::new(1.0, 2).unwrap();
        let estimate = estimate_collision_probability(profile, env, 100_000, 13);
        let stderr = (0.25f64 / 100_000.0).sqrt();
        assert!(
            (estimate.p_win_hat - 0.5).abs() < 4.0 * stderr,
            "got {}",
            estimate.p_win_hat
        );
    }
}
