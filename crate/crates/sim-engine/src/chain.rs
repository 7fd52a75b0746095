use rand::Rng;
use ruin_core::{GameRules, JumpProbability, TransitionRates};

use crate::rng::{sample_exp, trial_rng};

/// Step budget for walks without a losing barrier.
pub const DEFAULT_STEP_CAP: u64 = 1_000_000;

/// One playthrough that reached an absorbing state.
///
/// `elapsed_s` stays zero for the untimed jump-chain sampler; the timed
/// samplers accumulate real seconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub won: bool,
    /// Chain transitions taken; at least the distance to the barrier hit.
    pub steps: u64,
    pub elapsed_s: f64,
}

/// A simulated trial: absorbed, or stopped by the step/round budget.
///
/// Running out of budget is reported as its own case — it is not a loss, and
/// it can only happen when there is no losing barrier to guarantee absorption.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrialResult {
    Absorbed(TrialOutcome),
    Capped { steps: u64, elapsed_s: f64 },
}

impl TrialResult {
    /// The absorbed outcome, if the trial was not capped.
    pub fn outcome(&self) -> Option<&TrialOutcome> {
        match self {
            TrialResult::Absorbed(outcome) => Some(outcome),
            TrialResult::Capped { .. } => None,
        }
    }

    pub fn is_capped(&self) -> bool {
        matches!(self, TrialResult::Capped { .. })
    }
}

/// One realization of the embedded ±1 walk from 0 until it hits the winning
/// or losing barrier. No clock: `elapsed_s` is zero.
///
/// The step cap applies only without a losing barrier (where a downhill walk
/// could wander forever); bounded chains always run to absorption.
/// Deterministic for a given seed.
pub fn simulate_jump_walk(
    p: JumpProbability,
    rules: GameRules,
    step_cap: u64,
    seed: u64,
) -> TrialResult {
    walk(p.up(), rules, step_cap, None, &mut trial_rng(seed, 0))
}

/// One realization of the continuous-time chain: the same walk, with an
/// exponential sojourn at rate `lambda + mu` accumulated before every jump.
pub fn simulate_ctmc(
    rates: TransitionRates,
    rules: GameRules,
    step_cap: u64,
    seed: u64,
) -> TrialResult {
    walk(
        rates.jump_probability(),
        rules,
        step_cap,
        Some(rates.total()),
        &mut trial_rng(seed, 0),
    )
}

/// Shared walk driver. Per step the draw order is fixed: sojourn first (when
/// timed), then direction; determinism of whole batches depends on it.
pub(crate) fn walk<R: Rng>(
    p_up: f64,
    rules: GameRules,
    step_cap: u64,
    holding_rate: Option<f64>,
    rng: &mut R,
) -> TrialResult {
    let win_at = i64::from(rules.win_distance());
    let lose_at = rules.loss_bound().finite().map(|m| -i64::from(m));
    let mut position = 0i64;
    let mut steps = 0u64;
    let mut elapsed_s = 0.0;
    loop {
        if lose_at.is_none() && steps == step_cap {
            return TrialResult::Capped { steps, elapsed_s };
        }
        if let Some(rate) = holding_rate {
            elapsed_s += sample_exp(rng, rate);
        }
        position += if rng.random::<f64>() < p_up { 1 } else { -1 };
        steps += 1;
        if position == win_at {
            return TrialResult::Absorbed(TrialOutcome {
                won: true,
                steps,
                elapsed_s,
            });
        }
        if Some(position) == lose_at {
            return TrialResult::Absorbed(TrialOutcome {
                won: false,
                steps,
                elapsed_s,
            });
        }
    }
}
