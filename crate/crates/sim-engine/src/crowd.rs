use crowd_model::{Environment, PlayerProfile};
use rand::Rng;

use crate::chain::{TrialOutcome, TrialResult};
use crate::rng::{sample_exp, trial_rng};

/// Round budget for crowd playthroughs, which have no losing barrier: walks
/// hovering near even effective quality are heavy-tailed and need a stop.
pub const DEFAULT_ROUND_CAP: u64 = 1_000_000;

/// One observe-react-settle cycle of the crowd.
///
/// All players see the state at the same instant and each reacts exactly
/// once. The earliest input decides the round; any further input arriving
/// within the observation delay spoils it. However many inputs pile into that
/// window, the round still nets a single ±1 move.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrowdRoundOutcome {
    /// Seconds from the observation instant to the earliest input.
    pub first_reaction_s: f64,
    /// A second input arrived within the delay window of the first.
    pub duplicated: bool,
    /// +1 iff the first input was correct and not duplicated, else -1.
    pub net_move: i8,
}

/// Simulates a single crowd round. Deterministic for a given seed.
pub fn simulate_crowd_round(
    profile: PlayerProfile,
    env: Environment,
    seed: u64,
) -> CrowdRoundOutcome {
    crowd_round(profile, env, &mut trial_rng(seed, 0))
}

/// Round driver with a fixed draw order: all reaction times in player order,
/// then one correctness draw for the earliest input.
pub(crate) fn crowd_round<R: Rng>(
    profile: PlayerProfile,
    env: Environment,
    rng: &mut R,
) -> CrowdRoundOutcome {
    let (first, gap) = first_two_reactions(rng, env.n_players(), profile.lambda_h());
    let duplicated = gap.is_some_and(|g| g < env.t_d());
    let correct = rng.random::<f64>() < profile.quality();
    CrowdRoundOutcome {
        first_reaction_s: first,
        duplicated,
        net_move: if correct && !duplicated { 1 } else { -1 },
    }
}

/// Earliest reaction and the gap to the second-earliest (`None` for a single
/// player), from `n` independent exponential draws.
pub(crate) fn first_two_reactions<R: Rng>(rng: &mut R, n: u64, rate: f64) -> (f64, Option<f64>) {
    let mut first = f64::INFINITY;
    let mut second = f64::INFINITY;
    for _ in 0..n {
        let t = sample_exp(rng, rate);
        if t < first {
            second = first;
            first = t;
        } else if t < second {
            second = t;
        }
    }
    let gap = (n >= 2).then_some(second - first);
    (first, gap)
}

/// Repeats crowd rounds until the progress counter reaches `win_distance` or
/// the round budget runs out (reported as capped, not lost — there is no
/// losing barrier here). Per round the clock advances by the first reaction
/// plus the observation delay, and progress moves by the round's net ±1.
pub fn simulate_crowd_playthrough(
    profile: PlayerProfile,
    env: Environment,
    win_distance: u32,
    round_cap: u64,
    seed: u64,
) -> TrialResult {
    crowd_playthrough(profile, env, win_distance, round_cap, &mut trial_rng(seed, 0))
}

pub(crate) fn crowd_playthrough<R: Rng>(
    profile: PlayerProfile,
    env: Environment,
    win_distance: u32,
    round_cap: u64,
    rng: &mut R,
) -> TrialResult {
    let target = i64::from(win_distance);
    let mut progress = 0i64;
    let mut steps = 0u64;
    let mut elapsed_s = 0.0;
    while steps < round_cap {
        let round = crowd_round(profile, env, rng);
        elapsed_s += round.first_reaction_s + env.t_d();
        progress += i64::from(round.net_move);
        steps += 1;
        if progress == target {
            return TrialResult::Absorbed(TrialOutcome {
                won: true,
                steps,
                elapsed_s,
            });
        }
    }
    TrialResult::Capped { steps, elapsed_s }
}
