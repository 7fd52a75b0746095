use ruin_core::{
    expected_steps, win_probability, Expectation, GameRules, JumpProbability, LossBound,
    TransitionRates,
};

use crate::types::{CrowdError, EffectiveModel, Environment, PlayerProfile};

/// Largest crowd size that still guarantees an eventual win.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GuaranteeLimit {
    /// Guaranteed up to and including this many players, no further.
    Bounded(u64),
    /// Guaranteed at every crowd size (zero observation delay).
    Unbounded,
    /// Not guaranteed even for a single player (quality at or below 1/2).
    NoGuarantee,
}

/// Result of the crowd-size search: the fastest guaranteed-win crowd.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalCrowd {
    pub n_players: u64,
    pub expected_time_s: f64,
}

/// Chain rates for one player on their own: correct inputs arrive at
/// `quality · lambda_h`, incorrect ones at the complementary rate.
pub fn single_player_rates(profile: PlayerProfile) -> TransitionRates {
    let lambda = profile.quality() * profile.lambda_h();
    let mu = (1.0 - profile.quality()) * profile.lambda_h();
    TransitionRates::new(lambda, mu).expect("quality in (0,1) keeps both rates valid")
}

/// Probability that no second input lands within the observation delay of the
/// first: `exp(-lambda_h · (N - 1) · t_d)`.
///
/// The gap between the first and second of `N` exponential reactions is
/// itself exponential with rate `lambda_h · (N - 1)`, and by memorylessness
/// the elapsed first reaction is irrelevant. Exactly 1 for a single player or
/// a zero delay; clamped at the smallest positive float so that extreme
/// parameters cannot underflow the strict positivity invariant.
pub fn collision_probability(profile: PlayerProfile, env: Environment) -> f64 {
    let others = (env.n_players() - 1) as f64;
    (-profile.lambda_h() * others * env.t_d())
        .exp()
        .max(f64::MIN_POSITIVE)
}

/// The crowd as one effective chain.
///
/// Collisions demote correct inputs, so the quality drops to `q · P_c`; the
/// pooled crowd reacts at `N · lambda_h`, split between good and bad moves by
/// the effective quality; each move costs the first reaction plus the delay.
/// Reduces exactly to [`single_player_rates`] at `N = 1`.
pub fn n_player_effective_model(profile: PlayerProfile, env: Environment) -> EffectiveModel {
    let p_collision_free = collision_probability(profile, env);
    // Same subnormal floor as the collision probability: the product can
    // round to zero even when both factors are positive.
    let effective_quality = (profile.quality() * p_collision_free).max(f64::MIN_POSITIVE);
    let pooled_rate = env.n_players() as f64 * profile.lambda_h();
    let lambda = effective_quality * pooled_rate;
    let mu = (1.0 - effective_quality) * pooled_rate;
    EffectiveModel {
        p_collision_free,
        effective_quality,
        rates: TransitionRates::new(lambda, mu)
            .expect("effective quality in (0,1) keeps both rates valid"),
        time_per_move_s: 1.0 / pooled_rate + env.t_d(),
    }
}

/// Probability the crowd ever accumulates `win_distance` net good moves.
///
/// The effective chain has no losing barrier, and its up-step probability is
/// the effective quality itself (good moves are the fraction `q'` of all
/// moves), so this is the single-barrier ruin probability: 1 when
/// `q' >= 1/2`, else `(q' / (1 - q'))^n`.
pub fn win_probability_crowd(profile: PlayerProfile, env: Environment, win_distance: u32) -> f64 {
    let model = n_player_effective_model(profile, env);
    let p = JumpProbability::new(model.effective_quality)
        .expect("effective quality lies strictly in (0,1)");
    let rules = GameRules::new(win_distance, LossBound::Unbounded)
        .expect("win distance must be at least 1");
    win_probability(p, rules)
}

/// Expected wall-clock time for the crowd to win: expected moves of the
/// effective chain times the wall-clock cost per move,
/// `n · (1 + N·lambda_h·t_d) / (N·lambda_h · (2q' - 1))`.
///
/// Divergent as soon as the effective quality falls to 1/2 or below, i.e.
/// past the guaranteed-win boundary.
pub fn expected_game_time_crowd(
    profile: PlayerProfile,
    env: Environment,
    win_distance: u32,
) -> Expectation {
    let model = n_player_effective_model(profile, env);
    let p = JumpProbability::new(model.effective_quality)
        .expect("effective quality lies strictly in (0,1)");
    let rules = GameRules::new(win_distance, LossBound::Unbounded)
        .expect("win distance must be at least 1");
    expected_steps(p, rules).map(|moves| moves * model.time_per_move_s)
}

/// Game time of a lone player whose reaction rate grows without bound:
/// only the observation delay is left, `n · t_d / (2q - 1)`.
pub fn high_rate_limit_time(quality: f64, t_d: f64, win_distance: u32) -> Result<f64, CrowdError> {
    if !(quality.is_finite() && quality > 0.0 && quality < 1.0) {
        return Err(CrowdError::QualityOutOfRange(quality));
    }
    if quality <= 0.5 {
        return Err(CrowdError::QualityNotAboveHalf(quality));
    }
    if !(t_d.is_finite() && t_d >= 0.0) {
        return Err(CrowdError::NegativeDelay(t_d));
    }
    Ok(f64::from(win_distance) * t_d / (2.0 * quality - 1.0))
}

/// Largest `N` with `2q · exp(-lambda_h·(N-1)·t_d)` still above 1, i.e. the
/// last crowd size whose effective quality keeps the win guaranteed.
///
/// The strict inequality matters: at equality the expected game time already
/// diverges, so that boundary size is excluded.
pub fn max_guaranteed_win_players(profile: PlayerProfile, t_d: f64) -> GuaranteeLimit {
    if profile.quality() <= 0.5 {
        return GuaranteeLimit::NoGuarantee;
    }
    if t_d == 0.0 {
        return GuaranteeLimit::Unbounded;
    }
    let guaranteed = |n: u64| {
        2.0 * profile.quality() * (-profile.lambda_h() * (n - 1) as f64 * t_d).exp() > 1.0
    };
    // Closed-form bound N < 1 + ln(2q) / (lambda_h · t_d), then verified
    // against the defining inequality to absorb any floor/rounding slip.
    let bound = 1.0 + (2.0 * profile.quality()).ln() / (profile.lambda_h() * t_d);
    let mut n_max = (bound.floor().max(1.0)).min(u64::MAX as f64) as u64;
    while n_max > 1 && !guaranteed(n_max) {
        n_max -= 1;
    }
    while n_max < u64::MAX && guaranteed(n_max + 1) {
        n_max += 1;
    }
    GuaranteeLimit::Bounded(n_max)
}

/// Exhaustively evaluates the expected game time over every guaranteed-win
/// crowd size and returns the fastest one (smallest size on exact ties).
///
/// `cap` bounds the search from above; it is required when the delay is zero,
/// because then the time decreases in `N` forever and no minimum exists.
pub fn optimal_player_count(
    profile: PlayerProfile,
    t_d: f64,
    win_distance: u32,
    cap: Option<u64>,
) -> Result<OptimalCrowd, CrowdError> {
    if cap == Some(0) {
        return Err(CrowdError::ZeroPlayers);
    }
    let hi = match max_guaranteed_win_players(profile, t_d) {
        GuaranteeLimit::NoGuarantee => return Err(CrowdError::NoGuarantee),
        GuaranteeLimit::Unbounded => cap.ok_or(CrowdError::SearchNeedsCap)?,
        GuaranteeLimit::Bounded(limit) => cap.map_or(limit, |c| c.min(limit)),
    };
    let mut best: Option<OptimalCrowd> = None;
    for n_players in 1..=hi {
        let env = Environment::new(t_d, n_players).expect("t_d validated, n_players >= 1");
        let time = expected_game_time_crowd(profile, env, win_distance)
            .finite()
            .expect("every size up to the guarantee limit has finite time");
        if best.is_none_or(|b| time < b.expected_time_s) {
            best = Some(OptimalCrowd {
                n_players,
                expected_time_s: time,
            });
        }
    }
    Ok(best.expect("search range contains at least N = 1"))
}
