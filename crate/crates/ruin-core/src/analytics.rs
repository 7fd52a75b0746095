use crate::model::{
    Expectation, GameRules, JumpProbability, LossBound, ModelError, TransitionRates,
};

/// `base^k` for a base in (0, 1]: direct integer powers while they are cheap
/// and exact enough, log space for large exponents. Callers arrange the base
/// on the contracting side, so the log-space form can underflow (harmlessly,
/// toward the true limit) but never overflow.
fn pow_contracting(base: f64, k: u64) -> f64 {
    debug_assert!(base > 0.0 && base <= 1.0, "base {base} must be in (0, 1]");
    if k <= 64 {
        base.powi(k as i32)
    } else {
        (k as f64 * base.ln()).exp()
    }
}

/// `1 - exp(k·ln_base)` for `ln_base <= 0`, free of the cancellation that a
/// literal `1.0 - pow(...)` suffers when the power is within a few ulps of 1
/// (which happens for small barriers whenever the walk is nearly fair).
fn one_minus_pow(ln_base: f64, k: u64) -> f64 {
    -(k as f64 * ln_base).exp_m1()
}

/// Probability of reaching the winning barrier before the losing one.
///
/// Bounded chain: `(1 - r^m) / (1 - r^(n+m))` with `r = down/up`, evaluated
/// in log space on whichever side keeps the powers in (0, 1). At the fair
/// point the ratio form is 0/0 and the analytic limit `m / (n + m)` is
/// returned instead.
///
/// Unbounded chain: `min(1, (up/down)^n)`, which is 1 whenever `up >= 1/2`.
pub fn win_probability(p: JumpProbability, rules: GameRules) -> f64 {
    let n = rules.win_distance();
    match rules.loss_bound() {
        LossBound::Finite(m) => win_probability_bounded(p, n, m),
        LossBound::Unbounded => {
            if p.up() >= 0.5 {
                1.0
            } else {
                pow_contracting(p.up() / p.down(), u64::from(n))
            }
        }
    }
}

fn win_probability_bounded(p: JumpProbability, n: u32, m: u32) -> f64 {
    if p.up() == 0.5 {
        return f64::from(m) / (f64::from(n) + f64::from(m));
    }
    let span = u64::from(n) + u64::from(m);
    if p.up() > 0.5 {
        // ln of r = down/up < 1, via ln_1p so near-fair walks keep precision.
        let ln_r = ((p.down() - p.up()) / p.up()).ln_1p();
        one_minus_pow(ln_r, u64::from(m)) / one_minus_pow(ln_r, span)
    } else {
        // Multiply through by s^(n+m), s = up/down < 1, so nothing overflows.
        let ln_s = ((p.up() - p.down()) / p.down()).ln_1p();
        (f64::from(n) * ln_s).exp() * one_minus_pow(ln_s, u64::from(m))
            / one_minus_pow(ln_s, span)
    }
}

/// Expected number of jumps until absorption.
///
/// Bounded chain: `(m - (n + m)·p_win) / (down - up)`, with the fair-point
/// limit `n·m`. Unbounded chain: `n / (up - down)` for an upward drift,
/// divergent otherwise.
pub fn expected_steps(p: JumpProbability, rules: GameRules) -> Expectation {
    let n = rules.win_distance();
    match rules.loss_bound() {
        LossBound::Finite(m) => {
            if p.up() == 0.5 {
                return Expectation::Finite(f64::from(n) * f64::from(m));
            }
            let p_win = win_probability_bounded(p, n, m);
            let span = f64::from(n) + f64::from(m);
            Expectation::Finite((f64::from(m) - span * p_win) / (p.down() - p.up()))
        }
        LossBound::Unbounded => {
            if p.up() > 0.5 {
                Expectation::Finite(f64::from(n) / (p.up() - p.down()))
            } else {
                Expectation::Infinite
            }
        }
    }
}

/// Expected duration of one playthrough in seconds: the expected jump count
/// divided by the total event rate. Observation delays are not modelled here;
/// they belong to the layer that derives the rates.
pub fn expected_game_time(rates: TransitionRates, rules: GameRules) -> Expectation {
    chain_steps(rates, rules).map(|steps| steps / rates.total())
}

/// Expected time until a playthrough is finally won, restarting after losses.
///
/// Playthroughs are treated as independent tries with success probability
/// `p_win`, each costing the unconditional mean duration; a sharper account
/// would charge failed tries with the loss-conditioned mean instead. Requires
/// a finite losing barrier, since without one a failed run never terminates.
pub fn expected_time_to_win(
    rates: TransitionRates,
    rules: GameRules,
) -> Result<Expectation, ModelError> {
    if rules.loss_bound().is_unbounded() {
        return Err(ModelError::RetryNeedsLossBound);
    }
    let p_win = chain_win_probability(rates, rules);
    if p_win == 0.0 {
        // Only reachable when the closed form underflows at extreme inputs.
        return Ok(Expectation::Infinite);
    }
    Ok(expected_game_time(rates, rules).map(|t| t / p_win))
}

/// Everything the chain says about one configuration, bundled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsorptionStats {
    pub p_win: f64,
    pub expected_steps: Expectation,
    pub expected_game_time_s: Expectation,
    /// With an unbounded losing distance this is the game time when
    /// `p_win == 1` and divergent otherwise, because a run that fails to win
    /// never ends and cannot be retried.
    pub expected_time_to_win_s: Expectation,
}

impl AbsorptionStats {
    pub fn evaluate(rates: TransitionRates, rules: GameRules) -> Self {
        let p_win = chain_win_probability(rates, rules);
        let expected_steps = chain_steps(rates, rules);
        let expected_game_time_s = expected_steps.map(|s| s / rates.total());
        let expected_time_to_win_s = match rules.loss_bound() {
            LossBound::Finite(_) if p_win > 0.0 => expected_game_time_s.map(|t| t / p_win),
            LossBound::Finite(_) => Expectation::Infinite,
            LossBound::Unbounded if p_win == 1.0 => expected_game_time_s,
            LossBound::Unbounded => Expectation::Infinite,
        };
        Self {
            p_win,
            expected_steps,
            expected_game_time_s,
            expected_time_to_win_s,
        }
    }
}

/// Win probability straight from rates, tolerating the pure-birth edge.
fn chain_win_probability(rates: TransitionRates, rules: GameRules) -> f64 {
    match rates.to_jump_probability() {
        Ok(p) => win_probability(p, rules),
        Err(_) => 1.0,
    }
}

/// Expected jump count straight from rates; with `mu == 0` the walk climbs
/// deterministically, one jump per unit of winning distance.
fn chain_steps(rates: TransitionRates, rules: GameRules) -> Expectation {
    match rates.to_jump_probability() {
        Ok(p) => expected_steps(p, rules),
        Err(_) => Expectation::Finite(f64::from(rules.win_distance())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: f64) -> JumpProbability {
        JumpProbability::new(v).unwrap()
    }

    fn bounded(n: u32, m: u32) -> GameRules {
        GameRules::new(n, LossBound::Finite(m)).unwrap()
    }

    fn unbounded(n: u32) -> GameRules {
        GameRules::new(n, LossBound::Unbounded).unwrap()
    }

    #[test]
    fn fair_symmetric_walk_wins_half() {
        assert_eq!(win_probability(p(0.5), bounded(3, 3)), 0.5);
    }

    #[test]
    fn biased_walk_matches_known_ratio() {
        // 5-state chain solved by hand: 9/13.
        let got = win_probability(p(0.6), bounded(2, 2));
        assert!((got - 9.0 / 13.0).abs() < 1e-15, "got {got}");
    }

    #[test]
    fn unbounded_walk_with_upward_drift_always_wins() {
        assert_eq!(win_probability(p(0.7), unbounded(4)), 1.0);
        assert_eq!(win_probability(p(0.5), unbounded(7)), 1.0);
    }

    #[test]
    fn unbounded_walk_with_downward_drift() {
        let got = win_probability(p(0.4), unbounded(1));
        assert!((got - 2.0 / 3.0).abs() < 1e-15, "got {got}");
    }

    #[test]
    fn expected_steps_biased_chain() {
        let got = expected_steps(p(0.6), bounded(2, 2)).finite().unwrap();
        assert!((got - 50.0 / 13.0).abs() < 1e-12, "got {got}");
    }

    #[test]
    fn expected_steps_fair_limit_is_product() {
        assert_eq!(expected_steps(p(0.5), bounded(2, 3)), Expectation::Finite(6.0));
    }

    #[test]
    fn fair_walk_against_single_barrier_never_finishes_on_average() {
        assert_eq!(expected_steps(p(0.5), unbounded(4)), Expectation::Infinite);
    }

    #[test]
    fn game_time_divides_steps_by_total_rate() {
        let rates = TransitionRates::new(0.6, 0.4).unwrap();
        let got = expected_game_time(rates, bounded(2, 2)).finite().unwrap();
        assert!((got - 50.0 / 13.0).abs() < 1e-12, "got {got}");
    }

    #[test]
    fn doubling_both_rates_halves_the_time() {
        let slow = TransitionRates::new(0.6, 0.4).unwrap();
        let fast = TransitionRates::new(1.2, 0.8).unwrap();
        let t_slow = expected_game_time(slow, bounded(2, 2)).finite().unwrap();
        let t_fast = expected_game_time(fast, bounded(2, 2)).finite().unwrap();
        assert!((t_fast - t_slow / 2.0).abs() < 1e-12);
        assert!((t_fast - 25.0 / 13.0).abs() < 1e-12);
    }

    #[test]
    fn fair_rates_game_time() {
        let rates = TransitionRates::new(0.5, 0.5).unwrap();
        let got = expected_game_time(rates, bounded(2, 3)).finite().unwrap();
        assert!((got - 6.0).abs() < 1e-12);
    }

    #[test]
    fn time_to_win_compounds_retries() {
        let rates = TransitionRates::new(0.6, 0.4).unwrap();
        let got = expected_time_to_win(rates, bounded(2, 2))
            .unwrap()
            .finite()
            .unwrap();
        assert!((got - 50.0 / 9.0).abs() < 1e-12, "got {got}");
    }

    #[test]
    fn time_to_win_two_state_chain() {
        let rates = TransitionRates::new(0.9, 0.1).unwrap();
        let rules = bounded(1, 1);
        let game = expected_game_time(rates, rules).finite().unwrap();
        assert!((game - 1.0).abs() < 1e-12);
        let win = expected_time_to_win(rates, rules).unwrap().finite().unwrap();
        assert!((win - 10.0 / 9.0).abs() < 1e-12, "got {win}");
    }

    #[test]
    fn time_to_win_symmetric_single_step() {
        for (lambda, mu) in [(0.5, 0.5), (2.0, 2.0), (0.05, 0.05)] {
            let rates = TransitionRates::new(lambda, mu).unwrap();
            let got = expected_time_to_win(rates, bounded(1, 1))
                .unwrap()
                .finite()
                .unwrap();
            assert!((got - 2.0 / (lambda + mu)).abs() < 1e-12);
        }
    }

    #[test]
    fn time_to_win_requires_losing_barrier() {
        let rates = TransitionRates::new(0.9, 0.1).unwrap();
        assert_eq!(
            expected_time_to_win(rates, unbounded(2)),
            Err(ModelError::RetryNeedsLossBound)
        );
    }

    #[test]
    fn pure_birth_chain_is_deterministic() {
        let rates = TransitionRates::new(2.0, 0.0).unwrap();
        let stats = AbsorptionStats::evaluate(rates, bounded(4, 1));
        assert_eq!(stats.p_win, 1.0);
        assert_eq!(stats.expected_steps, Expectation::Finite(4.0));
        assert_eq!(stats.expected_game_time_s, Expectation::Finite(2.0));
        assert_eq!(stats.expected_time_to_win_s, Expectation::Finite(2.0));
    }

    #[test]
    fn stats_bundle_matches_individual_operations() {
        let rates = TransitionRates::new(0.6, 0.4).unwrap();
        let rules = bounded(2, 2);
        let stats = AbsorptionStats::evaluate(rates, rules);
        assert_eq!(
            stats.p_win,
            win_probability(rates.to_jump_probability().unwrap(), rules)
        );
        assert_eq!(stats.expected_game_time_s, expected_game_time(rates, rules));
        assert_eq!(
            stats.expected_time_to_win_s,
            expected_time_to_win(rates, rules).unwrap()
        );
    }

    #[test]
    fn stats_bundle_without_losing_barrier() {
        // Guaranteed win: retrying adds nothing, the mean time is the game time.
        let sure = AbsorptionStats::evaluate(TransitionRates::new(0.7, 0.3).unwrap(), unbounded(3));
        assert_eq!(sure.p_win, 1.0);
        assert_eq!(sure.expected_time_to_win_s, sure.expected_game_time_s);

        // Possible never-ending run: no finite mean time to a win exists.
        let risky =
            AbsorptionStats::evaluate(TransitionRates::new(0.3, 0.7).unwrap(), unbounded(3));
        assert!(risky.p_win < 1.0);
        assert_eq!(risky.expected_time_to_win_s, Expectation::Infinite);
    }

    #[test]
    fn extreme_boundaries_stay_finite_and_ordered() {
        // 500 states in each direction would overflow a naive ratio power.
        for &up in &[0.02, 0.35, 0.65, 0.98] {
            let rules = bounded(500, 500);
            let w = win_probability(p(up), rules);
            assert!((0.0..=1.0).contains(&w), "p={up}: win {w} out of range");
            let steps = expected_steps(p(up), rules).finite().unwrap();
            assert!(steps.is_finite() && steps > 0.0, "p={up}: steps {steps}");
            let floor = 500.0 * w + 500.0 * (1.0 - w);
            assert!(steps >= floor * (1.0 - 1e-12), "p={up}: {steps} < {floor}");
        }
    }
}
