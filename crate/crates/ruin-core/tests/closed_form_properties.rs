//! Property and oracle tests for the closed forms: every identity here is
//! checked against either an algebraic invariant or the brute-force
//! linear-system solver, never against the implementation itself.

use proptest::prelude::*;
use ruin_core::{
    expected_game_time, expected_steps, win_probability, AbsorptionStats, Expectation, GameRules,
    JumpProbability, LossBound, TransitionRates,
};

fn p(v: f64) -> JumpProbability {
    JumpProbability::new(v).unwrap()
}

fn bounded(n: u32, m: u32) -> GameRules {
    GameRules::new(n, LossBound::Finite(m)).unwrap()
}

/// Up-step probabilities kept away from the fair point, where the Wald
/// residual degenerates to 0 = 0 and relative comparison is meaningless.
fn biased_p() -> impl Strategy<Value = f64> {
    (0.05f64..=0.95).prop_filter("away from the fair point", |v| (v - 0.5).abs() > 1e-4)
}

proptest! {
    // Wald's identity: mean displacement equals drift times mean step count.
    #[test]
    fn wald_identity(up in biased_p(), n in 1u32..=50, m in 1u32..=50) {
        let rules = bounded(n, m);
        let jump = p(up);
        let steps = expected_steps(jump, rules).finite().unwrap();
        let p_win = win_probability(jump, rules);
        let lhs = steps * (jump.up() - jump.down());
        let rhs = f64::from(n) * p_win - f64::from(m) * (1.0 - p_win);
        let tol = 1e-9 * rhs.abs().max(lhs.abs());
        prop_assert!((lhs - rhs).abs() <= tol, "lhs {lhs} rhs {rhs}");
    }

    // Swapping the barriers and the step bias swaps win and loss.
    #[test]
    fn complementarity(up in 0.01f64..=0.99, n in 1u32..=50, m in 1u32..=50) {
        let direct = win_probability(p(up), bounded(n, m));
        let mirrored = win_probability(p(1.0 - up), bounded(m, n));
        prop_assert!((direct - (1.0 - mirrored)).abs() < 1e-12,
            "direct {direct}, 1-mirrored {}", 1.0 - mirrored);
    }

    // Steps can never beat the shortest path to either barrier.
    #[test]
    fn steps_dominate_minimum_paths(up in 0.01f64..=0.99, n in 1u32..=50, m in 1u32..=50) {
        let rules = bounded(n, m);
        let p_win = win_probability(p(up), rules);
        let steps = expected_steps(p(up), rules).finite().unwrap();
        let floor = f64::from(n) * p_win + f64::from(m) * (1.0 - p_win);
        prop_assert!(steps >= floor * (1.0 - 1e-12), "steps {steps} below floor {floor}");
    }

    // Scaling both rates by a power of two is exact: the embedded walk is
    // untouched and the clock speeds up by exactly that factor.
    #[test]
    fn rate_scaling_by_powers_of_two_is_exact(
        lambda in 0.01f64..10.0,
        mu in 0.01f64..10.0,
        exponent in -2i32..=10,
        n in 1u32..=20,
        m in 1u32..=20,
    ) {
        let c = 2.0f64.powi(exponent);
        let base = TransitionRates::new(lambda, mu).unwrap();
        let scaled = TransitionRates::new(lambda * c, mu * c).unwrap();
        let rules = bounded(n, m);
        prop_assert_eq!(
            base.to_jump_probability().unwrap().up(),
            scaled.to_jump_probability().unwrap().up()
        );
        let t_base = expected_game_time(base, rules).finite().unwrap();
        let t_scaled = expected_game_time(scaled, rules).finite().unwrap();
        prop_assert_eq!(t_base / c, t_scaled);
    }

    // Arbitrary positive scale factors hold to rounding error.
    #[test]
    fn rate_scaling_in_general(
        lambda in 0.01f64..10.0,
        mu in 0.01f64..10.0,
        c in 0.01f64..100.0,
        n in 1u32..=20,
        m in 1u32..=20,
    ) {
        let base = TransitionRates::new(lambda, mu).unwrap();
        let scaled = TransitionRates::new(lambda * c, mu * c).unwrap();
        let rules = bounded(n, m);
        let t_base = expected_game_time(base, rules).finite().unwrap();
        let t_scaled = expected_game_time(scaled, rules).finite().unwrap();
        prop_assert!((t_scaled - t_base / c).abs() <= 1e-9 * (t_base / c),
            "scaled {t_scaled}, base/c {}", t_base / c);
    }

    // The bundled stats obey their own ordering constraints: a probability
    // in range, steps above the shortest-path mix, retrying never faster
    // than a single run.
    #[test]
    fn stats_bundle_invariants(
        lambda in 0.01f64..10.0,
        mu in 0.01f64..10.0,
        n in 1u32..=50,
        m in 1u32..=50,
    ) {
        let rates = TransitionRates::new(lambda, mu).unwrap();
        let stats = AbsorptionStats::evaluate(rates, bounded(n, m));
        prop_assert!((0.0..=1.0).contains(&stats.p_win));
        let steps = stats.expected_steps.finite().unwrap();
        let floor = f64::from(n) * stats.p_win + f64::from(m) * (1.0 - stats.p_win);
        prop_assert!(steps >= floor * (1.0 - 1e-12));
        let game = stats.expected_game_time_s.finite().unwrap();
        let retry = stats.expected_time_to_win_s.finite().unwrap();
        prop_assert!(retry >= game * (1.0 - 1e-12), "retry {retry} below game {game}");
    }
}

#[test]
fn closed_forms_match_linear_system_oracle() {
    for n in 1..=8u32 {
        for m in 1..=8u32 {
            for tenth in 1..=9u32 {
                let up = f64::from(tenth) / 10.0;
                let rules = bounded(n, m);
                let win_closed = win_probability(p(up), rules);
                let win_oracle = chain_oracle::win_probability(up, n as usize, m as usize);
                assert!(
                    (win_closed - win_oracle).abs() < 1e-10,
                    "win p={up} n={n} m={m}: closed {win_closed}, oracle {win_oracle}"
                );
                let steps_closed = expected_steps(p(up), rules).finite().unwrap();
                let steps_oracle = chain_oracle::expected_steps(up, n as usize, m as usize);
                assert!(
                    (steps_closed - steps_oracle).abs() < 1e-10,
                    "steps p={up} n={n} m={m}: closed {steps_closed}, oracle {steps_oracle}"
                );
            }
        }
    }
}

#[test]
fn win_probability_is_continuous_at_the_fair_point() {
    for n in 1..=20u32 {
        for m in 1..=20u32 {
            let limit = f64::from(m) / f64::from(n + m);
            for side in [0.5 - 1e-7, 0.5 + 1e-7] {
                let got = win_probability(p(side), bounded(n, m));
                assert!(
                    (got - limit).abs() < 1e-5,
                    "n={n} m={m} p={side}: {got} vs limit {limit}"
                );
            }
        }
    }
}

#[test]
fn expected_steps_are_continuous_at_the_fair_point() {
    for n in 1..=20u32 {
        for m in 1..=20u32 {
            let limit = f64::from(n) * f64::from(m);
            for side in [0.5 - 1e-7, 0.5 + 1e-7] {
                let got = expected_steps(p(side), bounded(n, m)).finite().unwrap();
                assert!(
                    (got - limit).abs() < 1e-3,
                    "n={n} m={m} p={side}: {got} vs limit {limit}"
                );
            }
        }
    }
}

#[test]
fn win_probability_increases_with_step_bias() {
    for (n, m) in [(1u32, 1u32), (2, 5), (5, 2), (10, 10)] {
        let mut last = 0.0;
        for i in 1..=19 {
            let up = f64::from(i) * 0.05;
            let w = win_probability(p(up), bounded(n, m));
            assert!(w > last, "n={n} m={m}: not increasing at p={up}");
            last = w;
        }
    }
}

#[test]
fn win_probability_monotone_in_the_barriers() {
    for &up in &[0.3, 0.5, 0.7] {
        for n in [1u32, 4] {
            let mut last = 0.0;
            for m in 1..=12u32 {
                let w = win_probability(p(up), bounded(n, m));
                assert!(w > last, "p={up} n={n}: not increasing at m={m}");
                last = w;
            }
        }
        for m in [1u32, 4] {
            let mut last = 1.0;
            for n in 1..=12u32 {
                let w = win_probability(p(up), bounded(n, m));
                assert!(w < last, "p={up} m={m}: not decreasing at n={n}");
                last = w;
            }
        }
    }
}

#[test]
fn unbounded_mean_steps_match_drift_formula() {
    // Against an upward drift the only scale is n / (2p - 1).
    for &up in &[0.55, 0.7, 0.9] {
        for n in [1u32, 3, 10] {
            let rules = GameRules::new(n, LossBound::Unbounded).unwrap();
            let got = expected_steps(p(up), rules).finite().unwrap();
            let want = f64::from(n) / (2.0 * up - 1.0);
            assert!((got - want).abs() < 1e-12 * want);
        }
    }
    assert_eq!(
        expected_steps(p(0.5), GameRules::new(1, LossBound::Unbounded).unwrap()),
        Expectation::Infinite
    );
}
