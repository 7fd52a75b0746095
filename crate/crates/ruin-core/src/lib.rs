//! Exact analytics for a game modelled as a constant-rate birth-death chain.
//!
//! A playthrough is a walk on net progress: each good move steps +1, each bad
//! move steps -1, the game is won at `+n` and lost at `-m` (the losing barrier
//! may be absent). Good and bad moves arrive at constant rates `lambda` and
//! `mu`, so the embedded jump chain steps up with probability
//! `p = lambda / (lambda + mu)` and the sojourn at every state is exponential
//! with mean `1 / (lambda + mu)`.
//!
//! The closed forms here are the classical gambler's-ruin results, extended
//! with their analytic limits at the fair point `p = 1/2` (where the textbook
//! expressions are 0/0) and with an explicit [`Expectation::Infinite`] for the
//! diverging cases instead of sentinel floats.
//!
//! All operations are pure functions of immutable value types and can be
//! called concurrently without restriction.
//!
//! ```
//! use ruin_core::{GameRules, LossBound, TransitionRates, AbsorptionStats};
//!
//! // Good moves at 0.6/s, bad at 0.4/s, win at +2, lose at -2.
//! let rates = TransitionRates::new(0.6, 0.4)?;
//! let rules = GameRules::new(2, LossBound::Finite(2))?;
//! let stats = AbsorptionStats::evaluate(rates, rules);
//!
//! assert!((stats.p_win - 9.0 / 13.0).abs() < 1e-12);
//! assert!((stats.expected_game_time_s.finite().unwrap() - 50.0 / 13.0).abs() < 1e-12);
//! # Ok::<(), ruin_core::ModelError>(())
//! ```

mod analytics;
mod model;

pub use analytics::{
    expected_game_time, expected_steps, expected_time_to_win, win_probability, AbsorptionStats,
};
pub use model::{Expectation, GameRules, JumpProbability, LossBound, ModelError, TransitionRates};
