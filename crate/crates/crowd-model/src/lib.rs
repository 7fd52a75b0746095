//! From player behaviour to chain parameters.
//!
//! A player is described by an input quality (probability the input is
//! correct) and an exponential reaction rate. Everyone sees a state change
//! only after a fixed observation delay, and when several players react, a
//! second input landing inside that delay window spoils an otherwise correct
//! first input.
//!
//! This crate turns those ingredients into effective transition rates for the
//! progress chain of `ruin-core` — collisions are folded into a reduced
//! effective quality — and provides the closed-form win probabilities, game
//! times, guaranteed-win boundary and optimal crowd size that follow.
//!
//! All functions are pure and all types are immutable values.
//!
//! ```
//! use crowd_model::{
//!     expected_game_time_crowd, max_guaranteed_win_players, Environment, GuaranteeLimit,
//!     PlayerProfile,
//! };
//!
//! // Experts who need ten seconds per input, watching a 150 ms delay.
//! let player = PlayerProfile::new(0.99, 0.1)?;
//! assert_eq!(
//!     max_guaranteed_win_players(player, 0.15),
//!     GuaranteeLimit::Bounded(46),
//! );
//!
//! // Nineteen of them beat one of them by roughly a factor of eight.
//! let solo = expected_game_time_crowd(player, Environment::new(0.15, 1)?, 100);
//! let crowd = expected_game_time_crowd(player, Environment::new(0.15, 19)?, 100);
//! assert!(solo.finite().unwrap() / crowd.finite().unwrap() > 7.0);
//! # Ok::<(), crowd_model::CrowdError>(())
//! ```

mod closed_form;
mod types;

pub use closed_form::{
    collision_probability, expected_game_time_crowd, high_rate_limit_time,
    max_guaranteed_win_players, n_player_effective_model, optimal_player_count,
    single_player_rates, win_probability_crowd, GuaranteeLimit, OptimalCrowd,
};
pub use types::{CrowdError, EffectiveModel, Environment, PlayerProfile};
