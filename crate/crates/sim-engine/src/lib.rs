//! Seeded stochastic samplers for the game chain and its crowd of players.
//!
//! Three layers of fidelity, all validated against the closed forms:
//!
//! * [`simulate_jump_walk`] — the embedded ±1 walk, no clock;
//! * [`simulate_ctmc`] — the same walk with exponential holding times;
//! * [`simulate_crowd_round`] / [`simulate_crowd_playthrough`] — the raw
//!   behavioural model: every player reacts once per observed state, the
//!   first input settles the move, and a second input inside the observation
//!   delay spoils a correct one.
//!
//! Every simulator is a pure function of its parameters and a seed. Batches
//! derive one independent ChaCha stream per trial from `(seed, trial index)`,
//! so results are bit-identical whether trials run sequentially or in
//! parallel; aggregation always walks trials in index order.

mod batch;
mod chain;
mod crowd;
mod rng;

pub use batch::{
    estimate_collision_probability, estimate_round_progress, run_crowd_batch, run_crowd_trials,
    run_ctmc_batch, run_jump_batch, run_trials, BatchEstimate,
};
pub use chain::{simulate_ctmc, simulate_jump_walk, TrialOutcome, TrialResult, DEFAULT_STEP_CAP};
pub use crowd::{
    simulate_crowd_playthrough, simulate_crowd_round, CrowdRoundOutcome, DEFAULT_ROUND_CAP,
};
pub use rng::{trial_rng, GENERATOR_ID};
