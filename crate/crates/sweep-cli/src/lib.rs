//! Command-line front end for the crowd-play analytics stack: closed-form
//! reports, crowd-size sweeps as CSV, Monte Carlo playthrough batches and
//! simulator-vs-closed-form validation.
//!
//! The binary lives in `main.rs`; everything it does is reachable through
//! this library so tests (and fuzzers, for the parsing surface) can drive the
//! same code paths directly.

pub mod commands;
pub mod config;
pub mod format;

pub use commands::CliError;
pub use config::{parse_config_str, parse_loss_bound, PartialConfig, PlayersSpec, RunConfig};
pub use ruin_core::LossBound;
