use std::fmt;
use std::str::FromStr;

use ruin_core::LossBound;
use thiserror::Error;

/// Run parameters after applying precedence: built-in defaults, then the
/// config file, then command-line flags.
///
/// Fields hold parsed values; range checks that belong to the domain types
/// (quality, rates, distances) are enforced when the respective type is
/// constructed, so every violation carries a field-specific message.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub quality: f64,
    pub lambda_h: f64,
    pub t_d: f64,
    pub win_distance: u32,
    pub loss_bound: LossBound,
    pub players: PlayersSpec,
    pub trials: u64,
    pub seed: u64,
    pub round_cap: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            quality: 0.99,
            lambda_h: 0.1,
            t_d: 0.15,
            win_distance: 100,
            loss_bound: LossBound::Unbounded,
            players: PlayersSpec::Single(1),
            trials: 100_000,
            seed: 42,
            round_cap: sim_engine::DEFAULT_ROUND_CAP,
        }
    }
}

impl RunConfig {
    /// Overlays every present field of `overlay` onto `self`.
    pub fn apply(mut self, overlay: &PartialConfig) -> Self {
        macro_rules! take {
            ($($field:ident),*) => {
                $(if let Some(value) = overlay.$field { self.$field = value; })*
            };
        }
        take!(quality, lambda_h, t_d, win_distance, loss_bound, players, trials, seed, round_cap);
        self
    }

    /// The crowd-size range, inclusive; a single size is a one-point range.
    pub fn players_range(&self) -> (u64, u64) {
        match self.players {
            PlayersSpec::Single(k) => (k, k),
            PlayersSpec::Range { lo, hi } => (lo, hi),
        }
    }

    /// The single crowd size, for commands that cannot take a range.
    pub fn single_players(&self) -> Result<u64, ConfigError> {
        match self.players {
            PlayersSpec::Single(k) => Ok(k),
            PlayersSpec::Range { lo, hi } => Err(ConfigError::RangeNotAllowed { lo, hi }),
        }
    }
}

/// Crowd size argument: one size, or an inclusive range `lo..hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlayersSpec {
    Single(u64),
    Range { lo: u64, hi: u64 },
}

impl FromStr for PlayersSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        fn positive(part: &str, what: &str) -> Result<u64, String> {
            let value: u64 = part
                .trim()
                .parse()
                .map_err(|_| format!("{what} must be a positive integer, got `{part}`"))?;
            if value == 0 {
                return Err(format!("{what} must be at least 1"));
            }
            Ok(value)
        }
        match s.split_once("..") {
            Some((lo, hi)) => {
                let lo = positive(lo, "range start")?;
                let hi = positive(hi, "range end")?;
                if lo > hi {
                    return Err(format!("range start {lo} exceeds range end {hi}"));
                }
                Ok(PlayersSpec::Range { lo, hi })
            }
            None => Ok(PlayersSpec::Single(positive(s, "player count")?)),
        }
    }
}

// The exact inverse of FromStr; used when re-rendering configs.
impl fmt::Display for PlayersSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlayersSpec::Single(k) => write!(f, "{k}"),
            PlayersSpec::Range { lo, hi } => write!(f, "{lo}..{hi}"),
        }
    }
}

/// Losing distance argument: a positive integer or the literal `inf`.
pub fn parse_loss_bound(s: &str) -> Result<LossBound, String> {
    let trimmed = s.trim();
    if trimmed == "inf" {
        return Ok(LossBound::Unbounded);
    }
    let value: u32 = trimmed
        .parse()
        .map_err(|_| format!("losing distance must be a positive integer or `inf`, got `{s}`"))?;
    if value == 0 {
        return Err("losing distance must be at least 1".into());
    }
    Ok(LossBound::Finite(value))
}

/// One optional value per configurable field; what a config file or the flag
/// set contributes before precedence is resolved.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PartialConfig {
    pub quality: Option<f64>,
    pub lambda_h: Option<f64>,
    pub t_d: Option<f64>,
    pub win_distance: Option<u32>,
    pub loss_bound: Option<LossBound>,
    pub players: Option<PlayersSpec>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub round_cap: Option<u64>,
}

/// Errors from the `key = value` config format.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: invalid value for `{key}`: {message}")]
    InvalidValue {
        line: usize,
        key: String,
        message: String,
    },
    #[error("players: this command takes a single crowd size, got the range {lo}..{hi}")]
    RangeNotAllowed { lo: u64, hi: u64 },
    #[error("trials must be at least 1")]
    NoTrials,
}

/// Parses the flat config format: one `key = value` per line, `#` starts a
/// comment, blank lines ignored, every key at most once. Keys mirror the
/// command-line flags: `q`, `lambda_h`, `t_d`, `n`, `m`, `players`, `trials`,
/// `seed`, `round_cap`.
pub fn parse_config_str(text: &str) -> Result<PartialConfig, ConfigError> {
    let mut partial = PartialConfig::default();

    fn store<T>(
        slot: &mut Option<T>,
        parsed: Result<T, String>,
        line: usize,
        key: &str,
    ) -> Result<(), ConfigError> {
        if slot.is_some() {
            return Err(ConfigError::DuplicateKey {
                line,
                key: key.to_string(),
            });
        }
        *slot = Some(parsed.map_err(|message| ConfigError::InvalidValue {
            line,
            key: key.to_string(),
            message,
        })?);
        Ok(())
    }

    fn number<T: FromStr>(value: &str, what: &str) -> Result<T, String> {
        value
            .parse()
            .map_err(|_| format!("expected {what}, got `{value}`"))
    }

    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError::Syntax {
                line,
                text: content.to_string(),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        match key {
            "q" => store(&mut partial.quality, number(value, "a number"), line, key)?,
            "lambda_h" => store(&mut partial.lambda_h, number(value, "a number"), line, key)?,
            "t_d" => store(&mut partial.t_d, number(value, "a number"), line, key)?,
            "n" => store(
                &mut partial.win_distance,
                number(value, "a positive integer").and_then(|n: u32| {
                    if n == 0 {
                        Err("winning distance must be at least 1".into())
                    } else {
                        Ok(n)
                    }
                }),
                line,
                key,
            )?,
            "m" => store(&mut partial.loss_bound, parse_loss_bound(value), line, key)?,
            "players" => store(&mut partial.players, value.parse(), line, key)?,
            "trials" => store(
                &mut partial.trials,
                number(value, "a non-negative integer"),
                line,
                key,
            )?,
            "seed" => store(
                &mut partial.seed,
                number(value, "a non-negative integer"),
                line,
                key,
            )?,
            "round_cap" => store(
                &mut partial.round_cap,
                number(value, "a non-negative integer").and_then(|cap: u64| {
                    if cap == 0 {
                        Err("round cap must be at least 1".into())
                    } else {
                        Ok(cap)
                    }
                }),
                line,
                key,
            )?,
            _ => {
                return Err(ConfigError::UnknownKey {
                    line,
                    key: key.to_string(),
                })
            }
        }
    }
    Ok(partial)
}
