use std::error::Error;
use std::fmt;

use ruin_core::TransitionRates;

/// Errors raised when describing players and their environment.
#[derive(Debug, Clone, PartialEq)]
pub enum CrowdError {
    /// Input quality must lie strictly inside (0, 1).
    QualityOutOfRange(f64),
    /// Reaction rate must be a positive finite number.
    BadReactionRate(f64),
    /// Observation delay must be a non-negative finite number.
    NegativeDelay(f64),
    /// A crowd needs at least one player.
    ZeroPlayers,
    /// The high-rate limit only exists for quality above one half.
    QualityNotAboveHalf(f64),
    /// Not even a single player of this quality is guaranteed to win.
    NoGuarantee,
    /// With zero observation delay every crowd size wins; bigger is always
    /// faster and the search needs an explicit cap.
    SearchNeedsCap,
}

impl fmt::Display for CrowdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrowdError::QualityOutOfRange(q) => {
                write!(f, "player quality must lie strictly in (0, 1), got {q}")
            }
            CrowdError::BadReactionRate(r) => {
                write!(f, "reaction rate must be positive and finite, got {r}")
            }
            CrowdError::NegativeDelay(d) => {
                write!(f, "observation delay must be non-negative and finite, got {d}")
            }
            CrowdError::ZeroPlayers => write!(f, "crowd size must be at least 1"),
            CrowdError::QualityNotAboveHalf(q) => {
                write!(f, "high-rate limit needs quality above 1/2, got {q}")
            }
            CrowdError::NoGuarantee => {
                write!(f, "no crowd size guarantees a win at this quality")
            }
            CrowdError::SearchNeedsCap => {
                write!(
                    f,
                    "zero observation delay makes every crowd size a guaranteed win; \
                     supply a cap to search under"
                )
            }
        }
    }
}

impl Error for CrowdError {}

/// One player: input quality and exponential reaction rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlayerProfile {
    quality: f64,
    lambda_h: f64,
}

impl PlayerProfile {
    /// `quality` is the probability an input is correct, strictly in (0, 1);
    /// `lambda_h` is the reaction rate in 1/seconds (mean reaction time
    /// `1 / lambda_h`), strictly positive.
    pub fn new(quality: f64, lambda_h: f64) -> Result<Self, CrowdError> {
        if !(quality.is_finite() && quality > 0.0 && quality < 1.0) {
            return Err(CrowdError::QualityOutOfRange(quality));
        }
        if !(lambda_h.is_finite() && lambda_h > 0.0) {
            return Err(CrowdError::BadReactionRate(lambda_h));
        }
        Ok(Self { quality, lambda_h })
    }

    /// Probability that an input from this player is correct.
    pub fn quality(self) -> f64 {
        self.quality
    }

    /// Reaction rate, 1/seconds.
    pub fn lambda_h(self) -> f64 {
        self.lambda_h
    }
}

/// The shared playing conditions: observation delay and crowd size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Environment {
    t_d: f64,
    n_players: u64,
}

impl Environment {
    pub fn new(t_d: f64, n_players: u64) -> Result<Self, CrowdError> {
        if !(t_d.is_finite() && t_d >= 0.0) {
            return Err(CrowdError::NegativeDelay(t_d));
        }
        if n_players == 0 {
            return Err(CrowdError::ZeroPlayers);
        }
        Ok(Self { t_d, n_players })
    }

    /// Seconds between an input executing and everyone observing its effect.
    pub fn t_d(self) -> f64 {
        self.t_d
    }

    /// Number of simultaneously playing, identical players.
    pub fn n_players(self) -> u64 {
        self.n_players
    }
}

/// The crowd reduced to an effective single chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveModel {
    /// Probability that no second input lands inside the delay window.
    pub p_collision_free: f64,
    /// Collision-adjusted input quality `q · P_c`.
    pub effective_quality: f64,
    /// Effective good/bad move rates; they always sum to `N · lambda_h`.
    pub rates: TransitionRates,
    /// Mean wall-clock cost of one move: first reaction plus the delay.
    pub time_per_move_s: f64,
}
