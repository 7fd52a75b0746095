use std::error::Error;
use std::fmt;

/// Errors raised when constructing or combining the chain's value types.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelError {
    /// The winning distance must be at least one move.
    WinDistanceZero,
    /// A finite losing distance must be at least one move.
    LossDistanceZero,
    /// Up-step probabilities must lie strictly inside (0, 1).
    JumpProbabilityOutOfRange(f64),
    /// The good-move rate must be a positive finite number.
    BadGoodMoveRate(f64),
    /// The bad-move rate must be a non-negative finite number.
    BadBadMoveRate(f64),
    /// Conversion to a jump probability needs a strictly positive bad-move rate.
    NoDownwardRate,
    /// Retry analysis needs a losing barrier to restart from.
    RetryNeedsLossBound,
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::WinDistanceZero => write!(f, "winning distance must be at least 1"),
            ModelError::LossDistanceZero => {
                write!(f, "finite losing distance must be at least 1")
            }
            ModelError::JumpProbabilityOutOfRange(p) => {
                write!(f, "jump probability must lie strictly in (0, 1), got {p}")
            }
            ModelError::BadGoodMoveRate(r) => {
                write!(f, "good-move rate must be positive and finite, got {r}")
            }
            ModelError::BadBadMoveRate(r) => {
                write!(f, "bad-move rate must be non-negative and finite, got {r}")
            }
            ModelError::NoDownwardRate => {
                write!(f, "chain with zero bad-move rate has no embedded jump probability in (0, 1)")
            }
            ModelError::RetryNeedsLossBound => {
                write!(f, "expected time to win is only defined with a finite losing distance")
            }
        }
    }
}

impl Error for ModelError {}

/// Location of the losing barrier: a finite number of net bad moves, or none.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LossBound {
    /// Lose after this many net bad moves.
    Finite(u32),
    /// No losing barrier; the game can only be won or go on forever.
    Unbounded,
}

impl LossBound {
    /// The finite distance, if there is one.
    pub fn finite(self) -> Option<u32> {
        match self {
            LossBound::Finite(m) => Some(m),
            LossBound::Unbounded => None,
        }
    }

    pub fn is_unbounded(self) -> bool {
        matches!(self, LossBound::Unbounded)
    }
}

/// Absorbing barriers of the progress chain: win at `+n`, lose at `-m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GameRules {
    win_distance: u32,
    loss_bound: LossBound,
}

impl GameRules {
    /// Requires `win_distance >= 1` and, when finite, a losing distance `>= 1`.
    pub fn new(win_distance: u32, loss_bound: LossBound) -> Result<Self, ModelError> {
        if win_distance == 0 {
            return Err(ModelError::WinDistanceZero);
        }
        if loss_bound == LossBound::Finite(0) {
            return Err(ModelError::LossDistanceZero);
        }
        Ok(Self {
            win_distance,
            loss_bound,
        })
    }

    /// Net good moves needed to win.
    pub fn win_distance(self) -> u32 {
        self.win_distance
    }

    /// Net bad moves that lose the game, if bounded.
    pub fn loss_bound(self) -> LossBound {
        self.loss_bound
    }
}

/// Probability of a +1 step of the embedded jump chain, strictly in (0, 1).
///
/// The endpoints are rejected as degenerate: a walk that can only move one
/// way needs no analysis, and the down/up ratio used throughout the closed
/// forms is undefined at 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpProbability(f64);

impl JumpProbability {
    pub fn new(p: f64) -> Result<Self, ModelError> {
        if p.is_finite() && p > 0.0 && p < 1.0 {
            Ok(Self(p))
        } else {
            Err(ModelError::JumpProbabilityOutOfRange(p))
        }
    }

    /// Probability of stepping +1.
    pub fn up(self) -> f64 {
        self.0
    }

    /// Probability of stepping -1 (the complement).
    pub fn down(self) -> f64 {
        1.0 - self.0
    }
}

/// Constant transition rates of the chain, in events per second.
///
/// `lambda` drives +1 steps and must be positive; `mu` drives -1 steps and
/// may be zero (a chain that never regresses).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionRates {
    lambda: f64,
    mu: f64,
}

impl TransitionRates {
    pub fn new(lambda: f64, mu: f64) -> Result<Self, ModelError> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(ModelError::BadGoodMoveRate(lambda));
        }
        if !(mu.is_finite() && mu >= 0.0) {
            return Err(ModelError::BadBadMoveRate(mu));
        }
        Ok(Self { lambda, mu })
    }

    /// Good-move rate, events/second.
    pub fn lambda(self) -> f64 {
        self.lambda
    }

    /// Bad-move rate, events/second.
    pub fn mu(self) -> f64 {
        self.mu
    }

    /// Total event rate `lambda + mu`; always positive.
    pub fn total(self) -> f64 {
        self.lambda + self.mu
    }

    /// Mean sojourn time at any interior state, `1 / (lambda + mu)` seconds.
    pub fn holding_time(self) -> f64 {
        1.0 / self.total()
    }

    /// Up-step probability of the embedded jump chain, `lambda / (lambda + mu)`.
    ///
    /// Lies in (0, 1]; it reaches 1 exactly when `mu == 0`.
    pub fn jump_probability(self) -> f64 {
        self.lambda / self.total()
    }

    /// The embedded jump chain as a validated [`JumpProbability`].
    ///
    /// Fails for `mu == 0`, where the embedded walk is deterministic.
    pub fn to_jump_probability(self) -> Result<JumpProbability, ModelError> {
        if self.mu == 0.0 {
            return Err(ModelError::NoDownwardRate);
        }
        JumpProbability::new(self.jump_probability())
    }
}

/// An expected value that may diverge.
///
/// Divergence is a real feature of these chains (a fair walk against a single
/// barrier, a crowd past the guaranteed-win boundary), so it is carried as an
/// explicit variant rather than as an overflowed or sentinel float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Expectation {
    Finite(f64),
    Infinite,
}

impl Expectation {
    /// The finite value, if there is one.
    pub fn finite(self) -> Option<f64> {
        match self {
            Expectation::Finite(v) => Some(v),
            Expectation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Expectation::Infinite)
    }

    /// Applies `f` to the finite value, leaving `Infinite` untouched.
    pub fn map<F: FnOnce(f64) -> f64>(self, f: F) -> Expectation {
        match self {
            Expectation::Finite(v) => Expectation::Finite(f(v)),
            Expectation::Infinite => Expectation::Infinite,
        }
    }
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expectation::Finite(v) => write!(f, "{v}"),
            Expectation::Infinite => write!(f, "inf"),
        }
    }
}
