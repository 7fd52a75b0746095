use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// How random streams are derived, recorded in every batch estimate so a
/// result can be reproduced bit-for-bit later.
pub const GENERATOR_ID: &str = "chacha8(key=seed, stream=trial-index)";

/// An independent random stream for one trial.
///
/// The master seed keys the generator and the trial index selects the ChaCha
/// stream (its nonce), so any two trial indices yield independent sequences
/// and a batch can be evaluated in any order, or in parallel, without
/// changing a single draw.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Inverse-CDF exponential draw with the given rate.
///
/// Uses `1 - U` so the argument of `ln` stays in (0, 1] for `U` in [0, 1).
pub(crate) fn sample_exp<R: Rng>(rng: &mut R, rate: f64) -> f64 {
    -(1.0 - rng.random::<f64>()).ln() / rate
}
