//! Fuzz the losing-distance argument parser (positive integer or `inf`).

#![no_main]

use libfuzzer_sys::fuzz_target;
use sweep_cli::{parse_loss_bound, LossBound};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(bound) = parse_loss_bound(text) {
        match bound {
            LossBound::Finite(m) => assert!(m >= 1),
            LossBound::Unbounded => assert_eq!(text.trim(), "inf"),
        }
    }
});
