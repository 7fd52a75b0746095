//! Fuzz the crowd-size argument parser (`k` or `lo..hi`): no panics, and
//! anything accepted must round-trip through its display form.

#![no_main]

use libfuzzer_sys::fuzz_target;
use sweep_cli::PlayersSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = text.parse::<PlayersSpec>() {
        match spec {
            PlayersSpec::Single(k) => assert!(k >= 1),
            PlayersSpec::Range { lo, hi } => assert!(1 <= lo && lo <= hi),
        }
        let rendered = spec.to_string();
        assert_eq!(rendered.parse::<PlayersSpec>(), Ok(spec), "via `{rendered}`");
    }
});
