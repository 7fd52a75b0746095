//! Fuzz the config-file parser: arbitrary text must either parse into a
//! partial config or return a structured error, never panic; whatever parses
//! must merge cleanly over the defaults.

#![no_main]

use libfuzzer_sys::fuzz_target;
use sweep_cli::{parse_config_str, RunConfig};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(partial) = parse_config_str(text) {
        let cfg = RunConfig::default().apply(&partial);
        // Touch the derived accessors; they must hold for anything parseable.
        let (lo, hi) = cfg.players_range();
        assert!(1 <= lo && lo <= hi);
        let _ = cfg.single_players();
    }
});
