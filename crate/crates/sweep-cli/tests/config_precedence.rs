//! Precedence and round-trip properties of the configuration layer: flags
//! beat the config file, the file beats the defaults, on every field
//! independently; and any config a file can express survives render-reparse.

use proptest::option;
use proptest::prelude::*;
use ruin_core::LossBound;
use sweep_cli::{parse_config_str, PartialConfig, PlayersSpec, RunConfig};

fn loss_bound() -> impl Strategy<Value = LossBound> {
    prop_oneof![
        Just(LossBound::Unbounded),
        (1u32..10_000).prop_map(LossBound::Finite),
    ]
}

fn players_spec() -> impl Strategy<Value = PlayersSpec> {
    prop_oneof![
        (1u64..5_000).prop_map(PlayersSpec::Single),
        (1u64..5_000, 0u64..100).prop_map(|(lo, extra)| PlayersSpec::Range { lo, hi: lo + extra }),
    ]
}

prop_compose! {
    fn partial_config()(
        quality in option::of(0.01f64..0.99),
        lambda_h in option::of(0.001f64..100.0),
        t_d in option::of(0.0f64..10.0),
        win_distance in option::of(1u32..10_000),
        loss_bound in option::of(loss_bound()),
        players in option::of(players_spec()),
        trials in option::of(1u64..1_000_000),
        seed in option::of(any::<u64>()),
        round_cap in option::of(1u64..10_000_000),
    ) -> PartialConfig {
        PartialConfig {
            quality, lambda_h, t_d, win_distance, loss_bound,
            players, trials, seed, round_cap,
        }
    }
}

/// The exact text a config file would need to express `partial`.
fn render_config(partial: &PartialConfig) -> String {
    let mut text = String::from("# generated\n");
    let mut push = |key: &str, value: String| {
        text.push_str(&format!("{key} = {value}\n"));
    };
    if let Some(v) = partial.quality {
        push("q", format!("{v}"));
    }
    if let Some(v) = partial.lambda_h {
        push("lambda_h", format!("{v}"));
    }
    if let Some(v) = partial.t_d {
        push("t_d", format!("{v}"));
    }
    if let Some(v) = partial.win_distance {
        push("n", format!("{v}"));
    }
    match partial.loss_bound {
        Some(LossBound::Finite(m)) => push("m", format!("{m}")),
        Some(LossBound::Unbounded) => push("m", "inf".into()),
        None => {}
    }
    if let Some(v) = partial.players {
        push("players", format!("{v}"));
    }
    if let Some(v) = partial.trials {
        push("trials", format!("{v}"));
    }
    if let Some(v) = partial.seed {
        push("seed", format!("{v}"));
    }
    if let Some(v) = partial.round_cap {
        push("round_cap", format!("{v}"));
    }
    text
}

proptest! {
    // Flag > file > default, field by field.
    #[test]
    fn flags_override_file_overrides_defaults(file in partial_config(), flags in partial_config()) {
        let defaults = RunConfig::default();
        let resolved = defaults.apply(&file).apply(&flags);

        macro_rules! check {
            ($($field:ident),*) => {
                $(prop_assert_eq!(
                    resolved.$field,
                    flags.$field.or(file.$field).unwrap_or(defaults.$field),
                    "field {}",
                    stringify!($field)
                );)*
            };
        }
        check!(quality, lambda_h, t_d, win_distance, loss_bound, players, trials, seed, round_cap);
    }

    // Whatever a PartialConfig holds, a config file can carry losslessly.
    #[test]
    fn config_files_round_trip(partial in partial_config()) {
        let reparsed = parse_config_str(&render_config(&partial)).unwrap();
        prop_assert_eq!(reparsed, partial);
    }

    // Applying an empty overlay changes nothing.
    #[test]
    fn empty_overlay_is_identity(base in partial_config()) {
        let resolved = RunConfig::default().apply(&base);
        prop_assert_eq!(resolved.apply(&PartialConfig::default()), resolved);
    }
}
