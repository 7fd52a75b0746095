use ruin_core::Expectation;

/// Numbers are emitted with the shortest representation that parses back to
/// the same value, which is exactly what the standard float `Display` gives.
pub fn number(value: f64) -> String {
    if value.is_nan() {
        "n/a".to_string()
    } else {
        format!("{value}")
    }
}

/// An expected value as a CSV/report field: the number, or the literal `inf`.
pub fn expectation(value: Expectation) -> String {
    match value {
        Expectation::Finite(v) => number(v),
        Expectation::Infinite => "inf".to_string(),
    }
}

/// Seconds broken into hours/minutes/seconds for human reports.
pub fn human_duration(seconds: f64) -> String {
    if seconds.is_nan() {
        return "n/a".to_string();
    }
    if !seconds.is_finite() {
        return "inf".to_string();
    }
    if seconds < 60.0 {
        return format!("{seconds:.2}s");
    }
    let whole = seconds.floor();
    let hours = (whole / 3600.0).floor();
    let minutes = ((whole - hours * 3600.0) / 60.0).floor();
    let secs = seconds - hours * 3600.0 - minutes * 60.0;
    if hours > 0.0 {
        format!("{hours:.0}h {minutes:.0}m {secs:.1}s")
    } else {
        format!("{minutes:.0}m {secs:.1}s")
    }
}
