//! Deterministic text rendering of floating-point values.
//!
//! Archives and records render with 17 significant digits, which is enough
//! for an exact `f64` round-trip, so re-emitting a parsed file reproduces it
//! byte for byte.

/// Full-precision rendering (17 significant digits, scientific notation).
pub fn format_full(value: f64) -> String {
    format!("{value:.16e}")
}

/// Table rendering used for human-readable outputs: 4 decimals plus a
/// two-digit-exponent standard deviation, e.g. `0.5757 (4.45e-03)`.
pub fn format_mean_std(mean: f64, std: f64) -> String {
    format!("{mean:.4} ({})", format_sci2(std))
}

/// Scientific notation with a two-digit exponent (`4.45e-03`).
pub fn format_sci2(value: f64) -> String {
    if value == 0.0 {
        return "0.00e+00".to_string();
    }
    let raw = format!("{value:.2e}");
    let (mantissa, exp) = raw.split_once('e').expect("scientific notation");
    let (sign, digits) = match exp.strip_prefix('-') {
        Some(rest) => ('-', rest),
        None => ('+', exp),
    };
    format!("{mantissa}e{sign}{digits:0>2}")
}

pub fn parse_f64(text: &str) -> Result<f64, String> {
    text.trim()
        .parse::<f64>()
        .map_err(|_| format!("cannot parse float {text:?}"))
}
