use crate::{Error, Result};
use std::f64::consts::PI;

/// Parses an angle in radians. Accepts plain numbers (`0.785`) and
/// multiples of π (`pi`, `-pi/2`, `3pi/4`, `3*pi/4`, `0.5pi`).
pub fn parse_angle(text: &str) -> Result<f64> {
    let t = text.trim().to_ascii_lowercase().replace('π', "pi");
    let bad = || Error::Parse(format!("invalid angle {text:?}"));
    let value = match t.split_once("pi") {
        None => t.parse::<f64>().map_err(|_| bad())?,
        Some((coef, rest)) => {
            let coef = coef.trim().trim_end_matches('*').trim();
            let coef = match coef {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c.parse::<f64>().map_err(|_| bad())?,
            };
            let rest = rest.trim();
            let denom = if rest.is_empty() {
                1.0
            } else {
                rest.strip_prefix('/')
                    .ok_or_else(bad)?
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| bad())?
            };
            if denom == 0.0 {
                return Err(bad());
            }
            coef * PI / denom
        }
    };
    if !value.is_finite() {
        return Err(Error::NonFinite { what: "angle" });
    }
    Ok(value)
}
