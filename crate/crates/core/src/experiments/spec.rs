use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use super::parse_angle;
use crate::quantum::{
    density_of, dephase, mixed_dead_alive, observable_h, observable_rotated, observable_s,
    prepare_cat, DensityMatrix, Observable,
};
use crate::{Error, Result};

/// How each trial prepares the cat.
///
/// Text form: `pure`, `pure:<phase>`, `mixed`, `dephased:<strength>`.
/// Dephasing acts on the phase-0 cat.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum StatePrep {
    Pure { phase: f64 },
    Mixed,
    Dephased { strength: f64 },
}

impl StatePrep {
    pub fn density(&self) -> Result<DensityMatrix> {
        match *self {
            StatePrep::Pure { phase } => Ok(density_of(&prepare_cat(phase)?)),
            StatePrep::Mixed => Ok(mixed_dead_alive()),
            StatePrep::Dephased { strength } => {
                dephase(&density_of(&prepare_cat(0.0)?), strength)
            }
        }
    }
}

impl FromStr for StatePrep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let (kind, arg) = match t.split_once(':') {
            Some((k, a)) => (k.trim(), Some(a.trim())),
            None => (t.as_str(), None),
        };
        match (kind, arg) {
            ("pure", None) => Ok(StatePrep::Pure { phase: 0.0 }),
            ("pure", Some(a)) => Ok(StatePrep::Pure { phase: parse_angle(a)? }),
            ("mixed", None) => Ok(StatePrep::Mixed),
            ("dephased", Some(a)) => {
                let strength: f64 = a
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid dephasing strength {a:?}")))?;
                if !(0.0..=1.0).contains(&strength) {
                    return Err(Error::Domain(format!(
                        "dephasing strength {strength} outside [0, 1]"
                    )));
                }
                Ok(StatePrep::Dephased { strength })
            }
            _ => Err(Error::Parse(format!(
                "unknown state prep {s:?} (expected pure[:phase], mixed, dephased:<strength>)"
            ))),
        }
    }
}

impl fmt::Display for StatePrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatePrep::Pure { phase } => write!(f, "pure:{phase}"),
            StatePrep::Mixed => f.write_str("mixed"),
            StatePrep::Dephased { strength } => write!(f, "dephased:{strength}"),
        }
    }
}

impl TryFrom<String> for StatePrep {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<StatePrep> for String {
    fn from(p: StatePrep) -> String {
        p.to_string()
    }
}

/// Which observable each trial measures. Text form: `h`, `s`, `rotated:<θ>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ObservableSpec {
    H,
    S,
    Rotated { theta: f64 },
}

impl ObservableSpec {
    pub fn observable(&self) -> Result<Observable> {
        match *self {
            ObservableSpec::H => Ok(observable_h()),
            ObservableSpec::S => Ok(observable_s()),
            ObservableSpec::Rotated { theta } => observable_rotated(theta),
        }
    }
}

impl FromStr for ObservableSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.split_once(':') {
            None if t == "h" => Ok(ObservableSpec::H),
            None if t == "s" => Ok(ObservableSpec::S),
            Some(("rotated", a)) => Ok(ObservableSpec::Rotated {
                theta: parse_angle(a)?,
            }),
            _ => Err(Error::Parse(format!(
                "unknown observable {s:?} (expected h, s, rotated:<angle>)"
            ))),
        }
    }
}

impl fmt::Display for ObservableSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObservableSpec::H => f.write_str("h"),
            ObservableSpec::S => f.write_str("s"),
            ObservableSpec::Rotated { theta } => write!(f, "rotated:{theta}"),
        }
    }
}

impl TryFrom<String> for ObservableSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ObservableSpec> for String {
    fn from(o: ObservableSpec) -> String {
        o.to_string()
    }
}
