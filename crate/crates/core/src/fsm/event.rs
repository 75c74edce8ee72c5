use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Selector positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ObservableId {
    H,
    S,
}

/// Physical inputs on the box front. Serialized with the wire names used by
/// the HTTP API (`prepare`, `select_h`, `select_s`, `measure`, `lid_open`,
/// `lid_close`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Event {
    PressPrepare,
    Select(ObservableId),
    PressMeasure,
    LidOpen,
    LidClose,
}

impl Event {
    pub const ALL: [Event; 6] = [
        Event::PressPrepare,
        Event::Select(ObservableId::H),
        Event::Select(ObservableId::S),
        Event::PressMeasure,
        Event::LidOpen,
        Event::LidClose,
    ];

    pub fn wire_name(self) -> &'static str {
        match self {
            Event::PressPrepare => "prepare",
            Event::Select(ObservableId::H) => "select_h",
            Event::Select(ObservableId::S) => "select_s",
            Event::PressMeasure => "measure",
            Event::LidOpen => "lid_open",
            Event::LidClose => "lid_close",
        }
    }

    /// Script/interactive syntax: `prepare`, `select h|s`, `measure`,
    /// `lid open|close`. Wire names are accepted too.
    pub fn script_line(self) -> &'static str {
        match self {
            Event::PressPrepare => "prepare",
            Event::Select(ObservableId::H) => "select h",
            Event::Select(ObservableId::S) => "select s",
            Event::PressMeasure => "measure",
            Event::LidOpen => "lid open",
            Event::LidClose => "lid close",
        }
    }
}

impl FromStr for Event {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let words: Vec<String> = s
            .split_whitespace()
            .map(str::to_ascii_lowercase)
            .collect();
        let words: Vec<&str> = words.iter().map(String::as_str).collect();
        match words.as_slice() {
            ["prepare"] => Ok(Event::PressPrepare),
            ["select", "h"] | ["select_h"] => Ok(Event::Select(ObservableId::H)),
            ["select", "s"] | ["select_s"] => Ok(Event::Select(ObservableId::S)),
            ["measure"] => Ok(Event::PressMeasure),
            ["lid", "open"] | ["lid_open"] => Ok(Event::LidOpen),
            ["lid", "close"] | ["lid_close"] => Ok(Event::LidClose),
            _ => Err(Error::Parse(format!("unknown event {:?}", s.trim()))),
        }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.wire_name())
    }
}

impl TryFrom<String> for Event {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Event> for String {
    fn from(e: Event) -> String {
        e.wire_name().to_string()
    }
}
