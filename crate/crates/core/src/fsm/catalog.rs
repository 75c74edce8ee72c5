use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::{Error, Result};

/// Stable identifiers for everything the box display can show.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MessageId {
    MsgIdle,
    MsgPlus,
    MsgSelectedH,
    MsgSelectedS,
    MsgOutcomeDead,
    MsgOutcomeAlive,
    MsgOutcomePlus,
    MsgOutcomeMinus,
    MsgStateDead,
    MsgStateAlive,
    MsgStatePlus,
    MsgStateMinus,
    MsgStateSuperposition,
    MsgLidOpen,
    RejectLidOpen,
    RejectNoCat,
    RejectNoSelection,
}

impl MessageId {
    pub const ALL: [MessageId; 17] = [
        MessageId::MsgIdle,
        MessageId::MsgPlus,
        MessageId::MsgSelectedH,
        MessageId::MsgSelectedS,
        MessageId::MsgOutcomeDead,
        MessageId::MsgOutcomeAlive,
        MessageId::MsgOutcomePlus,
        MessageId::MsgOutcomeMinus,
        MessageId::MsgStateDead,
        MessageId::MsgStateAlive,
        MessageId::MsgStatePlus,
        MessageId::MsgStateMinus,
        MessageId::MsgStateSuperposition,
        MessageId::MsgLidOpen,
        MessageId::RejectLidOpen,
        MessageId::RejectNoCat,
        MessageId::RejectNoSelection,
    ];

    pub fn key(self) -> &'static str {
        match self {
            MessageId::MsgIdle => "MSG_IDLE",
            MessageId::MsgPlus => "MSG_PLUS",
            MessageId::MsgSelectedH => "MSG_SELECTED_H",
            MessageId::MsgSelectedS => "MSG_SELECTED_S",
            MessageId::MsgOutcomeDead => "MSG_OUTCOME_DEAD",
            MessageId::MsgOutcomeAlive => "MSG_OUTCOME_ALIVE",
            MessageId::MsgOutcomePlus => "MSG_OUTCOME_PLUS",
            MessageId::MsgOutcomeMinus => "MSG_OUTCOME_MINUS",
            MessageId::MsgStateDead => "MSG_STATE_DEAD",
            MessageId::MsgStateAlive => "MSG_STATE_ALIVE",
            MessageId::MsgStatePlus => "MSG_STATE_PLUS",
            MessageId::MsgStateMinus => "MSG_STATE_MINUS",
            MessageId::MsgStateSuperposition => "MSG_STATE_SUPERPOSITION",
            MessageId::MsgLidOpen => "MSG_LID_OPEN",
            MessageId::RejectLidOpen => "REJECT_LID_OPEN",
            MessageId::RejectNoCat => "REJECT_NO_CAT",
            MessageId::RejectNoSelection => "REJECT_NO_SELECTION",
        }
    }

    pub fn is_rejection(self) -> bool {
        matches!(
            self,
            MessageId::RejectLidOpen | MessageId::RejectNoCat | MessageId::RejectNoSelection
        )
    }

    fn default_text(self) -> &'static str {
        match self {
            MessageId::MsgIdle => "Ready. Press PREPARE to start.",
            MessageId::MsgPlus => "Cat prepared in the PLUS state",
            MessageId::MsgSelectedH => "Measuring: DEAD/ALIVE",
            MessageId::MsgSelectedS => "Measuring: PLUS/MINUS",
            MessageId::MsgOutcomeDead => "Outcome: DEAD",
            MessageId::MsgOutcomeAlive => "Outcome: ALIVE",
            MessageId::MsgOutcomePlus => "Outcome: +1",
            MessageId::MsgOutcomeMinus => "Outcome: -1",
            MessageId::MsgStateDead => "State: |dead>",
            MessageId::MsgStateAlive => "State: |alive>",
            MessageId::MsgStatePlus => "State: |+> = (|dead>+|alive>)/sqrt2",
            MessageId::MsgStateMinus => "State: |-> = (|dead>-|alive>)/sqrt2",
            MessageId::MsgStateSuperposition => "State: superposition",
            MessageId::MsgLidOpen => "Lid open",
            MessageId::RejectLidOpen => "Close the lid first",
            MessageId::RejectNoCat => "No cat: press PREPARE first",
            MessageId::RejectNoSelection => "Select a property to measure",
        }
    }
}

impl fmt::Display for MessageId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for MessageId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        MessageId::ALL
            .into_iter()
            .find(|id| id.key() == s)
            .ok_or_else(|| Error::Parse(format!("unknown message id {s:?}")))
    }
}

/// Display texts keyed by [`MessageId`]. English defaults; a UTF-8
/// `KEY=text` file can override any subset.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Catalog {
    overrides: HashMap<MessageId, String>,
}

impl Catalog {
    pub fn text(&self, id: MessageId) -> &str {
        self.overrides
            .get(&id)
            .map(String::as_str)
            .unwrap_or_else(|| id.default_text())
    }

    /// Parses `KEY=text` lines. Blank lines and lines starting with `#` are
    /// skipped; unknown keys are errors.
    pub fn parse(source: &str) -> Result<Self> {
        let mut overrides = HashMap::new();
        for (lineno, line) in source.lines().enumerate() {
            let line = line.trim_start_matches('\u{feff}').trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, text) = line.split_once('=').ok_or_else(|| {
                Error::Parse(format!("catalog line {}: expected KEY=text", lineno + 1))
            })?;
            let id: MessageId = key
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("catalog line {}: {e}", lineno + 1)))?;
            overrides.insert(id, text.trim().to_string());
        }
        Ok(Catalog { overrides })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let source = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read catalog {}: {e}", path.display())))?;
        Catalog::parse(&source)
    }

    /// Every key with its current text, in a stable order.
    pub fn to_file_string(&self) -> String {
        MessageId::ALL
            .iter()
            .map(|id| format!("{}={}\n", id.key(), self.text(*id)))
            .collect()
    }
}
