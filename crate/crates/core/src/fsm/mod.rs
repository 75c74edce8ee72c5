//! The cat box as a deterministic state machine.
//!
//! A [`BoxState`] is a plain value; [`BoxState::step`] consumes it with one
//! [`Event`] and returns the successor. Every event, accepted or not,
//! appends at least one [`LogEntry`]; rejected events only touch the log
//! and the display.

mod catalog;
mod event;
mod panel;

pub use catalog::{Catalog, MessageId};
pub use event::{Event, ObservableId};
pub use panel::{ButtonFlags, PanelView};

use serde::{Deserialize, Serialize};

use crate::quantum::{
    born_probabilities, density_of, measure, observable_h, observable_s, prepare_cat,
    DensityMatrix, MeasurementRecord, Observable, EIGENSTATE_TOL, LABEL_ALIVE, LABEL_DEAD,
    LABEL_MINUS, LABEL_PLUS,
};
use crate::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Led {
    Off,
    White,
    Green,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lid {
    Closed,
    Open,
}

impl ObservableId {
    pub fn observable(self) -> Observable {
        match self {
            ObservableId::H => observable_h(),
            ObservableId::S => observable_s(),
        }
    }

    pub fn led(self) -> Led {
        match self {
            ObservableId::H => Led::White,
            ObservableId::S => Led::Green,
        }
    }

    fn selected_message(self) -> MessageId {
        match self {
            ObservableId::H => MessageId::MsgSelectedH,
            ObservableId::S => MessageId::MsgSelectedS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EntryResult {
    Ok,
    Rejected { reason: MessageId },
    /// Opening the lid switched the selector to dead/alive.
    ForcedSelection { observable: ObservableId },
    Measurement { record: MeasurementRecord },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogEntry {
    pub seq: u64,
    pub event: Event,
    pub result: EntryResult,
    /// Display lines after this entry, as message ids.
    pub display_after: Vec<MessageId>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoxState {
    seed: u64,
    cat: Option<DensityMatrix>,
    selected: Option<ObservableId>,
    led: Led,
    lid: Lid,
    display: Vec<MessageId>,
    rng: RngStream,
    log: Vec<LogEntry>,
}

impl BoxState {
    /// Power-on: no cat, no selection, LED off, lid closed, idle display.
    pub fn new(seed: u64) -> Self {
        BoxState {
            seed,
            cat: None,
            selected: None,
            led: Led::Off,
            lid: Lid::Closed,
            display: vec![MessageId::MsgIdle],
            rng: RngStream::from_seed(seed),
            log: Vec::new(),
        }
    }

    /// Fresh box driven through `events`.
    pub fn replay(seed: u64, events: impl IntoIterator<Item = Event>) -> Self {
        events.into_iter().fold(BoxState::new(seed), BoxState::step)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn cat(&self) -> Option<&DensityMatrix> {
        self.cat.as_ref()
    }

    pub fn selected(&self) -> Option<ObservableId> {
        self.selected
    }

    pub fn led(&self) -> Led {
        self.led
    }

    pub fn lid(&self) -> Lid {
        self.lid
    }

    pub fn display(&self) -> &[MessageId] {
        &self.display
    }

    pub fn rng(&self) -> RngStream {
        self.rng
    }

    /// Full log since power-on.
    pub fn transcript(&self) -> &[LogEntry] {
        &self.log
    }

    /// One JSON object per log entry, newline-terminated.
    pub fn transcript_jsonl(&self) -> String {
        transcript_jsonl(&self.log)
    }

    pub fn render(&self, catalog: &Catalog) -> PanelView {
        PanelView::of(self, catalog)
    }

    #[must_use]
    pub fn step(mut self, event: Event) -> BoxState {
        self.apply(event);
        self
    }

    /// In-place form of [`BoxState::step`]; returns the number of log
    /// entries appended.
    pub fn apply(&mut self, event: Event) -> usize {
        let before = self.log.len();
        match event {
            Event::PressPrepare => {
                if self.lid == Lid::Open {
                    self.reject(event, MessageId::RejectLidOpen);
                } else {
                    let cat = prepare_cat(0.0).expect("phase 0 is finite");
                    self.cat = Some(density_of(&cat));
                    self.display = vec![MessageId::MsgPlus];
                    self.push(event, EntryResult::Ok);
                }
            }
            Event::Select(id) => {
                if self.lid == Lid::Open {
                    self.reject(event, MessageId::RejectLidOpen);
                } else {
                    self.select(id);
                    self.display = vec![id.selected_message()];
                    self.push(event, EntryResult::Ok);
                }
            }
            Event::PressMeasure => match (self.cat, self.selected) {
                (None, _) => self.reject(event, MessageId::RejectNoCat),
                (_, None) => self.reject(event, MessageId::RejectNoSelection),
                (Some(cat), Some(id)) => self.measure(event, &cat, id),
            },
            Event::LidOpen => {
                self.lid = Lid::Open;
                match self.cat {
                    Some(cat) => {
                        self.select(ObservableId::H);
                        self.display = vec![MessageId::MsgLidOpen, MessageId::MsgSelectedH];
                        self.push(
                            event,
                            EntryResult::ForcedSelection {
                                observable: ObservableId::H,
                            },
                        );
                        self.measure(event, &cat, ObservableId::H);
                    }
                    None => {
                        self.display = vec![MessageId::MsgLidOpen];
                        self.push(event, EntryResult::Ok);
                    }
                }
            }
            Event::LidClose => {
                self.lid = Lid::Closed;
                self.display = match &self.cat {
                    None => vec![MessageId::MsgIdle],
                    Some(cat) => vec![describe(cat)],
                };
                self.push(event, EntryResult::Ok);
            }
        }
        self.log.len() - before
    }

    fn select(&mut self, id: ObservableId) {
        self.selected = Some(id);
        self.led = id.led();
    }

    fn measure(&mut self, event: Event, cat: &DensityMatrix, id: ObservableId) {
        let (record, rng) = measure(cat, &id.observable(), self.rng);
        self.rng = rng;
        self.cat = Some(record.post_state);
        self.display = vec![outcome_message(&record.outcome_label), describe(&record.post_state)];
        self.push(event, EntryResult::Measurement { record });
    }

    fn reject(&mut self, event: Event, reason: MessageId) {
        self.display = vec![reason];
        self.push(event, EntryResult::Rejected { reason });
    }

    fn push(&mut self, event: Event, result: EntryResult) {
        self.log.push(LogEntry {
            seq: self.log.len() as u64,
            event,
            result,
            display_after: self.display.clone(),
        });
    }
}

pub fn transcript_jsonl(entries: &[LogEntry]) -> String {
    let mut out = String::new();
    for entry in entries {
        out.push_str(&serde_json::to_string(entry).expect("log entries serialize"));
        out.push('\n');
    }
    out
}

fn outcome_message(label: &str) -> MessageId {
    match label {
        LABEL_DEAD => MessageId::MsgOutcomeDead,
        LABEL_ALIVE => MessageId::MsgOutcomeAlive,
        LABEL_PLUS => MessageId::MsgOutcomePlus,
        LABEL_MINUS => MessageId::MsgOutcomeMinus,
        other => unreachable!("box observables have no outcome {other:?}"),
    }
}

/// Which eigenstate of Ĥ or Ŝ the cat is in, if any.
fn describe(cat: &DensityMatrix) -> MessageId {
    let certain = |obs: &Observable, label: &str| {
        born_probabilities(cat, obs)
            .probability(label)
            .is_some_and(|p| p >= 1.0 - EIGENSTATE_TOL)
    };
    let (h, s) = (observable_h(), observable_s());
    if certain(&h, LABEL_DEAD) {
        MessageId::MsgStateDead
    } else if certain(&h, LABEL_ALIVE) {
        MessageId::MsgStateAlive
    } else if certain(&s, LABEL_PLUS) {
        MessageId::MsgStatePlus
    } else if certain(&s, LABEL_MINUS) {
        MessageId::MsgStateMinus
    } else {
        MessageId::MsgStateSuperposition
    }
}
