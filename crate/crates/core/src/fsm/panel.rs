use serde::{Deserialize, Serialize};

use super::{BoxState, Catalog, Led, Lid, MessageId, ObservableId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ButtonFlags {
    pub prepare: bool,
    pub select: bool,
    pub measure: bool,
}

/// What the box front shows right now.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PanelView {
    pub display_ids: Vec<MessageId>,
    pub display: Vec<String>,
    pub led: Led,
    pub lid: Lid,
    pub cat_present: bool,
    pub selected: Option<ObservableId>,
    pub buttons: ButtonFlags,
}

impl PanelView {
    pub fn of(b: &BoxState, catalog: &Catalog) -> Self {
        let closed = b.lid() == Lid::Closed;
        PanelView {
            display_ids: b.display().to_vec(),
            display: b.display().iter().map(|id| catalog.text(*id).to_string()).collect(),
            led: b.led(),
            lid: b.lid(),
            cat_present: b.cat().is_some(),
            selected: b.selected(),
            buttons: ButtonFlags {
                prepare: closed,
                select: closed,
                measure: b.cat().is_some() && b.selected().is_some(),
            },
        }
    }

    /// LCD text, one line per display message.
    pub fn message(&self) -> String {
        self.display.join("\n")
    }

    /// Plain-text rendering for terminals.
    pub fn to_text(&self) -> String {
        let led = match self.led {
            Led::Off => "off",
            Led::White => "WHITE (dead/alive)",
            Led::Green => "GREEN (plus/minus)",
        };
        let lid = match self.lid {
            Lid::Closed => "closed",
            Lid::Open => "OPEN",
        };
        let flag = |on: bool| if on { "enabled" } else { "disabled" };
        let mut out = String::new();
        for line in &self.display {
            out.push_str("| ");
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&format!(
            "led: {led}  lid: {lid}  [prepare {}] [select {}] [measure {}]\n",
            flag(self.buttons.prepare),
            flag(self.buttons.select),
            flag(self.buttons.measure)
        ));
        out
    }
}
