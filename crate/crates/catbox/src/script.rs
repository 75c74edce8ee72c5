//! Event scripts: one event per line (`prepare`, `select h|s`, `measure`,
//! `lid open|close`, `quit`). Blank lines and `#` comments are skipped.

use catbox_core::fsm::Event;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: unrecognized event {text:?}")]
pub struct ScriptError {
    pub line: usize,
    pub text: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Event(Event),
    Quit,
}

/// `None` for blank and comment lines.
pub fn parse_line(line: &str) -> Option<Result<Command, String>> {
    let t = line.trim();
    if t.is_empty() || t.starts_with('#') {
        return None;
    }
    if t.eq_ignore_ascii_case("quit") || t.eq_ignore_ascii_case("exit") {
        return Some(Ok(Command::Quit));
    }
    Some(t.parse::<Event>().map(Command::Event).map_err(|_| t.to_string()))
}

/// Events up to the first `quit`. Fails on the first unparseable line,
/// even past a `quit`.
pub fn parse_script(source: &str) -> Result<Vec<Event>, ScriptError> {
    let mut events = Vec::new();
    let mut quit = false;
    for (i, line) in source.lines().enumerate() {
        match parse_line(line) {
            None => {}
            Some(Err(text)) => return Err(ScriptError { line: i + 1, text }),
            Some(Ok(Command::Quit)) => quit = true,
            Some(Ok(Command::Event(e))) if !quit => events.push(e),
            Some(Ok(Command::Event(_))) => {}
        }
    }
    Ok(events)
}

#[cfg(test)]
mod tests {
    use super::*;
    use catbox_core::fsm::ObservableId;

    #[test]
    fn parses_script_with_comments() {
        let events = parse_script("# demo\nprepare\n\nselect s\nmeasure\nquit\nlid open\n").unwrap();
        assert_eq!(
            events,
            vec![Event::PressPrepare, Event::Select(ObservableId::S), Event::PressMeasure]
        );
    }

    #[test]
    fn reports_line_number() {
        let err = parse_script("prepare\nselct s\n").unwrap_err();
        assert_eq!(err, ScriptError { line: 2, text: "selct s".into() });
    }
}
