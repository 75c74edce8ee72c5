//! Prints the transcript of `prepare, select s, measure, lid open` for a seed.
//! Usage: cargo run -p catbox-core --example golden_transcript -- 42

use catbox_core::fsm::{BoxState, Event, ObservableId};

fn main() {
    let seed = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("seed must be a u64"))
        .unwrap_or(42);
    let b = BoxState::replay(
        seed,
        [
            Event::PressPrepare,
            Event::Select(ObservableId::S),
            Event::PressMeasure,
            Event::LidOpen,
        ],
    );
    print!("{}", b.transcript_jsonl());
}
