//! Seeded statistical experiments built on the quantum core.
//!
//! Every experiment takes an explicit seed and threads one [`RngStream`]
//! through its trials in order, so `(spec, seed)` fixes the result bit for
//! bit.
//!
//! [`RngStream`]: crate::RngStream

mod angle;
mod bell;
mod spec;
mod trials;

pub use angle::parse_angle;
pub use bell::{
    chsh_sampled, chsh_value, correlation, joint_probabilities, lhv_chsh_max,
    lhv_strategy_values, singlet, BellReport, ChshSample, ChshSettings, ChshTerm,
    SampledReport, TwoQubitState,
};
pub use spec::{ObservableSpec, StatePrep};
pub use trials::{distinguish, run_trials, Decision, FrequencyTable, OutcomeCount, Verdict};
