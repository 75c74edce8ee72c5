//! Deterministic simulation of the Schrödinger-cat box.
//!
//! * [`quantum`]: exact two-level states, the dead/alive and plus/minus
//!   observables, Born probabilities, projective measurement with collapse,
//!   dephasing and trace distance.
//! * [`experiments`]: seeded trial ensembles, the pure-versus-mixed
//!   distinguisher and the CHSH harness.
//! * [`fsm`]: the interactive box (prepare button, selector, LEDs, measure
//!   button, lid sensor) as a pure state machine with an append-only log.
//!
//! All randomness flows through an explicit [`RngStream`] value.

pub mod complex;
pub mod error;
pub mod experiments;
pub mod fsm;
pub mod quantum;
pub mod rng;

pub use error::{Error, Result};
pub use rng::RngStream;
