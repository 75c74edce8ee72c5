//! Exact two-level quantum mechanics in the `{dead, alive}` basis.
//!
//! Everything downstream of state construction works on [`DensityMatrix`],
//! so the superposition `(|dead⟩ + |alive⟩)/√2` and the ignorance mixture
//! `½(|dead⟩⟨dead| + |alive⟩⟨alive|)` go through the same measurement code.

mod density;
mod measure;
mod observable;
mod state;

pub use density::{dephase, density_of, mixed_dead_alive, trace_distance, DensityMatrix};
pub use measure::{born_probabilities, measure, Distribution, MeasurementRecord, OutcomeProbability};
pub use observable::{mutually_unbiased, observable_h, observable_rotated, observable_s, Observable};
pub use state::{prepare_cat, pure_state, PureState};

pub use num_complex::Complex64;

/// Tolerance for algebraic identities (normalization, hermiticity, trace).
pub const ALGEBRAIC_TOL: f64 = 1e-12;

/// Born probability at or above `1 - EIGENSTATE_TOL` counts as certainty.
pub const EIGENSTATE_TOL: f64 = 1e-9;

pub const LABEL_DEAD: &str = "dead";
pub const LABEL_ALIVE: &str = "alive";
pub const LABEL_PLUS: &str = "+1";
pub const LABEL_MINUS: &str = "-1";
