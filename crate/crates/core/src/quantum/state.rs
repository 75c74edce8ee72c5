use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ALGEBRAIC_TOL;
use crate::{Error, Result};

/// Normalized amplitudes `(⟨dead|ψ⟩, ⟨alive|ψ⟩)`. Global phase is kept as
/// given; compare states through the trace distance of their projectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PureState {
    #[serde(with = "crate::complex")]
    amp_dead: Complex64,
    #[serde(with = "crate::complex")]
    amp_alive: Complex64,
}

impl PureState {
    pub const DEAD: PureState = PureState {
        amp_dead: Complex64::new(1.0, 0.0),
        amp_alive: Complex64::new(0.0, 0.0),
    };
    pub const ALIVE: PureState = PureState {
        amp_dead: Complex64::new(0.0, 0.0),
        amp_alive: Complex64::new(1.0, 0.0),
    };

    pub fn amp_dead(&self) -> Complex64 {
        self.amp_dead
    }

    pub fn amp_alive(&self) -> Complex64 {
        self.amp_alive
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        [self.amp_dead, self.amp_alive]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp_dead.norm_sqr() + self.amp_alive.norm_sqr()
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amp_dead.conj() * other.amp_dead + self.amp_alive.conj() * other.amp_alive
    }

    /// Real amplitudes that are already normalized by construction.
    pub(crate) fn from_real_unit(dead: f64, alive: f64) -> Self {
        PureState {
            amp_dead: Complex64::new(dead, 0.0),
            amp_alive: Complex64::new(alive, 0.0),
        }
    }
}

/// Normalizes `(amp_dead, amp_alive)` into a state vector.
pub fn pure_state(amp_dead: Complex64, amp_alive: Complex64) -> Result<PureState> {
    if ![amp_dead.re, amp_dead.im, amp_alive.re, amp_alive.im]
        .iter()
        .all(|x| x.is_finite())
    {
        return Err(Error::NonFinite { what: "amplitude" });
    }
    let norm_sqr = amp_dead.norm_sqr() + amp_alive.norm_sqr();
    if norm_sqr <= ALGEBRAIC_TOL {
        return Err(Error::ZeroVector { norm: norm_sqr.sqrt() });
    }
    let norm = norm_sqr.sqrt();
    Ok(PureState {
        amp_dead: amp_dead / norm,
        amp_alive: amp_alive / norm,
    })
}

/// `(|dead⟩ + e^{iφ}|alive⟩)/√2`; `phase = 0` is the box's "plus" cat.
pub fn prepare_cat(phase: f64) -> Result<PureState> {
    if !phase.is_finite() {
        return Err(Error::NonFinite { what: "phase" });
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Ok(PureState {
        amp_dead: Complex64::new(h, 0.0),
        amp_alive: Complex64::from_polar(h, phase),
    })
}
