//! SplitMix64 stream threaded explicitly through every random operation.

use serde::{Deserialize, Serialize};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const MIX_1: u64 = 0xBF58_476D_1CE4_E5B9;
const MIX_2: u64 = 0x94D0_49BB_1331_11EB;

/// Immutable generator state. Advancing returns a new value, so the same
/// state always yields the same draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RngStream {
    state: u64,
}

impl RngStream {
    pub const fn from_seed(seed: u64) -> Self {
        Self { state: seed }
    }

    pub const fn state(self) -> u64 {
        self.state
    }

    /// One SplitMix64 step. Returns `u` in `[0, 1)` built from the top 53
    /// bits, and the successor stream.
    #[must_use]
    pub fn next(self) -> (f64, RngStream) {
        let state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(MIX_1);
        z = (z ^ (z >> 27)).wrapping_mul(MIX_2);
        z ^= z >> 31;
        let u = (z >> 11) as f64 / (1u64 << 53) as f64;
        (u, RngStream { state })
    }

    /// In-place convenience over [`RngStream::next`].
    pub fn draw(&mut self) -> f64 {
        let (u, next) = self.next();
        *self = next;
        u
    }
}

/// Free-function form of [`RngStream::next`].
pub fn rng_next(rng: RngStream) -> (f64, RngStream) {
    rng.next()
}
