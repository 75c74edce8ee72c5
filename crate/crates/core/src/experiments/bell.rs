//! Two-qubit states, correlations and the CHSH expression.
//!
//! Joint basis order is `dd, da, ad, aa` (side A first), i.e. index
//! `2·i_A + i_B` with 0 = dead, 1 = alive.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

use crate::quantum::{observable_rotated, DensityMatrix, Observable, ALGEBRAIC_TOL};
use crate::{Error, Result, RngStream};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// 4×4 density matrix over `{dd, da, ad, aa}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TwoQubitState {
    #[serde(with = "crate::complex::matrix")]
    entries: [[Complex64; 4]; 4],
}

impl TwoQubitState {
    /// Projector onto the normalized pure state with the given amplitudes.
    pub fn from_amplitudes(amps: [Complex64; 4]) -> Result<Self> {
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite { what: "amplitude" });
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm_sqr <= ALGEBRAIC_TOL {
            return Err(Error::ZeroVector { norm: norm_sqr.sqrt() });
        }
        let norm = norm_sqr.sqrt();
        let v = amps.map(|a| a / norm);
        let mut entries = [[ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                entries[i][j] = v[i] * v[j].conj();
            }
        }
        Ok(TwoQubitState { entries })
    }

    /// `ρ_A ⊗ ρ_B`
    pub fn product(a: &DensityMatrix, b: &DensityMatrix) -> Self {
        let mut entries = [[ZERO; 4]; 4];
        for ia in 0..2 {
            for ja in 0..2 {
                for ib in 0..2 {
                    for jb in 0..2 {
                        entries[2 * ia + ib][2 * ja + jb] = a.entry(ia, ja) * b.entry(ib, jb);
                    }
                }
            }
        }
        TwoQubitState { entries }
    }

    pub fn entries(&self) -> &[[Complex64; 4]; 4] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.entries[i][i]).sum()
    }

    /// Reduced state of side A (`Tr_B`).
    pub fn reduced_a(&self) -> DensityMatrix {
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.entries[2 * i][2 * j] + self.entries[2 * i + 1][2 * j + 1];
            }
        }
        DensityMatrix::from_entries_unchecked(out)
    }

    /// Reduced state of side B (`Tr_A`).
    pub fn reduced_b(&self) -> DensityMatrix {
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.entries[i][j] + self.entries[2 + i][2 + j];
            }
        }
        DensityMatrix::from_entries_unchecked(out)
    }
}

/// `(|da⟩ − |ad⟩)/√2`
pub fn singlet() -> TwoQubitState {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    TwoQubitState::from_amplitudes([ZERO, h, -h, ZERO]).expect("singlet amplitudes are valid")
}

/// Joint outcome probabilities for observables `a` (side A) and `b`
/// (side B), in order `(0,0), (0,1), (1,0), (1,1)` of their canonical
/// outcome indices.
pub fn joint_probabilities(state: &TwoQubitState, a: &Observable, b: &Observable) -> [f64; 4] {
    let mut probs = [0.0; 4];
    for (ka, ea) in a.eigenstates().iter().enumerate() {
        for (kb, eb) in b.eigenstates().iter().enumerate() {
            let (va, vb) = (ea.amplitudes(), eb.amplitudes());
            let v: [Complex64; 4] = std::array::from_fn(|i| va[i / 2] * vb[i % 2]);
            let mut acc = ZERO;
            for i in 0..4 {
                for j in 0..4 {
                    acc += v[i].conj() * state.entries[i][j] * v[j];
                }
            }
            probs[2 * ka + kb] = acc.re.clamp(0.0, 1.0);
        }
    }
    let total: f64 = probs.iter().sum();
    if total > 0.0 {
        probs.iter_mut().for_each(|p| *p /= total);
    }
    probs
}

/// Product of ±1 outcome values for each joint index.
const PARITY: [f64; 4] = [1.0, -1.0, -1.0, 1.0];

/// `E = Tr(ρ·(A⊗B))` for the ±1-valued rotated observables at `theta_a`,
/// `theta_b`. For the singlet this is `−cos(θa − θb)`.
pub fn correlation(state: &TwoQubitState, theta_a: f64, theta_b: f64) -> Result<f64> {
    let probs = joint_probabilities(
        state,
        &observable_rotated(theta_a)?,
        &observable_rotated(theta_b)?,
    );
    Ok(probs.iter().zip(PARITY).map(|(p, s)| p * s).sum())
}

#[derive(Debug, Deserialize)]
struct RawSettings {
    a: f64,
    a_prime: f64,
    b: f64,
    b_prime: f64,
}

/// Measurement angles `a, a′` for side A and `b, b′` for side B.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSettings")]
pub struct ChshSettings {
    a: f64,
    a_prime: f64,
    b: f64,
    b_prime: f64,
}

impl ChshSettings {
    pub fn new(a: f64, a_prime: f64, b: f64, b_prime: f64) -> Result<Self> {
        if ![a, a_prime, b, b_prime].iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite { what: "CHSH angle" });
        }
        Ok(ChshSettings { a, a_prime, b, b_prime })
    }

    /// `(0, π/2, π/4, 3π/4)`, where the singlet reaches `|S| = 2√2`.
    pub fn tsirelson() -> Self {
        ChshSettings {
            a: 0.0,
            a_prime: FRAC_PI_2,
            b: FRAC_PI_4,
            b_prime: 3.0 * FRAC_PI_4,
        }
    }

    pub fn angles(&self) -> [f64; 4] {
        [self.a, self.a_prime, self.b, self.b_prime]
    }

    /// The four `(θa, θb, sign)` terms of `S = E(a,b) − E(a,b′) + E(a′,b) + E(a′,b′)`.
    pub fn terms(&self) -> [(f64, f64, f64); 4] {
        [
            (self.a, self.b, 1.0),
            (self.a, self.b_prime, -1.0),
            (self.a_prime, self.b, 1.0),
            (self.a_prime, self.b_prime, 1.0),
        ]
    }
}

impl TryFrom<RawSettings> for ChshSettings {
    type Error = Error;
    fn try_from(r: RawSettings) -> Result<Self> {
        ChshSettings::new(r.a, r.a_prime, r.b, r.b_prime)
    }
}

pub fn chsh_value(state: &TwoQubitState, settings: &ChshSettings) -> f64 {
    settings
        .terms()
        .iter()
        .map(|&(ta, tb, sign)| {
            sign * correlation(state, ta, tb).expect("settings angles are finite")
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChshTerm {
    pub theta_a: f64,
    pub theta_b: f64,
    pub sign: f64,
    /// Joint counts in order `(+,+), (+,−), (−,+), (−,−)`.
    pub counts: [u64; 4],
    pub correlation: f64,
}

impl ChshTerm {
    /// Empirical P(A = +1) under this setting pair.
    pub fn marginal_a_plus(&self) -> f64 {
        (self.counts[0] + self.counts[1]) as f64 / self.counts.iter().sum::<u64>() as f64
    }

    /// Empirical P(B = +1) under this setting pair.
    pub fn marginal_b_plus(&self) -> f64 {
        (self.counts[0] + self.counts[2]) as f64 / self.counts.iter().sum::<u64>() as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChshSample {
    pub estimate: f64,
    pub std_error: f64,
    pub n_per_setting: u64,
    pub terms: [ChshTerm; 4],
}

/// Monte Carlo CHSH on fresh singlets: `n_per_setting` joint measurements
/// per setting pair, one draw each against the cumulative joint Born
/// distribution. The standard error propagates `(1 − Ê²)/n` per term.
pub fn chsh_sampled(settings: &ChshSettings, n_per_setting: u64, seed: u64) -> Result<ChshSample> {
    if n_per_setting == 0 {
        return Err(Error::Domain("samples per setting must be at least 1".into()));
    }
    let state = singlet();
    let mut rng = RngStream::from_seed(seed);
    let mut estimate = 0.0;
    let mut variance = 0.0;
    let terms = settings.terms().map(|(theta_a, theta_b, sign)| {
        let probs = joint_probabilities(
            &state,
            &observable_rotated(theta_a).expect("finite angle"),
            &observable_rotated(theta_b).expect("finite angle"),
        );
        let mut cumulative = [0.0; 4];
        let mut acc = 0.0;
        for (c, p) in cumulative.iter_mut().zip(probs) {
            acc += p;
            *c = acc;
        }
        let mut counts = [0u64; 4];
        for _ in 0..n_per_setting {
            let u = rng.draw();
            let k = cumulative.iter().position(|&c| u < c).unwrap_or(3);
            counts[k] += 1;
        }
        let n = n_per_setting as f64;
        let e = counts
            .iter()
            .zip(PARITY)
            .map(|(&c, s)| c as f64 * s)
            .sum::<f64>()
            / n;
        estimate += sign * e;
        variance += (1.0 - e * e) / n;
        ChshTerm {
            theta_a,
            theta_b,
            sign,
            counts,
            correlation: e,
        }
    });
    Ok(ChshSample {
        estimate,
        std_error: variance.sqrt(),
        n_per_setting,
        terms,
    })
}

/// Values of the CHSH expression for all 16 deterministic local strategies
/// `(A(a), A(a′), B(b), B(b′)) ∈ {±1}⁴`, enumerated with bit 3..0 = those
/// four assignments (set bit = −1).
pub fn lhv_strategy_values() -> [i32; 16] {
    std::array::from_fn(|bits| {
        let v = |bit: usize| if bits >> bit & 1 == 1 { -1 } else { 1 };
        let (aa, aa_p, bb, bb_p) = (v(3), v(2), v(1), v(0));
        aa * bb - aa * bb_p + aa_p * bb + aa_p * bb_p
    })
}

/// Best `|S|` any local hidden-variable assignment can reach.
pub fn lhv_chsh_max() -> f64 {
    lhv_strategy_values()
        .iter()
        .map(|s| s.abs())
        .max()
        .unwrap_or(0) as f64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledReport {
    pub seed: u64,
    #[serde(flatten)]
    pub sample: ChshSample,
}

/// Everything the `bell` command reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BellReport {
    pub settings: ChshSettings,
    pub analytic: f64,
    pub lhv_bound: f64,
    pub tsirelson_bound: f64,
    pub violates_lhv: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampled: Option<SampledReport>,
}

impl BellReport {
    pub fn run(settings: ChshSettings, sampling: Option<(u64, u64)>) -> Result<Self> {
        let analytic = chsh_value(&singlet(), &settings);
        let lhv_bound = lhv_chsh_max();
        let sampled = match sampling {
            Some((n, seed)) => Some(SampledReport {
                seed,
                sample: chsh_sampled(&settings, n, seed)?,
            }),
            None => None,
        };
        Ok(BellReport {
            settings,
            analytic,
            lhv_bound,
            tsirelson_bound: 2.0 * std::f64::consts::SQRT_2,
            violates_lhv: analytic.abs() > lhv_bound + 1e-9,
            sampled,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{density_of, mixed_dead_alive, observable_h};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{PI, SQRT_2};

    #[test]
    fn singlet_basics() {
        let s = singlet();
        assert_abs_diff_eq!(s.trace().re, 1.0, epsilon = ALGEBRAIC_TOL);
        // Partial trace by hand: ½ identity on either side.
        assert!(s.reduced_a().approx_eq(&mixed_dead_alive(), ALGEBRAIC_TOL));
        assert!(s.reduced_b().approx_eq(&mixed_dead_alive(), ALGEBRAIC_TOL));
        let p = joint_probabilities(&s, &observable_h(), &observable_h());
        for (got, want) in p.iter().zip([0.0, 0.5, 0.5, 0.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = ALGEBRAIC_TOL);
        }
    }

    #[test]
    fn singlet_correlations() {
        let s = singlet();
        for theta in [0.0, 0.3, 1.0, PI, -2.0] {
            assert_abs_diff_eq!(correlation(&s, theta, theta).unwrap(), -1.0, epsilon = ALGEBRAIC_TOL);
        }
        assert_abs_diff_eq!(correlation(&s, 0.0, FRAC_PI_2).unwrap(), 0.0, epsilon = ALGEBRAIC_TOL);
        assert_abs_diff_eq!(
            correlation(&s, 0.0, FRAC_PI_4).unwrap(),
            -FRAC_1_SQRT_2,
            epsilon = ALGEBRAIC_TOL
        );
    }

    #[test]
    fn chsh_examples() {
        let s = singlet();
        assert_abs_diff_eq!(chsh_value(&s, &ChshSettings::tsirelson()), -2.0 * SQRT_2, epsilon = 1e-12);
        let zero = ChshSettings::new(0.0, 0.0, 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(chsh_value(&s, &zero), -2.0, epsilon = 1e-12);
        assert!(ChshSettings::new(0.0, f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn lhv_enumeration() {
        let values = lhv_strategy_values();
        assert!(values.iter().all(|v| *v == 2 || *v == -2));
        assert_eq!(values.iter().filter(|v| **v == 2).count(), 8);
        assert_eq!(lhv_chsh_max(), 2.0);
        assert!(lhv_chsh_max() < 2.0 * SQRT_2);
    }

    #[test]
    fn product_state_factorizes() {
        let a = density_of(&crate::quantum::prepare_cat(0.3).unwrap());
        let b = mixed_dead_alive();
        let prod = TwoQubitState::product(&a, &b);
        assert!(prod.reduced_a().approx_eq(&a, ALGEBRAIC_TOL));
        assert!(prod.reduced_b().approx_eq(&b, ALGEBRAIC_TOL));
    }

    #[test]
    fn single_sample_estimate_is_even_integer() {
        for seed in 0..50 {
            let s = chsh_sampled(&ChshSettings::tsirelson(), 1, seed).unwrap();
            assert!([-4.0, -2.0, 0.0, 2.0, 4.0].contains(&s.estimate), "{}", s.estimate);
        }
        assert!(chsh_sampled(&ChshSettings::tsirelson(), 0, 1).is_err());
    }

    #[test]
    fn sampled_is_deterministic() {
        let a = chsh_sampled(&ChshSettings::tsirelson(), 1000, 9).unwrap();
        let b = chsh_sampled(&ChshSettings::tsirelson(), 1000, 9).unwrap();
        assert_eq!(a.estimate.to_bits(), b.estimate.to_bits());
        assert_eq!(a, b);
    }

    #[test]
    fn report_json() {
        let r = BellReport::run(ChshSettings::tsirelson(), None).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["lhv_bound"], 2.0);
        assert!(json.get("sampled").is_none());
        assert_eq!(json["settings"]["a_prime"], FRAC_PI_2);
        assert!(r.violates_lhv);
    }
}
