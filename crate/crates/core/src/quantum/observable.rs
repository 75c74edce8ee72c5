use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_1_SQRT_2;

use super::{PureState, ALGEBRAIC_TOL, LABEL_ALIVE, LABEL_DEAD, LABEL_MINUS, LABEL_PLUS};
use crate::{Error, Result};

/// Two-outcome observable given by an orthonormal eigenbasis and its
/// outcome labels. Index 0 is the first outcome in canonical order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Observable {
    name: String,
    eigenstates: [PureState; 2],
    labels: [String; 2],
}

impl Observable {
    pub fn new(
        name: impl Into<String>,
        eigenstates: [PureState; 2],
        labels: [String; 2],
    ) -> Result<Self> {
        let [e0, e1] = &eigenstates;
        for e in [e0, e1] {
            if (e.norm_sqr() - 1.0).abs() > ALGEBRAIC_TOL {
                return Err(Error::InvalidObservable(format!(
                    "eigenstate norm² {} != 1",
                    e.norm_sqr()
                )));
            }
        }
        let overlap = e0.inner(e1).norm();
        if overlap > ALGEBRAIC_TOL {
            return Err(Error::InvalidObservable(format!(
                "eigenstates not orthogonal: |<e0|e1>| = {overlap:e}"
            )));
        }
        if labels[0] == labels[1] {
            return Err(Error::InvalidObservable(format!(
                "duplicate outcome label {:?}",
                labels[0]
            )));
        }
        Ok(Observable {
            name: name.into(),
            eigenstates,
            labels,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eigenstates(&self) -> &[PureState; 2] {
        &self.eigenstates
    }

    pub fn eigenstate(&self, k: usize) -> &PureState {
        &self.eigenstates[k]
    }

    pub fn labels(&self) -> &[String; 2] {
        &self.labels
    }

    pub fn label(&self, k: usize) -> &str {
        &self.labels[k]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Ĥ, "dead or alive": eigenstates `|dead⟩`, `|alive⟩`.
pub fn observable_h() -> Observable {
    Observable {
        name: "H".into(),
        eigenstates: [PureState::DEAD, PureState::ALIVE],
        labels: [LABEL_DEAD.into(), LABEL_ALIVE.into()],
    }
}

/// Ŝ, "plus or minus": eigenstates `(|dead⟩ ± |alive⟩)/√2` with outcomes ±1.
pub fn observable_s() -> Observable {
    Observable {
        name: "S".into(),
        eigenstates: [
            PureState::from_real_unit(FRAC_1_SQRT_2, FRAC_1_SQRT_2),
            PureState::from_real_unit(FRAC_1_SQRT_2, -FRAC_1_SQRT_2),
        ],
        labels: [LABEL_PLUS.into(), LABEL_MINUS.into()],
    }
}

/// Spin-½ style observable at polar angle `theta` in the real plane:
/// `+1` ↔ `cos(θ/2)|dead⟩ + sin(θ/2)|alive⟩`,
/// `-1` ↔ `-sin(θ/2)|dead⟩ + cos(θ/2)|alive⟩`.
/// `θ = 0` gives Ĥ's basis, `θ = π/2` gives Ŝ's.
pub fn observable_rotated(theta: f64) -> Result<Observable> {
    if !theta.is_finite() {
        return Err(Error::NonFinite { what: "rotation angle" });
    }
    let (s, c) = (0.5 * theta).sin_cos();
    Ok(Observable {
        name: format!("R({theta})"),
        eigenstates: [PureState::from_real_unit(c, s), PureState::from_real_unit(-s, c)],
        labels: [LABEL_PLUS.into(), LABEL_MINUS.into()],
    })
}

/// True iff every cross-overlap `|⟨a_i|b_j⟩|²` is within `tol` of ½.
pub fn mutually_unbiased(a: &Observable, b: &Observable, tol: f64) -> bool {
    a.eigenstates.iter().all(|ai| {
        b.eigenstates
            .iter()
            .all(|bj| (ai.inner(bj).norm_sqr() - 0.5).abs() <= tol)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

    fn assert_same_basis(a: &Observable, b: &Observable) {
        for k in 0..2 {
            assert_abs_diff_eq!(
                a.eigenstate(k).inner(b.eigenstate(k)).norm_sqr(),
                1.0,
                epsilon = ALGEBRAIC_TOL
            );
        }
    }

    #[test]
    fn canonical_observables() {
        let h = observable_h();
        assert_eq!(h.eigenstate(0).amplitudes(), [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        assert_eq!(h.labels(), &["dead".to_string(), "alive".to_string()]);

        let s = observable_s();
        assert_abs_diff_eq!(s.eigenstate(0).amp_dead().re, FRAC_1_SQRT_2);
        assert_abs_diff_eq!(s.eigenstate(0).amp_alive().re, FRAC_1_SQRT_2);
        assert_eq!(s.labels(), &["+1".to_string(), "-1".to_string()]);

        for hi in h.eigenstates() {
            for sj in s.eigenstates() {
                assert_abs_diff_eq!(hi.inner(sj).norm_sqr(), 0.5, epsilon = ALGEBRAIC_TOL);
            }
        }
    }

    #[test]
    fn rotation_reproduces_h_and_s() {
        assert_same_basis(&observable_rotated(0.0).unwrap(), &observable_h());
        assert_same_basis(&observable_rotated(FRAC_PI_2).unwrap(), &observable_s());
        assert!(observable_rotated(f64::NAN).is_err());
    }

    #[test]
    fn unbiasedness() {
        let h = observable_h();
        assert!(mutually_unbiased(&h, &observable_s(), 1e-9));
        assert!(!mutually_unbiased(&h, &h, 1e-9));
        // cos²(π/6) = 0.75
        let r = observable_rotated(FRAC_PI_3).unwrap();
        assert_abs_diff_eq!(h.eigenstate(0).inner(r.eigenstate(0)).norm_sqr(), 0.75, epsilon = 1e-12);
        assert!(!mutually_unbiased(&h, &r, 1e-9));
    }

    #[test]
    fn constructor_validates() {
        let bad = Observable::new(
            "X",
            [PureState::DEAD, PureState::DEAD],
            ["a".into(), "b".into()],
        );
        assert!(matches!(bad, Err(Error::InvalidObservable(_))));
        let dup = Observable::new(
            "X",
            [PureState::DEAD, PureState::ALIVE],
            ["a".into(), "a".into()],
        );
        assert!(dup.is_err());
        let ok = Observable::new(
            "X",
            [PureState::DEAD, PureState::ALIVE],
            ["a".into(), "b".into()],
        )
        .unwrap();
        assert_eq!(ok.index_of("b"), Some(1));
    }
}
