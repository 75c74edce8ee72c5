#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{PureState, ALGEBRAIC_TOL};
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// 2×2 Hermitian, unit-trace, positive semidefinite operator over
/// `{dead, alive}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    entries: [[Complex64; 2]; 2],
}

impl DensityMatrix {
    /// Validating constructor.
    pub fn new(entries: [[Complex64; 2]; 2]) -> Result<Self> {
        let rho = DensityMatrix { entries };
        rho.validate(ALGEBRAIC_TOL)?;
        Ok(rho)
    }

    pub(crate) fn from_entries_unchecked(entries: [[Complex64; 2]; 2]) -> Self {
        DensityMatrix { entries }
    }

    /// Real diagonal/off-diagonal form `[[a, b], [b*, d]]`.
    fn from_parts(a: f64, b: Complex64, d: f64) -> Self {
        DensityMatrix {
            entries: [
                [Complex64::new(a, 0.0), b],
                [b.conj(), Complex64::new(d, 0.0)],
            ],
        }
    }

    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    /// Eigenvalues in ascending order, from the closed form for a 2×2
    /// Hermitian matrix (uses the Hermitian part of the entries).
    pub fn eigenvalues(&self) -> [f64; 2] {
        hermitian_eigenvalues(&self.entries)
    }

    /// `⟨ψ|ρ|ψ⟩`, i.e. `Tr(ρ |ψ⟩⟨ψ|)`.
    pub fn expectation_of_projector(&self, psi: &PureState) -> f64 {
        let v = psi.amplitudes();
        let mut acc = ZERO;
        for i in 0..2 {
            for j in 0..2 {
                acc += v[i].conj() * self.entries[i][j] * v[j];
            }
        }
        acc.re
    }

    /// Purity `Tr(ρ²)`; 1 for pure states, ½ for the maximally mixed state.
    pub fn purity(&self) -> f64 {
        let sq = mat_mul(&self.entries, &self.entries);
        (sq[0][0] + sq[1][1]).re
    }

    pub fn squared(&self) -> DensityMatrix {
        DensityMatrix::from_entries_unchecked(mat_mul(&self.entries, &self.entries))
    }

    /// Convex combination `w·self + (1-w)·other`.
    pub fn mix(&self, other: &DensityMatrix, weight: f64) -> Result<DensityMatrix> {
        if !(0.0..=1.0).contains(&weight) {
            return Err(Error::Domain(format!("mixing weight {weight} outside [0, 1]")));
        }
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.entries[i][j] * weight + other.entries[i][j] * (1.0 - weight);
            }
        }
        Ok(DensityMatrix::from_entries_unchecked(out))
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.entries[i][j] - other.entries[i][j]).norm());
            }
        }
        worst
    }

    pub fn approx_eq(&self, other: &DensityMatrix, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// Checks hermiticity, unit trace and eigenvalues `≥ -tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let e = &self.entries;
        if e.iter().flatten().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite { what: "density matrix entry" });
        }
        for i in 0..2 {
            for j in 0..2 {
                let skew = (e[i][j] - e[j][i].conj()).norm();
                if skew > tol {
                    return Err(Error::InvalidDensity(format!(
                        "not Hermitian at ({i},{j}): deviation {skew:e}"
                    )));
                }
            }
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidDensity(format!("trace {tr} != 1")));
        }
        let [low, _] = self.eigenvalues();
        if low < -tol {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {low:e}")));
        }
        Ok(())
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::complex::matrix::serialize(&self.entries, s)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = crate::complex::matrix::deserialize::<D, 2>(d)?;
        // Serialized matrices went through arithmetic, so accept the
        // decision tolerance rather than the algebraic one.
        let rho = DensityMatrix { entries };
        rho.validate(super::EIGENSTATE_TOL)
            .map_err(serde::de::Error::custom)?;
        Ok(rho)
    }
}

fn mat_mul(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn hermitian_eigenvalues(m: &[[Complex64; 2]; 2]) -> [f64; 2] {
    let a = m[0][0].re;
    let d = m[1][1].re;
    let b = (m[0][1] + m[1][0].conj()) * 0.5;
    let mean = 0.5 * (a + d);
    let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    [mean - radius, mean + radius]
}

/// Rank-one projector `|ψ⟩⟨ψ|`.
pub fn density_of(state: &PureState) -> DensityMatrix {
    let v = state.amplitudes();
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = v[i] * v[j].conj();
        }
    }
    // Exact hermiticity on the diagonal.
    out[0][0].im = 0.0;
    out[1][1].im = 0.0;
    DensityMatrix::from_entries_unchecked(out)
}

/// `½(|dead⟩⟨dead| + |alive⟩⟨alive|)`: the cat is dead or alive, we just
/// don't know which.
pub fn mixed_dead_alive() -> DensityMatrix {
    DensityMatrix::from_parts(0.5, ZERO, 0.5)
}

/// Phase damping in the dead/alive basis: populations are kept, coherences
/// are scaled by `1 - strength`.
pub fn dephase(state: &DensityMatrix, strength: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&strength) {
        return Err(Error::Domain(format!(
            "dephasing strength {strength} outside [0, 1]"
        )));
    }
    let mut out = state.entries;
    let keep = 1.0 - strength;
    out[0][1] *= keep;
    out[1][0] *= keep;
    Ok(DensityMatrix::from_entries_unchecked(out))
}

/// `½ Σ |λ_i(a - b)|`, in `[0, 1]`.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    let mut diff = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            diff[i][j] = a.entries[i][j] - b.entries[i][j];
        }
    }
    let [l0, l1] = hermitian_eigenvalues(&diff);
    (0.5 * (l0.abs() + l1.abs())).min(1.0)
}
