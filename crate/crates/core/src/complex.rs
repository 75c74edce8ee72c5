//! `{"re": x, "im": y}` encoding for complex numbers in every JSON surface.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
struct ReIm {
    re: f64,
    im: f64,
}

impl From<Complex64> for ReIm {
    fn from(c: Complex64) -> Self {
        // `x + 0.0` folds -0.0 into 0.0.
        ReIm {
            re: c.re + 0.0,
            im: c.im + 0.0,
        }
    }
}

pub fn serialize<S: Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    ReIm::from(*c).serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
    let ReIm { re, im } = ReIm::deserialize(d)?;
    Ok(Complex64::new(re, im))
}

/// Same encoding for a 2-vector of amplitudes.
pub mod vec2 {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Complex64; 2], s: S) -> Result<S::Ok, S::Error> {
        [ReIm::from(v[0]), ReIm::from(v[1])].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Complex64; 2], D::Error> {
        let [a, b] = <[ReIm; 2]>::deserialize(d)?;
        Ok([Complex64::new(a.re, a.im), Complex64::new(b.re, b.im)])
    }
}

/// Row-major square matrices of complex entries.
pub mod matrix {
    use super::*;

    pub fn serialize<S: Serializer, const N: usize>(
        m: &[[Complex64; N]; N],
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<ReIm>> = m
            .iter()
            .map(|row| row.iter().map(|&c| ReIm::from(c)).collect())
            .collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, const N: usize>(
        d: D,
    ) -> Result<[[Complex64; N]; N], D::Error> {
        use serde::de::Error;
        let rows = Vec::<Vec<ReIm>>::deserialize(d)?;
        if rows.len() != N || rows.iter().any(|r| r.len() != N) {
            return Err(D::Error::custom(format!("expected a {N}x{N} matrix")));
        }
        let mut out = [[Complex64::new(0.0, 0.0); N]; N];
        for (i, row) in rows.into_iter().enumerate() {
            for (j, c) in row.into_iter().enumerate() {
                out[i][j] = Complex64::new(c.re, c.im);
            }
        }
        Ok(out)
    }
}
