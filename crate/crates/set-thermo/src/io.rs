//! File formats: the JSON matrix layout shared by density matrices and
//! Hamiltonians, plus the float conventions used by every emitter.
//!
//! The JSON matrix format is `{ "d": n, "re": [[...]], "im": [[...]] }` with
//! row-major `n x n` real and imaginary parts; `im` may be omitted for real
//! matrices. CSV cells carry 17 significant digits and infinities print as
//! the literal `inf`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub d: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default)]
    pub im: Option<Vec<Vec<f64>>>,
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<DMatrix<Complex64>> {
        let d = self.d;
        if d == 0 {
            return Err(Error::MatrixFormat("dimension must be positive".into()));
        }
        let check = |rows: &Vec<Vec<f64>>, name: &str| -> Result<()> {
            if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                return Err(Error::MatrixFormat(format!(
                    "field `{name}` must be a {d}x{d} array"
                )));
            }
            Ok(())
        };
        check(&self.re, "re")?;
        if let Some(im) = &self.im {
            check(im, "im")?;
        }
        let mut m = DMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                let re = self.re[i][j];
                let im = self.im.as_ref().map_or(0.0, |im| im[i][j]);
                if !re.is_finite() || !im.is_finite() {
                    return Err(Error::MatrixFormat(format!(
                        "non-finite entry at ({i}, {j})"
                    )));
                }
                m[(i, j)] = Complex64::new(re, im);
            }
        }
        Ok(m)
    }

    pub fn from_matrix(m: &DMatrix<Complex64>) -> Self {
        let d = m.nrows();
        let re = (0..d)
            .map(|i| (0..d).map(|j| m[(i, j)].re).collect())
            .collect();
        let im = (0..d)
            .map(|i| (0..d).map(|j| m[(i, j)].im).collect())
            .collect();
        MatrixJson { d, re, im: Some(im) }
    }
}

/// Reads a complex matrix from the JSON matrix format.
pub fn read_matrix(path: &std::path::Path) -> Result<DMatrix<Complex64>> {
    let text = std::fs::read_to_string(path)?;
    let parsed: MatrixJson =
        serde_json::from_str(&text).map_err(|e| Error::MatrixFormat(e.to_string()))?;
    parsed.to_matrix()
}

/// Formats a float with 17 significant digits, enough to round-trip any f64.
/// Infinities format as `inf` / `-inf`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

/// Serde helper for affinely extended reals: finite values serialize as
/// numbers, infinities as the strings `"inf"` / `"-inf"`.
pub fn serialize_extended<S: Serializer>(x: &f64, ser: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_infinite() {
        ser.serialize_str(if *x > 0.0 { "inf" } else { "-inf" })
    } else {
        ser.serialize_f64(*x)
    }
}
