//! Characteristic decomposition of 3x3 polarization density matrices and
//! the regular / nonregular classification.
//!
//! A unit-trace 3x3 coherency matrix splits into a pure part, a rank-2
//! "discriminating" part and the fully unpolarized part, weighted by
//! differences of the purity indices. The discriminating part always has
//! rank 2; the rank of its *real part* separates regular states (rank 2)
//! from nonregular ones (rank 3).

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectra::{self, IndicesOfPurity};
use crate::states::{eigendecompose, DensityMatrix};

/// Singular values below this threshold do not count toward the rank.
const RANK_TOL: f64 = 1e-9;
/// Discriminating weight below this is reported as absent.
const WEIGHT_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct CharacteristicDecomposition {
    /// Rank-1 projector onto the dominant eigenstate.
    pub pure_part: DMatrix<Complex64>,
    /// Equal mixture of the two dominant eigenstates (rank 2).
    pub discriminating_part: DMatrix<Complex64>,
    /// `I / 3`.
    pub unpolarized_part: DMatrix<Complex64>,
    /// Weights `(P_1, P_2 - P_1, 1 - P_2)` of the three parts.
    pub weights: [f64; 3],
    /// Purity indices of the input spectrum.
    pub indices: IndicesOfPurity,
    /// Rank of the real part of the discriminating component, 2 or 3.
    pub discriminating_real_rank: usize,
    /// Set when a singular value sits within a decade of the rank threshold.
    pub borderline: bool,
}

/// Classification labels for 3x3 polarization states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regularity {
    Regular,
    Nonregular,
    /// The discriminating weight vanishes; regularity does not apply.
    NoDiscriminatingComponent,
}

/// Splits a 3x3 density matrix into pure, discriminating and unpolarized
/// parts; the weighted sum reconstructs the input.
pub fn characteristic_decomposition(rho: &DensityMatrix) -> Result<CharacteristicDecomposition> {
    if rho.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: rho.dim(),
        });
    }
    let (values, vectors) = eigendecompose(rho.matrix())?;
    let spectrum = spectra::Spectrum::with_tolerances(
        values,
        &spectra::Tolerances {
            clamp: 1e-10,
            ..Default::default()
        },
    )?;
    let indices = spectra::indices_of_purity(&spectrum);
    let p1 = indices.values()[0];
    let p2 = indices.values()[1];

    let u1 = vectors.column(0);
    let u2 = vectors.column(1);
    let pure_part = u1 * u1.adjoint();
    let discriminating_part = (pure_part.clone() + u2 * u2.adjoint()) * Complex64::new(0.5, 0.0);
    let unpolarized_part = DMatrix::identity(3, 3) * Complex64::new(1.0 / 3.0, 0.0);

    let real_part = discriminating_part.map(|z| z.re);
    let mut singular: Vec<f64> = real_part
        .symmetric_eigenvalues()
        .iter()
        .map(|x| x.abs())
        .collect();
    singular.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let discriminating_real_rank = singular.iter().filter(|&&s| s > RANK_TOL).count();
    let borderline = singular
        .iter()
        .any(|&s| s > RANK_TOL / 10.0 && s < RANK_TOL * 10.0);

    Ok(CharacteristicDecomposition {
        pure_part,
        discriminating_part,
        unpolarized_part,
        weights: [p1, p2 - p1, 1.0 - p2],
        indices,
        discriminating_real_rank,
        borderline,
    })
}

/// Regular iff the real part of the discriminating component has rank 2;
/// states without a discriminating component are reported as such.
pub fn classify_regularity(dec: &CharacteristicDecomposition) -> Regularity {
    if dec.weights[1] < WEIGHT_TOL {
        Regularity::NoDiscriminatingComponent
    } else if dec.discriminating_real_rank == 2 {
        Regularity::Regular
    } else {
        Regularity::Nonregular
    }
}

/// The JSON classification report emitted for a 3x3 state.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub weights: [f64; 3],
    pub discriminating_real_rank: usize,
    pub label: Regularity,
    pub borderline: bool,
}

pub fn classification_report(rho: &DensityMatrix) -> Result<ClassificationReport> {
    let dec = characteristic_decomposition(rho)?;
    Ok(ClassificationReport {
        weights: dec.weights,
        discriminating_real_rank: dec.discriminating_real_rank,
        label: classify_regularity(&dec),
        borderline: dec.borderline,
    })
}

/// Reassembles the weighted sum of the three parts.
pub fn reconstruct(dec: &CharacteristicDecomposition) -> DMatrix<Complex64> {
    &dec.pure_part * Complex64::new(dec.weights[0], 0.0)
        + &dec.discriminating_part * Complex64::new(dec.weights[1], 0.0)
        + &dec.unpolarized_part * Complex64::new(dec.weights[2], 0.0)
}
