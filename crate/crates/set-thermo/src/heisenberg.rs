//! Open isotropic Heisenberg chains: Hamiltonian construction, exact
//! diagonalization, SET-versus-temperature curves, low-temperature parity
//! plateaus, the infinite-temperature variance identity and the
//! high-temperature slope.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectra::{self, Spectrum};
use crate::states::{gibbs_spectrum, Hamiltonian};

/// Eigenvalues this close to the minimum count into the ground manifold.
const DEGENERACY_TOL: f64 = 1e-8;
/// Probe temperature for the low-T plateau.
const PLATEAU_PROBE_T: f64 = 1e-4;

pub const MIN_LENGTH: usize = 2;
pub const MAX_LENGTH: usize = 9;

/// Couplings `sum_i (X_i X_{i+1} + Y_i Y_{i+1} + Z_i Z_{i+1})` over an open
/// chain of `length` spins, as a real symmetric matrix in the computational
/// basis. All entries are integers; the trace is zero.
pub fn chain_matrix(length: usize) -> Result<DMatrix<f64>> {
    if !(MIN_LENGTH..=MAX_LENGTH).contains(&length) {
        return Err(Error::BadChainLength(length));
    }
    let dim = 1usize << length;
    let mut h = DMatrix::zeros(dim, dim);
    for bond in 0..length - 1 {
        let mask_a = 1usize << bond;
        let mask_b = 1usize << (bond + 1);
        for idx in 0..dim {
            let aligned = ((idx & mask_a) != 0) == ((idx & mask_b) != 0);
            if aligned {
                h[(idx, idx)] += 1.0; // ZZ on parallel spins
            } else {
                h[(idx, idx)] -= 1.0;
                // XX + YY flips the antiparallel pair with amplitude 2
                let flipped = idx ^ (mask_a | mask_b);
                h[(idx, flipped)] += 2.0;
            }
        }
    }
    Ok(h)
}

/// The chain coupling matrix as a complex [`Hamiltonian`].
pub fn chain_hamiltonian(length: usize) -> Result<Hamiltonian> {
    let m = chain_matrix(length)?;
    Hamiltonian::new(m.map(|x| Complex64::new(x, 0.0)))
}

/// Ascending exact eigenvalues of the chain.
pub fn chain_energies(length: usize) -> Result<Vec<f64>> {
    let m = chain_matrix(length)?;
    let mut energies: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    energies.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(energies)
}

/// Infinite-temperature energy variance `tr(H^2) / 2^L` against the closed
/// form `3 (L - 1)`. The trace is a sum of squared integer entries, so the
/// numeric side is exact.
pub fn variance_check(length: usize) -> Result<(f64, f64)> {
    let m = chain_matrix(length)?;
    let dim = 1usize << length;
    let numeric: f64 = m.iter().map(|x| x * x).sum::<f64>() / dim as f64;
    let theory = 3.0 * (length as f64 - 1.0);
    Ok((numeric, theory))
}

/// Ground-manifold degeneracy found by clustering eigenvalues near the
/// minimum.
pub fn ground_degeneracy(energies: &[f64]) -> usize {
    let min = energies.iter().cloned().fold(f64::INFINITY, f64::min);
    energies.iter().filter(|&&e| e - min < DEGENERACY_TOL).count()
}

/// One point of a SET-versus-temperature sweep.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TauPoint {
    pub temperature: f64,
    #[serde(serialize_with = "crate::io::serialize_extended")]
    pub tau: f64,
    pub entropy: f64,
}

/// Sweeps the Gibbs state of the chain over a positive ascending temperature
/// grid; the SET is non-decreasing along the sweep.
pub fn tau_vs_temperature(length: usize, t_grid: &[f64]) -> Result<Vec<TauPoint>> {
    let energies = chain_energies(length)?;
    tau_curve_from_energies(&energies, t_grid)
}

/// Like [`tau_vs_temperature`] but reusing a precomputed energy list.
pub fn tau_curve_from_energies(energies: &[f64], t_grid: &[f64]) -> Result<Vec<TauPoint>> {
    for w in t_grid.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::OutOfDomain {
                value: w[1],
                domain: "strictly increasing temperature grid",
            });
        }
    }
    t_grid
        .iter()
        .map(|&t| {
            let thermal = gibbs_spectrum(energies, t)?;
            Ok(point_from_spectrum(t, &thermal.probabilities))
        })
        .collect()
}

fn point_from_spectrum(temperature: f64, s: &Spectrum) -> TauPoint {
    let p = spectra::global_purity(s);
    TauPoint {
        temperature,
        tau: spectra::set_temperature(p).expect("purity in [0,1]"),
        entropy: spectra::von_neumann_entropy(s),
    }
}

/// Low-temperature SET plateau of a chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Plateau {
    /// Odd chains: the degenerate ground manifold pins the SET at a finite
    /// value matching the degeneracy formula.
    Present { numeric: f64, theory: f64 },
    /// Even chains thermalize onto a unique singlet; the SET collapses to
    /// zero instead of a plateau.
    Absent { tau_at_probe: f64 },
}

/// Probes the SET at `T = 1e-4` and compares it against the degeneracy
/// plateau formula when the ground state is degenerate.
pub fn plateau(length: usize) -> Result<Plateau> {
    plateau_from_energies(length, &chain_energies(length)?)
}

fn plateau_from_energies(length: usize, energies: &[f64]) -> Result<Plateau> {
    let g = ground_degeneracy(energies);
    let probe = tau_curve_from_energies(energies, &[PLATEAU_PROBE_T])?[0].tau;
    if g > 1 {
        let theory = spectra::degeneracy_plateau(1 << length, g)?;
        Ok(Plateau::Present {
            numeric: probe,
            theory,
        })
    } else {
        Ok(Plateau::Absent { tau_at_probe: probe })
    }
}

/// Origin-constrained least-squares slope of `tau` versus `T` over
/// `T in [10, 100]`, with the closed-form prediction
/// `sqrt((2^L - 1) / (3 (L - 1)))`.
pub fn high_t_slope(length: usize) -> Result<(f64, f64)> {
    let energies = chain_energies(length)?;
    high_t_slope_from_energies(length, &energies)
}

fn high_t_slope_from_energies(length: usize, energies: &[f64]) -> Result<(f64, f64)> {
    let n = 256;
    let grid: Vec<f64> = (0..n)
        .map(|i| 10.0 + 90.0 * i as f64 / (n - 1) as f64)
        .collect();
    let points = tau_curve_from_energies(energies, &grid)?;
    let mut num = 0.0;
    let mut den = 0.0;
    for p in &points {
        num += p.tau * p.temperature;
        den += p.temperature * p.temperature;
    }
    let fit = num / den;
    let dim = (1u64 << length) as f64;
    let theory = ((dim - 1.0) / (3.0 * (length as f64 - 1.0))).sqrt();
    Ok((fit, theory))
}

/// Everything a chain sweep reports, bundled for the diagnostics JSON.
#[derive(Debug, Clone, Serialize)]
pub struct ChainDiagnostics {
    pub length: usize,
    pub dimension: usize,
    pub ground_energy: f64,
    pub ground_degeneracy: usize,
    pub variance: f64,
    pub variance_theory: f64,
    pub slope_fit: f64,
    pub slope_theory: f64,
    pub plateau_numeric: Option<f64>,
    pub plateau_theory: Option<f64>,
}

pub fn diagnostics(length: usize) -> Result<ChainDiagnostics> {
    let energies = chain_energies(length)?;
    let (variance, variance_theory) = variance_check(length)?;
    let (slope_fit, slope_theory) = high_t_slope_from_energies(length, &energies)?;
    let (plateau_numeric, plateau_theory) = match plateau_from_energies(length, &energies)? {
        Plateau::Present { numeric, theory } => (Some(numeric), Some(theory)),
        Plateau::Absent { .. } => (None, None),
    };
    Ok(ChainDiagnostics {
        length,
        dimension: 1 << length,
        ground_energy: energies[0],
        ground_degeneracy: ground_degeneracy(&energies),
        variance,
        variance_theory,
        slope_fit,
        slope_theory,
        plateau_numeric,
        plateau_theory,
    })
}
