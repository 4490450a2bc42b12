//! Passive states, ergotropy, structured-state work/entropy/SET bounds and
//! scatter-dataset generation for the ergotropy diagrams.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::x_ln_x;
use crate::sampling::{haar_unitary_from_rng, stream_rng};
use crate::spectra::{self, Spectrum};
use crate::states::{DensityMatrix, Hamiltonian};

const ENERGY_DEGENERACY_TOL: f64 = 1e-12;

/// One scatter point: extractable work, entropy, SET and coherence of a
/// sampled state, plus its largest eigenvalue.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ErgotropyRecord {
    pub lambda_max: f64,
    pub work: f64,
    pub entropy: f64,
    #[serde(serialize_with = "crate::io::serialize_extended")]
    pub tau: f64,
    pub coherence: f64,
}

/// The minimal-energy rearrangement of a spectrum on a Hamiltonian's levels.
#[derive(Debug, Clone)]
pub struct PassiveState {
    pub state: DensityMatrix,
    /// Set when the Hamiltonian had (numerically) degenerate levels and the
    /// arrangement fell back to the deterministic eigenvector-index order.
    pub degenerate_tiebreak: bool,
}

/// Arranges the eigenvalues of `rho` in descending order on the energy
/// eigenvectors of `h` in ascending energy order.
pub fn passive_state(rho: &DensityMatrix, h: &Hamiltonian) -> Result<PassiveState> {
    if rho.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: h.dim(),
        });
    }
    let spectrum = rho.spectrum()?;
    let (energies, vectors) = h.energy_levels()?;
    let degenerate_tiebreak = energies
        .windows(2)
        .any(|w| (w[1] - w[0]).abs() < ENERGY_DEGENERACY_TOL);
    let state = DensityMatrix::from_spectrum_and_basis(&spectrum, &vectors)?;
    Ok(PassiveState {
        state,
        degenerate_tiebreak,
    })
}

/// Maximum work extractable from `rho` by unitaries:
/// `tr(rho H) - tr(rho_passive H)`. Non-negative by construction; float
/// noise below zero is clamped.
pub fn ergotropy(rho: &DensityMatrix, h: &Hamiltonian) -> Result<f64> {
    if rho.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: h.dim(),
        });
    }
    let active: f64 = (rho.matrix() * h.matrix()).trace().re;
    let spectrum = rho.spectrum()?;
    let (energies, _) = h.energy_levels()?;
    let passive: f64 = passive_energy(spectrum.values(), &energies);
    Ok((active - passive).max(0.0))
}

/// Passive energy of a descending spectrum on ascending energies.
fn passive_energy(descending_spectrum: &[f64], ascending_energies: &[f64]) -> f64 {
    descending_spectrum
        .iter()
        .zip(ascending_energies)
        .map(|(l, e)| l * e)
        .sum()
}

/// The spectrum `(l_1, l_e, ..., l_e)` with `l_e = (1 - l_1)/(d - 1)`.
pub fn structured_spectrum(d: usize, lambda1: f64) -> Result<Spectrum> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    if !(1.0 / d as f64 - 1e-12..=1.0 + 1e-12).contains(&lambda1) {
        return Err(Error::OutOfDomain {
            value: lambda1,
            domain: "[1/d, 1] (largest eigenvalue)",
        });
    }
    let lambda1 = lambda1.clamp(1.0 / d as f64, 1.0);
    let rest = (1.0 - lambda1) / (d as f64 - 1.0);
    let mut values = vec![rest; d];
    values[0] = lambda1;
    Spectrum::new(values)
}

/// Closed-form ergotropy of the structured state on levels with top energy
/// `eps_top` (ground energy fixed at zero): `eps_top (d l_1 - 1)/(d - 1)`.
/// Intermediate level energies do not enter.
pub fn structured_ergotropy(d: usize, lambda1: f64, eps_top: f64) -> Result<f64> {
    if eps_top <= 0.0 || !eps_top.is_finite() {
        return Err(Error::OutOfDomain {
            value: eps_top,
            domain: "(0, inf) (top energy)",
        });
    }
    structured_spectrum(d, lambda1)?; // validates lambda1
    Ok(eps_top * (d as f64 * lambda1 - 1.0) / (d as f64 - 1.0))
}

/// Structured-state purity `(d l_1 - 1)/(d - 1)`; every purity index of the
/// structured spectrum equals it, and so does the global degree of purity.
pub fn structured_purity(d: usize, lambda1: f64) -> f64 {
    (d as f64 * lambda1 - 1.0) / (d as f64 - 1.0)
}

/// Closed-form entropy of the structured state with purity `p_e`.
pub fn structured_entropy(d: usize, p_e: f64) -> Result<f64> {
    check_purity(d, p_e)?;
    let dd = d as f64;
    let lambda1 = (1.0 + (dd - 1.0) * p_e) / dd;
    let rest = (1.0 - p_e) / dd;
    Ok(-(x_ln_x(lambda1) + (dd - 1.0) * x_ln_x(rest)))
}

/// SET of the structured state with purity `p_e`; the global degree of
/// purity of the structured spectrum is `p_e` itself, so this is the plain
/// spectral SET evaluated at `p_e`.
pub fn structured_set(d: usize, p_e: f64) -> Result<f64> {
    check_purity(d, p_e)?;
    spectra::set_temperature(p_e)
}

/// Inverts [`structured_entropy`]: the purity whose structured state has the
/// given entropy. Entropy decreases strictly with purity, so bisection is
/// exact to machine precision.
pub fn structured_purity_for_entropy(d: usize, entropy: f64) -> Result<f64> {
    let max_entropy = (d as f64).ln();
    if !(0.0..=max_entropy + 1e-12).contains(&entropy) {
        return Err(Error::OutOfDomain {
            value: entropy,
            domain: "[0, ln d] (entropy)",
        });
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if structured_entropy(d, mid)? > entropy {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn check_purity(d: usize, p_e: f64) -> Result<()> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    if !(0.0..=1.0).contains(&p_e) {
        return Err(Error::OutOfDomain {
            value: p_e,
            domain: "[0, 1] (structured purity)",
        });
    }
    Ok(())
}

/// How a sampled spectrum is placed on the energy levels before the record
/// is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    /// Conjugate the diagonal spectrum by a Haar unitary, giving the state
    /// generic coherence in the energy basis.
    HaarRotated,
    /// Place the spectrum diagonally with the largest eigenvalue on the
    /// highest level: the zero-coherence, maximal-ergotropy arrangement.
    AntiAlignedDiagonal,
}

/// Computes one [`ErgotropyRecord`] per input spectrum against a diagonal
/// nondegenerate Hamiltonian. Record `i` uses RNG stream `i` of `seed`, so
/// output is deterministic and independent of parallel chunking.
pub fn ergotropy_scatter(
    spectra_in: &[Spectrum],
    h: &Hamiltonian,
    seed: u64,
    placement: Placement,
) -> Result<Vec<ErgotropyRecord>> {
    let energies = diagonal_energies(h)?;
    spectra_in
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let mut rng = stream_rng(seed, i as u64);
            Ok(scatter_record(s, &energies, placement, || {
                haar_unitary_from_rng(energies.len(), &mut rng)
            }))
        })
        .collect()
}

/// `h` must be diagonal with strictly increasing distinct levels.
fn diagonal_energies(h: &Hamiltonian) -> Result<Vec<f64>> {
    if !h.is_diagonal() {
        return Err(Error::OutOfDomain {
            value: f64::NAN,
            domain: "diagonal Hamiltonian",
        });
    }
    let energies: Vec<f64> = (0..h.dim()).map(|i| h.matrix()[(i, i)].re).collect();
    let mut sorted = energies.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if sorted
        .windows(2)
        .any(|w| (w[1] - w[0]).abs() < ENERGY_DEGENERACY_TOL)
    {
        return Err(Error::OutOfDomain {
            value: f64::NAN,
            domain: "nondegenerate Hamiltonian",
        });
    }
    Ok(energies)
}

fn scatter_record(
    s: &Spectrum,
    energies: &[f64],
    placement: Placement,
    mut haar: impl FnMut() -> DMatrix<Complex64>,
) -> ErgotropyRecord {
    let d = energies.len();
    let lam = s.values();
    let mut ascending: Vec<f64> = energies.to_vec();
    ascending.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let passive = passive_energy(lam, &ascending);
    let entropy = spectra::von_neumann_entropy(s);
    let (active, coherence) = match placement {
        Placement::AntiAlignedDiagonal => {
            // largest eigenvalue on the highest level
            let active: f64 = lam
                .iter()
                .zip(ascending.iter().rev())
                .map(|(l, e)| l * e)
                .sum();
            (active, 0.0)
        }
        Placement::HaarRotated => {
            let q = haar();
            // populations of Q diag(lam) Q^H: p_i = sum_j |Q_ij|^2 lam_j
            let mut populations = vec![0.0f64; d];
            for (i, p) in populations.iter_mut().enumerate() {
                for (j, l) in lam.iter().enumerate() {
                    *p += q[(i, j)].norm_sqr() * l;
                }
            }
            let active: f64 = populations.iter().zip(energies).map(|(p, e)| p * e).sum();
            let diag_entropy: f64 = -populations.iter().map(|&p| x_ln_x(p.max(0.0))).sum::<f64>();
            (active, (diag_entropy - entropy).max(0.0))
        }
    };
    ErgotropyRecord {
        lambda_max: lam[0],
        work: (active - passive).max(0.0),
        entropy,
        tau: spectra::set_temperature(spectra::global_purity(s)).expect("purity in [0,1]"),
        coherence,
    }
}

/// Samples of the structured bound curve over `lambda1 in [1/d, 1]`,
/// reported as `(lambda1, work, entropy, tau)`.
pub fn structured_bound_curve(
    d: usize,
    eps_top: f64,
    points: usize,
) -> Result<Vec<(f64, f64, f64, f64)>> {
    if points < 2 {
        return Err(Error::OutOfDomain {
            value: points as f64,
            domain: "[2, inf) (resolution)",
        });
    }
    (0..points)
        .map(|i| {
            let frac = i as f64 / (points - 1) as f64;
            let lambda1 = 1.0 / d as f64 + frac * (1.0 - 1.0 / d as f64);
            let p_e = structured_purity(d, lambda1).clamp(0.0, 1.0);
            Ok((
                lambda1,
                structured_ergotropy(d, lambda1, eps_top)?,
                structured_entropy(d, p_e)?,
                structured_set(d, p_e)?,
            ))
        })
        .collect()
}
