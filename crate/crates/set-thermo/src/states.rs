//! Density matrices, Hamiltonians, thermal states, the transverse-field
//! Ising qubit, Bloch-vector states, dephasing and the relative entropy of
//! coherence.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::io::MatrixJson;
use crate::numeric::x_ln_x;
use crate::spectra::{self, SpectralSummary, Spectrum};

const HERMITICITY_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-10;
const PSD_TOL: f64 = 1e-10;

/// A validated density matrix: Hermitian, unit trace, positive semidefinite
/// within tolerance.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    m: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        check_square(&m)?;
        check_hermitian(&m, HERMITICITY_TOL)?;
        let trace = m.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::BadTrace { trace: trace.re });
        }
        let eigenvalues = hermitian_eigenvalues(&m);
        if let Some(&min) = eigenvalues
            .iter()
            .min_by(|a, b| a.partial_cmp(b).unwrap())
        {
            if min < -PSD_TOL {
                return Err(Error::NotPositiveSemidefinite { value: min });
            }
        }
        Ok(DensityMatrix { m })
    }

    /// Builds `V diag(p) V^H` from a descending spectrum and the unitary whose
    /// columns carry the eigenvectors.
    pub fn from_spectrum_and_basis(s: &Spectrum, basis: &DMatrix<Complex64>) -> Result<Self> {
        check_orthonormal(basis)?;
        if basis.nrows() != s.dim() {
            return Err(Error::DimensionMismatch {
                expected: s.dim(),
                got: basis.nrows(),
            });
        }
        let d = s.dim();
        let diag = DMatrix::from_diagonal(&DVector::from_iterator(
            d,
            s.values().iter().map(|&l| Complex64::new(l, 0.0)),
        ));
        let m = basis * diag * basis.adjoint();
        // round symmetrize so validation never trips on last-ulp noise
        let m = hermitize(&m);
        DensityMatrix::new(m)
    }

    pub fn maximally_mixed(d: usize) -> Self {
        let m = DMatrix::identity(d, d) * Complex64::new(1.0 / d as f64, 0.0);
        DensityMatrix { m }
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    /// Descending eigenvalue spectrum, clamped and renormalized.
    pub fn spectrum(&self) -> Result<Spectrum> {
        let (values, _) = eigendecompose(&self.m)?;
        Spectrum::with_tolerances(
            values,
            &spectra::Tolerances {
                clamp: PSD_TOL,
                ..Default::default()
            },
        )
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        DensityMatrix::new(json.to_matrix()?)
    }
}

/// A Hermitian Hamiltonian. Energies are dimensionless (k_B = hbar = 1).
#[derive(Debug, Clone)]
pub struct Hamiltonian {
    m: DMatrix<Complex64>,
}

impl Hamiltonian {
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        check_square(&m)?;
        check_hermitian(&m, HERMITICITY_TOL)?;
        Ok(Hamiltonian { m })
    }

    pub fn from_energies(energies: &[f64]) -> Self {
        let d = energies.len();
        let m = DMatrix::from_fn(d, d, |i, j| {
            if i == j {
                Complex64::new(energies[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Hamiltonian { m }
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn is_diagonal(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| i == j || self.m[(i, j)] == Complex64::new(0.0, 0.0)))
    }

    /// Ascending energies with the matching eigenvector columns.
    pub fn energy_levels(&self) -> Result<(Vec<f64>, DMatrix<Complex64>)> {
        let (mut values, mut vectors) = eigendecompose(&self.m)?;
        values.reverse();
        flip_columns(&mut vectors);
        Ok((values, vectors))
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        Hamiltonian::new(json.to_matrix()?)
    }
}

/// Transverse-field Ising qubit parameters; the longitudinal coupling is
/// fixed to 1 and only the transverse field strength varies.
#[derive(Debug, Clone, Copy)]
pub struct TransverseIsingParams {
    pub h_field: f64,
}

impl TransverseIsingParams {
    pub fn new(h_field: f64) -> Result<Self> {
        if h_field < 0.0 || !h_field.is_finite() {
            return Err(Error::OutOfDomain {
                value: h_field,
                domain: "[0, inf) (transverse field)",
            });
        }
        Ok(TransverseIsingParams { h_field })
    }

    /// The qubit Hamiltonian `-(sigma_z + h sigma_x)` as a matrix.
    pub fn hamiltonian(&self) -> Hamiltonian {
        let h = self.h_field;
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(-1.0, 0.0),
                Complex64::new(-h, 0.0),
                Complex64::new(-h, 0.0),
                Complex64::new(1.0, 0.0),
            ],
        );
        Hamiltonian { m }
    }
}

/// A Bloch vector with norm at most 1.
#[derive(Debug, Clone, Copy)]
pub struct BlochVector {
    pub r: [f64; 3],
}

impl BlochVector {
    pub fn new(r: [f64; 3]) -> Result<Self> {
        let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
        if norm > 1.0 + 1e-12 {
            return Err(Error::BlochNormTooLarge(norm));
        }
        Ok(BlochVector { r })
    }

    pub fn norm(&self) -> f64 {
        (self.r[0] * self.r[0] + self.r[1] * self.r[1] + self.r[2] * self.r[2]).sqrt()
    }
}

/// Boltzmann weights of a set of energies at a given temperature.
#[derive(Debug, Clone)]
pub struct ThermalSpectrum {
    pub probabilities: Spectrum,
    /// Partition function; may overflow to `+inf` when the ground energy is
    /// strongly negative at small T, the probabilities stay exact regardless.
    pub partition_function: f64,
    pub temperature: f64,
}

/// Eigendecomposition of a Hermitian matrix: descending real eigenvalues and
/// the unitary of eigenvector columns.
///
/// Eigenvector phases are fixed so the first component of significant
/// magnitude is real and positive, making the decomposition deterministic.
pub fn eigendecompose(m: &DMatrix<Complex64>) -> Result<(Vec<f64>, DMatrix<Complex64>)> {
    check_square(m)?;
    check_hermitian(m, HERMITICITY_TOL)?;
    let d = m.nrows();
    let (raw_values, raw_vectors) = crate::eigen::hermitian_jacobi(&hermitize(m));
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| {
        raw_values[b]
            .partial_cmp(&raw_values[a])
            .expect("non-finite eigenvalue")
    });
    let values: Vec<f64> = order.iter().map(|&i| raw_values[i]).collect();
    let mut vectors = DMatrix::zeros(d, d);
    for (col, &i) in order.iter().enumerate() {
        let v = raw_vectors.column(i);
        // phase convention: first component of significant magnitude is
        // rotated to the positive real axis
        let pivot = (0..d)
            .find(|&r| v[r].norm() > 1e-8)
            .unwrap_or(0);
        let phase = v[pivot].conj() / v[pivot].norm();
        for r in 0..d {
            vectors[(r, col)] = v[r] * phase;
        }
    }
    Ok((values, vectors))
}

fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    crate::eigen::hermitian_jacobi(&hermitize(m)).0
}

/// Boltzmann spectrum of a list of energies at temperature `T > 0` (or
/// `+inf`, which gives the uniform spectrum). Weights are computed after
/// subtracting the minimum energy so small temperatures cannot overflow.
pub fn gibbs_spectrum(energies: &[f64], temperature: f64) -> Result<ThermalSpectrum> {
    if energies.len() < 2 {
        return Err(Error::DimensionTooSmall(energies.len()));
    }
    if temperature.is_nan() || temperature <= 0.0 {
        return Err(Error::InvalidTemperature(temperature));
    }
    if let Some(&bad) = energies.iter().find(|e| !e.is_finite()) {
        return Err(Error::OutOfDomain {
            value: bad,
            domain: "finite energies",
        });
    }
    let d = energies.len();
    let min_energy = energies.iter().cloned().fold(f64::INFINITY, f64::min);
    let weights: Vec<f64> = if temperature.is_infinite() {
        vec![1.0; d]
    } else {
        energies
            .iter()
            .map(|&e| (-(e - min_energy) / temperature).exp())
            .collect()
    };
    let shifted_z: f64 = weights.iter().sum();
    let partition_function = if temperature.is_infinite() {
        d as f64
    } else {
        shifted_z * (-min_energy / temperature).exp()
    };
    let probabilities = Spectrum::from_unordered(
        weights.iter().map(|w| w / shifted_z).collect(),
    )?;
    Ok(ThermalSpectrum {
        probabilities,
        partition_function,
        temperature,
    })
}

/// Gibbs state `exp(-H/T) / Z` of a Hamiltonian; commutes with `H`.
pub fn gibbs_state(h: &Hamiltonian, temperature: f64) -> Result<DensityMatrix> {
    let (energies, vectors) = h.energy_levels()?;
    let thermal = gibbs_spectrum(&energies, temperature)?;
    // energies ascending puts weights descending, matching the spectrum order
    DensityMatrix::from_spectrum_and_basis(&thermal.probabilities, &vectors)
}

/// Order parameter and SET of the thermal transverse-field Ising qubit.
#[derive(Debug, Clone, Copy)]
pub struct IsingSet {
    /// Population difference `tanh(beta sqrt(1 + h^2))`.
    pub order_parameter: f64,
    /// SET carrying the gap factor `sqrt(1 + h^2)`; equals `1/beta` exactly.
    pub tau_scaled: f64,
    /// Plain spectral SET of the same state, `1 / (beta sqrt(1 + h^2))`.
    pub tau_unscaled: f64,
}

/// Thermal qubit in a transverse field at inverse temperature `beta`.
///
/// Both SET variants are returned: the gap-scaled form recovers the canonical
/// temperature identically, the unscaled form is what the generic spectral
/// definition assigns to the same state. They differ by `sqrt(1 + h^2)`.
pub fn transverse_ising(params: TransverseIsingParams, beta: f64) -> Result<IsingSet> {
    if beta.is_nan() || beta <= 0.0 {
        return Err(Error::OutOfDomain {
            value: beta,
            domain: "(0, inf) (inverse temperature)",
        });
    }
    let gap = (1.0 + params.h_field * params.h_field).sqrt();
    let x = beta * gap;
    let w1 = (-2.0 * x).exp_m1();
    let order_parameter = -w1 / (2.0 + w1);
    // the log of the population ratio telescopes to 2 beta sqrt(1 + h^2);
    // evaluating it back through tanh would only discard precision
    let log_ratio = 2.0 * x;
    Ok(IsingSet {
        order_parameter,
        tau_scaled: 2.0 * gap / log_ratio,
        tau_unscaled: 2.0 / log_ratio,
    })
}

/// Qubit state `(I + r . sigma) / 2` of a Bloch vector.
pub fn bloch_qubit(r: BlochVector) -> Result<DensityMatrix> {
    let [x, y, z] = r.r;
    let m = DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new((1.0 + z) / 2.0, 0.0),
            Complex64::new(x / 2.0, -y / 2.0),
            Complex64::new(x / 2.0, y / 2.0),
            Complex64::new((1.0 - z) / 2.0, 0.0),
        ],
    );
    DensityMatrix::new(m)
}

/// Removes all off-diagonal entries of `rho` in the given orthonormal basis,
/// preserving the diagonal (and hence the trace).
pub fn dephase(rho: &DensityMatrix, basis: &DMatrix<Complex64>) -> Result<DensityMatrix> {
    let populations = basis_populations(rho, basis)?;
    let d = rho.dim();
    let mut m = DMatrix::zeros(d, d);
    for (k, &p) in populations.iter().enumerate() {
        let v = basis.column(k);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] += v[i] * v[j].conj() * Complex64::new(p, 0.0);
            }
        }
    }
    DensityMatrix::new(hermitize(&m))
}

/// Relative entropy of coherence `S(diag(rho)) - S(rho)` in the given basis.
/// Non-negative; float noise below zero is clamped.
pub fn rel_entropy_coherence(rho: &DensityMatrix, basis: &DMatrix<Complex64>) -> Result<f64> {
    let populations = basis_populations(rho, basis)?;
    let diag_entropy: f64 = -populations.iter().map(|&p| x_ln_x(p.max(0.0))).sum::<f64>();
    let spectrum_entropy = spectra::von_neumann_entropy(&rho.spectrum()?);
    Ok((diag_entropy - spectrum_entropy).max(0.0))
}

/// One bundled record of every spectral scalar of a state.
pub fn spectral_summary(rho: &DensityMatrix) -> Result<SpectralSummary> {
    Ok(spectra::summarize(&rho.spectrum()?))
}

fn basis_populations(rho: &DensityMatrix, basis: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    check_orthonormal(basis)?;
    if basis.nrows() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: basis.nrows(),
        });
    }
    let projected = basis.adjoint() * rho.matrix() * basis;
    Ok((0..rho.dim()).map(|i| projected[(i, i)].re).collect())
}

pub(crate) fn check_square(m: &DMatrix<Complex64>) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            got: m.ncols(),
        });
    }
    if m.nrows() < 2 {
        return Err(Error::DimensionTooSmall(m.nrows()));
    }
    Ok(())
}

pub(crate) fn check_hermitian(m: &DMatrix<Complex64>, tol: f64) -> Result<()> {
    let mut max_asymmetry = 0.0f64;
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            let delta = (m[(i, j)] - m[(j, i)].conj()).norm();
            max_asymmetry = max_asymmetry.max(delta);
        }
    }
    if max_asymmetry > tol {
        return Err(Error::NotHermitian { max_asymmetry });
    }
    Ok(())
}

pub(crate) fn check_orthonormal(u: &DMatrix<Complex64>) -> Result<()> {
    let gram = u.adjoint() * u;
    let mut max_deviation = 0.0f64;
    for i in 0..gram.nrows() {
        for j in 0..gram.ncols() {
            let target = if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            max_deviation = max_deviation.max((gram[(i, j)] - target).norm());
        }
    }
    if max_deviation > 1e-10 {
        return Err(Error::NotOrthonormal { max_deviation });
    }
    Ok(())
}

/// Projects onto the Hermitian part `(m + m^H)/2`, absorbing rounding noise.
pub(crate) fn hermitize(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

fn flip_columns(m: &mut DMatrix<Complex64>) {
    let n = m.ncols();
    for c in 0..n / 2 {
        m.swap_columns(c, n - 1 - c);
    }
}
