//! Seeded, reproducible random generation of purity indices, spectra,
//! density matrices and Haar unitaries, plus the parametric spectrum ansatz.
//!
//! Every sampler is a pure function of its configuration. Sample `i` draws
//! from ChaCha stream `i` of the seeded generator, so chunked or parallel
//! generation reproduces the serial output exactly.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::spectra::{self, IndicesOfPurity, Spectrum};
use crate::states::DensityMatrix;

/// Attempts allowed per rejection-sampled draw.
const PER_SAMPLE_ATTEMPT_BUDGET: u64 = 1_000_000;
/// Total attempt budget factor for the stratified entropy sampler.
const ENTROPY_BUDGET_PER_SAMPLE: u64 = 10_000;

/// Sampling method selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Uniform direction on the positive orthant of the rescaled-index
    /// sphere with a uniform radius; covers the whole admissible region.
    IpSphere,
    /// `G G^H / tr(G G^H)` for a square matrix of standard complex normals.
    Ginibre,
    /// Stratified rejection until the entropy histogram is flat.
    UniformEntropy,
}

/// Configuration of one sampling run.
#[derive(Debug, Clone, Copy)]
pub struct SamplerConfig {
    pub dimension: usize,
    pub count: usize,
    pub seed: u64,
    pub method: Method,
}

impl SamplerConfig {
    pub fn new(dimension: usize, count: usize, seed: u64, method: Method) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::DimensionTooSmall(dimension));
        }
        if count < 1 {
            return Err(Error::OutOfDomain {
                value: count as f64,
                domain: "[1, inf) (sample count)",
            });
        }
        Ok(SamplerConfig {
            dimension,
            count,
            seed,
            method,
        })
    }
}

/// RNG for stream `stream` of the given seed.
pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Derives an unrelated sub-seed for a named generation domain, so one CLI
/// seed can feed several independent samplers.
pub fn derive_seed(seed: u64, domain: u64) -> u64 {
    // splitmix64 step
    let mut z = seed ^ domain.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Samples ordered purity indices covering the full admissible region.
///
/// The indices are mapped to rescaled coordinates `x_k` in which the global
/// degree of purity is the Euclidean norm; a uniform direction on the
/// positive orthant and a uniform radius are drawn and draws violating the
/// non-decreasing ordering (or the unit cap on the last index) are rejected.
pub fn sample_ips(cfg: &SamplerConfig) -> Result<Vec<IndicesOfPurity>> {
    let d = cfg.dimension;
    let scale: Vec<f64> = (1..d)
        .map(|k| {
            let k = k as f64;
            (d as f64 / ((d as f64 - 1.0) * k * (k + 1.0))).sqrt()
        })
        .collect();
    (0..cfg.count)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(cfg.seed, i as u64);
            for _ in 0..PER_SAMPLE_ATTEMPT_BUDGET {
                let mut x: Vec<f64> = (0..d - 1)
                    .map(|_| rng.sample::<f64, _>(StandardNormal).abs())
                    .collect();
                let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                if norm == 0.0 {
                    continue;
                }
                let radius: f64 = rng.gen::<f64>();
                for v in x.iter_mut() {
                    *v *= radius / norm;
                }
                let ips: Vec<f64> = x.iter().zip(&scale).map(|(v, s)| v / s).collect();
                let ordered = ips.windows(2).all(|w| w[0] <= w[1]) && ips[d - 2] <= 1.0;
                if ordered {
                    return IndicesOfPurity::new(ips);
                }
            }
            Err(Error::AttemptBudgetExhausted {
                budget: PER_SAMPLE_ATTEMPT_BUDGET,
                accepted: i,
            })
        })
        .collect()
}

/// Samples density matrices `G G^H / tr(G G^H)` with `G` a square matrix of
/// independent standard complex normal entries.
pub fn sample_ginibre(cfg: &SamplerConfig) -> Result<Vec<DensityMatrix>> {
    (0..cfg.count)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(cfg.seed, i as u64);
            Ok(ginibre_density(cfg.dimension, &mut rng))
        })
        .collect()
}

pub(crate) fn ginibre_density(d: usize, rng: &mut ChaCha8Rng) -> DensityMatrix {
    let g = complex_normal_matrix(d, rng);
    let w = &g * g.adjoint();
    let trace: f64 = (0..d).map(|i| w[(i, i)].re).sum();
    let m = w / Complex64::new(trace, 0.0);
    DensityMatrix::new(crate::states::hermitize(&m)).expect("Ginibre construction is PSD")
}

/// Outcome of the stratified uniform-entropy sampler.
#[derive(Debug, Clone)]
pub struct UniformEntropyDraw {
    /// Accepted spectra in draw order.
    pub spectra: Vec<Spectrum>,
    /// False when the attempt budget ran out before every bin filled; the
    /// partial result is still returned.
    pub complete: bool,
    pub attempts: u64,
}

/// Draws spectra whose entropy histogram over `[0, ln d]` is flat.
///
/// Flat-Dirichlet spectra are drawn and accepted into the emptiest-available
/// of `bins` equal entropy bins until each holds `count / bins` samples or
/// the attempt budget (`10^4 * count`) is exhausted.
pub fn sample_uniform_entropy(cfg: &SamplerConfig, bins: usize) -> Result<UniformEntropyDraw> {
    let d = cfg.dimension;
    let bins = bins.max(1);
    let max_entropy = (d as f64).ln();
    let base = cfg.count / bins;
    let remainder = cfg.count % bins;
    let targets: Vec<usize> = (0..bins)
        .map(|b| base + usize::from(b < remainder))
        .collect();
    let mut fill = vec![0usize; bins];
    let mut out = Vec::with_capacity(cfg.count);
    let budget = ENTROPY_BUDGET_PER_SAMPLE.saturating_mul(cfg.count as u64);
    let mut rng = stream_rng(cfg.seed, 0);
    let mut attempts = 0u64;
    while out.len() < cfg.count && attempts < budget {
        attempts += 1;
        let s = flat_dirichlet(d, &mut rng);
        let entropy = spectra::von_neumann_entropy(&s);
        let bin = ((entropy / max_entropy * bins as f64) as usize).min(bins - 1);
        if fill[bin] < targets[bin] {
            fill[bin] += 1;
            out.push(s);
        }
    }
    Ok(UniformEntropyDraw {
        complete: out.len() == cfg.count,
        attempts,
        spectra: out,
    })
}

/// One spectrum from the flat Dirichlet measure on the simplex.
pub(crate) fn flat_dirichlet(d: usize, rng: &mut ChaCha8Rng) -> Spectrum {
    // exponential gaps normalized to the simplex
    let mut gaps: Vec<f64> = (0..d)
        .map(|_| {
            let u: f64 = rng.gen::<f64>();
            -(1.0 - u).max(f64::MIN_POSITIVE).ln()
        })
        .collect();
    let sum: f64 = gaps.iter().sum();
    for g in gaps.iter_mut() {
        *g /= sum;
    }
    Spectrum::from_unordered(gaps).expect("Dirichlet draw is a valid spectrum")
}

/// A Haar-distributed `d x d` unitary (QR of a complex Ginibre matrix with
/// the phase of the R diagonal absorbed).
pub fn haar_unitary(d: usize, seed: u64) -> Result<DMatrix<Complex64>> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let mut rng = stream_rng(seed, 0);
    Ok(haar_unitary_from_rng(d, &mut rng))
}

pub(crate) fn haar_unitary_from_rng(d: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let g = complex_normal_matrix(d, rng);
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            rjj / rjj.norm()
        };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

fn complex_normal_matrix(d: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    DMatrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Fixed spectral parameters of the parametric spectrum ansatz: eigenvalues
/// are Boltzmann-like weights `exp(-zeta * alpha_i) / Z` over the (unitless)
/// levels `alpha_i`.
#[derive(Debug, Clone)]
pub struct PsaParams {
    alphas: Vec<f64>,
}

impl PsaParams {
    pub fn new(alphas: Vec<f64>) -> Result<Self> {
        if alphas.len() < 2 {
            return Err(Error::DimensionTooSmall(alphas.len()));
        }
        if alphas.iter().any(|a| !a.is_finite()) {
            return Err(Error::OutOfDomain {
                value: f64::NAN,
                domain: "finite spectral parameters",
            });
        }
        Ok(PsaParams { alphas })
    }

    /// Equispaced default levels `0, 1, ..., d-1`.
    pub fn equispaced(d: usize) -> Result<Self> {
        Self::new((0..d).map(|i| i as f64).collect())
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }
}

/// The ansatz spectrum at interpolation parameter `zeta >= 0`.
pub fn psa_spectrum(params: &PsaParams, zeta: f64) -> Result<Spectrum> {
    if !zeta.is_finite() || zeta < 0.0 {
        return Err(Error::OutOfDomain {
            value: zeta,
            domain: "[0, inf) (ansatz parameter)",
        });
    }
    let min_alpha = params.alphas.iter().cloned().fold(f64::INFINITY, f64::min);
    let weights: Vec<f64> = params
        .alphas
        .iter()
        .map(|&a| (-(zeta * (a - min_alpha))).exp())
        .collect();
    let z: f64 = weights.iter().sum();
    Spectrum::from_unordered(weights.iter().map(|w| w / z).collect())
}

/// One point of the ansatz path: parameter, SET and entropy.
#[derive(Debug, Clone, Copy)]
pub struct PsaPoint {
    pub zeta: f64,
    pub tau: f64,
    pub entropy: f64,
}

/// Sweeps the ansatz over a strictly increasing `zeta` grid. For distinct
/// levels both the SET and the entropy decrease strictly along the path.
pub fn psa_curve(params: &PsaParams, zeta_grid: &[f64]) -> Result<Vec<PsaPoint>> {
    for w in zeta_grid.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::OutOfDomain {
                value: w[1],
                domain: "strictly increasing zeta grid",
            });
        }
    }
    zeta_grid
        .iter()
        .map(|&zeta| {
            let s = psa_spectrum(params, zeta)?;
            Ok(PsaPoint {
                zeta,
                tau: spectra::set_temperature(spectra::global_purity(&s))?,
                entropy: spectra::von_neumann_entropy(&s),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn ip_sphere_d2_is_uniform_radius() {
        let cfg = SamplerConfig::new(2, 20_000, 7, Method::IpSphere).unwrap();
        let samples = sample_ips(&cfg).unwrap();
        // single index: should be uniform on [0, 1]
        let mean: f64 = samples.iter().map(|p| p.values()[0]).sum::<f64>() / 20_000.0;
        assert_abs_diff_eq!(mean, 0.5, epsilon = 0.01);
        let in_lower_half = samples.iter().filter(|p| p.values()[0] < 0.5).count();
        assert_abs_diff_eq!(in_lower_half as f64 / 20_000.0, 0.5, epsilon = 0.02);
    }

    #[test]
    fn ip_sphere_is_deterministic_and_valid() {
        let cfg = SamplerConfig::new(3, 10, 42, Method::IpSphere).unwrap();
        let a = sample_ips(&cfg).unwrap();
        let b = sample_ips(&cfg).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.values(), y.values());
        }
        for p in &a {
            assert!(crate::spectra::spectrum_from_indices(p).is_ok());
        }
    }

    #[test]
    fn ginibre_samples_are_valid_and_deterministic() {
        let cfg = SamplerConfig::new(3, 50, 3, Method::Ginibre).unwrap();
        let a = sample_ginibre(&cfg).unwrap();
        let b = sample_ginibre(&cfg).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.matrix(), y.matrix());
        }
        for rho in &a {
            let trace = rho.matrix().trace();
            assert_abs_diff_eq!(trace.re, 1.0, epsilon = 1e-12);
            let s = rho.spectrum().unwrap();
            assert!(s.values().iter().all(|&l| l >= 0.0));
        }
    }

    #[test]
    fn ginibre_mean_purity_d2() {
        // Monte Carlo oracle for the d = 2 square-Ginibre ensemble; the mean
        // purity converges to 4/5.
        let cfg = SamplerConfig::new(2, 60_000, 11, Method::Ginibre).unwrap();
        let samples = sample_ginibre(&cfg).unwrap();
        let mean: f64 = samples
            .iter()
            .map(|rho| crate::spectra::purity(&rho.spectrum().unwrap()))
            .sum::<f64>()
            / samples.len() as f64;
        assert_abs_diff_eq!(mean, 0.8, epsilon = 0.01);
    }

    #[test]
    fn uniform_entropy_fills_bins_exactly() {
        let cfg = SamplerConfig::new(2, 10_000, 1, Method::UniformEntropy).unwrap();
        let draw = sample_uniform_entropy(&cfg, 10).unwrap();
        assert!(draw.complete);
        assert_eq!(draw.spectra.len(), 10_000);
        let mut hist = [0usize; 10];
        for s in &draw.spectra {
            let e = crate::spectra::von_neumann_entropy(s);
            let bin = ((e / 2f64.ln() * 10.0) as usize).min(9);
            hist[bin] += 1;
        }
        for &h in &hist {
            assert!((h as i64 - 1000).abs() <= 300, "bin fill {h}");
        }
    }

    #[test]
    fn uniform_entropy_budget_exhaustion_is_flagged() {
        // d = 5 low-entropy bins are too thin to fill at this budget
        let cfg = SamplerConfig::new(5, 500, 2, Method::UniformEntropy).unwrap();
        let draw = sample_uniform_entropy(&cfg, 20).unwrap();
        assert!(!draw.complete);
        assert!(!draw.spectra.is_empty());
    }

    #[test]
    fn uniform_entropy_is_deterministic() {
        let cfg = SamplerConfig::new(3, 500, 9, Method::UniformEntropy).unwrap();
        let a = sample_uniform_entropy(&cfg, 20).unwrap();
        let b = sample_uniform_entropy(&cfg, 20).unwrap();
        assert_eq!(a.spectra.len(), b.spectra.len());
        for (x, y) in a.spectra.iter().zip(&b.spectra) {
            assert_eq!(x.values(), y.values());
        }
    }

    #[test]
    fn haar_unitary_is_unitary() {
        for &d in &[2usize, 3, 5] {
            let u = haar_unitary(d, 13).unwrap();
            let gram = u.adjoint() * &u;
            let dev = (&gram - DMatrix::<Complex64>::identity(d, d)).norm();
            assert!(dev < 1e-10, "d={d} deviation {dev:e}");
            let det = u.determinant().norm();
            assert_abs_diff_eq!(det, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn haar_first_entry_moment() {
        let n = 20_000;
        let mean: f64 = (0..n)
            .map(|i| {
                let mut rng = stream_rng(99, i as u64);
                let u = haar_unitary_from_rng(2, &mut rng);
                u[(0, 0)].norm_sqr()
            })
            .sum::<f64>()
            / n as f64;
        assert_abs_diff_eq!(mean, 0.5, epsilon = 0.01);
    }

    #[test]
    fn haar_left_invariance_statistic() {
        // distribution of |(VU)_{00}|^2 for fixed V matches |U_{00}|^2
        let v = haar_unitary(3, 1234).unwrap();
        let n = 20_000;
        let (mut plain, mut rotated) = (0.0, 0.0);
        for i in 0..n {
            let mut rng = stream_rng(4321, i as u64);
            let u = haar_unitary_from_rng(3, &mut rng);
            plain += u[(0, 0)].norm_sqr();
            rotated += (&v * &u)[(0, 0)].norm_sqr();
        }
        assert_abs_diff_eq!(plain / n as f64, rotated / n as f64, epsilon = 0.01);
        assert_abs_diff_eq!(plain / n as f64, 1.0 / 3.0, epsilon = 0.01);
    }

    #[test]
    fn psa_limits_and_values() {
        let p = PsaParams::new(vec![0.0, 1.0]).unwrap();
        let s = psa_spectrum(&p, 0.0).unwrap();
        assert_eq!(s.values(), &[0.5, 0.5]);

        let s = psa_spectrum(&p, 1e4).unwrap();
        assert_abs_diff_eq!(s.values()[0], 1.0, epsilon = 1e-300);

        assert!(psa_spectrum(&p, f64::INFINITY).is_err());
        assert!(psa_spectrum(&p, -0.1).is_err());

        let p = PsaParams::equispaced(3).unwrap();
        let s = psa_spectrum(&p, 1.0).unwrap();
        let expect = [0.6652409557748218, 0.24472847105479764, 0.09003057317038046];
        for (a, b) in s.values().iter().zip(expect) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-14);
        }
    }

    #[test]
    fn psa_curve_monotone() {
        for d in 2..=4usize {
            let params = PsaParams::equispaced(d).unwrap();
            let grid: Vec<f64> = (0..200).map(|i| i as f64 * 0.05).collect();
            let curve = psa_curve(&params, &grid).unwrap();
            assert_eq!(curve[0].tau, f64::INFINITY);
            assert_abs_diff_eq!(curve[0].entropy, (d as f64).ln(), epsilon = 1e-12);
            for w in curve.windows(2) {
                assert!(w[1].tau < w[0].tau);
                assert!(w[1].entropy < w[0].entropy);
            }
        }
    }

    #[test]
    fn psa_path_within_exact_entropy_bounds() {
        // closed-form envelope check, much tighter than the interpolated one
        for d in 2..=4usize {
            let params = PsaParams::equispaced(d).unwrap();
            let grid: Vec<f64> = (0..300).map(|i| 1e-3 + (i as f64 * 0.05).powi(2)).collect();
            for p in psa_curve(&params, &grid).unwrap() {
                let (lo, hi) = crate::diagrams::entropy_bounds_at(d, p.tau).unwrap();
                assert!(
                    p.entropy >= lo - 1e-9 && p.entropy <= hi + 1e-9,
                    "d={d} zeta={} S={} bounds [{lo}, {hi}]",
                    p.zeta,
                    p.entropy
                );
            }
        }
    }

    #[test]
    fn psa_endpoint_limits() {
        let params = PsaParams::equispaced(4).unwrap();
        let end = psa_curve(&params, &[60.0]).unwrap()[0];
        assert!(end.tau < 0.05);
        assert!(end.entropy < 1e-20);
    }
}
