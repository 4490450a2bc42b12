//! The spectral core: descending probability spectra, indices of purity,
//! the statistical effective temperature (SET) and its inverse, and the
//! entropies derived from them.
//!
//! Everything in this module is a pure function of eigenvalue data. States,
//! Hamiltonians and samplers elsewhere in the crate reduce their inputs to a
//! [`Spectrum`] and call in here.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{atanh_stable, two_prod, x_ln_x, Dd};

/// Validation tolerances. The defaults match the crate-wide conventions:
/// 1e-10 for trace-like sums, 1e-12 for algebraic identities and clamping.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Allowed deviation of a probability sum from 1.
    pub trace: f64,
    /// Allowed violation of orderings and algebraic identities.
    pub identity: f64,
    /// Magnitude below which a negative eigenvalue is clamped to zero.
    pub clamp: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            trace: 1e-10,
            identity: 1e-12,
            clamp: 1e-12,
        }
    }
}

pub const DEFAULT_TOLERANCES: Tolerances = Tolerances {
    trace: 1e-10,
    identity: 1e-12,
    clamp: 1e-12,
};

/// A descending-ordered probability spectrum of a unit-trace state.
///
/// Invariants enforced on construction: dimension `d >= 2`, entries
/// non-negative (tiny negatives are clamped and the vector renormalized),
/// entries sum to 1 within tolerance, entries non-increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        Self::with_tolerances(values, &DEFAULT_TOLERANCES)
    }

    pub fn with_tolerances(mut values: Vec<f64>, tol: &Tolerances) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::DimensionTooSmall(values.len()));
        }
        if let Some(&bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::OutOfDomain {
                value: bad,
                domain: "finite probabilities",
            });
        }
        for (i, v) in values.iter_mut().enumerate() {
            if *v < 0.0 {
                if *v < -tol.clamp {
                    return Err(Error::NegativeEigenvalue { index: i, value: *v });
                }
                *v = 0.0;
            }
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > tol.trace {
            return Err(Error::NotNormalized { sum, tol: tol.trace });
        }
        for i in 0..values.len() - 1 {
            if values[i] + tol.identity < values[i + 1] {
                return Err(Error::NotDescending {
                    index: i,
                    left: values[i],
                    right: values[i + 1],
                });
            }
        }
        // Renormalize so downstream identities hold to machine precision.
        for v in values.iter_mut() {
            *v /= sum;
        }
        Ok(Spectrum { values })
    }

    /// Sorts the entries descending (stable) before validating.
    pub fn from_unordered(mut values: Vec<f64>) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::OutOfDomain {
                value: bad,
                domain: "finite probabilities",
            });
        }
        values.sort_by(|a, b| b.partial_cmp(a).expect("finite values compare"));
        Self::new(values)
    }

    /// The maximally mixed spectrum `(1/d, ..., 1/d)`.
    pub fn uniform(d: usize) -> Self {
        Spectrum {
            values: vec![1.0 / d as f64; d.max(2)],
        }
    }

    /// The pure spectrum `(1, 0, ..., 0)`.
    pub fn pure(d: usize) -> Self {
        let mut values = vec![0.0; d.max(2)];
        values[0] = 1.0;
        Spectrum { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }
}

/// The `d - 1` ordered purity indices of a spectrum.
///
/// Index `k` (1-based) is `sum(l_1..l_k) - k * l_{k+1}`; the descending order
/// of the spectrum guarantees `0 <= P_1 <= ... <= P_{d-1} <= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicesOfPurity {
    values: Vec<f64>,
}

impl IndicesOfPurity {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        Self::with_tolerances(values, &DEFAULT_TOLERANCES)
    }

    pub fn with_tolerances(mut values: Vec<f64>, tol: &Tolerances) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::DimensionTooSmall(1));
        }
        for (i, v) in values.iter_mut().enumerate() {
            if !(-tol.identity..=1.0 + tol.identity).contains(v) {
                return Err(Error::IndexOutOfRange { index: i, value: *v });
            }
            *v = v.clamp(0.0, 1.0);
        }
        for i in 0..values.len() - 1 {
            if values[i] > values[i + 1] + tol.identity {
                return Err(Error::UnorderedIndices {
                    index: i,
                    left: values[i],
                    right: values[i + 1],
                });
            }
        }
        Ok(IndicesOfPurity { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Dimension of the underlying spectrum.
    pub fn dim(&self) -> usize {
        self.values.len() + 1
    }
}

/// Derived scalars of one spectrum, bundled for reporting.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralSummary {
    /// Purity `sum(l_i^2)`, in `(0, 1]`.
    pub gamma: f64,
    /// Global degree of purity, in `[0, 1]`.
    pub p_global: f64,
    /// Pairwise order parameter `max(0, 2 l_1 - 1)`.
    pub p_pairwise: f64,
    /// Statistical effective temperature; `+inf` at the maximally mixed point.
    #[serde(serialize_with = "crate::io::serialize_extended")]
    pub tau: f64,
    /// Inverse SET; `+inf` at the pure point.
    #[serde(serialize_with = "crate::io::serialize_extended")]
    pub beta: f64,
    /// Von Neumann entropy, in `[0, ln d]`.
    pub entropy: f64,
    /// Binary entropy of the bipartition `(l_1, rest)`, in `[0, ln 2]`.
    pub bipartite_entropy: f64,
}

/// Purity indices of a descending spectrum.
pub fn indices_of_purity(s: &Spectrum) -> IndicesOfPurity {
    let l = s.values();
    let mut partial = 0.0;
    let mut out = Vec::with_capacity(l.len() - 1);
    for k in 1..l.len() {
        partial += l[k - 1];
        let p = partial - k as f64 * l[k];
        out.push(p.clamp(0.0, 1.0));
    }
    IndicesOfPurity { values: out }
}

/// Inverse of [`indices_of_purity`]: rebuilds the descending spectrum.
///
/// Valid indices always produce a valid spectrum; a reconstructed entry below
/// `-1e-12` therefore signals an internal inconsistency and is escalated.
pub fn spectrum_from_indices(p: &IndicesOfPurity) -> Result<Spectrum> {
    let d = p.dim();
    let ips = p.values();
    // suffix[j] = sum_{i >= j} P_i / (i (i+1)), 1-based i
    let mut suffix = vec![0.0; d];
    for j in (0..d - 1).rev() {
        let i = (j + 1) as f64;
        suffix[j] = suffix[j + 1] + ips[j] / (i * (i + 1.0));
    }
    let mut values = Vec::with_capacity(d);
    for j in 1..=d {
        let prev = if j == 1 { 0.0 } else { ips[j - 2] };
        let lam = 1.0 / d as f64 - prev / j as f64 + suffix[j - 1];
        if lam < -1e-12 {
            return Err(Error::Internal(format!(
                "reconstructed spectrum entry {j} is {lam:e} < -1e-12"
            )));
        }
        values.push(lam.max(0.0));
    }
    Spectrum::new(values)
}

/// Purity `gamma = sum(l_i^2)`, in `[1/d, 1]`.
pub fn purity(s: &Spectrum) -> f64 {
    s.values().iter().map(|&l| l * l).sum()
}

/// Global degree of purity `sqrt((d gamma - 1) / (d - 1))`.
///
/// The radicand is evaluated as `d sum(l^2) - (sum l)^2` in double-double
/// arithmetic: near the maximally mixed point the cancellation in
/// `d gamma - 1` wipes out a plain f64 sum, which would break the agreement
/// with the pairwise and index-based forms. (For a unit sum the two
/// radicands are identical.)
pub fn global_purity(s: &Spectrum) -> f64 {
    let d = s.dim() as f64;
    let mut sq = Dd::default();
    let mut sum = Dd::default();
    for &l in s.values() {
        let (p, e) = two_prod(l, l);
        sq = sq.add_dd(Dd { hi: p, lo: e });
        sum = sum.add_f64(l);
    }
    let radicand = sq.scale(d).sub_dd(sum.square()).to_f64() / (d - 1.0);
    radicand.clamp(0.0, 1.0).sqrt()
}

/// Global degree of purity in its pairwise form
/// `sqrt(sum_{i<j} (l_i - l_j)^2 / (d - 1))`.
pub fn global_purity_pairwise(s: &Spectrum) -> f64 {
    let l = s.values();
    let d = l.len();
    let mut acc = 0.0;
    for i in 0..d {
        for j in i + 1..d {
            let diff = l[i] - l[j];
            acc += diff * diff;
        }
    }
    (acc / (d as f64 - 1.0)).clamp(0.0, 1.0).sqrt()
}

/// Global degree of purity from the purity indices:
/// `sqrt(d/(d-1) * sum_k P_k^2 / (k (k+1)))`.
pub fn global_purity_from_indices(p: &IndicesOfPurity) -> f64 {
    let d = p.dim() as f64;
    let mut acc = 0.0;
    for (k0, &pk) in p.values().iter().enumerate() {
        let k = (k0 + 1) as f64;
        acc += pk * pk / (k * (k + 1.0));
    }
    (d / (d - 1.0) * acc).clamp(0.0, 1.0).sqrt()
}

/// Statistical effective temperature `2 / ln((1+p)/(1-p))` of a degree of
/// purity `p` in `[0, 1]`.
///
/// Returns `+inf` at `p = 0` (maximally mixed) and `0` at `p = 1` (the pure
/// limit, by convention).
pub fn set_temperature(p: f64) -> Result<f64> {
    check_unit_interval(p, "[0, 1] (degree of purity)")?;
    if p == 0.0 {
        Ok(f64::INFINITY)
    } else if p == 1.0 {
        Ok(0.0)
    } else {
        Ok(1.0 / atanh_stable(p))
    }
}

/// Inverse SET `ln((1+p)/(1-p)) / 2`; diverges to `+inf` in the pure limit
/// `p = 1`, which is unattainable at any finite value.
pub fn inverse_set(p: f64) -> Result<f64> {
    check_unit_interval(p, "[0, 1] (degree of purity)")?;
    if p == 1.0 {
        Ok(f64::INFINITY)
    } else {
        Ok(atanh_stable(p))
    }
}

/// Von Neumann entropy `-sum(l ln l)` with `0 ln 0 = 0`.
pub fn von_neumann_entropy(s: &Spectrum) -> f64 {
    -s.values().iter().map(|&l| x_ln_x(l)).sum::<f64>()
}

/// Entropy evaluated directly from purity indices, without materializing the
/// spectrum. Agrees with [`von_neumann_entropy`] of [`spectrum_from_indices`].
pub fn entropy_from_indices(p: &IndicesOfPurity) -> f64 {
    let d = p.dim();
    let ips = p.values();
    let mut suffix = vec![0.0; d];
    for j in (0..d - 1).rev() {
        let i = (j + 1) as f64;
        suffix[j] = suffix[j + 1] + ips[j] / (i * (i + 1.0));
    }
    let mut entropy = 0.0;
    for j in 1..=d {
        let prev = if j == 1 { 0.0 } else { ips[j - 2] };
        let lam = 1.0 / d as f64 - prev / j as f64 + suffix[j - 1];
        entropy -= x_ln_x(lam.max(0.0));
    }
    entropy
}

/// Pairwise order parameter `max(0, l_1 - sum_{i>=2} l_i) = max(0, 2 l_1 - 1)`.
pub fn pairwise_order_parameter(s: &Spectrum) -> f64 {
    (2.0 * s.values()[0] - 1.0).max(0.0)
}

/// Binary entropy of the bipartition weights `(1+p)/2` and `(1-p)/2`,
/// in `[0, ln 2]`.
pub fn bipartite_entropy(p: f64) -> Result<f64> {
    check_unit_interval(p, "[0, 1] (order parameter)")?;
    Ok(-(x_ln_x((1.0 + p) / 2.0) + x_ln_x((1.0 - p) / 2.0)))
}

/// Low-temperature SET plateau of a state thermalizing onto a `g`-fold
/// degenerate ground manifold in dimension `d`:
/// `1 / atanh(sqrt((d/g - 1)/(d - 1)))`.
///
/// `g = d` gives `+inf` (maximally mixed projector); `g = 1` gives 0.
pub fn degeneracy_plateau(d: usize, g: usize) -> Result<f64> {
    if g < 1 || g > d {
        return Err(Error::BadDegeneracy { g, d });
    }
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let p = ((d as f64 / g as f64 - 1.0) / (d as f64 - 1.0)).sqrt();
    set_temperature(p.clamp(0.0, 1.0))
}

/// All derived scalars of one spectrum.
pub fn summarize(s: &Spectrum) -> SpectralSummary {
    let p_global = global_purity(s);
    let p_pairwise = pairwise_order_parameter(s);
    SpectralSummary {
        gamma: purity(s),
        p_global,
        p_pairwise,
        tau: set_temperature(p_global).expect("purity in [0,1]"),
        beta: inverse_set(p_global).expect("purity in [0,1]"),
        entropy: von_neumann_entropy(s),
        bipartite_entropy: bipartite_entropy(p_pairwise).expect("order parameter in [0,1]"),
    }
}

fn check_unit_interval(p: f64, domain: &'static str) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfDomain { value: p, domain });
    }
    Ok(())
}
