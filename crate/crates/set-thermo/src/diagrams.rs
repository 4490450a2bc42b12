//! Geometry of the entropy-SET region: boundary-curve enumeration, cusp
//! points, envelope containment, thermal entropy curves and the third-law
//! sweep.
//!
//! Each boundary curve fixes a block pattern on the purity indices: indices
//! below the block are 0, indices in the block share a common value `t`,
//! indices above it are 1. Sweeping `t` over `[0, 1]` traces one curve; the
//! `d(d-1)/2` block choices together bound the physically realizable region.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectra::{self, IndicesOfPurity};
use crate::states::gibbs_spectrum;

/// Default SET ceiling at which curves heading to infinity are truncated.
pub const DEFAULT_TAU_MAX: f64 = 1e3;

/// Block pattern `(first, last)` (1-based, inclusive) of the indices swept
/// together; indices below `first` are pinned to 0, above `last` to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurveLabel {
    pub first: usize,
    pub last: usize,
}

impl std::fmt::Display for CurveLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-{}", self.first, self.last)
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CurvePoint {
    /// Sweep parameter in `[0, 1]`.
    pub t: f64,
    pub tau: f64,
    pub entropy: f64,
}

/// Analytic limits of a curve, kept separately from the (possibly truncated)
/// sampled points.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CurveEndpoints {
    pub tau_at_t1: f64,
    pub entropy_at_t1: f64,
    /// `+inf` for curves whose block reaches the last index.
    #[serde(serialize_with = "crate::io::serialize_extended")]
    pub tau_at_t0: f64,
    pub entropy_at_t0: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagramCurve {
    pub label: CurveLabel,
    /// Points ordered by ascending SET.
    pub points: Vec<CurvePoint>,
    pub endpoints: CurveEndpoints,
}

/// All `d(d-1)/2` boundary curves at the given resolution, ordered by block.
/// Cosine-spaced sweep values concentrate samples near the cusp endpoints;
/// curves reaching infinite SET are truncated at `tau_max` (the analytic
/// endpoint stays available in [`DiagramCurve::endpoints`]).
pub fn boundary_curves(d: usize, resolution: usize, tau_max: f64) -> Result<Vec<DiagramCurve>> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    if resolution < 2 {
        return Err(Error::OutOfDomain {
            value: resolution as f64,
            domain: "[2, inf) (resolution)",
        });
    }
    if tau_max.is_nan() || tau_max <= 0.0 {
        return Err(Error::OutOfDomain {
            value: tau_max,
            domain: "(0, inf) (tau ceiling)",
        });
    }
    let mut labels = Vec::new();
    for first in 1..d {
        for last in first..d {
            labels.push(CurveLabel { first, last });
        }
    }
    labels
        .into_par_iter()
        .map(|label| trace_curve(d, label, resolution, tau_max))
        .collect()
}

fn block_indices(d: usize, label: CurveLabel, t: f64) -> IndicesOfPurity {
    let values: Vec<f64> = (1..d)
        .map(|k| {
            if k < label.first {
                0.0
            } else if k <= label.last {
                t
            } else {
                1.0
            }
        })
        .collect();
    IndicesOfPurity::new(values).expect("block pattern is ordered")
}

/// Purity radicand along a block curve: `P^2 = a t^2 + b`.
fn block_coefficients(d: usize, label: CurveLabel) -> (f64, f64) {
    let dd = d as f64;
    let weight = |k: usize| {
        let k = k as f64;
        1.0 / (k * (k + 1.0))
    };
    let a: f64 = (label.first..=label.last).map(weight).sum::<f64>() * dd / (dd - 1.0);
    let b: f64 = (label.last + 1..d).map(weight).sum::<f64>() * dd / (dd - 1.0);
    (a, b)
}

fn curve_point(d: usize, label: CurveLabel, t: f64) -> CurvePoint {
    let ips = block_indices(d, label, t);
    let p = spectra::global_purity_from_indices(&ips);
    CurvePoint {
        t,
        tau: spectra::set_temperature(p).expect("purity in [0,1]"),
        entropy: spectra::entropy_from_indices(&ips),
    }
}

fn trace_curve(d: usize, label: CurveLabel, resolution: usize, tau_max: f64) -> Result<DiagramCurve> {
    let (a, b) = block_coefficients(d, label);
    let mut points: Vec<CurvePoint> = Vec::with_capacity(resolution);
    for i in 0..resolution {
        // cosine spacing in t: dense near both cusps
        let phase = std::f64::consts::PI * i as f64 / (resolution - 1) as f64;
        let t = 0.5 * (1.0 - phase.cos());
        let point = curve_point(d, label, t);
        if point.tau <= tau_max {
            points.push(point);
        }
    }
    // ascending tau = descending t
    points.reverse();
    // if truncation dropped the mixed end, close the curve exactly at tau_max
    let p_cut = (1.0 / tau_max).tanh();
    if p_cut * p_cut >= b && !points.is_empty() {
        let t_cut = ((p_cut * p_cut - b).max(0.0) / a).sqrt();
        if t_cut <= 1.0 && points.last().is_none_or(|last| last.tau < tau_max) {
            let mut closing = curve_point(d, label, t_cut);
            closing.tau = tau_max;
            points.push(closing);
        }
    }
    if points.is_empty() {
        return Err(Error::Internal(format!(
            "curve {label} entirely above the tau ceiling {tau_max}"
        )));
    }
    let start = curve_point(d, label, 1.0);
    let endpoint_tau = if b == 0.0 {
        f64::INFINITY
    } else {
        spectra::set_temperature(b.sqrt().clamp(0.0, 1.0)).expect("purity in [0,1]")
    };
    let end_entropy = curve_point(d, label, 0.0).entropy;
    Ok(DiagramCurve {
        label,
        points,
        endpoints: CurveEndpoints {
            tau_at_t1: start.tau,
            entropy_at_t1: start.entropy,
            tau_at_t0: endpoint_tau,
            entropy_at_t0: end_entropy,
        },
    })
}

/// A non-smooth boundary point where a block of indices saturates: the first
/// `k` indices are 0, the remaining ones are 1.
#[derive(Debug, Clone, Serialize)]
pub struct CuspPoint {
    pub k: usize,
    pub indices: Vec<f64>,
    pub tau: f64,
    pub entropy: f64,
}

/// The `d - 2` cusp points of the region boundary (empty for `d = 2`).
pub fn cusp_points(d: usize) -> Result<Vec<CuspPoint>> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    (1..d - 1)
        .map(|k| {
            let values: Vec<f64> = (1..d).map(|i| if i <= k { 0.0 } else { 1.0 }).collect();
            let ips = IndicesOfPurity::new(values.clone())?;
            let p = spectra::global_purity_from_indices(&ips);
            Ok(CuspPoint {
                k,
                indices: values,
                tau: spectra::set_temperature(p)?,
                entropy: spectra::entropy_from_indices(&ips),
            })
        })
        .collect()
}

/// Verdict of an envelope query.
#[derive(Debug, Clone, Copy)]
pub struct Containment {
    pub inside: bool,
    /// Set when the query SET lies beyond the sampled curve range and the
    /// monotone extension of the envelope was used instead.
    pub extrapolated: bool,
    /// Interpolated lower-envelope estimate at the query SET.
    pub lower: f64,
    /// Interpolated upper-envelope estimate at the query SET.
    pub upper: f64,
}

/// Tests whether `(tau, entropy)` lies between the lower and upper envelopes
/// of the boundary curves, within tolerance `tol`.
///
/// Entropy grows monotonically along every curve, so the grid values
/// bracketing the query bound the curve on the whole cell; the verdict uses
/// those brackets (a linear chord would overshoot the lower envelope where
/// the curves bend exponentially, rejecting interior points near `tau -> 0`).
/// The chord interpolants are still reported as the envelope estimates.
///
/// Beyond the largest sampled SET the envelope is extended by the same
/// monotonicity: the last sampled lower bound and `ln d` bracket the region
/// there. Such queries are flagged.
pub fn envelope_contains(
    d: usize,
    curves: &[DiagramCurve],
    tau: f64,
    entropy: f64,
    tol: f64,
) -> Result<Containment> {
    if curves.is_empty() {
        return Err(Error::Internal("empty curve set".into()));
    }
    let mut lower = f64::INFINITY;
    let mut upper = f64::NEG_INFINITY;
    let mut lower_safe = f64::INFINITY;
    let mut upper_safe = f64::NEG_INFINITY;
    let mut covered = false;
    for curve in curves {
        if let Some(slice) = curve_slice(curve, tau) {
            covered = true;
            lower = lower.min(slice.chord);
            upper = upper.max(slice.chord);
            lower_safe = lower_safe.min(slice.cell_min);
            upper_safe = upper_safe.max(slice.cell_max);
        }
    }
    if !covered {
        let grid_max = curves
            .iter()
            .filter_map(|c| c.points.last().map(|p| p.tau))
            .fold(f64::NEG_INFINITY, f64::max);
        if tau > grid_max {
            // monotone extension toward the maximally mixed point
            let mut lower_end = f64::INFINITY;
            for curve in curves {
                if let Some(slice) = curve_slice(curve, grid_max) {
                    lower_end = lower_end.min(slice.cell_min);
                }
            }
            let upper_end = (d as f64).ln();
            return Ok(Containment {
                inside: entropy >= lower_end - tol && entropy <= upper_end + tol,
                extrapolated: true,
                lower: lower_end,
                upper: upper_end,
            });
        }
        return Err(Error::Internal(format!(
            "no boundary curve covers tau = {tau}"
        )));
    }
    Ok(Containment {
        inside: entropy >= lower_safe - tol && entropy <= upper_safe + tol,
        extrapolated: false,
        lower,
        upper,
    })
}

struct CurveSlice {
    chord: f64,
    cell_min: f64,
    cell_max: f64,
}

fn curve_slice(curve: &DiagramCurve, tau: f64) -> Option<CurveSlice> {
    let pts = &curve.points;
    let first = pts.first()?;
    let last = pts.last()?;
    if tau < first.tau || tau > last.tau {
        return None;
    }
    let idx = pts.partition_point(|p| p.tau < tau);
    if idx == 0 {
        return Some(CurveSlice {
            chord: first.entropy,
            cell_min: first.entropy,
            cell_max: first.entropy,
        });
    }
    let (a, b) = (&pts[idx - 1], &pts[idx.min(pts.len() - 1)]);
    let chord = if b.tau == a.tau {
        a.entropy
    } else {
        a.entropy + (tau - a.tau) / (b.tau - a.tau) * (b.entropy - a.entropy)
    };
    Some(CurveSlice {
        chord,
        cell_min: a.entropy.min(b.entropy),
        cell_max: a.entropy.max(b.entropy),
    })
}

/// Exact entropy bounds of the region at one SET value, solved per curve in
/// closed form (no grid interpolation).
pub fn entropy_bounds_at(d: usize, tau: f64) -> Result<(f64, f64)> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    if tau.is_nan() || tau < 0.0 {
        return Err(Error::OutOfDomain {
            value: tau,
            domain: "[0, inf] (SET)",
        });
    }
    let p = if tau.is_infinite() { 0.0 } else { (1.0 / tau).tanh() };
    let mut lower = f64::INFINITY;
    let mut upper = f64::NEG_INFINITY;
    for first in 1..d {
        for last in first..d {
            let label = CurveLabel { first, last };
            let (a, b) = block_coefficients(d, label);
            let t_sq = (p * p - b) / a;
            if !(-1e-12..=1.0 + 1e-12).contains(&t_sq) {
                continue;
            }
            let t = t_sq.max(0.0).sqrt().min(1.0);
            let s = spectra::entropy_from_indices(&block_indices(d, label, t));
            lower = lower.min(s);
            upper = upper.max(s);
        }
    }
    if lower > upper {
        return Err(Error::Internal(format!(
            "no boundary curve passes through tau = {tau}"
        )));
    }
    Ok((lower, upper))
}

/// One point of a thermal sweep: canonical temperature, Gibbs entropy and
/// the SET of the same thermal spectrum.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ThermalPoint {
    pub temperature: f64,
    pub entropy: f64,
    #[serde(serialize_with = "crate::io::serialize_extended")]
    pub tau: f64,
}

/// Gibbs entropy and SET of fixed energy levels over a positive ascending
/// temperature grid.
pub fn thermal_entropy_curve(energies: &[f64], t_grid: &[f64]) -> Result<Vec<ThermalPoint>> {
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
            let s = &thermal.probabilities;
            Ok(ThermalPoint {
                temperature: t,
                entropy: spectra::von_neumann_entropy(s),
                tau: spectra::set_temperature(spectra::global_purity(s))?,
            })
        })
        .collect()
}

/// One sample of the inverse-SET sweep.
#[derive(Debug, Clone)]
pub struct ThirdLawPoint {
    pub indices: IndicesOfPurity,
    pub p_global: f64,
    /// `+inf` exactly at the pure corner.
    pub beta: f64,
    /// Set where the purity is within `1e-12` of 1 and beta diverges.
    pub diverging: bool,
}

/// Inverse SET over a list of purity-index configurations.
pub fn third_law_sweep(configurations: &[IndicesOfPurity]) -> Vec<ThirdLawPoint> {
    configurations
        .iter()
        .map(|ips| {
            let p = spectra::global_purity_from_indices(ips);
            ThirdLawPoint {
                indices: ips.clone(),
                p_global: p,
                beta: spectra::inverse_set(p).expect("purity in [0,1]"),
                diverging: p > 1.0 - 1e-12,
            }
        })
        .collect()
}

/// Standard sweep grids: the full index range for `d = 2`, the ordered
/// triangle for `d = 3`, and the all-equal diagonal family for `d >= 4`.
pub fn third_law_grid(d: usize, steps: usize) -> Result<Vec<IndicesOfPurity>> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    if steps < 2 {
        return Err(Error::OutOfDomain {
            value: steps as f64,
            domain: "[2, inf) (grid steps)",
        });
    }
    let ticks = |n: usize| (0..n).map(move |i| i as f64 / (n - 1) as f64);
    let mut out = Vec::new();
    match d {
        2 => {
            for p in ticks(steps) {
                out.push(IndicesOfPurity::new(vec![p])?);
            }
        }
        3 => {
            for p2 in ticks(steps) {
                for p1 in ticks(steps).filter(|&p1| p1 <= p2) {
                    out.push(IndicesOfPurity::new(vec![p1, p2])?);
                }
            }
        }
        _ => {
            for p in ticks(steps) {
                out.push(IndicesOfPurity::new(vec![p; d - 1])?);
            }
        }
    }
    Ok(out)
}

/// Central-difference slope of the upper-boundary (all-indices-equal)
/// entropy with respect to the SET, at the given SET value.
pub fn upper_boundary_slope(d: usize, tau: f64, step: f64) -> Result<f64> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    if !(tau - step > 0.0 && step > 0.0) {
        return Err(Error::OutOfDomain {
            value: step,
            domain: "(0, tau) (finite-difference step)",
        });
    }
    let entropy_at = |tau: f64| -> Result<f64> {
        let t = (1.0 / tau).tanh();
        let ips = IndicesOfPurity::new(vec![t; d - 1])?;
        Ok(spectra::entropy_from_indices(&ips))
    };
    Ok((entropy_at(tau + step)? - entropy_at(tau - step)?) / (2.0 * step))
}
