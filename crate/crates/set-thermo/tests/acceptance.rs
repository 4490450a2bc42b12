//! Acceptance suite: one test per exit criterion, each printing a PASS/FAIL
//! line with the measured numbers (run with `--nocapture` to see the lines
//! for passing criteria).
//!
//! Sampled inputs are generated inside this file with an independent
//! ChaCha-seeded Dirichlet sampler, so the checks do not ride on the
//! library's own sampling paths unless the criterion is about them.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use set_thermo::diagrams;
use set_thermo::ergotropy::{self, Placement};
use set_thermo::heisenberg::{self, Plateau};
use set_thermo::polarization::{self, Regularity};
use set_thermo::sampling::{self, Method, PsaParams, SamplerConfig};
use set_thermo::spectra::{self, IndicesOfPurity, Spectrum};
use set_thermo::states::{self, DensityMatrix, Hamiltonian};

/// Flat-Dirichlet spectrum, written against the raw RNG rather than the
/// library sampler.
fn dirichlet_spectrum(d: usize, rng: &mut ChaCha8Rng) -> Spectrum {
    let gaps: Vec<f64> = (0..d)
        .map(|_| -(1.0 - rng.gen::<f64>()).max(f64::MIN_POSITIVE).ln())
        .collect();
    let sum: f64 = gaps.iter().sum();
    Spectrum::from_unordered(gaps.iter().map(|g| g / sum).collect()).unwrap()
}

#[test]
fn criterion_01_heisenberg_plateau() {
    let start = Instant::now();
    let (numeric, theory) = match heisenberg::plateau(3).unwrap() {
        Plateau::Present { numeric, theory } => (numeric, theory),
        Plateau::Absent { .. } => panic!("criterion 01 (heisenberg plateau): FAIL — no plateau"),
    };
    let vs_reported = (numeric - 1.2764).abs() / 1.2764;
    let vs_theory = (numeric - theory).abs() / theory;
    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        vs_reported < 0.01,
        "criterion 01: FAIL — tau = {numeric} vs 1.2764, rel {vs_reported:e}"
    );
    assert!(
        vs_theory < 0.005,
        "criterion 01: FAIL — tau = {numeric} vs theory {theory}, rel {vs_theory:e}"
    );
    assert!(elapsed < 5.0, "criterion 01: FAIL — took {elapsed:.2} s");
    println!(
        "criterion 01 (heisenberg plateau): PASS — tau(1e-4) = {numeric:.6}, theory {theory:.6}, \
         rel {vs_theory:.2e}, {elapsed:.2} s"
    );
}

#[test]
fn criterion_02_parity_effect() {
    let start = Instant::now();
    for length in 2..=9usize {
        match heisenberg::plateau(length).unwrap() {
            Plateau::Present { numeric, theory } => {
                assert!(
                    length % 2 == 1,
                    "criterion 02: FAIL — even L = {length} reported a plateau"
                );
                let rel = (numeric - theory).abs() / theory;
                assert!(
                    rel < 0.005,
                    "criterion 02: FAIL — L = {length} plateau {numeric} vs {theory}, rel {rel:e}"
                );
            }
            Plateau::Absent { tau_at_probe } => {
                assert!(
                    length % 2 == 0,
                    "criterion 02: FAIL — odd L = {length} shows no plateau"
                );
                assert!(
                    tau_at_probe < 1e-2,
                    "criterion 02: FAIL — L = {length} tau(1e-4) = {tau_at_probe:e}"
                );
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 120.0, "criterion 02: FAIL — took {elapsed:.1} s");
    println!(
        "criterion 02 (parity effect L = 2..9): PASS — odd plateaus within 0.5%, even chains \
         below 1e-2, {elapsed:.1} s"
    );
}

#[test]
fn criterion_03_variance_identity() {
    let mut worst = 0.0f64;
    for length in 2..=9usize {
        let (numeric, theory) = heisenberg::variance_check(length).unwrap();
        worst = worst.max((numeric - theory).abs());
    }
    assert!(
        worst < 1e-9,
        "criterion 03: FAIL — worst |tr(H^2)/2^L - 3(L-1)| = {worst:e}"
    );
    println!("criterion 03 (variance identity L = 2..9): PASS — worst deviation {worst:e}");
}

#[test]
fn criterion_04_high_t_slope() {
    for length in 2..=9usize {
        let (fit, derived) = heisenberg::high_t_slope(length).unwrap();
        let rel = (fit - derived).abs() / derived;
        assert!(
            rel < 0.02,
            "criterion 04: FAIL — L = {length} fit {fit} vs derived {derived}, rel {rel:e}"
        );
        if length >= 4 {
            // the exponential-denominator reading of the slope must not fit
            let printed = ((2f64.powi(length as i32) - 1.0) / 3f64.powi(length as i32 - 1)).sqrt();
            let rel_printed = (fit - printed).abs() / printed;
            assert!(
                rel_printed > 0.02,
                "criterion 04: FAIL — L = {length} printed-form slope {printed} \
                 unexpectedly fits ({rel_printed:e})"
            );
        }
    }
    println!(
        "criterion 04 (high-T slope L = 2..9): PASS — derived form fits within 2%, \
         exponential-denominator form rejected for L >= 4"
    );
}

#[test]
fn criterion_05_qubit_resonance() {
    let grid: Vec<f64> = (0..1000).map(|i| 0.25 + 0.01 * i as f64).collect();

    let resonant = diagrams::thermal_entropy_curve(&[0.0, 2.0], &grid).unwrap();
    let mut worst_entropy = 0.0f64;
    for p in &resonant {
        // the d = 2 boundary curve evaluated at tau = T
        let boundary = spectra::bipartite_entropy((1.0 / p.temperature).tanh()).unwrap();
        worst_entropy = worst_entropy.max((p.entropy - boundary).abs());
    }
    assert!(
        worst_entropy < 1e-12,
        "criterion 05: FAIL — omega = 2 entropy mismatch {worst_entropy:e}"
    );

    let detuned = diagrams::thermal_entropy_curve(&[0.0, 2.5], &grid).unwrap();
    let mut worst_tau = 0.0f64;
    for p in &detuned {
        worst_tau = worst_tau.max((p.tau - 0.8 * p.temperature).abs());
    }
    assert!(
        worst_tau < 1e-12,
        "criterion 05: FAIL — omega = 2.5 tau mismatch {worst_tau:e}"
    );
    println!(
        "criterion 05 (qubit resonance): PASS — max |S_th - S_2| = {worst_entropy:e}, \
         max |tau - 0.8 T| = {worst_tau:e} over {} points",
        grid.len()
    );
}

#[test]
fn criterion_06_purity_form_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(601);
    let mut worst_purity = 0.0f64;
    let mut worst_entropy = 0.0f64;
    for d in 2..=8usize {
        for _ in 0..100_000 {
            let s = dirichlet_spectrum(d, &mut rng);
            let gamma_form = spectra::global_purity(&s);
            let pairwise_form = spectra::global_purity_pairwise(&s);
            let ips = spectra::indices_of_purity(&s);
            let index_form = spectra::global_purity_from_indices(&ips);
            worst_purity = worst_purity
                .max((gamma_form - pairwise_form).abs())
                .max((gamma_form - index_form).abs());
            worst_entropy = worst_entropy
                .max((spectra::von_neumann_entropy(&s) - spectra::entropy_from_indices(&ips)).abs());
        }
    }
    assert!(
        worst_purity < 1e-12,
        "criterion 06: FAIL — purity forms disagree by {worst_purity:e}"
    );
    assert!(
        worst_entropy < 1e-12,
        "criterion 06: FAIL — entropy routes disagree by {worst_entropy:e}"
    );
    println!(
        "criterion 06 (purity/entropy form equivalence): PASS — worst purity gap {worst_purity:e}, \
         worst entropy gap {worst_entropy:e} over 1e5 spectra per d in 2..=8"
    );
}

#[test]
fn criterion_07_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(701);
    let mut worst = 0.0f64;
    for d in 2..=8usize {
        for _ in 0..100_000 {
            let s = dirichlet_spectrum(d, &mut rng);
            let back = spectra::spectrum_from_indices(&spectra::indices_of_purity(&s)).unwrap();
            for (a, b) in s.values().iter().zip(back.values()) {
                worst = worst.max((a - b).abs());
            }
        }
    }
    assert!(
        worst < 1e-10,
        "criterion 07: FAIL — round-trip deviation {worst:e}"
    );
    println!(
        "criterion 07 (spectrum -> indices -> spectrum): PASS — worst elementwise deviation \
         {worst:e} over 1e5 spectra per d in 2..=8"
    );
}

#[test]
fn criterion_08_diagram_combinatorics() {
    for d in 2..=6usize {
        let curves = diagrams::boundary_curves(d, 64, diagrams::DEFAULT_TAU_MAX).unwrap();
        assert_eq!(
            curves.len(),
            d * (d - 1) / 2,
            "criterion 08: FAIL — curve count for d = {d}"
        );
        let cusps = diagrams::cusp_points(d).unwrap();
        assert_eq!(
            cusps.len(),
            d - 2,
            "criterion 08: FAIL — cusp count for d = {d}"
        );
    }
    let cusp_a = &diagrams::cusp_points(3).unwrap()[0];
    let tau_err = (cusp_a.tau - 2.0 / 3f64.ln()).abs();
    let entropy_err = (cusp_a.entropy - 2f64.ln()).abs();
    let ips = IndicesOfPurity::new(cusp_a.indices.clone()).unwrap();
    let purity_err = (spectra::global_purity_from_indices(&ips) - 0.5).abs();
    assert!(
        tau_err < 1e-12 && entropy_err < 1e-12 && purity_err < 1e-12,
        "criterion 08: FAIL — d = 3 cusp at tau err {tau_err:e}, S err {entropy_err:e}, \
         purity err {purity_err:e}"
    );
    println!(
        "criterion 08 (diagram combinatorics): PASS — d(d-1)/2 curves and d-2 cusps for \
         d = 2..6; d = 3 cusp matches (2/ln 3, ln 2) with purity 1/2"
    );
}

#[test]
fn criterion_09_envelope_containment() {
    for d in [3usize, 4] {
        let curves = diagrams::boundary_curves(d, 2048, diagrams::DEFAULT_TAU_MAX).unwrap();
        let cfg = SamplerConfig::new(d, 100_000, 900 + d as u64, Method::IpSphere).unwrap();
        let cloud = sampling::sample_ips(&cfg).unwrap();
        let mut violations = 0usize;
        for ips in &cloud {
            let tau = spectra::set_temperature(spectra::global_purity_from_indices(ips)).unwrap();
            let entropy = spectra::entropy_from_indices(ips);
            let c = diagrams::envelope_contains(d, &curves, tau, entropy, 1e-6).unwrap();
            if !c.inside {
                violations += 1;
            }
        }
        assert_eq!(
            violations, 0,
            "criterion 09: FAIL — {violations} of 1e5 sphere samples outside the d = {d} envelope"
        );

        let params = PsaParams::equispaced(d).unwrap();
        let zeta_grid: Vec<f64> = (0..512)
            .map(|i| {
                let u = i as f64 / 511.0;
                60.0 * u * u
            })
            .collect();
        let path = sampling::psa_curve(&params, &zeta_grid).unwrap();
        for p in &path {
            let c = diagrams::envelope_contains(d, &curves, p.tau, p.entropy, 1e-6).unwrap();
            assert!(
                c.inside,
                "criterion 09: FAIL — ansatz point (tau {}, S {}) outside d = {d} envelope",
                p.tau, p.entropy
            );
        }
    }
    println!(
        "criterion 09 (envelope containment): PASS — 1e5 sphere samples and the full ansatz \
         path inside the d = 3 and d = 4 envelopes at 1e-6"
    );
}

#[test]
fn criterion_10_ergotropy_bounds() {
    let start = Instant::now();

    // two-level exactness: 1e6 rotated samples never exceed the bound curve
    let eps2 = 3.86;
    let h2 = Hamiltonian::from_energies(&[0.0, eps2]);
    let half = 500_000usize;
    let mut spectra_pool = Vec::with_capacity(2 * half);
    let ginibre_cfg = SamplerConfig::new(2, half, 1001, Method::Ginibre).unwrap();
    for rho in sampling::sample_ginibre(&ginibre_cfg).unwrap() {
        spectra_pool.push(rho.spectrum().unwrap());
    }
    let uniform_cfg = SamplerConfig::new(2, half, 1002, Method::UniformEntropy).unwrap();
    let draw = sampling::sample_uniform_entropy(&uniform_cfg, 20).unwrap();
    assert!(draw.complete, "criterion 10: FAIL — d = 2 sampler incomplete");
    spectra_pool.extend(draw.spectra);
    let records =
        ergotropy::ergotropy_scatter(&spectra_pool, &h2, 1003, Placement::HaarRotated).unwrap();
    let mut worst_excess = f64::NEG_INFINITY;
    for r in &records {
        let bound = eps2 * (2.0 * r.lambda_max - 1.0);
        worst_excess = worst_excess.max(r.work - bound);
    }
    assert!(
        worst_excess <= 1e-9,
        "criterion 10: FAIL — d = 2 sample exceeds the bound curve by {worst_excess:e}"
    );
    println!(
        "criterion 10a (d = 2 exact bound): PASS — worst excess {worst_excess:e} over 1e6 samples"
    );

    // four-level bound: small Ginibre exceedance fraction in both diagrams
    let eps4 = 9.51;
    let h4 = Hamiltonian::from_energies(&[0.0, 3.75, 7.32, eps4]);
    let n4 = 200_000usize;
    let cfg4 = SamplerConfig::new(4, n4, 1004, Method::Ginibre).unwrap();
    let mut pool4 = Vec::with_capacity(n4);
    for rho in sampling::sample_ginibre(&cfg4).unwrap() {
        pool4.push(rho.spectrum().unwrap());
    }
    let records4 =
        ergotropy::ergotropy_scatter(&pool4, &h4, 1005, Placement::HaarRotated).unwrap();
    let mut above_entropy = 0usize;
    let mut above_tau = 0usize;
    let mut exceeder_coherences: Vec<f64> = Vec::new();
    for r in &records4 {
        let p_at_entropy = ergotropy::structured_purity_for_entropy(4, r.entropy).unwrap();
        let bound_entropy = eps4 * p_at_entropy;
        let p_at_tau = if r.tau.is_infinite() { 0.0 } else { (1.0 / r.tau).tanh() };
        let bound_tau = eps4 * p_at_tau;
        let mut above = false;
        if r.work > bound_entropy + 1e-12 {
            above_entropy += 1;
            above = true;
        }
        if r.work > bound_tau + 1e-12 {
            above_tau += 1;
            above = true;
        }
        if above {
            exceeder_coherences.push(r.coherence);
        }
    }
    let frac_entropy = above_entropy as f64 / n4 as f64;
    let frac_tau = above_tau as f64 / n4 as f64;
    assert!(
        frac_entropy < 0.04,
        "criterion 10: FAIL — {frac_entropy:.4} of Ginibre samples above the bound at matched entropy"
    );
    assert!(
        frac_tau < 0.04,
        "criterion 10: FAIL — {frac_tau:.4} of Ginibre samples above the bound at matched SET"
    );
    println!(
        "criterion 10b (d = 4 exceedance fraction): PASS — {frac_entropy:.4} above at matched \
         entropy, {frac_tau:.4} above at matched SET (both < 0.04)"
    );

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 300.0, "criterion 10: FAIL — took {elapsed:.1} s");

    // coherence of the exceeding samples
    let max_coherence = exceeder_coherences.iter().cloned().fold(0.0f64, f64::max);
    let offenders = exceeder_coherences.iter().filter(|&&c| c >= 1e-6).count();
    assert!(
        offenders == 0,
        "criterion 10c (exceeder coherence): FAIL — {offenders} of {} samples above the \
         structured bound have relative entropy of coherence >= 1e-6 (max {max_coherence:.3}); \
         Haar-rotated exceeders are nearly but not exactly diagonal, so the 1e-6 reading of \
         \"negligible coherence\" cannot be met by the sampling procedure itself",
        exceeder_coherences.len()
    );
    println!(
        "criterion 10c (exceeder coherence): PASS — every sample above the bound has \
         coherence < 1e-6 (max {max_coherence:e}), {elapsed:.1} s total"
    );
}

#[test]
fn criterion_11_structured_state_coherence() {
    let mut worst = 0.0f64;
    for d in [2usize, 3, 4, 6] {
        let energies: Vec<f64> = (0..d).map(|i| 1.5 * i as f64).collect();
        let h = Hamiltonian::from_energies(&energies);
        let (_, basis) = h.energy_levels().unwrap();
        for step in 0..=10 {
            let lambda1 = 1.0 / d as f64 + (1.0 - 1.0 / d as f64) * step as f64 / 10.0;
            let spectrum = ergotropy::structured_spectrum(d, lambda1).unwrap();
            // structured state: diagonal in the energy basis, largest weight
            // on the top level
            let mut populations = spectrum.values().to_vec();
            populations.reverse();
            let m = nalgebra::DMatrix::from_fn(d, d, |i, j| {
                if i == j {
                    num_complex::Complex64::new(populations[i], 0.0)
                } else {
                    num_complex::Complex64::new(0.0, 0.0)
                }
            });
            let rho = DensityMatrix::new(m).unwrap();
            worst = worst.max(states::rel_entropy_coherence(&rho, &basis).unwrap());
        }
    }
    assert!(
        worst < 1e-12,
        "criterion 11: FAIL — structured-state coherence up to {worst:e}"
    );
    println!(
        "criterion 11 (structured-state coherence): PASS — worst coherence {worst:e} \
         across d in {{2, 3, 4, 6}}"
    );
}

#[test]
fn criterion_12_third_law() {
    // divergence of the inverse SET approaching the pure corner
    let mut last = -1.0f64;
    for k in 1..=12 {
        let p = 1.0 - 10f64.powi(-k);
        let beta = spectra::inverse_set(p).unwrap();
        assert!(
            beta > last,
            "criterion 12: FAIL — inverse SET not increasing at k = {k}"
        );
        last = beta;
    }
    assert!(
        last > 13.5,
        "criterion 12: FAIL — inverse SET at purity 1 - 1e-12 only reached {last}"
    );

    // slope flattening on the degenerate upper boundary
    for d in [2usize, 3, 4] {
        let slope = diagrams::upper_boundary_slope(d, 1e-2, 1e-3).unwrap().abs();
        assert!(
            slope < 1e-3,
            "criterion 12: FAIL — upper-boundary slope {slope:e} at tau = 1e-2 for d = {d}"
        );
    }

    // telescoping identity and its purity consequence
    for d in 2..=64usize {
        let sum: f64 = (1..d).map(|k| 1.0 / (k as f64 * (k as f64 + 1.0))).sum();
        let gap = (sum - (1.0 - 1.0 / d as f64)).abs();
        assert!(
            gap < 1e-14,
            "criterion 12: FAIL — telescoping sum off by {gap:e} at d = {d}"
        );
        let ones = IndicesOfPurity::new(vec![1.0; d - 1]).unwrap();
        let p = spectra::global_purity_from_indices(&ones);
        assert!(
            (p - 1.0).abs() < 1e-12,
            "criterion 12: FAIL — all-ones purity {p} at d = {d}"
        );
    }
    println!(
        "criterion 12 (third law): PASS — inverse SET monotone up to {last:.2} at k = 12, \
         upper-boundary slope below 1e-3 at tau = 1e-2, telescoping exact to 1e-14 for d = 2..64"
    );
}

#[test]
fn criterion_13_characteristic_decomposition() {
    let mut rng = ChaCha8Rng::seed_from_u64(1301);
    let mut worst = 0.0f64;
    for i in 0..10_000 {
        let spectrum = dirichlet_spectrum(3, &mut rng);
        let basis = sampling::haar_unitary(3, 130_000 + i).unwrap();
        let rho = DensityMatrix::from_spectrum_and_basis(&spectrum, &basis).unwrap();
        let dec = polarization::characteristic_decomposition(&rho).unwrap();
        let err = (polarization::reconstruct(&dec) - rho.matrix()).norm();
        worst = worst.max(err);
    }
    assert!(
        worst < 1e-12,
        "criterion 13: FAIL — worst reconstruction error {worst:e} over 1e4 random qutrits"
    );

    // equal mixture of a circular and a linear eigenstate is nonregular
    let inv = 1.0 / 2f64.sqrt();
    let c = num_complex::Complex64::new;
    let v1 = [c(inv, 0.0), c(0.0, inv), c(0.0, 0.0)];
    let v2 = [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
    let v3 = [c(inv, 0.0), c(0.0, -inv), c(0.0, 0.0)];
    let mut m = nalgebra::DMatrix::zeros(3, 3);
    for (w, v) in [(0.5, v1), (0.3, v2), (0.2, v3)] {
        for i in 0..3 {
            for j in 0..3 {
                m[(i, j)] += v[i] * v[j].conj() * c(w, 0.0);
            }
        }
    }
    let rho = DensityMatrix::new(m).unwrap();
    let dec = polarization::characteristic_decomposition(&rho).unwrap();
    let re = dec.discriminating_part.map(|z| z.re);
    let expect = [0.25, 0.25, 0.5];
    for i in 0..3 {
        for j in 0..3 {
            let target = if i == j { expect[i] } else { 0.0 };
            assert!(
                (re[(i, j)] - target).abs() < 1e-12,
                "criterion 13: FAIL — Re discriminating part ({i},{j}) = {}",
                re[(i, j)]
            );
        }
    }
    assert_eq!(
        polarization::classify_regularity(&dec),
        Regularity::Nonregular,
        "criterion 13: FAIL — circular/linear mixture not classified nonregular"
    );
    println!(
        "criterion 13 (characteristic decomposition): PASS — worst reconstruction error \
         {worst:e} over 1e4 qutrits; circular/linear example nonregular with the expected \
         real part"
    );
}
