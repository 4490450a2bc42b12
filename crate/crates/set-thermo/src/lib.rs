//! Spectral thermodynamics for finite-dimensional states.
//!
//! Every density matrix and every classical polarization coherency matrix is,
//! mathematically, the same object: a positive-semidefinite Hermitian matrix
//! of unit trace. This crate works with the eigenvalue spectrum of such
//! matrices and derives temperature-like and entropy-like scalars from it
//! alone, with no reference to a Hamiltonian:
//!
//! - indices of purity and the global degree of purity ([`spectra`]),
//! - the statistical effective temperature (SET) and its inverse,
//! - entropy-SET diagrams with their boundary curves and cusps ([`diagrams`]),
//! - ergotropy bounds from structured spectra ([`ergotropy`]),
//! - exact diagonalization of small Heisenberg chains ([`heisenberg`]),
//! - the characteristic decomposition of 3x3 polarization states
//!   ([`polarization`]),
//! - seeded, reproducible spectrum and state samplers ([`sampling`]).
//!
//! All computations are pure functions over immutable values and are safe to
//! call concurrently. Randomized routines take explicit 64-bit seeds and
//! derive one RNG stream per sample, so results are independent of thread
//! count and reproduce bit-for-bit.

pub mod diagrams;
mod eigen;
pub mod ergotropy;
pub mod error;
pub mod heisenberg;
pub mod io;
mod numeric;
pub mod polarization;
pub mod sampling;
pub mod spectra;
pub mod states;

pub use error::{Error, Result};
pub use spectra::{IndicesOfPurity, SpectralSummary, Spectrum};
pub use states::{DensityMatrix, Hamiltonian};

// Run every code block of the book as a doctest, so the guide and the
// library cannot drift apart (`cargo test --doc`).
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/purity-and-set.md")]
    mod purity_and_set {}
    #[doc = include_str!("../../../book/src/thermal-states.md")]
    mod thermal_states {}
    #[doc = include_str!("../../../book/src/entropy-diagrams.md")]
    mod entropy_diagrams {}
    #[doc = include_str!("../../../book/src/sampling.md")]
    mod sampling_chapter {}
    #[doc = include_str!("../../../book/src/ergotropy.md")]
    mod ergotropy_chapter {}
    #[doc = include_str!("../../../book/src/heisenberg-chains.md")]
    mod heisenberg_chains {}
    #[doc = include_str!("../../../book/src/polarization.md")]
    mod polarization_chapter {}
    #[doc = include_str!("../../../book/src/third-law.md")]
    mod third_law {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli_chapter {}
}
