//! Numerical toolkit for the discrete Laplacian on the cubic lattice `Z^d`.
//!
//! The crate evaluates and verifies, at desk scale, the explicit kernels,
//! constants and inequalities that govern the free lattice Schrödinger group
//! `e^{itΔ}` and resolvent `(Δ - z)^{-1}`, together with a Birman–Schwinger
//! spectral engine for `H = Δ + V` with finitely supported potentials.
//!
//! Organization:
//! - [`lattice`]: lattice points, boxes, finitely supported sequences, weights.
//! - [`quadrature`]: adaptive panel integration with certified tail majorants.
//! - [`linalg`]: dense kernel matrices, norms, spectra, and matrix-free Lanczos.
//! - [`bessel`]: certified `J_n(t)` evaluation and the pointwise bound suite.
//! - [`constants`]: every closed-form constant with its admissibility domain.
//! - [`propagator`]: the kernel of `e^{itΔ}` and the dispersive-decay verifiers.
//! - [`resolvent`]: free-resolvent kernels up to the spectrum and their bounds.
//! - [`schrodinger`]: boxed Hamiltonians, Birman–Schwinger scans, wave operators.
//! - [`inequalities`]: discrete Young / Riesz–Thorin / summation-estimate probes.
//! - [`report`]: verdict records, anchors registry, run configuration.
//! - [`suites`]: the named verification sweeps driven by the CLI and tests.
//! - [`oracle`]: independent reference implementations used for cross-checks.

pub mod bessel;
pub mod constants;
pub mod error;
pub mod inequalities;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod propagator;
pub mod quadrature;
pub mod report;
pub mod resolvent;
pub mod schrodinger;
pub mod suites;

pub use error::{Error, Result};
pub use lattice::{LatticeBox, LatticeVector, Sequence};
pub use report::{RunConfig, Status, VerdictRecord};

/// Scalar type used throughout; all kernels are double precision.
pub type Complex = num_complex::Complex64;
