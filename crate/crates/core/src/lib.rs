//! High-frequency spectral stability of ZND strong detonations.
//!
//! The library builds steady overdriven detonation profiles for an ideal
//! A→B reacting gas, assembles the linearized 5x5 spectral systems, and
//! evaluates the high-wavenumber stability machinery two independent ways:
//! closed-form turning-point asymptotics (reflection coefficient, approximate
//! stability function) and an exact finite-wavenumber decaying solution
//! computed by stiff ODE integration. Disagreement between the two routes is
//! treated as an internal-consistency failure, not as data.
//!
//! Module map:
//! - [`eos`]: ideal-gas A→B closures and every thermodynamic partial the
//!   linearization needs.
//! - [`profile`]: steady profile construction, classification, and analytic
//!   continuation to complex positions.
//! - [`frame`]: pointwise spectral data (branch-tracked square root,
//!   eigenvalues, eigenvector transform, coefficient matrices, diagonal
//!   corrections, turning points).
//! - [`wkb`]: phase/amplitude exponents on contours, the leading-order
//!   approximate solution, beta integrals and the reflection coefficient,
//!   and the asymptotic boundary value.
//! - [`resolvent`]: the exact decaying solution, complex continuation,
//!   and the gap-lemma / parameter-problem fixed-point validators.
//! - [`stability`]: shock jump data and both forms of the stability
//!   function, plus closed-form hybrid checks.
//! - [`predictor`]: the instability criterion, predicted unstable loci, and
//!   winding-number (argument principle) verification.
//! - [`crosscheck`]: the end-to-end verification suite used by tests and by
//!   the CLI `crosscheck` subcommand.

pub mod contour;
pub mod crosscheck;
pub mod eos;
pub mod error;
pub mod fixtures;
pub mod frame;
pub mod linalg;
pub mod ode;
pub mod predictor;
pub mod profile;
pub mod quad;
pub mod resolvent;
pub mod stability;
pub mod wkb;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
