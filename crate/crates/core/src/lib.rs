//! Two-time Leggett–Garg quasi-probabilities for Gaussian (squeezed-coherent)
//! projectors.
//!
//! Two systems are covered:
//!
//! * a harmonic oscillator prepared in a displaced thermal state
//!   ([`oscillator`]), cross-checked by dense truncated Fock-space matrices
//!   ([`fock`]) and by a characteristic-function route built on the generic
//!   complex Gaussian integral engine ([`numerics::gaussian`]);
//! * a local mode of the (1+1)-dimensional chiral scalar field in its vacuum
//!   ([`field`]), where the two-time term is a four-dimensional complex
//!   Gaussian integral evaluated in closed form and checked against tensor
//!   Gauss–Hermite quadrature.
//!
//! [`explorer`] scans parameter planes, extracts the `q = 0` level set and
//! minimises `q` with a multi-start Nelder–Mead search.
//!
//! All physics entry points are pure functions of value inputs. Grid work goes
//! through [`exec`], which uses rayon when the `parallel` feature is enabled
//! and falls back to a plain iterator otherwise; results are identical either
//! way.

pub mod crosscheck;
pub mod error;
pub mod exec;
pub mod explorer;
pub mod field;
pub mod fock;
pub mod numerics;
pub mod oscillator;
pub mod outcome;
pub mod tolerances;

pub use error::{LgiError, Result};
pub use exec::Execution;
pub use numerics::Complex;
pub use outcome::{Outcome, OutcomePair, QuasiProbTable};

/// Crate version recorded in scan metadata and run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
