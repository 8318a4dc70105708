//! Exact large-N moments of Jacobi, Laguerre and delay-time β-ensembles.
//!
//! The moments `<T^n>` of a single eigenvalue are computed four ways
//! (recurrence, closed-form sum, generating-function series, weighted
//! lattice-path count), all in exact rational arithmetic, and can be checked
//! against Metropolis–Hastings sampling of the finite-N densities in [`mc`].

pub mod combinatorics;
pub mod ensembles;
pub mod error;
pub mod genfunc;
pub mod mc;
pub mod moments;
pub mod rational;
pub mod series;
pub mod verify;

pub use ensembles::{a_params, transport_to_jacobi, AParams, EnsembleKind, EnsembleSpec};
pub use error::Error;
pub use moments::{Backend, MomentResult};
pub use rational::Rational;
pub use series::PowerSeries;
