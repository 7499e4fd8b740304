//! Verification laboratory for the alternating (zigzag) numbers `A_n`.
//!
//! * [`exact`]: two independent exact oracles for `A_n`, Stirling, Bernoulli and Euler tables.
//! * [`representations`]: exact finite-sum and polynomial-kernel forms, compared with the oracle.
//! * [`quadrature`]: adaptive Gauss–Legendre engine, hyperbolic and Mellin integrals,
//!   contour trapezoid, truncated Fourier integral.
//! * [`spectral`]: half-integer zeta, Dirichlet beta, spectral series, Mellin identity checks.
//! * [`asymptotics`]: leading-order law and its error profile.
//! * [`arithmetic`]: congruence claims and eventual periods of `A_n mod m`.
//! * [`report`]: JSON/CSV report envelopes and the formula-status ledger.

pub mod arithmetic;
pub mod asymptotics;
pub mod encode;
pub mod error;
pub mod exact;
pub mod poly;
pub mod quadrature;
pub mod representations;
pub mod report;
pub mod spectral;

pub use error::{Error, Result};
pub use exact::{Oracle, StirlingTriangle, ZigzagTable};
