//! Fractional mean curvature flows in the plane: volume-preserving flow of
//! nearly spherical sets and plain flow of periodic graphs, built on a
//! principal-value quadrature engine for the kernel |x-y|^{-(2+s)}, with a
//! diagnostics suite for the spectral identities, stability inequalities,
//! dissipation law and exponential convergence rates.
//!
//! Entry points:
//! - [`kernel`]: Riesz operator and Gagliardo seminorm on the circle and
//!   the periodic line.
//! - [`sphere`] / [`graph`]: curvature, moments, perimeter deficits and
//!   explicit flow stepping.
//! - [`spectral`]: mode projections and operator eigenvalues.
//! - [`diagnostics`]: inequality checks, expansion/divergence identities,
//!   asymptotic scans, dissipation check, rate fitting.
//! - [`run`]: configuration-driven experiment runner, check suites, and the
//!   CSV/JSON output formats consumed by the `fracmcf` binary.
//!
//! Runs with identical configuration and seed are byte-reproducible apart
//! from the JSON timestamp; node-parallel loops reduce in fixed order.

pub mod config;
pub mod diagnostics;
pub mod error;
pub mod field;
pub mod graph;
pub mod kernel;
pub mod quad;
pub mod run;
pub mod spectral;
pub mod sphere;

pub use error::{Error, Result};
pub use field::{Domain, FractionalOrder, HeightField};
