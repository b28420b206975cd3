//! Discrete exterior calculus on the square lattice ℤ².
//!
//! Forms of degree 0, 1 and 2 live on finite centered windows of the lattice
//! and are extended by zero outside them. On top of that representation the
//! crate provides
//!
//! * the calculus itself: coboundary, cup product, Hodge star and its
//!   inverse, codifferential and the discrete Laplace-Beltrami operator
//!   ([`operators`]),
//! * numerical checks of the operator's spectral structure ([`spectral`]),
//! * the resolvent `(-Δ - λ)⁻¹`, its decaying root and the closed-form
//!   product kernel ([`green`]),
//! * two independent reference computations of the lattice Green function,
//!   a Dirichlet-truncated linear solve and a periodic trapezoid quadrature
//!   of the Fourier integral, with a comparison harness ([`oracle`]).
//!
//! Hot loops (stencil application, grid evaluation, sampling) run row
//! parallel through rayon when the `parallel` feature is on; see
//! [`Execution`].

pub mod cochain;
pub mod exec;
pub mod green;
pub mod io;
pub mod operators;
pub mod oracle;
pub mod spectral;
pub mod stencil;

pub use cochain::{make_cochain, Cochain, CochainError, Component, Degree, GridIndex, Window};
pub use exec::Execution;
pub use green::{make_context, GreenError, GreenKernel, KernelSource, ResolventContext, Sign};
pub use oracle::{OracleConfig, OracleError, ResidualReport};

/// Complex scalar used for every coefficient.
pub type C64 = num_complex::Complex64;
