//! Computable ingredients of Kuznetsov-type sum formulas for Hilbert
//! modular groups over `Q` and real quadratic fields.
//!
//! The crate is organized bottom-up:
//!
//! - [`numberfield`]: exact field, ideal and residue-ring arithmetic;
//! - [`kloosterman`]: characters, Kloosterman sums, bounds and K-series;
//! - [`quadrature`], [`special`]: numerical infrastructure (adaptive
//!   Gauss–Kronrod, Gauss–Hermite, double-double, complex gamma);
//! - [`measures`]: Plancherel and reference measures, Monte-Carlo oracle;
//! - [`regions`]: spectral-space geometry, shells and region families;
//! - [`testfunctions`]: test functions, norms and local comparison integrals;
//! - [`besseltransform`]: Bessel functions of complex order and transforms;
//! - [`asymptotics`]: parameter choice, error budgets, main terms,
//!   condition checkers and the synthetic-spectrum pipeline.

pub mod asymptotics;
pub mod besseltransform;
pub mod error;
pub mod kloosterman;
pub mod measures;
pub mod numberfield;
pub mod quadrature;
pub mod regions;
pub mod testfunctions;
pub mod special;

pub use error::{Error, Result};
