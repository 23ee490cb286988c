//! Local test functions `φ_j` (holomorphic on `|Re z| ≤ τ`, even, with
//! polynomial decay of exponent `a`, plus values at the discrete-series
//! points), the three concrete constructions (sharp Gaussians, `φ_p`,
//! `λ`-smoothed indicators), the norm `N_j`, and the local comparison
//! integrals `I_α`, `J_α`.

mod gaussian;
mod norm;
mod phip;
mod smoothed;

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::measures::{Parity, SpectralFunction};
use crate::regions::SpectralPoint;
use crate::{Error, Result};

pub use gaussian::{gaussian_box_mass, gaussian_tail, local_comparison, npl_smoothing_difference, GaussianPhi, LocalComparison};
pub use norm::{norm_n, validate, NormOptions, ValidationReport};
pub use phip::{DeltaAtDiscrete, PhiP};
pub use smoothed::{LambdaSmoothed, SmoothingRule};

/// Strip half-width `τ ∈ (1/4, 1/2)`, decay exponent `a > 2`, parity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestParams {
    pub tau: f64,
    pub a: f64,
    pub parity: Parity,
}

impl TestParams {
    pub fn new(tau: f64, a: f64, parity: Parity) -> Result<Self> {
        if !(tau > 0.25 && tau < 0.5) {
            return Err(Error::invalid(format!("strip half-width τ = {tau} must lie in (1/4, 1/2)")));
        }
        if !(a > 2.0 && a.is_finite()) {
            return Err(Error::invalid(format!("decay exponent a = {a} must exceed 2")));
        }
        Ok(TestParams { tau, a, parity })
    }
}

/// Where a test function came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    Gaussian { q: f64, u: f64 },
    Delta { q: f64 },
    PhiP { p: f64 },
    LambdaSmoothed { t: f64, support: (f64, f64) },
    User,
}

/// A local test function on `{|Re z| ≤ τ} ∪ {(b−1)/2 : b ≥ 2, b ≡ χ (2)}`.
pub trait LocalTestFunction: Send + Sync {
    /// Value on the strip `|Re z| ≤ τ` (callers stay inside the strip).
    fn eval(&self, z: Complex64) -> Complex64;
    /// Value at a discrete-series point `β = (b−1)/2` (outside the strip).
    fn eval_discrete(&self, beta: f64) -> f64;
    fn params(&self) -> TestParams;
    fn provenance(&self) -> Provenance {
        Provenance::User
    }
    /// Imaginary parts near which the function has narrow features
    /// (used to refine sampling grids).
    fn features(&self) -> Vec<f64> {
        Vec::new()
    }

    /// Value at a spectral point (real for the even, real-on-axes
    /// functions built here).
    fn at(&self, nu: SpectralPoint) -> f64 {
        match nu {
            SpectralPoint::Principal(t) => self.eval(Complex64::new(0.0, t)).re,
            SpectralPoint::Complementary(x) => self.eval(Complex64::new(x, 0.0)).re,
            SpectralPoint::Discrete(b) => self.eval_discrete(b),
        }
    }
}

/// Adapter presenting a local test function to the measure integrators.
pub struct OnAxes<'a>(pub &'a dyn LocalTestFunction);

impl SpectralFunction for OnAxes<'_> {
    fn on_imag(&self, t: f64) -> f64 {
        self.0.eval(Complex64::new(0.0, t)).re
    }
    fn on_real(&self, x: f64) -> f64 {
        if x <= self.0.params().tau {
            self.0.eval(Complex64::new(x, 0.0)).re
        } else {
            self.0.eval_discrete(x)
        }
    }
}

/// `φ(ν) = ∏_j φ_j(ν_j)`.
#[derive(Clone)]
pub struct TestFunctionProduct {
    pub factors: Vec<Arc<dyn LocalTestFunction>>,
}

impl TestFunctionProduct {
    pub fn new(factors: Vec<Arc<dyn LocalTestFunction>>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::invalid("a test function needs at least one place"));
        }
        Ok(TestFunctionProduct { factors })
    }

    pub fn at(&self, nu: &[SpectralPoint]) -> Result<f64> {
        if nu.len() != self.factors.len() {
            return Err(Error::invalid(format!("{} coordinates for {} places", nu.len(), self.factors.len())));
        }
        Ok(self.factors.iter().zip(nu).map(|(f, &v)| f.at(v)).product())
    }
}
