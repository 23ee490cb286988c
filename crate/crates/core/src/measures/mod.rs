//! Spectral measures: the Plancherel measures `pl_χ` (in `λ`) and `ν̃pl`
//! (in `ν`), the reference measures `ν̃_b` and `V_b`, and a seeded
//! Monte-Carlo oracle for sets that are not products of intervals.
//!
//! Spectral parameters are written `λ = 1/4 − ν²`. At one place the set
//! `Y_χ` of admissible `ν` is the imaginary half-line `i[0, ∞)`, the
//! complementary interval `(0, ν_θ]` and the discrete series
//! `β ∈ (χ+1)/2 + N₀`. Points on the imaginary axis are stored by their
//! imaginary part `t ≥ 0`.

mod montecarlo;
mod plancherel;
mod reference;
mod result;
mod sets;

pub use montecarlo::{monte_carlo_measure, MC_BATCH};
pub use plancherel::{npl, npl_density, npl_fn, npl_place, pl_lambda, pl_lambda_fn, pl_lambda_place, w_plancherel};
pub use reference::{nv_b, nv_b_place, reference_antiderivative, v_b_lambda, v_b_lambda_place, v_lambda_antiderivative};
pub use result::{MeasureResult, Method};
pub use sets::{LambdaRegion, LambdaSet, Parity, PlaceSet, ProductRegion};

/// A real-valued function on the spectral parameter space at one place,
/// given by its values `g(it)` on the imaginary axis and `g(x)` on the
/// real axis.
pub trait SpectralFunction: Sync {
    fn on_imag(&self, t: f64) -> f64;
    fn on_real(&self, x: f64) -> f64;
}

/// Default bound `λ_* = 77/324` towards the Selberg eigenvalue conjecture.
pub const LAMBDA_STAR: f64 = 77.0 / 324.0;

/// Spectral constants shared by the reference measures.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SpectralConfig {
    /// Lower bound for exceptional eigenvalues, `0 < λ_* ≤ 1/4`.
    pub lambda_star: f64,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        SpectralConfig { lambda_star: LAMBDA_STAR }
    }
}

impl SpectralConfig {
    /// `ν_θ = √(1/4 − λ_*)`; `1/9` for the default.
    pub fn nu_theta(&self) -> f64 {
        (0.25 - self.lambda_star).max(0.0).sqrt()
    }

    pub fn validate(&self) -> crate::Result<()> {
        if !(self.lambda_star > 0.0 && self.lambda_star <= 0.25) {
            return Err(crate::Error::invalid(format!("λ_* = {} must lie in (0, 1/4]", self.lambda_star)));
        }
        Ok(())
    }
}
