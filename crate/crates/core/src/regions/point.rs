use serde::{Deserialize, Serialize};

use crate::measures::{Parity, SpectralConfig};
use crate::{Error, Result};

/// A spectral parameter `ν` at one place, tagged by its series.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "series", content = "value", rename_all = "kebab-case")]
pub enum SpectralPoint {
    /// Unitary principal series `ν = it`, `t ≥ 0`.
    Principal(f64),
    /// Complementary series `ν = x ∈ (0, ν_θ]`.
    Complementary(f64),
    /// Discrete series `ν = β ∈ (χ+1)/2 + N₀`.
    Discrete(f64),
}

impl SpectralPoint {
    /// Validating constructor for a point of `Y_χ`.
    pub fn checked(self, parity: Parity, cfg: &SpectralConfig) -> Result<Self> {
        match self {
            SpectralPoint::Principal(t) if t.is_finite() && t >= 0.0 => Ok(self),
            SpectralPoint::Complementary(x) if x > 0.0 && x <= cfg.nu_theta() * (1.0 + 1e-12) => Ok(self),
            SpectralPoint::Discrete(b) if parity.is_discrete(b) => Ok(self),
            _ => Err(Error::invalid(format!("{self:?} is not in Y_χ for parity {}", parity.bit()))),
        }
    }

    /// `|ν|`.
    pub fn modulus(self) -> f64 {
        match self {
            SpectralPoint::Principal(v) | SpectralPoint::Complementary(v) | SpectralPoint::Discrete(v) => v.abs(),
        }
    }

    /// Chart coordinate: `it ↦ t`, real `x ↦ −x`. The chart is an
    /// isometry for [`dist`] from `i[0,∞) ∪ (0,∞)` onto a subset of `R`.
    pub fn chart(self) -> f64 {
        match self {
            SpectralPoint::Principal(t) => t,
            SpectralPoint::Complementary(x) | SpectralPoint::Discrete(x) => -x,
        }
    }

    /// `λ = 1/4 − ν²`.
    pub fn lambda(self) -> f64 {
        match self {
            SpectralPoint::Principal(t) => 0.25 + t * t,
            SpectralPoint::Complementary(x) | SpectralPoint::Discrete(x) => 0.25 - x * x,
        }
    }

    /// The point of `Y_χ` with eigenvalue `λ`, if there is one.
    pub fn from_lambda(lambda: f64, parity: Parity, cfg: &SpectralConfig) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::invalid("λ is not finite"));
        }
        if lambda >= 0.25 {
            return Ok(SpectralPoint::Principal((lambda - 0.25).sqrt()));
        }
        let x = (0.25 - lambda).sqrt();
        if x <= cfg.nu_theta() {
            Ok(SpectralPoint::Complementary(x))
        } else if parity.is_discrete(x) {
            Ok(SpectralPoint::Discrete((2.0 * x).round() / 2.0))
        } else {
            Err(Error::invalid(format!("λ = {lambda} is not a spectral parameter for parity {}", parity.bit())))
        }
    }
}

/// Distance at one place: `|q − ν|` on a common branch, `|q| + |ν|` across
/// the imaginary and real branches.
pub fn dist_place(nu: SpectralPoint, q: SpectralPoint) -> f64 {
    (nu.chart() - q.chart()).abs()
}

/// Sup-distance over the places.
pub fn dist(nu: &[SpectralPoint], q: &[SpectralPoint]) -> f64 {
    nu.iter().zip(q).map(|(&a, &b)| dist_place(a, b)).fold(0.0, f64::max)
}

/// `q ∈ A(ν, ε)`: every coordinate within `ε/2` (closed condition).
pub fn neighborhood_contains(nu: &[SpectralPoint], eps: f64, q: &[SpectralPoint]) -> Result<bool> {
    if !(eps > 0.0) {
        return Err(Error::invalid(format!("neighborhood size ε = {eps} must be positive")));
    }
    if nu.len() != q.len() {
        return Err(Error::invalid("points have different numbers of places"));
    }
    Ok(nu.iter().zip(q).all(|(&a, &b)| dist_place(a, b) <= eps / 2.0))
}
