//! The polynomially decaying `φ_p` and the discrete-series indicator.

use num_complex::Complex64;

use super::{LocalTestFunction, Provenance, TestParams};
use crate::{Error, Result};

/// `φ_p(ν) = (p² − ν²)^{−a/2}` on the strip and `(p² + ν²)^{−a/2}` at the
/// discrete points, for `p > τ` (principal branch; `Re(p² − ν²) > 0` on
/// the strip).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhiP {
    pub p: f64,
    pub params: TestParams,
}

impl PhiP {
    pub fn new(p: f64, params: TestParams) -> Result<Self> {
        if !(p > params.tau && p.is_finite()) {
            return Err(Error::invalid(format!("p = {p} must exceed the strip half-width τ = {}", params.tau)));
        }
        Ok(PhiP { p, params })
    }
}

impl LocalTestFunction for PhiP {
    fn eval(&self, z: Complex64) -> Complex64 {
        (Complex64::new(self.p * self.p, 0.0) - z * z).powf(-0.5 * self.params.a)
    }

    fn eval_discrete(&self, beta: f64) -> f64 {
        (self.p * self.p + beta * beta).powf(-0.5 * self.params.a)
    }

    fn params(&self) -> TestParams {
        self.params
    }

    fn provenance(&self) -> Provenance {
        Provenance::PhiP { p: self.p }
    }
}

/// Indicator of one discrete-series point `β = q`: `1` at `±q`, `0` on the
/// strip and at every other discrete point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeltaAtDiscrete {
    pub q: f64,
    pub params: TestParams,
}

impl DeltaAtDiscrete {
    pub fn new(q: f64, params: TestParams) -> Result<Self> {
        let q = q.abs();
        if !params.parity.is_discrete(q) {
            return Err(Error::invalid(format!("{q} is not a discrete-series point of parity {:?}", params.parity)));
        }
        Ok(DeltaAtDiscrete { q, params })
    }
}

impl LocalTestFunction for DeltaAtDiscrete {
    fn eval(&self, _z: Complex64) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    fn eval_discrete(&self, beta: f64) -> f64 {
        if (beta.abs() - self.q).abs() < 1e-9 {
            1.0
        } else {
            0.0
        }
    }

    fn params(&self) -> TestParams {
        self.params
    }

    fn provenance(&self) -> Provenance {
        Provenance::Delta { q: self.q }
    }
}
