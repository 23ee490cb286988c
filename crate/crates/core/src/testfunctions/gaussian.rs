//! Sharp Gaussian test functions `φ(q, ·)` concentrated at a principal
//! point `q ∈ i[1, ∞)`, the comparison integrals `I_α`, `J_α`, the
//! Gaussian tail integral, and the Plancherel smoothing discrepancy.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{LocalTestFunction, Provenance, TestParams};
use crate::measures::{MeasureResult, Method, Parity};
use crate::quadrature::{integrate_panels, QuadOptions};
use crate::regions::SpectralPoint;
use crate::special::erfc;
use crate::{Error, Result};

/// `φ(q, ν) = √(U/π)(e^{U(q−ν)²} + e^{U(q+ν)²})` on the strip, with
/// `q = i·|q|`, `|q| ≥ 1`; zero at the discrete points.
///
/// On `ν = it` this is `√(U/π)(e^{−U(t−|q|)²} + e^{−U(t+|q|)²})`, so
/// `∫_0^∞ φ(q, it) dt = 1` up to `O(e^{−U|q|²})`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianPhi {
    pub q: f64,
    pub u: f64,
    pub params: TestParams,
}

impl GaussianPhi {
    pub fn new(q: f64, u: f64, params: TestParams) -> Result<Self> {
        let q = q.abs();
        if !(q >= 1.0 && q.is_finite()) {
            return Err(Error::invalid(format!("Gaussian centre |q| = {q} must be at least 1")));
        }
        if !(u > 0.0 && u.is_finite()) {
            return Err(Error::invalid(format!("sharpness U = {u} must be positive")));
        }
        Ok(GaussianPhi { q, u, params })
    }
}

impl LocalTestFunction for GaussianPhi {
    fn eval(&self, z: Complex64) -> Complex64 {
        if z.re.abs() > self.params.tau {
            return Complex64::new(0.0, 0.0);
        }
        let iq = Complex64::new(0.0, self.q);
        let m = (iq - z) * (iq - z) * self.u;
        let p = (iq + z) * (iq + z) * self.u;
        (m.exp() + p.exp()) * (self.u / PI).sqrt()
    }

    fn eval_discrete(&self, _beta: f64) -> f64 {
        0.0
    }

    fn params(&self) -> TestParams {
        self.params
    }

    fn provenance(&self) -> Provenance {
        Provenance::Gaussian { q: self.q, u: self.u }
    }

    fn features(&self) -> Vec<f64> {
        vec![self.q]
    }
}

/// Mass of `N(c, 1/(2U))` on `[a, b]` (`b` may be `+∞`) and of its
/// complement, both computed without cancellation.
fn normal_mass(u: f64, c: f64, a: f64, b: f64) -> (f64, f64) {
    if !(b > a) {
        return (0.0, 1.0);
    }
    let s = u.sqrt();
    let lo = s * (a - c);
    let hi = if b.is_infinite() { f64::INFINITY } else { s * (b - c) };
    if lo >= 0.0 {
        let m = 0.5 * (erfc(lo) - erfc(hi));
        (m, 1.0 - m)
    } else if hi <= 0.0 {
        let m = 0.5 * (erfc(-hi) - erfc(-lo));
        (m, 1.0 - m)
    } else {
        let out = 0.5 * erfc(-lo) + 0.5 * erfc(hi);
        (1.0 - out, out)
    }
}

/// `∫_a^b φ(iq, it) dq` over centres `q ∈ i[a, b]` at a principal point
/// `ν = it`: the Gaussian-smoothed indicator of the interval, in closed
/// form through `erfc`.
pub fn gaussian_box_mass(u: f64, t: f64, a: f64, b: f64) -> f64 {
    normal_mass(u, t, a, b).0 + normal_mass(u, -t, a, b).0
}

/// The comparison integrals at a fixed evaluation point `ν`:
/// `I_α(ν) = ∫_{dist(q,ν) ≤ α} φ(q, ν) d|q|` and `J_α(ν)` over the rest of
/// `q ∈ i[1, ∞)`. `deficit = 1 − I_α` is computed directly so that tiny
/// values survive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalComparison {
    pub i: f64,
    pub j: f64,
    pub deficit: f64,
    pub total: f64,
    pub error: f64,
    pub method: Method,
}

/// `I_α` and `J_α` for the sharp Gaussians of sharpness `U`.
///
/// For `ν = it` both are sums of normal masses (closed form through
/// `erfc`). For `ν ∈ (0, ν_θ]` the kernel is `2√(U/π)e^{U(ν²−s²)}cos 2Usν`
/// and `J` is integrated numerically; `I = 0` whenever `α < 1 + ν` since
/// every `q` is then at distance `> α`. At a discrete point the kernel is a
/// point mass, so `I = 1`, `J = 0`.
pub fn local_comparison(u: f64, nu: SpectralPoint, alpha: f64) -> Result<LocalComparison> {
    if !(u > 0.0 && u.is_finite()) {
        return Err(Error::invalid(format!("sharpness U = {u} must be positive")));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::invalid(format!("radius α = {alpha} must be positive")));
    }
    if !nu.modulus().is_finite() {
        return Err(Error::invalid("evaluation point must be finite"));
    }
    match nu {
        SpectralPoint::Principal(t) => {
            let t = t.abs();
            let lo = (t - alpha).max(1.0);
            let hi = t + alpha;
            let (near, near_out) = normal_mass(u, t, lo, hi);
            let (mirror, _) = normal_mass(u, -t, lo, hi);
            // The complement of the window inside [1, ∞), piece by piece so
            // that tiny tails keep their relative accuracy.
            let outside = |c: f64| {
                if hi <= lo {
                    normal_mass(u, c, 1.0, f64::INFINITY).0
                } else {
                    normal_mass(u, c, 1.0, lo).0 + normal_mass(u, c, hi, f64::INFINITY).0
                }
            };
            let i = near + mirror;
            let j = outside(t) + outside(-t);
            let total = i + j;
            let deficit = near_out - mirror;
            Ok(LocalComparison { i, j, deficit, total, error: 64.0 * f64::EPSILON * total, method: Method::ClosedForm })
        }
        SpectralPoint::Complementary(x) => {
            let x = x.abs();
            let split = (alpha - x).max(1.0);
            let kernel = |s: f64| 2.0 * (u / PI).sqrt() * (u * (x * x - s * s)).exp() * (2.0 * u * s * x).cos();
            let piece = |a: f64, b: f64| -> Result<(f64, f64)> {
                if !(b > a) {
                    return Ok((0.0, 0.0));
                }
                let scale = 2.0 * (u / PI).sqrt() * (u * (x * x - a * a)).exp();
                let end = b.min((a * a + 750.0 / u).sqrt());
                let waves = (u * x * (end - a) / PI).ceil().max(1.0) as usize;
                let panels = 4 * waves.min(2000);
                let pts: Vec<f64> = (0..=panels).map(|k| a + (end - a) * k as f64 / panels as f64).collect();
                let q = integrate_panels(kernel, &pts, QuadOptions::tol(1e-16 * scale, 1e-10));
                if !q.converged {
                    return Err(Error::precision(format!("J_α quadrature did not converge (error {:e})", q.error)));
                }
                Ok((q.value, q.error))
            };
            let (i, ei) = piece(1.0, split)?;
            let (j, ej) = piece(split, f64::INFINITY)?;
            Ok(LocalComparison { i, j, deficit: 1.0 - i, total: i + j, error: ei + ej, method: Method::Quadrature })
        }
        SpectralPoint::Discrete(_) => {
            Ok(LocalComparison { i: 1.0, j: 0.0, deficit: 0.0, total: 1.0, error: 0.0, method: Method::ClosedForm })
        }
    }
}

/// `∫_b^∞ x^l e^{−x²} dx` for `b ≥ 0`, via
/// `G_l = b^{l−1}e^{−b²}/2 + (l−1)/2·G_{l−2}`.
pub fn gaussian_tail(l: u32, b: f64) -> Result<f64> {
    if !(b >= 0.0 && b.is_finite()) {
        return Err(Error::invalid(format!("lower limit b = {b} must be finite and non-negative")));
    }
    let e = (-b * b).exp();
    let mut g0 = 0.5 * PI.sqrt() * erfc(b);
    let mut g1 = 0.5 * e;
    if l == 0 {
        return Ok(g0);
    }
    for k in 2..=l {
        let g = 0.5 * b.powi(k as i32 - 1) * e + 0.5 * (k as f64 - 1.0) * g0;
        g0 = g1;
        g1 = g;
    }
    Ok(g1)
}

/// Non-linear part of the Plancherel density: `ρ(t) = |t| + h(t)` with
/// `h = −2|t|/(e^{2π|t|}+1)` (even) or `+2|t|/(e^{2π|t|}−1)` (odd).
fn density_correction(parity: Parity, t: f64) -> f64 {
    let t = t.abs();
    match parity {
        Parity::Even => -2.0 * t / ((2.0 * PI * t).exp() + 1.0),
        Parity::Odd => {
            if t < 1e-12 {
                1.0 / PI
            } else {
                2.0 * t / (2.0 * PI * t).exp_m1()
            }
        }
    }
}

/// `ν̃pl(φ(q, ·)) − 2·ν̃plf(|q|)` for the sharp Gaussian of sharpness `U`.
///
/// Writing the density as `|t| + h(t)` and `X ~ N(|q|, 1/(2U))`, the
/// difference is `2(E|X| − |q|) + 2(E h(X) − h(|q|))`. The first term is
/// closed form; the second is integrated with `h(X) − h(|q|)` formed
/// pointwise, so discrepancies far below the density's size are resolved.
pub fn npl_smoothing_difference(parity: Parity, q: f64, u: f64) -> Result<MeasureResult> {
    let q = q.abs();
    if !(q >= 1.0 && q.is_finite()) {
        return Err(Error::invalid(format!("Gaussian centre |q| = {q} must be at least 1")));
    }
    if !(u > 0.0 && u.is_finite()) {
        return Err(Error::invalid(format!("sharpness U = {u} must be positive")));
    }
    let sigma = (0.5 / u).sqrt();
    let z = q / (sigma * std::f64::consts::SQRT_2);
    let folded = sigma * (2.0 / PI).sqrt() * (-z * z).exp() - q * erfc(z);
    let hq = density_correction(parity, q);
    let norm = (u / PI).sqrt();
    let f = |t: f64| norm * (-u * (t - q) * (t - q)).exp() * (density_correction(parity, t) - hq);
    let mut pts: Vec<f64> = (-40..=40).map(|k| q + sigma * k as f64).collect();
    if pts[0] < 0.0 {
        pts.retain(|&p| p > 0.0);
        pts.insert(0, 0.0);
        pts.insert(0, -sigma);
        pts.insert(0, q - 40.0 * sigma);
    }
    let quad = integrate_panels(f, &pts, QuadOptions { abs_tol: 1e-300, rel_tol: 1e-10, max_subdivisions: 4000 });
    if !quad.converged && quad.error > 1e-10 * quad.value.abs() + 1e-300 {
        return Err(Error::precision(format!("smoothing quadrature did not converge (error {:e})", quad.error)));
    }
    let value = 2.0 * folded + 2.0 * quad.value;
    let error = 2.0 * quad.error + 2.0 * 16.0 * f64::EPSILON * folded.abs();
    Ok(MeasureResult { value, error, method: Method::Quadrature, detail: quad.evaluations as u64 })
}
