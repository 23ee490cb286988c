//! The Bessel transforms `B^η_χ φ(t)` by the axis formula and by the
//! contour `Re ν = τ`.
//!
//! Axis formula (`ν = iy`, using `J_{−2iy}(x) = conj J_{2iy}(x)` for real
//! `x` and evenness of `φ`):
//!
//! - `χ = 0`: `−2∫_0^∞ φ(iy) y Im J_{2iy}(x)/cosh πy dy + Σ_{b even} (−1)^{b/2}(b−1)φ((b−1)/2)J_{b−1}(x)`;
//! - `χ = 1`: `−iη sign t·[2∫_0^∞ φ(iy) y Re J_{2iy}(x)/sinh πy dy + Σ_{b odd} (−1)^{(b−1)/2}(b−1)φ((b−1)/2)J_{b−1}(x)]`.
//!
//! Contour formula: folding `J_{−2ν}` onto `J_{2ν}` by `ν ↦ −ν` and moving
//! the line to `Re ν = τ` (no zero of `cos πν` or `sin πν` lies in
//! `0 < Re ν ≤ τ < 1/2`, and the quotient is regular at `ν = 0`) gives
//! `−i∫_{Re ν=τ} φ ν J_{2ν}/cos πν dν` for `χ = 0` and
//! `−η sign t ∫_{Re ν=τ} φ ν J_{2ν}/sin πν dν` for `χ = 1`, plus the same
//! discrete sums.
//!
//! The ν-integrals are truncated at a height `H` where a tail bound is
//! below tolerance: `|φ| ≤ K_H(1+|ν|)^{−a}` with `K_H` sampled on the line
//! beyond `H`, and `|J_{iu}(x)| ≤ √cosh πu` (Poisson's integral, uniform in
//! `x`) on the axis, or the Poisson bound for `Re μ = 2τ` on the contour.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bessel::{bessel_j_scaled, BesselTarget};
use crate::measures::Parity;
use crate::quadrature::{integrate_panels, integrate_to_infinity, QuadOptions};
use crate::special::ln_gamma;
use crate::testfunctions::{validate, LocalTestFunction, Provenance};
use crate::{Error, Result};

/// Which formula produced a transform value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Formula {
    Axis,
    Contour,
}

/// `B^η_χ φ(t)`: real for `χ = 0`, purely imaginary for `χ = 1` when `φ`
/// is real on the axes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BesselTransformResult {
    pub value: Complex64,
    pub t: f64,
    pub error: f64,
    pub formula: Formula,
    pub evaluations: u64,
    /// Sum of the moduli of the pieces (the two half-lines `Im ν ≷ 0` of
    /// the contour, and the discrete sum): a smooth envelope of `|value|`
    /// when the value itself oscillates in `t`.
    pub envelope: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransformOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Largest truncation height of the ν-integral.
    pub max_height: f64,
}

impl Default for TransformOptions {
    fn default() -> Self {
        TransformOptions { abs_tol: 1e-12, rel_tol: 1e-9, max_height: 400.0 }
    }
}

/// A test function with its (T2) certificate, ready to be transformed.
pub struct BesselTransformer<'a> {
    phi: &'a dyn LocalTestFunction,
    decay_constant: f64,
    opts: TransformOptions,
}

fn check_t(t: f64) -> Result<f64> {
    if t == 0.0 || !t.is_finite() {
        return Err(Error::invalid(format!("transform argument t = {t} must be finite and non-zero")));
    }
    Ok(t.abs())
}

/// `ln|cos π(τ+iy)| − π|y|` and the scaled value `e^{−π|y|}cos π(τ+iy)`;
/// likewise for `sin` when `sine` is set.
fn scaled_trig(tau: f64, y: f64, sine: bool) -> Complex64 {
    let e = (-2.0 * PI * y.abs()).exp();
    let (ch, sh) = (0.5 * (1.0 + e), 0.5 * (1.0 - e) * y.signum());
    let (s, c) = (PI * tau).sin_cos();
    if sine {
        Complex64::new(s * ch, c * sh)
    } else {
        Complex64::new(c * ch, -s * sh)
    }
}

impl<'a> BesselTransformer<'a> {
    /// Validates (T1)–(T3); a function without a decay certificate is rejected.
    pub fn new(phi: &'a dyn LocalTestFunction, opts: TransformOptions) -> Result<Self> {
        let report = validate(phi);
        if !report.passed {
            return Err(Error::invalid(format!("test function has no (T1)–(T3) certificate: {report:?}")));
        }
        Ok(BesselTransformer { phi, decay_constant: report.decay_constant, opts })
    }

    pub fn decay_constant(&self) -> f64 {
        self.decay_constant
    }

    fn parity(&self) -> Parity {
        self.phi.params().parity
    }

    /// `sup_{y ≥ h} |φ(x0 ± iy)|(1+|ν|)^a` sampled geometrically up to 10⁴.
    fn line_constant(&self, x0: f64, h: f64) -> f64 {
        let a = self.phi.params().a;
        let (lo, hi) = (h.max(1e-3).ln(), 1e4f64.ln());
        let mut k: f64 = 0.0;
        for i in 0..=64 {
            let y = (lo + (hi - lo) * i as f64 / 64.0).exp();
            for z in [Complex64::new(x0, y), Complex64::new(x0, -y)] {
                k = k.max(self.phi.eval(z).norm() * (1.0 + z.norm()).powf(a));
            }
        }
        k
    }

    fn breakpoints(&self, h: f64) -> Vec<f64> {
        let mut pts: Vec<f64> = (0..=(h.ceil() as usize)).map(|k| (k as f64).min(h)).collect();
        for f in self.phi.features() {
            for d in [-1.0, -0.5, -0.2, 0.0, 0.2, 0.5, 1.0] {
                let p = f + d;
                if p > 0.0 && p < h {
                    pts.push(p);
                }
            }
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    /// The discrete-series sum (without the `χ = 1` prefactor `−iη sign t`).
    fn discrete_sum(&self, x: f64) -> Result<(f64, f64)> {
        let parity = self.parity();
        let mut sum = 0.0;
        let mut err = 0.0;
        let mut sup_phi: f64 = 0.0;
        for beta in parity.discrete_in(0.0, 2000.0) {
            let n = 2.0 * beta;
            let f = self.phi.eval_discrete(beta);
            sup_phi = sup_phi.max(f.abs());
            if f != 0.0 {
                let j = bessel_j_scaled(Complex64::new(n, 0.0), x, 0.0, BesselTarget::default())?;
                // (−1)^{b/2} for even b, (−1)^{(b−1)/2} for odd b, with b = n + 1.
                let b = (n + 1.0).round() as i64;
                let exponent = if parity == Parity::Even { b / 2 } else { (b - 1) / 2 };
                let sign = if exponent % 2 == 0 { 1.0 } else { -1.0 };
                sum += sign * n * f * j.value.re;
                err += n * f.abs() * j.error;
            }
            // |J_n(x)| ≤ (x/2)^n/n!: once n > x the remaining terms are
            // dominated by a geometric series.
            if n > x + 2.0 {
                let ln_bound = n * (0.5 * x).ln() - libm::lgamma(n + 1.0);
                let bound = (n + 2.0) * self.decay_constant.max(sup_phi) * ln_bound.exp() * 2.0;
                if bound <= 1e-17 * sum.abs() || bound < 1e-300 {
                    err += bound;
                    break;
                }
            }
        }
        Ok((sum, err + 4.0 * f64::EPSILON * sum.abs()))
    }

    /// `∫_0^H f`, with `H` chosen so that `tail(H)` is below tolerance.
    fn integrate_line<F>(&self, f: F, tail: impl Fn(f64) -> f64) -> Result<(Complex64, f64, u64)>
    where
        F: Fn(f64) -> Result<Complex64>,
    {
        if matches!(self.phi.provenance(), Provenance::Delta { .. }) {
            return Ok((Complex64::new(0.0, 0.0), 0.0, 0));
        }
        let start = self.phi.features().into_iter().fold(8.0f64, |m, q| m.max(q + 8.0));
        let mut h = start.min(self.opts.max_height);
        let mut t = tail(h);
        while t > 0.25 * self.opts.abs_tol && h < self.opts.max_height {
            h = (2.0 * h).min(self.opts.max_height);
            t = tail(h);
        }
        let pts = self.breakpoints(h);
        let failure = std::sync::Mutex::new(None);
        let g = |y: f64| match f(y) {
            Ok(v) => v,
            Err(e) => {
                failure.lock().unwrap().get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        };
        let q = integrate_panels(g, &pts, QuadOptions::tol(0.5 * self.opts.abs_tol, self.opts.rel_tol));
        if let Some(e) = failure.into_inner().unwrap() {
            return Err(e);
        }
        let goal = self.opts.abs_tol.max(self.opts.rel_tol * q.value.norm());
        if !q.converged && q.error > 1e3 * goal {
            return Err(Error::precision(format!("transform quadrature did not converge (error {:e})", q.error)));
        }
        Ok((q.value, q.error + t, q.evaluations as u64))
    }

    /// `B^η_χ φ(t)` by the axis formula.
    pub fn axis(&self, eta: i8, t: f64) -> Result<BesselTransformResult> {
        let x = check_t(t)?;
        let parity = self.parity();
        let a = self.phi.params().a;
        let target = BesselTarget::default();
        let integrand = |y: f64| -> Result<Complex64> {
            let j = bessel_j_scaled(Complex64::new(0.0, 2.0 * y), x, PI * y, target)?.value;
            let phi = self.phi.eval(Complex64::new(0.0, y));
            // y e^{πy}/cosh πy and y e^{πy}/sinh πy (→ 1/π at 0).
            Ok(match parity {
                Parity::Even => phi * (j.im * 2.0 * y / (1.0 + (-2.0 * PI * y).exp())),
                Parity::Odd => {
                    let w = if y < 1e-12 { 1.0 / PI } else { 2.0 * y / -(-2.0 * PI * y).exp_m1() };
                    phi * (j.re * w)
                }
            })
        };
        // Tail: |φ| ≤ K_H(1+y)^{−a}, e^{−πy}|J_{2iy}| ≤ min(1, e^{x²/4}/√(4πy)),
        // and the y-weights above are at most 2y/(1 − e^{−2πH}).
        let tail = |h: f64| {
            let k = self.line_constant(0.0, h);
            if k == 0.0 {
                return 0.0;
            }
            let c = (0.25 * x * x).exp() / (4.0 * PI).sqrt();
            let bound = |y: f64| 2.0 * k * (1.0 + y).powf(-a) * 2.0 * y * 1.0f64.min(c / y.sqrt()) / (1.0 - (-2.0 * PI * h).exp());
            integrate_to_infinity(bound, h, QuadOptions::tol(1e-300, 1e-6)).value
        };
        let (int, int_err, evals) = self.integrate_line(integrand, tail)?;
        let (disc, disc_err) = self.discrete_sum(x)?;
        let value = match parity {
            Parity::Even => Complex64::new(0.0, 0.0) - int * 2.0 + disc,
            Parity::Odd => (int * 2.0 + disc) * Complex64::new(0.0, -(eta as f64) * t.signum()),
        };
        let envelope = 2.0 * int.norm() + disc.abs();
        Ok(BesselTransformResult { value, t, error: 2.0 * int_err + disc_err, formula: Formula::Axis, evaluations: evals, envelope })
    }

    /// `B^η_χ φ(t)` by the shifted contour `Re ν = τ`.
    pub fn contour(&self, eta: i8, t: f64) -> Result<BesselTransformResult> {
        if matches!(self.phi.provenance(), Provenance::User) {
            return Err(Error::invalid("the contour formula needs a construction-tagged (holomorphic) test function"));
        }
        let x = check_t(t)?;
        let parity = self.parity();
        let p = self.phi.params();
        let (tau, a) = (p.tau, p.a);
        let target = BesselTarget::default();
        let sine = parity == Parity::Odd;
        let integrand = |y: f64| -> Result<Complex64> {
            let nu = Complex64::new(tau, y);
            let j = bessel_j_scaled(nu * 2.0, x, PI * y.abs(), target)?.value;
            let phi = self.phi.eval(nu);
            if phi == Complex64::new(0.0, 0.0) {
                return Ok(phi);
            }
            Ok(phi * nu * j / scaled_trig(tau, y, sine))
        };
        // Tail: Poisson bound for Re μ = 2τ, |cos|, |sin| ≥ sinh π|y|.
        let tail = |h: f64| {
            let k = self.line_constant(tau, h);
            if k == 0.0 {
                return 0.0;
            }
            let r = 2.0 * tau;
            let lead = r * (0.5 * x).ln() + libm::lgamma(r + 0.5) - libm::lgamma(r + 1.0);
            let bound = |y: f64| {
                let nu = Complex64::new(tau, y);
                let jb = (lead - ln_gamma(nu * 2.0 + 0.5).re - PI * y).exp();
                let den = 0.5 * (1.0 - (-2.0 * PI * y).exp());
                k * (1.0 + nu.norm()).powf(-a) * nu.norm() * jb / den
            };
            integrate_to_infinity(bound, h, QuadOptions::tol(1e-300, 1e-6)).value
        };
        let (upper, up_err, up_evals) = self.integrate_line(&integrand, &tail)?;
        let (lower, low_err, low_evals) = self.integrate_line(|y| integrand(-y), &tail)?;
        // ∫_{Re ν=τ} … dν = i∫ … dy; the prefactors have modulus 1.
        let line = (upper + lower) * Complex64::new(0.0, 1.0);
        let (disc, disc_err) = self.discrete_sum(x)?;
        let value = match parity {
            Parity::Even => line * Complex64::new(0.0, -1.0) + disc,
            Parity::Odd => line * (-(eta as f64) * t.signum()) + Complex64::new(0.0, -(eta as f64) * t.signum() * disc),
        };
        let envelope = upper.norm() + lower.norm() + disc.abs();
        Ok(BesselTransformResult {
            value,
            t,
            error: up_err + low_err + disc_err,
            formula: Formula::Contour,
            evaluations: up_evals + low_evals,
            envelope,
        })
    }
}

/// `B^η_χ φ(t)` by the axis formula (validates `φ` first).
pub fn transform_axis(phi: &dyn LocalTestFunction, eta: i8, t: f64) -> Result<BesselTransformResult> {
    BesselTransformer::new(phi, TransformOptions::default())?.axis(eta, t)
}

/// `B^η_χ φ(t)` along `Re ν = τ` (validates `φ` first).
pub fn transform_contour(phi: &dyn LocalTestFunction, eta: i8, t: f64) -> Result<BesselTransformResult> {
    BesselTransformer::new(phi, TransformOptions::default())?.contour(eta, t)
}
