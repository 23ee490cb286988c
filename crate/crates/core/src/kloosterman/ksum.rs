//! Truncated Kloosterman series `K^r_χ(f)` with a tail estimate.

use num_complex::Complex64;
use rayon::prelude::*;

use super::character::CharacterModI;
use super::sum::kloosterman_sum;
use crate::error::{Error, Result};
use crate::numberfield::{ratio_to_f64, FieldElement, QuadField};
use crate::quadrature::{integrate, QuadOptions};

/// Decay certificate of the weight function: `|f(t)| ≤ K_f ∏_j min(|t_j|^κ, 1)`.
///
/// For Bessel transforms of admissible test functions `κ = 2τ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FDecay {
    pub k_f: f64,
    pub exponent: f64,
}

/// Partial sum over `c ∈ I∖{0}` with `max_j |σ_j(c)| ≤ T`, plus a bound for the rest.
#[derive(Clone, Debug, PartialEq)]
pub struct KSeriesResult {
    pub partial_sum: Complex64,
    pub truncation: f64,
    pub tail_estimate: f64,
    pub terms_used: usize,
    /// Over `Q` the tail rests on the classical Weil–Estermann inequality and
    /// is a rigorous majorant; over quadratic fields it uses the Weil shape
    /// with constant 1 and an integral comparison, so it is an estimate only.
    pub tail_certified: bool,
}

/// `Σ_{c ∈ I∖0, max|c_j| ≤ T} |N(c)|^{−1} S_χ(r, r; c) f(4π|r|/c)`.
///
/// `t_j = 4π|σ_j(r)|/σ_j(c)` carries the sign of `σ_j(c)`. Terms are
/// evaluated in parallel and summed in enumeration order.
pub fn ksum<F>(
    field: &QuadField,
    chi: &CharacterModI,
    r: &FieldElement,
    f: F,
    decay: FDecay,
    t_box: f64,
) -> Result<KSeriesResult>
where
    F: Fn(&[f64]) -> Complex64 + Sync,
{
    if r.is_zero() {
        return Err(Error::invalid("r must be nonzero"));
    }
    if !(t_box > 0.0) || !(decay.k_f >= 0.0) {
        return Err(Error::invalid("box bound T and constant K_f must be positive"));
    }
    let level = chi.level();
    let d = field.degree();
    let points = level.lattice_points_in_box(&vec![t_box; d])?;
    let rs = field.embed(r);
    let terms: Vec<Complex64> = points
        .par_iter()
        .map(|c| -> Result<Complex64> {
            let s = kloosterman_sum(field, chi, r, r, c)?;
            let cs = field.embed(c);
            let t: Vec<f64> = rs
                .iter()
                .zip(&cs)
                .map(|(rj, cj)| 4.0 * std::f64::consts::PI * rj.abs() / cj)
                .collect();
            let n = ratio_to_f64(&field.norm(c)).abs();
            Ok(s * f(&t) / n)
        })
        .collect::<Result<Vec<_>>>()?;
    let partial_sum = terms.iter().fold(Complex64::new(0.0, 0.0), |a, b| a + b);
    let (tail_estimate, tail_certified) = if decay.k_f == 0.0 {
        (0.0, true)
    } else if d == 1 {
        (tail_rational(chi, r, decay, t_box)?, true)
    } else {
        (tail_quadratic(field, chi, r, decay, t_box)?, false)
    };
    Ok(KSeriesResult { partial_sum, truncation: t_box, tail_estimate, terms_used: points.len(), tail_certified })
}

/// Tail over `Q`.
///
/// Uses `|S_χ(r,r;c)| ≤ d(c)·gcd(r,c)^{1/2}·c^{1/2}·cond(χ)^{1/2}` (Weil–Estermann,
/// with the conductor factor bounded by `N(I)^{1/2}` for nontrivial χ) and
/// `|f(t)| ≤ K_f (4π|r|/c)^κ`, giving terms `≤ A·d(c)·c^{−s}`, `s = 1/2 + κ`,
/// `A = K_f |r|^{1/2} cond^{1/2} (4π|r|)^κ`. By partial summation with
/// `Σ_{n≤x} d(n) ≤ x(log x + 1)`:
///
/// `Σ_{n>T} d(n) n^{−s} ≤ s·T^{1−s}·[(log T + 1)/(s−1) + 1/(s−1)²]`  (T ≥ 1),
///
/// doubled for the two signs of `c`. For `T < 1` the bound at `T = 1` plus
/// the `n = 1` term is used.
fn tail_rational(chi: &CharacterModI, r: &FieldElement, decay: FDecay, t: f64) -> Result<f64> {
    let kappa = decay.exponent;
    if !(kappa > 0.5) {
        return Err(Error::invalid("decay exponent must exceed 1/2 for a convergent K-series tail"));
    }
    let s = 0.5 + kappa;
    let rabs = ratio_to_f64(&r.x).abs();
    let cond = if chi.is_trivial() { 1.0 } else { ratio_to_f64(&chi.level().norm()) };
    let a = decay.k_f * rabs.sqrt() * cond.sqrt() * (4.0 * std::f64::consts::PI * rabs).powf(kappa);
    let bound = |t: f64| s * t.powf(1.0 - s) * ((t.ln() + 1.0) / (s - 1.0) + 1.0 / ((s - 1.0) * (s - 1.0)));
    Ok(if t >= 1.0 { 2.0 * a * bound(t) } else { 2.0 * a * (1.0 + bound(1.0)) })
}

/// `∫_L^∞ u^{−σ} min((ρ/u)^κ, 1) du` in closed form (`σ < 1 < σ + κ`).
fn power_tail(l: f64, sigma: f64, kappa: f64, rho: f64) -> f64 {
    let e = sigma + kappa - 1.0;
    if l >= rho {
        rho.powf(kappa) * l.powf(-e) / e
    } else {
        (rho.powf(1.0 - sigma) - l.max(0.0).powf(1.0 - sigma)) / (1.0 - sigma) + rho.powf(1.0 - sigma) / e
    }
}

/// Tail estimate over a real quadratic field (not a rigorous bound).
///
/// Majorant per term: `W·|N(c)|^{−σ}·∏_j min((ρ_j/|c_j|)^κ, 1)` with the Weil
/// shape `W = |N(r)|·N(I)^{1/2}`, `σ = 1/2 − δ`, `δ = 0.01`, `ρ_j = 4π|r_j|`.
/// The lattice sum over `c ∈ I` outside the box is replaced by
/// `(4/covol(I))·∬` over the first-quadrant complement of `[0,T]²` with
/// `x·y ≥ N(I)`, and multiplied by a safety factor 2 for lattice effects.
fn tail_quadratic(field: &QuadField, chi: &CharacterModI, r: &FieldElement, decay: FDecay, t: f64) -> Result<f64> {
    let kappa = decay.exponent;
    let delta = 0.01;
    let sigma = 0.5 - delta;
    if !(sigma + kappa > 1.0) {
        return Err(Error::invalid("decay exponent must exceed 1/2 + δ for a convergent K-series tail"));
    }
    let level = chi.level();
    let n0 = ratio_to_f64(&level.norm());
    let w = ratio_to_f64(&field.norm(r)).abs() * n0.sqrt();
    let rho: Vec<f64> = field.embed(r).iter().map(|x| 4.0 * std::f64::consts::PI * x.abs()).collect();
    let g1 = |x: f64| x.powf(-sigma) * (rho[0] / x).powf(kappa).min(1.0);
    let g2tail = |l: f64| power_tail(l, sigma, kappa, rho[1]);
    let opts = QuadOptions::tol(1e-14, 1e-8);
    let x_far = 1e6 * t.max(rho[0]).max(1.0);
    // x > T: y unrestricted except x·y ≥ n0 (log-substituted for scale).
    let outer = integrate(
        |v: f64| {
            let x = v.exp();
            x * g1(x) * g2tail(n0 / x)
        },
        t.ln(),
        x_far.ln(),
        opts,
    );
    let far = g2tail(0.0) * power_tail(x_far, sigma, kappa, rho[0]);
    // 0 < x ≤ T: need y > max(T, n0/x).
    let inner = integrate(
        |v: f64| {
            let x = v.exp();
            x * g1(x) * g2tail(t.max(n0 / x))
        },
        (n0 / (1e9 * t.max(1.0))).ln().min(t.ln() - 1.0),
        t.ln(),
        opts,
    );
    let integral = outer.value + far + inner.value;
    Ok(2.0 * decay.k_f * w * 4.0 * integral / level.covolume())
}
