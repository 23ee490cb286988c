use std::f64::consts::PI;

use super::{LambdaRegion, LambdaSet, MeasureResult, Method, Parity, PlaceSet, ProductRegion, SpectralFunction};
use crate::quadrature::{integrate, integrate_panels, QuadOptions};
use crate::{Error, Result};

/// Density `ν̃plf(t)` on the imaginary axis: `t·tanh πt` (even) or
/// `t·coth πt` (odd, with value `1/π` at `t = 0`).
pub fn npl_density(parity: Parity, t: f64) -> f64 {
    let t = t.abs();
    match parity {
        Parity::Even => t * (PI * t).tanh(),
        Parity::Odd => {
            if t < 1e-8 {
                1.0 / PI + PI * t * t / 3.0
            } else {
                t / (PI * t).tanh()
            }
        }
    }
}

/// `W_χ(u) = 2∫_0^u ν̃plf(s) ds`, the distribution function of `ν̃pl` on
/// `i[0, u]`; it is also the continuous part of `pl_χ([1/4, 1/4 + u²])`.
///
/// For `u > 1` the closed forms
/// `W_0(u) = u² − 1/12 + 4Σ_k (−1)^{k+1} e^{−2πku}(u/(2πk) + 1/(2πk)²)` and
/// `W_1(u) = u² + 1/6 − 4Σ_k e^{−2πku}(u/(2πk) + 1/(2πk)²)` converge
/// geometrically; for `u ≤ 1` the smooth integrand is integrated
/// adaptively.
pub fn w_plancherel(parity: Parity, u: f64) -> MeasureResult {
    if u <= 0.0 {
        return MeasureResult::zero();
    }
    if u <= 1.0 {
        let q = integrate(|s: f64| 2.0 * npl_density(parity, s), 0.0, u, QuadOptions::tol(1e-16, 1e-14));
        return MeasureResult { value: q.value, error: q.error, method: Method::Quadrature, detail: q.evaluations as u64 };
    }
    let mut tail = 0.0;
    let mut k = 1;
    loop {
        let c = 2.0 * PI * k as f64;
        let term = (-c * u).exp() * (u / c + 1.0 / (c * c));
        let sign = match parity {
            Parity::Even if k % 2 == 0 => -1.0,
            _ => 1.0,
        };
        tail += sign * term;
        if term < 1e-20 * u * u {
            break;
        }
        k += 1;
    }
    let value = match parity {
        Parity::Even => u * u - 1.0 / 12.0 + 4.0 * tail,
        Parity::Odd => u * u + 1.0 / 6.0 - 4.0 * tail,
    };
    MeasureResult::closed_form(value, u * u)
}

fn w_diff(parity: Parity, a: f64, b: f64) -> MeasureResult {
    let hi = w_plancherel(parity, b);
    let lo = w_plancherel(parity, a);
    MeasureResult { value: hi.value - lo.value, error: hi.error + lo.error, method: hi.method.max(lo.method), detail: hi.detail + lo.detail }
}

/// `Σ 2β` over the discrete-series parameters in `[lo, hi]`.
fn discrete_mass(parity: Parity, lo: f64, hi: f64) -> f64 {
    let n = parity.discrete_count(lo, hi) as f64;
    match parity.discrete_in(lo, hi).next() {
        None => 0.0,
        Some(first) => 2.0 * (n * first + n * (n - 1.0) / 2.0),
    }
}

/// `ν̃pl` of a set at one place (imaginary intervals through `W_χ`,
/// discrete points with mass `2β`; the complementary interval and
/// inadmissible points have mass zero).
pub fn npl_place(parity: Parity, set: &PlaceSet) -> MeasureResult {
    let mut r = MeasureResult::zero();
    for &(a, b) in &set.imag {
        r = r.plus(w_diff(parity, a, b));
    }
    let mut discrete = 0.0;
    for &(a, b) in &set.real {
        discrete += discrete_mass(parity, a, b);
    }
    for &p in &set.points {
        if parity.is_discrete(p) {
            discrete += 2.0 * p;
        }
    }
    r.plus(MeasureResult::closed_form(discrete, discrete))
}

/// `ν̃pl(Ω)` for a product set: the product of the per-place measures.
pub fn npl(region: &ProductRegion) -> MeasureResult {
    let factors: Vec<MeasureResult> = region.parity.iter().zip(&region.places).map(|(&p, s)| npl_place(p, s)).collect();
    MeasureResult::product(&factors)
}

/// `2∫_0^∞ g(it) ν̃plf(t) dt + 2Σ_β g(β) β` at one place.
///
/// The continuous part is integrated over `panels` (increasing
/// breakpoints; the caller truncates where `g` is negligible and places
/// breakpoints around narrow features); the discrete sum runs over
/// `β ≤ beta_max`.
pub fn npl_fn<G: SpectralFunction + ?Sized>(parity: Parity, g: &G, panels: &[f64], beta_max: f64, opts: QuadOptions) -> Result<MeasureResult> {
    if panels.len() < 2 || panels.windows(2).any(|w| !(w[0] <= w[1])) || panels[0] < 0.0 {
        return Err(Error::invalid("panels must be increasing breakpoints in [0, ∞)"));
    }
    let q = integrate_panels(|t: f64| 2.0 * g.on_imag(t) * npl_density(parity, t), panels, opts);
    if !q.converged {
        return Err(Error::precision(format!("ν̃pl quadrature did not converge (error {:e})", q.error)));
    }
    let mut discrete = 0.0;
    let mut magnitude = 0.0;
    for beta in parity.discrete_in(0.0, beta_max) {
        let term = 2.0 * beta * g.on_real(beta);
        discrete += term;
        magnitude += term.abs();
    }
    Ok(MeasureResult {
        value: q.value + discrete,
        error: q.error + 16.0 * f64::EPSILON * magnitude,
        method: Method::Quadrature,
        detail: q.evaluations as u64,
    })
}

/// `λ` of the discrete-series parameter `β`: `1/4 − β²` (that is,
/// `b/2·(1 − b/2)` with `b = 2β + 1`).
fn lambda_of_beta(beta: f64) -> f64 {
    0.25 - beta * beta
}

/// `pl_χ` of a set of `λ` values at one place: the continuous part
/// `∫ tanh π√(λ−1/4) dλ` (even) or `∫ coth π√(λ−1/4) dλ` (odd) over
/// `λ ≥ 1/4`, plus weight `b − 1` at `λ = b/2·(1 − b/2)` for
/// `b ≡ χ (mod 2)`, `b ≥ 2`.
pub fn pl_lambda_place(parity: Parity, set: &LambdaSet) -> MeasureResult {
    let mut r = MeasureResult::zero();
    let mut discrete = 0.0;
    for &(a, b) in &set.intervals {
        if b > 0.25 {
            r = r.plus(w_diff(parity, (a.max(0.25) - 0.25).sqrt(), (b - 0.25).sqrt()));
        }
        if a < 0.25 {
            // λ(β) ∈ [a, b] ⟺ β ∈ [√(1/4 − min(b, 1/4)), √(1/4 − a)]
            let lo = (0.25 - b.min(0.25)).sqrt();
            let hi = (0.25 - a).sqrt();
            for beta in parity.discrete_in(lo, hi) {
                let l = lambda_of_beta(beta);
                if a <= l && l <= b {
                    discrete += 2.0 * beta;
                }
            }
        }
    }
    for &l in &set.points {
        if l < 0.25 {
            let beta = (0.25 - l).sqrt();
            if parity.is_discrete(beta) {
                discrete += 2.0 * beta;
            }
        }
    }
    r.plus(MeasureResult::closed_form(discrete, discrete))
}

/// `pl_χ` of a product set in `λ`-space.
pub fn pl_lambda(region: &LambdaRegion) -> MeasureResult {
    let factors: Vec<MeasureResult> = region.parity.iter().zip(&region.places).map(|(&p, s)| pl_lambda_place(p, s)).collect();
    MeasureResult::product(&factors)
}

/// `∫_{[lo,hi]} f dpl_χ` at one place. The continuous part is integrated
/// in `u = √(λ − 1/4)`, where the density becomes `2u·tanh πu` or the
/// bounded `2u·coth πu`; the discrete part sums `(b − 1) f(λ_b)`.
pub fn pl_lambda_fn<F: Fn(f64) -> f64>(parity: Parity, f: F, lo: f64, hi: f64, opts: QuadOptions) -> Result<MeasureResult> {
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::invalid("pl_λ integrals need a bounded λ interval; truncate first"));
    }
    if lo > hi {
        return Err(Error::invalid(format!("λ interval [{lo}, {hi}] has lo > hi")));
    }
    let mut r = MeasureResult::zero();
    if hi > 0.25 {
        let u0 = (lo.max(0.25) - 0.25).sqrt();
        let u1 = (hi - 0.25).sqrt();
        let q = integrate(|u: f64| f(0.25 + u * u) * 2.0 * npl_density(parity, u), u0, u1, opts);
        if !q.converged {
            return Err(Error::precision(format!("pl_λ quadrature did not converge (error {:e})", q.error)));
        }
        r = MeasureResult { value: q.value, error: q.error, method: Method::Quadrature, detail: q.evaluations as u64 };
    }
    if lo < 0.25 {
        let mut discrete = 0.0;
        let mut magnitude = 0.0;
        for beta in parity.discrete_in((0.25 - hi.min(0.25)).sqrt(), (0.25 - lo).sqrt()) {
            let l = lambda_of_beta(beta);
            if lo <= l && l <= hi {
                let term = 2.0 * beta * f(l);
                discrete += term;
                magnitude += term.abs();
            }
        }
        r = r.plus(MeasureResult::closed_form(discrete, magnitude));
    }
    Ok(r)
}
