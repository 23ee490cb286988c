//! Sampling validator for the conditions (T1)–(T3) and the norm `N_j`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::LocalTestFunction;
use crate::{Error, Result};

/// Outcome of the sampling checks.
///
/// - `evenness`: max `|φ(−z) − φ(z)| / max(1, |φ(z)|)`;
/// - `cauchy_riemann`: max relative mismatch between the real and
///   imaginary central difference quotients at interior points;
/// - `decay_constant`: fitted `K = max |φ(z)|(1+|z|)^a` over the samples
///   (including the discrete points);
/// - `tail_ratio`: max over rows of `w(1000)/w(500)` for the weighted
///   modulus `w`, which must not grow at the end of the grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub evenness: f64,
    pub cauchy_riemann: f64,
    pub decay_constant: f64,
    pub tail_ratio: f64,
    pub passed: bool,
}

pub const EVENNESS_TOL: f64 = 1e-10;
pub const CAUCHY_RIEMANN_TOL: f64 = 1e-5;

fn imag_grid(phi: &dyn LocalTestFunction, max: f64, n: usize) -> Vec<f64> {
    let mut ys = vec![0.0];
    let (lo, hi) = (1e-3f64.ln(), max.ln());
    ys.extend((0..n).map(|k| (lo + (hi - lo) * k as f64 / (n - 1) as f64).exp()));
    for f in phi.features() {
        ys.extend((-20..=20).map(|k| f + 0.005 * k as f64).filter(|y| *y >= 0.0 && *y <= max));
    }
    ys.sort_by(f64::total_cmp);
    ys.dedup();
    ys
}

/// Fourth-order central difference of `φ` along the complex step `h`.
fn derivative(phi: &dyn LocalTestFunction, z: Complex64, h: Complex64) -> Complex64 {
    let d1 = phi.eval(z + h) - phi.eval(z - h);
    let d2 = phi.eval(z + h * 2.0) - phi.eval(z - h * 2.0);
    (d1 * 8.0 - d2) / (h * 12.0)
}

/// Checks (T1) by Cauchy–Riemann sampling, (T2) by a fitted decay
/// constant and a non-growth test at the end of the grid, (T3) by
/// comparing `φ(z)` and `φ(−z)`.
pub fn validate(phi: &dyn LocalTestFunction) -> ValidationReport {
    let p = phi.params();
    let tau = p.tau;
    let weight = |z: Complex64| (1.0 + z.norm()).powf(p.a);
    let ys = imag_grid(phi, 1e3, 120);
    let mut evenness: f64 = 0.0;
    let mut cr: f64 = 0.0;
    let mut k: f64 = 0.0;
    let mut tail: f64 = 0.0;
    let h = 1e-4;
    for xf in [0.0, 0.25, 0.5, 0.8, 1.0] {
        let x = xf * tau;
        for &y in &ys {
            let z = Complex64::new(x, y);
            let v = phi.eval(z);
            k = k.max(v.norm() * weight(z));
            let m = phi.eval(-z);
            evenness = evenness.max((m - v).norm() / v.norm().max(1.0));
            if xf < 1.0 {
                let dx = derivative(phi, z, Complex64::new(h, 0.0));
                let dy = derivative(phi, z, Complex64::new(0.0, h));
                let scale = dx.norm().max(dy.norm()).max(v.norm());
                if scale > 0.0 && x + 2.0 * h <= tau {
                    cr = cr.max((dx - dy).norm() / scale);
                }
            }
        }
        let w500 = phi.eval(Complex64::new(x, 500.0)).norm() * weight(Complex64::new(x, 500.0));
        let w1000 = phi.eval(Complex64::new(x, 1000.0)).norm() * weight(Complex64::new(x, 1000.0));
        if w500 > 0.0 {
            tail = tail.max(w1000 / w500);
        } else if w1000 > 0.0 {
            tail = f64::INFINITY;
        }
    }
    let first = p.parity.first_discrete();
    for beta in (0..1000).map(|j| first + j as f64) {
        k = k.max(phi.eval_discrete(beta).abs() * (1.0 + beta).powf(p.a));
    }
    let passed = evenness <= EVENNESS_TOL && cr <= CAUCHY_RIEMANN_TOL && k.is_finite() && tail <= 1.01;
    ValidationReport { evenness, cauchy_riemann: cr, decay_constant: k, tail_ratio: tail, passed }
}

/// Options for [`norm_n`]: the weight exponent (default: the function's
/// decay exponent `a`) and the extent and density of the sup grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormOptions {
    pub weight_exponent: Option<f64>,
    pub grid_max: f64,
    pub grid_points: usize,
}

impl Default for NormOptions {
    fn default() -> Self {
        NormOptions { weight_exponent: None, grid_max: 1e3, grid_points: 300 }
    }
}

/// `N(φ) = sup_{0 ≤ Re ν ≤ τ} |φ(ν)|(1+|ν|)^a + Σ_{b ≡ χ, b ≥ 2} b^a |φ((b−1)/2)|`.
///
/// The sup is taken over a geometric grid up to `|Im ν| = grid_max`
/// refined at the function's features. The discrete sum is extended
/// until a power-law tail estimate is negligible; if the terms decay no
/// faster than `b^{−1}` the sum diverges and `Unavailable` is returned.
pub fn norm_n(phi: &dyn LocalTestFunction, opts: NormOptions) -> Result<f64> {
    let p = phi.params();
    let a = opts.weight_exponent.unwrap_or(p.a);
    if !a.is_finite() {
        return Err(Error::invalid("weight exponent must be finite"));
    }
    let ys = imag_grid(phi, opts.grid_max, opts.grid_points.max(2));
    let mut sup: f64 = 0.0;
    for xf in [0.0, 0.25, 0.5, 0.75, 1.0] {
        for &y in &ys {
            let z = Complex64::new(xf * p.tau, y);
            sup = sup.max(phi.eval(z).norm() * (1.0 + z.norm()).powf(a));
        }
    }
    let first = p.parity.first_discrete();
    let term = |j: u64| {
        let beta = first + j as f64;
        (2.0 * beta + 1.0).powf(a) * phi.eval_discrete(beta).abs()
    };
    let mut sum = 0.0;
    let mut zeros = 0;
    let mut j: u64 = 0;
    let mut checkpoint: u64 = 32;
    let mut previous_s = f64::NAN;
    loop {
        let t = term(j);
        sum += t;
        zeros = if t == 0.0 { zeros + 1 } else { 0 };
        j += 1;
        if j >= 64 && zeros >= 16 {
            break;
        }
        if j == checkpoint {
            let (late, early) = (term(j - 1), term(j / 2 - 1));
            if late == 0.0 {
                checkpoint *= 2;
                continue;
            }
            let nb = (2.0 * (first + (j - 1) as f64) + 1.0) / (2.0 * (first + (j / 2 - 1) as f64) + 1.0);
            let s = (early / late).ln() / nb.ln();
            if s > 1.2 {
                // b runs in steps of 2: Σ_{b' > B} late·(b'/B)^{−s} ≈ ½∫_{B+1}^∞.
                let b = 2.0 * (first + (j - 1) as f64) + 1.0;
                let tail = 0.5 * late * b.powf(s) * (b + 1.0).powf(1.0 - s) / (s - 1.0);
                if tail <= 1e-13 * sum || (j >= 1 << 16 && (s - previous_s).abs() < 1e-3) {
                    sum += tail;
                    break;
                }
            }
            if s <= 1.2 && j >= 4096 && s < 0.9 {
                return Err(Error::Unavailable(format!(
                    "the discrete part of N diverges: terms b^{a}|φ((b−1)/2)| decay like b^(-{s:.3})"
                )));
            }
            if j >= 1 << 22 {
                return Err(Error::precision("the discrete part of N converges too slowly to sum"));
            }
            previous_s = s;
            checkpoint *= 2;
        }
    }
    Ok(sup + sum)
}
