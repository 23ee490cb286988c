use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::budget::{main_term, main_term_constant, main_term_lambda};
use crate::measures::{npl_density, w_plancherel, LambdaRegion, LambdaSet, MeasureResult, Method, Parity, SpectralConfig};
use crate::numberfield::QuadField;
use crate::quadrature::{integrate, QuadOptions};
use crate::regions::{unit_ball_volume, Region};
use crate::{Error, Result};

/// Families of spectral sets with published main-term asymptotics
/// `C·t^k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum AsymptoticFamily {
    /// `[−t, t]^d` in `λ`; `2√|D_F|/π^d · t^d`.
    Weyl1 { parity: Vec<Parity> },
    /// `{Σ_j|λ_j| ≤ t}` with `λ_j > 0` at places marked `plus` and
    /// `λ_j ≤ 0` elsewhere; `2√|D_F|/(d!(2π)^d) · t^d`.
    Weyl2 { parity: Vec<Parity>, plus: Vec<bool> },
    /// `{t ≤ |ν_1| ≤ 2t, a|ν_1| + b ≤ |ν_2| ≤ a|ν_1| + c}`;
    /// `(14/(3π²))√|D_F| a(c − b) · t³`.
    SlantedStrip { parity: Vec<Parity>, a: f64, b: f64, c: f64 },
    /// `{t ≤ λ_1 ≤ t + t^α, pλ_1 ≤ λ_2 ≤ qλ_1}`; `(q − p)/4 · t^{1+α}`.
    Sector { parity: Vec<Parity>, p: f64, q: f64, alpha: f64 },
    /// Spheres `iB(m, r)` with centre `m_j = slopes_j·t`;
    /// `4√|D_F| v_d (r/π)^d ∏_j slopes_j · t^d`.
    Sphere { parity: Vec<Parity>, radius: f64, slopes: Vec<f64> },
    /// `[α, β] × [t, t + √t]` in `λ` (degree 2);
    /// `(√|D_F|/(2π²)) ∫_α^β tanh π√(λ − 1/4) dλ · t^{1/2}`.
    RectQuad { parity: Vec<Parity>, alpha: f64, beta: f64 },
}

/// A published leading term `constant·t^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PublishedTarget {
    pub constant: f64,
    pub exponent: f64,
}

fn tol() -> QuadOptions {
    QuadOptions::tol(0.0, 1e-11)
}

/// `pl({0 < λ ≤ x})` at a place of `Q₊`: `W_χ(√(x − 1/4))`.
fn plus_mass(parity: Parity, x: f64) -> f64 {
    if x <= 0.25 {
        0.0
    } else {
        w_plancherel(parity, (x - 0.25).sqrt()).value
    }
}

/// `pl({−x ≤ λ ≤ 0})` at a place of `Q₋`: `Σ 2β` over discrete-series
/// `β` with `β² − 1/4 ≤ x`.
fn minus_mass(parity: Parity, x: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    parity.discrete_in(0.0, (x + 0.25).sqrt()).map(|b| 2.0 * b).sum()
}

fn place_mass(parity: Parity, plus: bool, x: f64) -> f64 {
    if plus {
        plus_mass(parity, x)
    } else {
        minus_mass(parity, x)
    }
}

impl AsymptoticFamily {
    pub fn degree(&self) -> usize {
        match self {
            AsymptoticFamily::Weyl1 { parity }
            | AsymptoticFamily::Weyl2 { parity, .. }
            | AsymptoticFamily::SlantedStrip { parity, .. }
            | AsymptoticFamily::Sector { parity, .. }
            | AsymptoticFamily::Sphere { parity, .. }
            | AsymptoticFamily::RectQuad { parity, .. } => parity.len(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            AsymptoticFamily::Weyl1 { .. } => "weyl1",
            AsymptoticFamily::Weyl2 { .. } => "weyl2",
            AsymptoticFamily::SlantedStrip { .. } => "slanted-strip",
            AsymptoticFamily::Sector { .. } => "sector",
            AsymptoticFamily::Sphere { .. } => "sphere",
            AsymptoticFamily::RectQuad { .. } => "rect-quad",
        }
    }

    /// The published leading term over `field`.
    pub fn published_target(&self, field: &QuadField) -> Result<PublishedTarget> {
        let d = self.degree();
        if field.degree() != d {
            return Err(Error::invalid(format!("{}-place family over a field of degree {}", d, field.degree())));
        }
        let sqrt_d = (field.discriminant().abs() as f64).sqrt();
        let (constant, exponent) = match self {
            AsymptoticFamily::Weyl1 { .. } => (2.0 * sqrt_d / PI.powi(d as i32), d as f64),
            AsymptoticFamily::Weyl2 { .. } => {
                let fact: f64 = (1..=d).map(|k| k as f64).product();
                (2.0 * sqrt_d / (fact * (2.0 * PI).powi(d as i32)), d as f64)
            }
            AsymptoticFamily::SlantedStrip { a, b, c, .. } => (14.0 / (3.0 * PI * PI) * sqrt_d * a * (c - b), 3.0),
            AsymptoticFamily::Sector { p, q, alpha, .. } => ((q - p) / 4.0, 1.0 + alpha),
            AsymptoticFamily::Sphere { radius, slopes, .. } => {
                let c = 4.0 * sqrt_d * unit_ball_volume(d) * (radius / PI).powi(d as i32) * slopes.iter().product::<f64>();
                (c, d as f64)
            }
            AsymptoticFamily::RectQuad { alpha, beta, .. } => {
                let q = integrate(|l: f64| (PI * (l - 0.25).max(0.0).sqrt()).tanh(), *alpha, *beta, tol());
                (sqrt_d / (2.0 * PI * PI) * q.value, 0.5)
            }
        };
        Ok(PublishedTarget { constant, exponent })
    }

    /// The main term `(2√|D_F|/(2π)^d)·pl(Ω_t)` at parameter `t`.
    pub fn main_term(&self, field: &QuadField, cfg: &SpectralConfig, t: f64) -> Result<MeasureResult> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::invalid(format!("family parameter t = {t} must be positive")));
        }
        match self {
            AsymptoticFamily::Weyl1 { parity } => {
                let places = vec![LambdaSet::interval(-t, t)?; parity.len()];
                main_term_lambda(field, &LambdaRegion::new(parity.clone(), places)?)
            }
            AsymptoticFamily::Weyl2 { parity, plus } => {
                if plus.len() != parity.len() {
                    return Err(Error::invalid("one sign marker per place is required"));
                }
                let c = main_term_constant(field);
                if field.degree() != parity.len() {
                    return Err(Error::invalid("family degree differs from the field degree"));
                }
                let pl = weyl2_mass(parity, plus, t)?;
                Ok(MeasureResult { value: c * pl.value, error: c * pl.error, ..pl })
            }
            AsymptoticFamily::SlantedStrip { parity, a, b, c } => {
                main_term(field, &Region::slanted_strip(parity.clone(), *a, *b, *c, t)?, cfg)
            }
            AsymptoticFamily::Sector { parity, p, q, alpha } => {
                main_term(field, &Region::sector(parity.clone(), *p, *q, *alpha, t)?, cfg)
            }
            AsymptoticFamily::Sphere { parity, radius, slopes } => {
                let centre: Vec<f64> = slopes.iter().map(|s| s * t).collect();
                main_term(field, &Region::sphere(parity.clone(), &centre, *radius)?, cfg)
            }
            AsymptoticFamily::RectQuad { parity, alpha, beta } => {
                if parity.len() != 2 {
                    return Err(Error::invalid("the rectangle family has two places"));
                }
                let places = vec![LambdaSet::interval(*alpha, *beta)?, LambdaSet::interval(t, t + t.sqrt())?];
                main_term_lambda(field, &LambdaRegion::new(parity.clone(), places)?)
            }
        }
    }
}

/// `pl({Σ_j|λ_j| ≤ t, sign conditions})` for one or two places.
fn weyl2_mass(parity: &[Parity], plus: &[bool], t: f64) -> Result<MeasureResult> {
    match parity.len() {
        1 => {
            let v = place_mass(parity[0], plus[0], t);
            Ok(MeasureResult::closed_form(v, v))
        }
        2 => {
            if let Some(m) = (0..2).find(|&j| !plus[j]) {
                let o = 1 - m;
                let v: f64 = parity[m]
                    .discrete_in(0.0, (t + 0.25).sqrt())
                    .map(|b| 2.0 * b * place_mass(parity[o], plus[o], t - (b * b - 0.25)))
                    .sum();
                return Ok(MeasureResult::closed_form(v, v));
            }
            // λ_1 = 1/4 + u²: pl_1 has density 2ν̃plf(u) du.
            let top = (t - 0.5).max(0.0).sqrt();
            let q = integrate(
                |u: f64| 2.0 * npl_density(parity[0], u) * plus_mass(parity[1], t - 0.25 - u * u),
                0.0,
                top,
                tol(),
            );
            if !q.converged {
                return Err(Error::precision(format!("simplex quadrature at t = {t} missed its tolerance (error {})", q.error)));
            }
            Ok(MeasureResult { value: q.value, error: q.error, method: Method::Quadrature, detail: q.evaluations as u64 })
        }
        d => Err(Error::Unavailable(format!("the simplex family is implemented for degree ≤ 2, not {d}"))),
    }
}

/// Least-squares fit `ln y = ln C + k ln x`; returns `(C, k)`.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    if points.len() < 2 || points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(Error::invalid("a power-law fit needs at least two points with positive coordinates"));
    }
    let n = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x.ln(), b + y.ln()));
    let (mx, my) = (sx / n, sy / n);
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for &(x, y) in points {
        let dx = x.ln() - mx;
        sxx += dx * dx;
        sxy += dx * (y.ln() - my);
    }
    if sxx == 0.0 {
        return Err(Error::invalid("a power-law fit needs at least two distinct abscissae"));
    }
    let k = sxy / sxx;
    Ok(((my - k * mx).exp(), k))
}

/// One grid point of a [`FamilyTable`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub t: f64,
    pub main_term: f64,
    pub error: f64,
    /// `main_term/(C·t^k)` with the published `C`, `k`.
    pub normalized: f64,
}

/// Main terms of a family over a grid, fitted against the published
/// leading term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyTable {
    pub family: String,
    pub rows: Vec<FamilyRow>,
    /// Free fit `C·t^k` over the grid.
    pub fitted_constant: f64,
    pub fitted_exponent: f64,
    /// `exp(mean(ln main − k ln t))` with the published exponent.
    pub pinned_constant: f64,
    pub target: PublishedTarget,
    /// `|pinned_constant/C − 1|`.
    pub constant_deviation: f64,
    /// `max_t |main/(C t^k) − 1|`.
    pub max_deviation: f64,
}

/// Tabulates the main term of `family` over `ts` and compares it with the
/// published constant and exponent.
pub fn family_asymptotic_table(family: &AsymptoticFamily, field: &QuadField, cfg: &SpectralConfig, ts: &[f64]) -> Result<FamilyTable> {
    if ts.len() < 3 {
        return Err(Error::invalid(format!("a family fit needs at least 3 grid points, got {}", ts.len())));
    }
    let target = family.published_target(field)?;
    let values: Vec<MeasureResult> = ts.par_iter().map(|&t| family.main_term(field, cfg, t)).collect::<Result<_>>()?;
    let rows: Vec<FamilyRow> = ts
        .iter()
        .zip(&values)
        .map(|(&t, v)| FamilyRow {
            t,
            main_term: v.value,
            error: v.error,
            normalized: v.value / (target.constant * t.powf(target.exponent)),
        })
        .collect();
    let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.t, r.main_term)).collect();
    let (fitted_constant, fitted_exponent) = fit_power_law(&points)?;
    let mean_log = rows.iter().map(|r| r.main_term.ln() - target.exponent * r.t.ln()).sum::<f64>() / rows.len() as f64;
    let pinned_constant = mean_log.exp();
    let max_deviation = rows.iter().map(|r| (r.normalized - 1.0).abs()).fold(0.0, f64::max);
    Ok(FamilyTable {
        family: family.name().to_string(),
        rows,
        fitted_constant,
        fitted_exponent,
        pinned_constant,
        target,
        constant_deviation: (pinned_constant / target.constant - 1.0).abs(),
        max_deviation,
    })
}
