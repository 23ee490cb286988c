use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::chart::{chart_weight, ChartBox};
use super::column::ColumnRegion;
use crate::measures::{
    monte_carlo_measure, npl, npl_density, nv_b, w_plancherel, LambdaSet, MeasureResult, Parity, PlaceSet, ProductRegion,
    SpectralConfig,
};
use crate::quadrature::QuadOptions;
use crate::special::ln_gamma;
use crate::{Error, Result};

/// Volume `v_n = π^{n/2}/Γ(n/2 + 1)` of the unit ball in `R^n`.
pub fn unit_ball_volume(n: usize) -> f64 {
    let h = n as f64 / 2.0;
    (h * PI.ln() - ln_gamma(num_complex::Complex64::new(h + 1.0, 0.0)).re).exp()
}

/// A bounded spectral region at a fixed value of the family parameter.
///
/// Product sets (boxes, floating hypercubes, discrete singletons, boxes
/// in `λ`) are exact [`ProductRegion`]s; the other families are stored by
/// their parameters and described by membership in chart coordinates
/// (`s_j = t_j` for `ν_j = it_j`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Region {
    Product(ProductRegion),
    /// `{ν ∈ (i[1,∞))^d : Σ_j (|ν_j| − m_j)² ≤ r²}` with `m_j ≥ r + 1`.
    Sphere { parity: Vec<Parity>, center: Vec<f64>, radius: f64 },
    /// `{(λ_1, λ_2) : t ≤ λ_1 ≤ t + t^α, pλ_1 ≤ λ_2 ≤ qλ_1}`.
    Sector { parity: Vec<Parity>, p: f64, q: f64, alpha: f64, t: f64 },
    /// `{i(x, y) : t ≤ x ≤ 2t, ax + b ≤ y ≤ ax + c}`.
    SlantedStrip { parity: Vec<Parity>, a: f64, b: f64, c: f64, t: f64 },
    /// `W_n(Y) = {λ ∈ [5/4, ∞)^n : Σ_j λ_j ≤ Y}`.
    Simplex { n: usize, y: f64 },
}

fn check_parity(parity: &[Parity], d: usize) -> Result<()> {
    if parity.len() != d {
        return Err(Error::invalid(format!("expected {d} parities, got {}", parity.len())));
    }
    Ok(())
}

impl Region {
    /// `∏_j i[a_j, b_j]`.
    pub fn imaginary_box(parity: Vec<Parity>, sides: &[(f64, f64)]) -> Result<Self> {
        check_parity(&parity, sides.len())?;
        let places = sides.iter().map(|&(a, b)| PlaceSet::imag_interval(a, b)).collect::<Result<Vec<_>>>()?;
        Ok(Region::Product(ProductRegion::new(parity, places)?))
    }

    /// Floating hypercube `∏_j i[a_j, a_j + σ]` with `a_j ≥ 1`.
    pub fn hypercube(parity: Vec<Parity>, a: &[f64], sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::invalid(format!("hypercube side σ = {sigma} must be positive")));
        }
        if let Some(&bad) = a.iter().find(|&&x| !(x >= 1.0)) {
            return Err(Error::invalid(format!("hypercube corner a_j = {bad} must be ≥ 1")));
        }
        let sides: Vec<(f64, f64)> = a.iter().map(|&x| (x, x + sigma)).collect();
        Region::imaginary_box(parity, &sides)
    }

    /// Box `∏_j [A_j, B_j]` in `λ`-space, via its `ν`-preimage.
    pub fn lambda_box(parity: Vec<Parity>, sides: &[(f64, f64)]) -> Result<Self> {
        check_parity(&parity, sides.len())?;
        let places = sides.iter().map(|&(a, b)| LambdaSet::interval(a, b).map(|s| s.to_nu())).collect::<Result<Vec<_>>>()?;
        Ok(Region::Product(ProductRegion::new(parity, places)?))
    }

    /// The singleton `{p}` of discrete-series parameters.
    pub fn singleton(parity: Vec<Parity>, p: &[f64]) -> Result<Self> {
        check_parity(&parity, p.len())?;
        for (&x, par) in p.iter().zip(&parity) {
            if !par.is_discrete(x) {
                return Err(Error::invalid(format!("{x} is not a discrete-series parameter for parity {}", par.bit())));
            }
        }
        let places = p.iter().map(|&x| PlaceSet::point(x)).collect::<Result<Vec<_>>>()?;
        Ok(Region::Product(ProductRegion::new(parity, places)?))
    }

    pub fn sphere(parity: Vec<Parity>, center: &[f64], radius: f64) -> Result<Self> {
        check_parity(&parity, center.len())?;
        if center.is_empty() || !(radius > 0.0) {
            return Err(Error::invalid("sphere needs at least one place and a positive radius"));
        }
        if let Some(&m) = center.iter().find(|&&m| !(m >= radius + 1.0) || !m.is_finite()) {
            return Err(Error::invalid(format!("sphere centre coordinate {m} must be ≥ r + 1 = {}", radius + 1.0)));
        }
        Ok(Region::Sphere { parity, center: center.to_vec(), radius })
    }

    pub fn sector(parity: Vec<Parity>, p: f64, q: f64, alpha: f64, t: f64) -> Result<Self> {
        check_parity(&parity, 2)?;
        if !(0.0 < p && p < q && q.is_finite()) {
            return Err(Error::invalid(format!("sector needs 0 < p < q, got p = {p}, q = {q}")));
        }
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::invalid(format!("sector exponent α = {alpha} must lie in (0, 1]")));
        }
        let t_min = 1.25 * (1.0 + 1.0 / p);
        if !(t >= t_min && t.is_finite()) {
            return Err(Error::invalid(format!("sector parameter t = {t} must be ≥ 5/4·(1 + 1/p) = {t_min}")));
        }
        Ok(Region::Sector { parity, p, q, alpha, t })
    }

    pub fn slanted_strip(parity: Vec<Parity>, a: f64, b: f64, c: f64, t: f64) -> Result<Self> {
        check_parity(&parity, 2)?;
        if !(a > 0.0 && c > b) {
            return Err(Error::invalid(format!("slanted strip needs a > 0 and c > b, got a = {a}, b = {b}, c = {c}")));
        }
        if !(t >= 1.0 && a * t + b >= 1.0 && t.is_finite()) {
            return Err(Error::invalid(format!("slanted strip at t = {t} leaves (i[1, ∞))²")));
        }
        Ok(Region::SlantedStrip { parity, a, b, c, t })
    }

    pub fn simplex(n: usize, y: f64) -> Result<Self> {
        if n == 0 || !y.is_finite() {
            return Err(Error::invalid("simplex needs n ≥ 1 and finite Y"));
        }
        Ok(Region::Simplex { n, y })
    }

    pub fn degree(&self) -> usize {
        match self {
            Region::Product(r) => r.degree(),
            Region::Sphere { center, .. } => center.len(),
            Region::Sector { .. } | Region::SlantedStrip { .. } => 2,
            Region::Simplex { n, .. } => *n,
        }
    }

    /// Membership of a point with all coordinates on the imaginary axis
    /// (`s_j = |ν_j|`, or negative for the complementary branch).
    pub fn contains_chart(&self, s: &[f64]) -> bool {
        if s.len() != self.degree() {
            return false;
        }
        match self {
            Region::Product(r) => r.places.iter().zip(s).all(|(place, &x)| {
                if x >= 0.0 {
                    place.imag.iter().any(|&(a, b)| a <= x && x <= b)
                } else {
                    place.real.iter().any(|&(a, b)| a <= -x && -x <= b) || place.points.contains(&-x)
                }
            }),
            Region::Sphere { center, radius, .. } => {
                s.iter().zip(center).map(|(&x, &m)| (x - m) * (x - m)).sum::<f64>() <= radius * radius
            }
            Region::Sector { p, q, alpha, t, .. } => {
                if s[0] < 0.0 || s[1] < 0.0 {
                    return false;
                }
                let (l1, l2) = (0.25 + s[0] * s[0], 0.25 + s[1] * s[1]);
                *t <= l1 && l1 <= t + t.powf(*alpha) && p * l1 <= l2 && l2 <= q * l1
            }
            Region::SlantedStrip { a, b, c, t, .. } => {
                *t <= s[0] && s[0] <= 2.0 * t && a * s[0] + b <= s[1] && s[1] <= a * s[0] + c
            }
            Region::Simplex { y, .. } => s.iter().all(|&x| x >= 1.0) && s.iter().map(|x| 0.25 + x * x).sum::<f64>() <= *y,
        }
    }

    /// Exact `ν̃_1` (closed form).
    ///
    /// Spheres: the weight `∏|ν_j|` is affine in each coordinate and the
    /// ball is symmetric about its centre, so `ν̃_1 = v_d r^d ∏ m_j`.
    /// Sectors: `V_1` has density `1/2` per coordinate above `5/4`, giving
    /// `(q − p)/8·((t + t^α)² − t²)`. Strips:
    /// `(c − b)(7a t³/3 + 3(b + c)t²/4)`. Simplices:
    /// `(Y − 5n/4)₊^n/(2^n n!)`.
    pub fn closed_form_nv1(&self, cfg: &SpectralConfig) -> MeasureResult {
        let v = match self {
            Region::Product(r) => return nv_b(cfg, 1.0, r),
            Region::Sphere { center, radius, .. } => {
                unit_ball_volume(center.len()) * radius.powi(center.len() as i32) * center.iter().product::<f64>()
            }
            Region::Sector { p, q, alpha, t, .. } => (q - p) / 8.0 * ((t + t.powf(*alpha)).powi(2) - t * t),
            Region::SlantedStrip { a, b, c, t, .. } => (c - b) * (7.0 * a * t.powi(3) / 3.0 + 0.75 * (b + c) * t * t),
            Region::Simplex { n, y } => simplex_volume(*n, *y),
        };
        MeasureResult::closed_form(v, v)
    }

    /// The published closed-form or leading-order expression for `ν̃_1`:
    /// `2 v_d r^d ∏ m_j` for spheres, `(q − p)/4·t^{1+α}` for sectors,
    /// `(7/3)a(c − b)t³` for strips; exact values for the other families.
    pub fn leading_term_nv1(&self, cfg: &SpectralConfig) -> MeasureResult {
        let v = match self {
            Region::Sphere { center, radius, .. } => {
                2.0 * unit_ball_volume(center.len()) * radius.powi(center.len() as i32) * center.iter().product::<f64>()
            }
            Region::Sector { p, q, alpha, t, .. } => (q - p) / 4.0 * t.powf(1.0 + alpha),
            Region::SlantedStrip { a, b, c, t, .. } => 7.0 / 3.0 * a * (c - b) * t.powi(3),
            _ => return self.closed_form_nv1(cfg),
        };
        MeasureResult::closed_form(v, v)
    }

    /// Chart description for quadrature and shells: a box for product
    /// sets, columns for the planar families.
    pub fn chart_region(&self, cfg: &SpectralConfig) -> Result<ChartRegion> {
        let floor = -cfg.nu_theta();
        match self {
            Region::Product(r) => Ok(ChartRegion::Box(ChartBox::from_product(r, cfg)?)),
            Region::Sphere { parity, center, radius } if center.len() == 1 => Ok(ChartRegion::Box(ChartBox::new(
                parity.clone(),
                vec![(center[0] - radius, center[0] + radius)],
                cfg,
            )?)),
            Region::Sphere { center, radius, .. } if center.len() == 2 => {
                let (m1, m2, r) = (center[0], center[1], *radius);
                let half = move |x: f64| (r * r - (x - m1) * (x - m1)).max(0.0).sqrt();
                Ok(ChartRegion::Columns(ColumnRegion::new(m1 - r, m1 + r, move |x| m2 - half(x), move |x| m2 + half(x), Some(m1), floor)?))
            }
            Region::Sector { p, q, alpha, t, .. } => {
                let (p, q) = (*p, *q);
                let x0 = (t - 0.25).sqrt();
                let x1 = (t + t.powf(*alpha) - 0.25).sqrt();
                let edge = |k: f64| move |x: f64| (k * (x * x + 0.25) - 0.25).sqrt();
                Ok(ChartRegion::Columns(ColumnRegion::new(x0, x1, edge(p), edge(q), None, floor)?))
            }
            Region::SlantedStrip { a, b, c, t, .. } => {
                let (a, b, c) = (*a, *b, *c);
                Ok(ChartRegion::Columns(ColumnRegion::new(*t, 2.0 * t, move |x| a * x + b, move |x| a * x + c, None, floor)?))
            }
            Region::Simplex { n: 1, y } => {
                let parity = vec![Parity::Even];
                if *y < 1.25 {
                    return Err(Error::invalid("the simplex is empty"));
                }
                Ok(ChartRegion::Box(ChartBox::new(parity, vec![(1.0, (y - 0.25).sqrt())], cfg)?))
            }
            Region::Simplex { n: 2, y } => {
                let y = *y;
                if y < 2.5 {
                    return Err(Error::invalid("the simplex is empty"));
                }
                Ok(ChartRegion::Columns(ColumnRegion::new(
                    1.0,
                    (y - 1.5).sqrt(),
                    |_| 1.0,
                    move |x| (y - 0.5 - x * x).max(0.0).sqrt(),
                    None,
                    floor,
                )?))
            }
            _ => Err(Error::Unavailable(format!("no chart description for {}-dimensional {}", self.degree(), self.family_name()))),
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            Region::Product(_) => "product",
            Region::Sphere { .. } => "sphere",
            Region::Sector { .. } => "sector",
            Region::SlantedStrip { .. } => "slanted-strip",
            Region::Simplex { .. } => "simplex",
        }
    }

    /// `ν̃_1` by quadrature (column integrals with closed-form inner
    /// integrals; product sets are exact).
    pub fn nv1_quadrature(&self, cfg: &SpectralConfig, opts: QuadOptions) -> Result<MeasureResult> {
        match self {
            Region::Product(r) => Ok(nv_b(cfg, 1.0, r)),
            _ => self.chart_region(cfg)?.nv_b(1.0, opts),
        }
    }

    /// `ν̃pl` (exact for product sets, column quadrature for planar families).
    pub fn npl(&self, cfg: &SpectralConfig, opts: QuadOptions) -> Result<MeasureResult> {
        let parity = match self {
            Region::Product(r) => return Ok(npl(r)),
            Region::Sphere { parity, .. } | Region::Sector { parity, .. } | Region::SlantedStrip { parity, .. } => parity.clone(),
            Region::Simplex { n, .. } => vec![Parity::Even; *n],
        };
        match self.chart_region(cfg)? {
            ChartRegion::Box(b) => Ok(npl(&b.to_product())),
            ChartRegion::Columns(col) => {
                let (p0, p1) = (parity[0], parity[1]);
                col.integrate_weighted(
                    |x| if x > 0.0 { 2.0 * npl_density(p0, x) } else { 0.0 },
                    |y| w_plancherel(p1, y.max(0.0)).value,
                    opts,
                )
            }
        }
    }

    /// Box in chart coordinates containing the continuous part.
    pub fn chart_bounding_box(&self, cfg: &SpectralConfig) -> Result<Vec<(f64, f64)>> {
        match self {
            Region::Sphere { center, radius, .. } => Ok(center.iter().map(|&m| (m - radius, m + radius)).collect()),
            Region::Simplex { n, y } => {
                let top = (y - 1.25 * (*n as f64 - 1.0)).max(1.25) - 0.25;
                Ok(vec![(1.0, top.sqrt()); *n])
            }
            _ => match self.chart_region(cfg)? {
                ChartRegion::Box(b) => Ok(b.sides.clone()),
                ChartRegion::Columns(c) => Ok(c.bounding_box().to_vec()),
            },
        }
    }

    /// `ν̃_1` by Monte Carlo in chart coordinates with weight `∏ p(ν_j)`.
    pub fn nv1_monte_carlo(&self, cfg: &SpectralConfig, n_samples: u64, seed: u64) -> Result<MeasureResult> {
        let bbox = self.chart_bounding_box(cfg)?;
        monte_carlo_measure(&bbox, |s| self.contains_chart(s), |s| s.iter().map(|&x| chart_weight(1.0, x)).product(), n_samples, seed)
    }

    /// `(C(c), C(−c))`: the outer fattening and the inner core. `C(0) = C`.
    pub fn shells(&self, c: f64, cfg: &SpectralConfig) -> Result<Shells> {
        if !(c >= 0.0 && c.is_finite()) {
            return Err(Error::invalid(format!("shell width c = {c} must be a finite nonnegative number")));
        }
        let base = self.chart_region(cfg)?;
        let outer = base.shifted(c).ok_or_else(|| Error::invalid("the region is empty"))?;
        Ok(Shells { c, outer, inner: base.shifted(-c) })
    }
}

/// `ν̃_1(W_n(Y)) = (Y − 5n/4)₊^n / (2^n n!)`.
pub fn simplex_volume(n: usize, y: f64) -> f64 {
    let x = (y - 1.25 * n as f64).max(0.0);
    let mut v = 1.0;
    for k in 1..=n {
        v *= x / (2.0 * k as f64);
    }
    v
}

/// Chart-coordinate geometry of a region: a box or a planar column region.
#[derive(Clone, Debug)]
pub enum ChartRegion {
    Box(ChartBox),
    Columns(ColumnRegion),
}

impl ChartRegion {
    pub fn contains(&self, s: &[f64]) -> bool {
        match self {
            ChartRegion::Box(b) => b.contains(s),
            ChartRegion::Columns(c) => s.len() == 2 && c.contains(s[0], s[1]),
        }
    }

    pub fn nv_b(&self, b: f64, opts: QuadOptions) -> Result<MeasureResult> {
        match self {
            ChartRegion::Box(bx) => Ok(bx.nv_b(b)),
            ChartRegion::Columns(c) => c.nv_b(b, opts),
        }
    }

    /// Outer fattening (`c > 0`) or inner core (`c < 0`); `None` if empty.
    pub fn shifted(&self, c: f64) -> Option<ChartRegion> {
        match self {
            ChartRegion::Box(b) => b.shifted(c).map(ChartRegion::Box),
            ChartRegion::Columns(col) => col.shifted(c).map(ChartRegion::Columns),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            ChartRegion::Box(b) => b.degree(),
            ChartRegion::Columns(_) => 2,
        }
    }
}

/// The shells of a region: `C(c)`, `C(−c)`, and `C[c] = C(c) ∖ C(−c)`.
#[derive(Clone, Debug)]
pub struct Shells {
    pub c: f64,
    pub outer: ChartRegion,
    pub inner: Option<ChartRegion>,
}

impl Shells {
    pub fn in_shell(&self, s: &[f64]) -> bool {
        self.outer.contains(s) && !self.inner.as_ref().is_some_and(|i| i.contains(s))
    }

    /// `ν̃_b(C[c]) = ν̃_b(C(c)) − ν̃_b(C(−c))` (the core lies in the fattening).
    pub fn shell_nv_b(&self, b: f64, opts: QuadOptions) -> Result<MeasureResult> {
        let outer = self.outer.nv_b(b, opts)?;
        let inner = match &self.inner {
            Some(i) => i.nv_b(b, opts)?,
            None => MeasureResult::zero(),
        };
        Ok(MeasureResult {
            value: outer.value - inner.value,
            error: outer.error + inner.error,
            method: outer.method.max(inner.method),
            detail: outer.detail + inner.detail,
        })
    }
}

/// Shell-growth constant `R(n) = (3(1 + e^{−1}))^n`.
pub fn shell_growth_constant(n: usize) -> f64 {
    (3.0 * (1.0 + (-1.0f64).exp())).powi(n as i32)
}
