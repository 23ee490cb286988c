use serde::{Deserialize, Serialize};

use crate::measures::{npl_place, w_plancherel, Parity, PlaceSet, SpectralConfig};
use crate::quadrature::QuadOptions;
use crate::regions::{chart_antiderivative, Region};
use crate::{Error, Result};

/// Below this corner height interval measures are evaluated directly; above
/// it the closed large-height forms are exact to `e^{−2πa}`.
const DIRECT_HEIGHT: f64 = 40.0;

fn quad_opts() -> QuadOptions {
    QuadOptions::tol(0.0, 1e-11)
}

/// One place of a [`LogBox`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LogPlace {
    /// The imaginary interval `i[a, a + width]` with `a = e^{ln_a} ≥ 1`
    /// (a place of `Q₊`).
    Interval { ln_a: f64, width: f64 },
    /// A finite set of discrete-series parameters (a place of `Q₋`).
    Points { betas: Vec<f64> },
}

/// A product set `C = C⁺ × C⁻` whose continuous factors are stored by the
/// logarithm of their lower corner, so that families can be followed to
/// heights like `e^{10⁶}` where the error budget becomes admissible.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogBox {
    pub parity: Vec<Parity>,
    pub places: Vec<LogPlace>,
}

/// `ln ν̃_b(i[a, a + w])` for `a = e^{ln_a} ≥ 1`:
/// `ln(((a + w)^{b+1} − a^{b+1})/(b + 1))`, written with `expm1`/`ln1p` so
/// that `w ≪ a` loses nothing.
fn ln_interval_nv(b: f64, ln_a: f64, w: f64) -> f64 {
    let ln_x = w.ln() - ln_a;
    let e = b + 1.0;
    if ln_x < -600.0 {
        // ((a + w)^{b+1} − a^{b+1})/(b+1) = a^b w (1 + O(w/a)).
        return b * ln_a + w.ln();
    }
    let x = ln_x.exp();
    let l1 = x.ln_1p();
    if e.abs() < 1e-12 {
        return l1.ln();
    }
    e * ln_a + ((e * l1).exp_m1() / e).ln()
}

fn ln_sum_pow(b: f64, betas: &[f64]) -> f64 {
    let logs: Vec<f64> = betas.iter().map(|x| b * x.ln()).collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return top;
    }
    top + logs.iter().map(|l| (l - top).exp()).sum::<f64>().ln()
}

/// `ν̃_1(C(c))/ν̃_1(C)` at one interval place: the fattened interval
/// (clipped at `−ν_θ`) for `c > 0`, the core for `c < 0`.
fn interval_shift_ratio(ln_a: f64, w: f64, c: f64, nu_theta: f64) -> f64 {
    if c < 0.0 && w + 2.0 * c <= 0.0 {
        return 0.0;
    }
    if ln_a > 700.0 || ln_a.exp() - c.abs() >= 1.0 {
        // Above height 1 the density is `s`, and `(y² − x²)/2` scales with
        // the length for intervals with a common centre.
        return (w + 2.0 * c) / w;
    }
    let a = ln_a.exp();
    let base = chart_antiderivative(1.0, a + w) - chart_antiderivative(1.0, a);
    let lo = (a - c).max(-nu_theta);
    (chart_antiderivative(1.0, a + w + c) - chart_antiderivative(1.0, lo)) / base
}

impl LogBox {
    pub fn new(parity: Vec<Parity>, places: Vec<LogPlace>) -> Result<Self> {
        if places.is_empty() || parity.len() != places.len() {
            return Err(Error::invalid(format!("{} parities for {} places", parity.len(), places.len())));
        }
        for (place, par) in places.iter().zip(&parity) {
            match place {
                LogPlace::Interval { ln_a, width } => {
                    if !(*ln_a >= 0.0 && ln_a.is_finite()) {
                        return Err(Error::invalid(format!("interval corner log a = {ln_a} must be ≥ 0 (a ≥ 1)")));
                    }
                    if !(*width > 0.0 && width.is_finite()) {
                        return Err(Error::invalid(format!("interval width {width} must be positive")));
                    }
                }
                LogPlace::Points { betas } => {
                    if betas.is_empty() {
                        return Err(Error::invalid("a discrete place needs at least one point"));
                    }
                    if let Some(b) = betas.iter().find(|&&b| !par.is_discrete(b)) {
                        return Err(Error::invalid(format!("{b} is not a discrete-series parameter for parity {}", par.bit())));
                    }
                }
            }
        }
        Ok(LogBox { parity, places })
    }

    /// `∏_j i[a_j, a_j + σ]` with `a_j = e^{ln_a[j]}`.
    pub fn hypercube(parity: Vec<Parity>, ln_a: &[f64], sigma: f64) -> Result<Self> {
        LogBox::new(parity, ln_a.iter().map(|&l| LogPlace::Interval { ln_a: l, width: sigma }).collect())
    }

    /// The singleton `{p}` of discrete-series parameters.
    pub fn singleton(parity: Vec<Parity>, p: &[f64]) -> Result<Self> {
        LogBox::new(parity, p.iter().map(|&b| LogPlace::Points { betas: vec![b] }).collect())
    }

    /// A product region whose places are single imaginary intervals in
    /// `i[1, ∞)` or finite sets of discrete-series points.
    pub fn from_product(parity: &[Parity], places: &[PlaceSet]) -> Result<Self> {
        let mut out = Vec::with_capacity(places.len());
        for (place, par) in places.iter().zip(parity) {
            let converted = match (place.imag.as_slice(), place.real.as_slice(), place.points.as_slice()) {
                (&[(a, b)], [], []) if a >= 1.0 && b > a => LogPlace::Interval { ln_a: a.ln(), width: b - a },
                ([], [], pts) if !pts.is_empty() => {
                    LogPlace::Points { betas: pts.iter().copied().filter(|&x| par.is_discrete(x)).collect() }
                }
                _ => {
                    return Err(Error::invalid(
                        "each place must be one imaginary interval in i[1, ∞) or a set of discrete-series points",
                    ))
                }
            };
            out.push(converted);
        }
        LogBox::new(parity.to_vec(), out)
    }

    pub fn degree(&self) -> usize {
        self.places.len()
    }

    /// `|Q₊|`, the number of continuous places.
    pub fn q_plus(&self) -> usize {
        self.places.iter().filter(|p| matches!(p, LogPlace::Interval { .. })).count()
    }

    /// `ln ν̃_b(C⁺)` (zero for an empty `Q₊`).
    pub fn ln_nv_plus(&self, b: f64) -> f64 {
        self.places
            .iter()
            .map(|p| match p {
                LogPlace::Interval { ln_a, width } => ln_interval_nv(b, *ln_a, *width),
                LogPlace::Points { .. } => 0.0,
            })
            .sum()
    }

    /// `ln ν̃_b(C⁻) = Σ_j ln Σ_β β^b` (zero for an empty `Q₋`).
    pub fn ln_nv_minus(&self, b: f64) -> f64 {
        self.places
            .iter()
            .map(|p| match p {
                LogPlace::Interval { .. } => 0.0,
                LogPlace::Points { betas } => ln_sum_pow(b, betas),
            })
            .sum()
    }

    /// `ln ν̃pl(C)`.
    pub fn ln_npl(&self) -> f64 {
        self.places
            .iter()
            .zip(&self.parity)
            .map(|(p, &par)| match p {
                LogPlace::Interval { ln_a, width } => {
                    if *ln_a < DIRECT_HEIGHT.ln() {
                        let a = ln_a.exp();
                        (w_plancherel(par, a + width).value - w_plancherel(par, a).value).ln()
                    } else {
                        // W(a + w) − W(a) = 2aw + w² up to e^{−2πa}.
                        ln_a + (2.0 * width + width * width * (-ln_a).exp()).ln()
                    }
                }
                LogPlace::Points { betas } => {
                    let set = PlaceSet::new(vec![], vec![], betas.clone()).expect("points were validated");
                    npl_place(par, &set).value.ln()
                }
            })
            .sum()
    }

    /// `ν̃_1(C⁺[c])/ν̃_1(C⁺)` for the shell `C⁺[c] = C⁺(c) ∖ C⁺(−c)`.
    pub fn shell_ratio(&self, c: f64, cfg: &SpectralConfig) -> f64 {
        let (mut outer, mut inner) = (1.0, 1.0);
        for p in &self.places {
            if let LogPlace::Interval { ln_a, width } = p {
                outer *= interval_shift_ratio(*ln_a, *width, c, cfg.nu_theta());
                inner *= interval_shift_ratio(*ln_a, *width, -c, cfg.nu_theta());
            }
        }
        outer - inner
    }
}

/// A set `C = C⁺ × C⁻` entering the error budget: a [`LogBox`] or a
/// planar region of the `regions` module lying in `(i[1, ∞))^d`
/// (then `Q₊` is every place).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "set", rename_all = "kebab-case")]
pub enum BudgetSet {
    Box(LogBox),
    Region(Region),
}

/// The logarithmic measures entering `m_ρ`, `β_ε` and the error budget.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SetMeasures {
    pub degree: usize,
    pub q_plus: usize,
    /// `ln ν̃_ρ(C⁺)`.
    pub ln_nv_plus_rho: f64,
    /// `ln ν̃_1(C⁺)`.
    pub ln_nv_plus_1: f64,
    /// `ln ν̃_{−A}(C⁻)`.
    pub ln_nv_minus_a: f64,
    /// `ln ν̃_1(C⁻)`.
    pub ln_nv_minus_1: f64,
    /// `ln ν̃pl(C)`.
    pub ln_npl: f64,
}

impl SetMeasures {
    /// `ln ν̃_1(C)`.
    pub fn ln_nv1(&self) -> f64 {
        self.ln_nv_plus_1 + self.ln_nv_minus_1
    }
}

impl BudgetSet {
    /// Product regions become [`LogBox`]es; other regions must lie in
    /// `(i[1, ∞))^d`.
    pub fn from_region(region: Region, cfg: &SpectralConfig) -> Result<Self> {
        match region {
            Region::Product(r) => Ok(BudgetSet::Box(LogBox::from_product(&r.parity, &r.places)?)),
            other => {
                let bbox = other.chart_bounding_box(cfg)?;
                if let Some(&(lo, _)) = bbox.iter().find(|&&(lo, _)| lo < 1.0) {
                    return Err(Error::invalid(format!("the set reaches |ν| = {lo} < 1, outside (i[1, ∞))^d")));
                }
                Ok(BudgetSet::Region(other))
            }
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            BudgetSet::Box(b) => b.degree(),
            BudgetSet::Region(r) => r.degree(),
        }
    }

    pub fn q_plus(&self) -> usize {
        match self {
            BudgetSet::Box(b) => b.q_plus(),
            BudgetSet::Region(r) => r.degree(),
        }
    }

    pub fn measures(&self, params_rho: f64, big_a: f64, cfg: &SpectralConfig) -> Result<SetMeasures> {
        let m = match self {
            BudgetSet::Box(b) => SetMeasures {
                degree: b.degree(),
                q_plus: b.q_plus(),
                ln_nv_plus_rho: b.ln_nv_plus(params_rho),
                ln_nv_plus_1: b.ln_nv_plus(1.0),
                ln_nv_minus_a: b.ln_nv_minus(-big_a),
                ln_nv_minus_1: b.ln_nv_minus(1.0),
                ln_npl: b.ln_npl(),
            },
            BudgetSet::Region(r) => {
                let chart = r.chart_region(cfg)?;
                SetMeasures {
                    degree: r.degree(),
                    q_plus: r.degree(),
                    ln_nv_plus_rho: chart.nv_b(params_rho, quad_opts())?.value.ln(),
                    ln_nv_plus_1: chart.nv_b(1.0, quad_opts())?.value.ln(),
                    ln_nv_minus_a: 0.0,
                    ln_nv_minus_1: 0.0,
                    ln_npl: r.npl(cfg, quad_opts())?.value.ln(),
                }
            }
        };
        if !(m.ln_nv1() > f64::NEG_INFINITY) {
            return Err(Error::invalid("ν̃_1(C) = 0: m_ρ and β_ε are undefined"));
        }
        Ok(m)
    }

    /// `ν̃_1(C⁺[c])/ν̃_1(C⁺)`.
    pub fn shell_ratio(&self, c: f64, cfg: &SpectralConfig) -> Result<f64> {
        if !(c >= 0.0 && c.is_finite()) {
            return Err(Error::invalid(format!("shell width c = {c} must be a finite nonnegative number")));
        }
        match self {
            BudgetSet::Box(b) => Ok(b.shell_ratio(c, cfg)),
            BudgetSet::Region(r) => {
                let base = r.nv1_quadrature(cfg, quad_opts())?.value;
                let shell = r.shells(c, cfg)?.shell_nv_b(1.0, quad_opts())?.value;
                Ok(shell / base)
            }
        }
    }
}
