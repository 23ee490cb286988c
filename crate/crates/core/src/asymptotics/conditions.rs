use serde::{Deserialize, Serialize};

use super::params::AnalysisParams;
use super::sets::{BudgetSet, LogBox, LogPlace};
use crate::measures::Parity;
use crate::{Error, Result};

/// Families of product sets `C_t` whose hypotheses for the asymptotic
/// formula are checked along a grid of `ln t` (the conditions are
/// asymptotic in `log t`, so grids reach far beyond `f64` range in `t`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ConditionFamily {
    /// `∏_j i[a_j(t), a_j(t) + σ]` with `a_j(t) = t` at the `moving` places
    /// and `a_j = base` elsewhere.
    Hypercube { parity: Vec<Parity>, moving: Vec<bool>, base: f64, sigma: f64 },
    /// `∏_j i[t, t + σ(t)]` with shrinking side `σ(t) = γ(Σ_j log t)^{−α}`.
    ShrinkingBox { parity: Vec<Parity>, gamma: f64, alpha: f64 },
    /// Singletons `{p(t)}` of discrete-series parameters, `p_j(t)` the
    /// first admissible `β ≥ t`.
    Holomorphic { parity: Vec<Parity> },
}

impl ConditionFamily {
    pub fn name(&self) -> &'static str {
        match self {
            ConditionFamily::Hypercube { .. } => "hypercube",
            ConditionFamily::ShrinkingBox { .. } => "shrinking-box",
            ConditionFamily::Holomorphic { .. } => "holomorphic",
        }
    }

    /// The set `C_t` at `ln t`.
    pub fn at(&self, ln_t: f64) -> Result<LogBox> {
        if !(ln_t >= 0.0 && ln_t.is_finite()) {
            return Err(Error::invalid(format!("log t = {ln_t} must be a finite nonnegative number")));
        }
        match self {
            ConditionFamily::Hypercube { parity, moving, base, sigma } => {
                if moving.len() != parity.len() || !moving.iter().any(|&m| m) {
                    return Err(Error::invalid("mark at least one moving place, one marker per place"));
                }
                if !(*base >= 1.0) {
                    return Err(Error::invalid(format!("fixed corner {base} must be ≥ 1")));
                }
                let ln_a: Vec<f64> = moving.iter().map(|&m| if m { ln_t } else { base.ln() }).collect();
                LogBox::hypercube(parity.clone(), &ln_a, *sigma)
            }
            ConditionFamily::ShrinkingBox { parity, gamma, alpha } => {
                let total = parity.len() as f64 * ln_t;
                if !(total > 1.0) {
                    return Err(Error::invalid("the shrinking box needs Σ log a_j > 1"));
                }
                let side = gamma * total.powf(-alpha);
                LogBox::hypercube(parity.clone(), &vec![ln_t; parity.len()], side)
            }
            ConditionFamily::Holomorphic { parity } => {
                let t = ln_t.exp();
                if t > 1e15 {
                    return Err(Error::invalid(format!("discrete parameters beyond 1e15 (log t = {ln_t}) lose integrality")));
                }
                let p: Vec<f64> = parity.iter().map(|par| par.discrete_in(t, t + 1.0).next().unwrap_or(t + 1.0)).collect();
                LogBox::singleton(parity.clone(), &p)
            }
        }
    }
}

/// Outcome of one hypothesis along the grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub name: String,
    pub passed: bool,
    /// Measured log-log slope (against `log t`, or against the scale named
    /// in `detail`).
    pub exponent: Option<f64>,
    pub values: Vec<f64>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub family: String,
    pub checks: Vec<ConditionCheck>,
    pub passed: bool,
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    sxy / sxx
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

/// Whether `λ` is a discrete-series eigenvalue `b/2(1 − b/2)` with `b > 1`,
/// `b ≡ χ (mod 2)`.
pub fn is_discrete_eigenvalue(parity: Parity, lambda: f64) -> bool {
    if lambda > 0.0 {
        return false;
    }
    let b = 1.0 + (1.0 - 4.0 * lambda).sqrt();
    let r = b.round();
    r > 1.0 && (b - r).abs() <= 1e-9 * b && (r as i64 % 2) as u8 == parity.bit()
}

/// Checks the hypotheses of the asymptotic formula for `family` along
/// `ln_ts` (at least three increasing values):
///
/// - `m-rho-decay`: `ν̃_ρ(C⁺)ν̃_{−A}(C⁻) = o(ν̃_1(C))`, i.e. `m_ρ` decreases;
/// - `shell-decay` (`Q₊ ≠ ∅`): `β_{ε(C)}(C⁺)` decreases, with `ε(C)` from
///   the formula for `ε` (its admissibility window is not required here);
/// - `side-width` (`Q₊ ≠ ∅`): the smallest side shrinks at most like
///   `X^{−α}` with `α < 1/2`, `X = (1−ρ)Σ log b_j + log ν̃_1(C⁻)`;
/// - `unbounded`: some upper end `b_j(t)` tends to infinity;
/// - `endpoints`: the fixed `λ`-box endpoints of `endpoints` avoid the
///   discrete-series eigenvalues.
pub fn check_thm_conditions(
    family: &ConditionFamily,
    params: &AnalysisParams,
    ln_ts: &[f64],
    endpoints: &[(Parity, f64, f64)],
) -> Result<ConditionReport> {
    params.validate()?;
    if ln_ts.len() < 3 || ln_ts.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::invalid("the grid needs at least three increasing values of log t"));
    }
    let sets: Vec<LogBox> = ln_ts.iter().map(|&l| family.at(l)).collect::<Result<_>>()?;
    let q_plus = sets[0].q_plus();
    let mut checks = Vec::new();

    let mut ln_m = Vec::with_capacity(sets.len());
    let mut betas = Vec::with_capacity(sets.len());
    let mut beta_ok = true;
    for set in &sets {
        let budget_set = BudgetSet::Box(set.clone());
        let m = budget_set.measures(params.rho, params.big_a, &params.spectral)?;
        let l = m.ln_nv_plus_rho + m.ln_nv_minus_a - m.ln_nv1();
        ln_m.push(l);
        if q_plus > 0 {
            let big_l = -l;
            if big_l > 1.0 {
                let u = (big_l - 0.5 * big_l.ln()) / (params.t0 * q_plus as f64);
                let eps = (big_l.ln() / (2.0 * u)).sqrt();
                betas.push(budget_set.shell_ratio(2.0 * eps, &params.spectral)?);
            } else {
                beta_ok = false;
                betas.push(f64::NAN);
            }
        }
    }
    let m_slope = slope(ln_ts, &ln_m);
    checks.push(ConditionCheck {
        name: "m-rho-decay".into(),
        passed: strictly_decreasing(&ln_m) && m_slope < 0.0,
        exponent: Some(m_slope),
        values: ln_m.clone(),
        detail: "values are log m_ρ; exponent is d log m_ρ / d log t".into(),
    });

    if q_plus > 0 {
        let (passed, exponent, detail) = if beta_ok {
            let lb: Vec<f64> = betas.iter().map(|b| b.ln()).collect();
            (strictly_decreasing(&betas), Some(slope(ln_ts, &lb)), "values are β_ε(C⁺) at ε = ε(C); exponent is d log β / d log t".to_string())
        } else {
            (false, None, "|log m_ρ| ≤ 1 somewhere on the grid, so ε(C) is undefined there".to_string())
        };
        checks.push(ConditionCheck { name: "shell-decay".into(), passed, exponent, values: betas, detail });

        let mut widths = Vec::new();
        let mut scales = Vec::new();
        for set in &sets {
            let mut w_min = f64::INFINITY;
            let mut sum_ln_b = 0.0;
            for p in &set.places {
                if let LogPlace::Interval { ln_a, width } = p {
                    w_min = w_min.min(*width);
                    sum_ln_b += ln_a + (width * (-ln_a).exp()).ln_1p();
                }
            }
            widths.push(w_min);
            scales.push((1.0 - params.rho) * sum_ln_b + set.ln_nv_minus(1.0));
        }
        if scales.iter().any(|&x| !(x > 0.0)) {
            checks.push(ConditionCheck {
                name: "side-width".into(),
                passed: false,
                exponent: None,
                values: widths,
                detail: "the scale X = (1−ρ)Σ log b_j + log ν̃_1(C⁻) is not positive on the grid".into(),
            });
        } else {
            let lx: Vec<f64> = scales.iter().map(|x| x.ln()).collect();
            let lw: Vec<f64> = widths.iter().map(|w| w.ln()).collect();
            let alpha = (-slope(&lx, &lw)).max(0.0);
            checks.push(ConditionCheck {
                name: "side-width".into(),
                passed: alpha < 0.5,
                exponent: Some(alpha),
                values: widths,
                detail: "values are the smallest side; exponent is α with side ∝ X^{−α}, X = (1−ρ)Σ log b_j + log ν̃_1(C⁻); α < 1/2 required"
                    .into(),
            });
        }
    }

    let tops: Vec<f64> = sets
        .iter()
        .map(|s| {
            s.places
                .iter()
                .map(|p| match p {
                    LogPlace::Interval { ln_a, width } => ln_a + (width * (-ln_a).exp()).ln_1p(),
                    LogPlace::Points { betas } => betas.iter().copied().fold(f64::NEG_INFINITY, f64::max).ln(),
                })
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    checks.push(ConditionCheck {
        name: "unbounded".into(),
        passed: tops.windows(2).all(|w| w[1] > w[0]),
        exponent: Some(slope(ln_ts, &tops)),
        values: tops,
        detail: "values are log max_j b_j(t)".into(),
    });

    if !endpoints.is_empty() {
        let bad: Vec<String> = endpoints
            .iter()
            .flat_map(|&(par, a, b)| [(par, a), (par, b)])
            .filter(|&(par, l)| is_discrete_eigenvalue(par, l))
            .map(|(par, l)| format!("λ = {l} (parity {})", par.bit()))
            .collect();
        checks.push(ConditionCheck {
            name: "endpoints".into(),
            passed: bad.is_empty(),
            exponent: None,
            values: vec![],
            detail: if bad.is_empty() {
                "no endpoint is a discrete-series eigenvalue b/2(1 − b/2)".into()
            } else {
                format!("endpoints at discrete-series eigenvalues: {}", bad.join(", "))
            },
        });
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(ConditionReport { family: family.name().to_string(), checks, passed })
}
