use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::params::{check_window, select_parameters, AnalysisParams, ParameterChoice};
use super::sets::{BudgetSet, SetMeasures};
use crate::measures::{pl_lambda, LambdaRegion, MeasureResult, SpectralConfig};
use crate::numberfield::QuadField;
use crate::quadrature::QuadOptions;
use crate::regions::Region;
use crate::{Error, Result};

/// `2√|D_F|/(2π)^d`, the weight of `ν̃pl` in the main term.
pub fn main_term_constant(field: &QuadField) -> f64 {
    let d = field.degree() as i32;
    2.0 * (field.discriminant().abs() as f64).sqrt() / (2.0 * PI).powi(d)
}

fn check_degree(field: &QuadField, d: usize) -> Result<()> {
    if field.degree() != d {
        return Err(Error::invalid(format!("a {d}-place set over a field of degree {}", field.degree())));
    }
    Ok(())
}

/// Main term `(2√|D_F|/(2π)^d)·ν̃pl(Ω̃)` of a region in `ν`-coordinates.
pub fn main_term(field: &QuadField, region: &Region, cfg: &SpectralConfig) -> Result<MeasureResult> {
    check_degree(field, region.degree())?;
    let c = main_term_constant(field);
    let pl = region.npl(cfg, QuadOptions::tol(0.0, 1e-11))?;
    Ok(MeasureResult { value: c * pl.value, error: c * pl.error, ..pl })
}

/// Main term `(2√|D_F|/(2π)^d)·pl(Ω)` of a product region in `λ`.
pub fn main_term_lambda(field: &QuadField, region: &LambdaRegion) -> Result<MeasureResult> {
    check_degree(field, region.places.len())?;
    let c = main_term_constant(field);
    let pl = pl_lambda(region);
    Ok(MeasureResult { value: c * pl.value, error: c * pl.error, ..pl })
}

/// `log m_ρ(C) = log(ν̃_ρ(C⁺)ν̃_{−A}(C⁻)/ν̃_1(C))`.
pub fn ln_m_rho(set: &BudgetSet, params: &AnalysisParams) -> Result<f64> {
    let m = set.measures(params.rho, params.big_a, &params.spectral)?;
    Ok(m.ln_nv_plus_rho + m.ln_nv_minus_a - m.ln_nv1())
}

/// `m_ρ(C)`; underflows to 0 for large sets, where [`ln_m_rho`] is needed.
pub fn m_rho(set: &BudgetSet, params: &AnalysisParams) -> Result<f64> {
    ln_m_rho(set, params).map(f64::exp)
}

/// `β_ε(C⁺) = ν̃_1(C⁺[2ε])/ν̃_1(C⁺)`.
pub fn beta_eps(set: &BudgetSet, eps: f64, cfg: &SpectralConfig) -> Result<f64> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::invalid(format!("ε = {eps} must be positive")));
    }
    if set.q_plus() == 0 {
        return Err(Error::invalid("β_ε is defined for sets with Q₊ ≠ ∅"));
    }
    set.shell_ratio(2.0 * eps, cfg)
}

/// Shape `(log(2 + Σ_j|t + μ_j|))^q` of the bound for the Eisenstein
/// Fourier coefficients (`q = 7` in the sum formula). An empty `μ` is
/// read as `μ = 0` at one place.
pub fn eisenstein_bound(t: f64, mu: &[f64], q_exponent: i32) -> f64 {
    let s: f64 = if mu.is_empty() { t.abs() } else { mu.iter().map(|m| (t + m).abs()).sum() };
    (2.0 + s).ln().powi(q_exponent)
}

/// One term of the error budget, as a logarithm and relative to the main
/// term.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BudgetPiece {
    pub ln_value: f64,
    /// `piece/main_term`.
    pub ratio: f64,
}

/// The error term `E(C, U, ε)` split into its four pieces, next to the
/// main term `(2√|D_F|/(2π)^d)·ν̃pl(C)`:
///
/// - `kloosterman`: `e^{t₀U|Q₊|}ν̃_ρ(C⁺)ν̃_{−A}(C⁻)` (just `ν̃_{−A}(C⁻)` when
///   `Q₊ = ∅`);
/// - `smoothing`: `e^{−Uε²}ν̃_1(C)`;
/// - `boundary`: `ν̃_1(C⁺[2ε] × C⁻)`;
/// - `plancherel`: `U^{−1/2}ν̃_1(C)`.
///
/// Values are stored as logarithms since the sets where the budget is
/// admissible have measures far beyond `f64` range.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorBudget {
    pub ln_main: f64,
    pub ln_nv1: f64,
    pub u: Option<f64>,
    pub eps: Option<f64>,
    pub kloosterman: BudgetPiece,
    pub smoothing: BudgetPiece,
    pub boundary: BudgetPiece,
    pub plancherel: BudgetPiece,
}

impl ErrorBudget {
    /// `E/main`.
    pub fn ratio(&self) -> f64 {
        self.pieces().iter().map(|p| p.1.ratio).sum()
    }

    pub fn pieces(&self) -> [(&'static str, BudgetPiece); 4] {
        [
            ("kloosterman", self.kloosterman),
            ("smoothing", self.smoothing),
            ("boundary", self.boundary),
            ("plancherel", self.plancherel),
        ]
    }

    /// The main term itself (infinite when it exceeds `f64` range).
    pub fn main_term(&self) -> f64 {
        self.ln_main.exp()
    }
}

fn piece(ln_value: f64, ln_main: f64) -> BudgetPiece {
    BudgetPiece { ln_value, ratio: (ln_value - ln_main).exp() }
}

fn budget_from(field: &QuadField, m: &SetMeasures, params: &AnalysisParams, ue: Option<(f64, f64)>, beta: f64) -> ErrorBudget {
    let ln_main = main_term_constant(field).ln() + m.ln_npl;
    let ln_nv1 = m.ln_nv1();
    match ue {
        None => ErrorBudget {
            ln_main,
            ln_nv1,
            u: None,
            eps: None,
            kloosterman: piece(m.ln_nv_minus_a, ln_main),
            smoothing: piece(f64::NEG_INFINITY, ln_main),
            boundary: piece(f64::NEG_INFINITY, ln_main),
            plancherel: piece(f64::NEG_INFINITY, ln_main),
        },
        Some((u, eps)) => ErrorBudget {
            ln_main,
            ln_nv1,
            u: Some(u),
            eps: Some(eps),
            kloosterman: piece(params.t0 * u * m.q_plus as f64 + m.ln_nv_plus_rho + m.ln_nv_minus_a, ln_main),
            smoothing: piece(-u * eps * eps + ln_nv1, ln_main),
            boundary: piece(beta.ln() + ln_nv1, ln_main),
            plancherel: piece(-0.5 * u.ln() + ln_nv1, ln_main),
        },
    }
}

/// `E(C, U, ε)` and the main term for given `U`, `ε` (ignored when
/// `Q₊ = ∅`).
///
/// Rejects `(U, ε)` outside `U ≥ e²D`, `ε ∈ [√(D/U), e^{−1}]`, naming the
/// violated inequality.
pub fn error_budget(field: &QuadField, set: &BudgetSet, params: &AnalysisParams, u: f64, eps: f64) -> Result<ErrorBudget> {
    params.validate()?;
    check_degree(field, set.degree())?;
    let m = set.measures(params.rho, params.big_a, &params.spectral)?;
    if m.q_plus == 0 {
        return Ok(budget_from(field, &m, params, None, 0.0));
    }
    check_window(u, eps, m.q_plus)?;
    let beta = set.shell_ratio(2.0 * eps, &params.spectral)?;
    Ok(budget_from(field, &m, params, Some((u, eps)), beta))
}

/// [`error_budget`] at the parameters `U(C)`, `ε(C)` chosen from `m_ρ(C)`.
pub fn auto_budget(field: &QuadField, set: &BudgetSet, params: &AnalysisParams) -> Result<(ErrorBudget, Option<ParameterChoice>)> {
    params.validate()?;
    check_degree(field, set.degree())?;
    let m = set.measures(params.rho, params.big_a, &params.spectral)?;
    if m.q_plus == 0 {
        return Ok((budget_from(field, &m, params, None, 0.0), None));
    }
    let ln_m = m.ln_nv_plus_rho + m.ln_nv_minus_a - m.ln_nv1();
    let choice = select_parameters(ln_m, params, m.q_plus)?;
    let beta = set.shell_ratio(2.0 * choice.eps, &params.spectral)?;
    Ok((budget_from(field, &m, params, Some((choice.u, choice.eps)), beta), Some(choice)))
}
