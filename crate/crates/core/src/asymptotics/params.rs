use serde::{Deserialize, Serialize};

use crate::measures::SpectralConfig;
use crate::regions::shell_growth_constant;
use crate::{Error, Result};

/// Constants of the asymptotic analysis.
///
/// `t0` scales the Kloosterman-side growth `e^{t₀U|Q₊|}`, `rho` and
/// `big_a` are the exponents of the reference measures `ν̃_ρ` and
/// `ν̃_{−A}` in the error term, and `delta` is the slack used to derive
/// them from `τ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisParams {
    pub tau: f64,
    pub a: f64,
    pub t0: f64,
    pub rho: f64,
    pub big_a: f64,
    pub delta: f64,
    pub spectral: SpectralConfig,
}

/// Exponent `A₁` of the discrete-series decay of the Bessel transform.
pub const A1: f64 = 3.0;

impl AnalysisParams {
    /// The constants derived from `(τ, a, δ, γ)`:
    /// `t₀ = τ²(1+δ)/2`, `ρ₁ = 3/2 − γ − τ`, `ρ = ρ₁ + (1−ρ₁)δ` and
    /// `A = A₁ + (1−A₁)δ`.
    pub fn derived(tau: f64, a: f64, delta: f64, gamma: f64) -> Result<Self> {
        if !(gamma > tau && gamma < 0.5) {
            return Err(Error::invalid(format!("γ = {gamma} must lie in (τ, 1/2) = ({tau}, 0.5)")));
        }
        let rho1 = 1.5 - gamma - tau;
        let p = AnalysisParams {
            tau,
            a,
            t0: 0.5 * tau * tau * (1.0 + delta),
            rho: rho1 + (1.0 - rho1) * delta,
            big_a: A1 + (1.0 - A1) * delta,
            delta,
            spectral: SpectralConfig::default(),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let checks = [
            (self.tau > 0.25 && self.tau < 0.5, format!("τ = {} must lie in (1/4, 1/2)", self.tau)),
            (self.a > 2.0, format!("a = {} must exceed 2", self.a)),
            (self.t0 > 0.0 && self.t0.is_finite(), format!("t₀ = {} must be positive", self.t0)),
            (
                self.rho > 1.0 - self.tau && self.rho < 1.0,
                format!("ρ = {} must lie in (1 − τ, 1) = ({}, 1)", self.rho, 1.0 - self.tau),
            ),
            (self.big_a > 2.0 && self.big_a.is_finite(), format!("A = {} must exceed 2", self.big_a)),
            (self.delta > 0.0 && self.delta.is_finite(), format!("δ = {} must be positive", self.delta)),
        ];
        for (ok, msg) in checks {
            if !ok {
                return Err(Error::invalid(msg));
            }
        }
        self.spectral.validate()
    }
}

impl Default for AnalysisParams {
    /// `τ = 0.3`, `a = 3`, `δ = 0.01`, `γ = 0.45`.
    fn default() -> Self {
        AnalysisParams::derived(0.3, 3.0, 0.01, 0.45).expect("default constants are admissible")
    }
}

/// `D = log R(|Q₊|)`, the shell-growth exponent bounding the admissible
/// `U` and `ε` from below.
pub fn shell_exponent(q_plus: usize) -> f64 {
    shell_growth_constant(q_plus).ln()
}

fn check_ln_m(ln_m: f64) -> Result<f64> {
    if !(ln_m < 0.0) || ln_m.is_nan() {
        return Err(Error::invalid(format!("log m_ρ = {ln_m} must be negative")));
    }
    let big_l = -ln_m;
    if !(big_l > 1.0) {
        return Err(Error::invalid(format!("|log m_ρ| = {big_l} must exceed 1 for log|log m_ρ| > 0")));
    }
    Ok(big_l)
}

/// `U(C) = (|log m_ρ| − ½ log|log m_ρ|)/(t₀|Q₊|)`, taking `log m_ρ`
/// (the measures involved over- and underflow long before the choice is
/// admissible).
///
/// Errors when `U < e²D`, naming the threshold.
pub fn choose_u(ln_m: f64, t0: f64, q_plus: usize) -> Result<f64> {
    let big_l = check_ln_m(ln_m)?;
    if q_plus == 0 || !(t0 > 0.0) {
        return Err(Error::invalid("U is only chosen when Q₊ ≠ ∅ and t₀ > 0"));
    }
    let u = (big_l - 0.5 * big_l.ln()) / (t0 * q_plus as f64);
    let floor = std::f64::consts::E.powi(2) * shell_exponent(q_plus);
    if u < floor {
        return Err(Error::invalid(format!("pre-asymptotic regime: U = {u} < e²D = {floor}")));
    }
    Ok(u)
}

/// `ε(C) = √(log|log m_ρ|/(2U))`, so that `Uε² = ½ log|log m_ρ|`.
pub fn choose_eps(ln_m: f64, u: f64) -> Result<f64> {
    let big_l = check_ln_m(ln_m)?;
    if !(u > 0.0 && u.is_finite()) {
        return Err(Error::invalid(format!("U = {u} must be positive")));
    }
    Ok((big_l.ln() / (2.0 * u)).sqrt())
}

/// Checks `U ≥ e²D` and `ε ∈ [√(D/U), e^{−1}]`, naming the first violated
/// inequality.
pub fn check_window(u: f64, eps: f64, q_plus: usize) -> Result<()> {
    let d = shell_exponent(q_plus);
    let floor = std::f64::consts::E.powi(2) * d;
    if !(u >= floor) {
        return Err(Error::invalid(format!("U = {u} violates U ≥ e²D = {floor}")));
    }
    let lo = (d / u).sqrt();
    if !(eps >= lo * (1.0 - 1e-14)) {
        return Err(Error::invalid(format!("ε = {eps} violates ε ≥ √(D/U) = {lo}")));
    }
    let hi = (-1.0f64).exp();
    if !(eps <= hi) {
        return Err(Error::invalid(format!("ε = {eps} violates ε ≤ e^(−1) = {hi}")));
    }
    Ok(())
}

/// The parameters `(U, ε)` attached to a set through `m_ρ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParameterChoice {
    pub ln_m_rho: f64,
    pub u: f64,
    pub eps: f64,
    /// `D = log R(|Q₊|)`.
    pub d: f64,
}

/// Smallest `|log m_ρ|` beyond which [`select_parameters`] succeeds.
pub fn admissibility_threshold(t0: f64, q_plus: usize) -> f64 {
    let ok = |big_l: f64| {
        choose_u(-big_l, t0, q_plus)
            .and_then(|u| choose_eps(-big_l, u).and_then(|e| check_window(u, e, q_plus)))
            .is_ok()
    };
    // The window conditions hold on a half-line; find its end by doubling
    // then bisection.
    let mut hi = 2.0;
    while !ok(hi) {
        hi *= 2.0;
    }
    let mut lo = hi / 2.0;
    if lo <= 1.0 || ok(lo) {
        lo = 1.0;
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `U(C)` and `ε(C)` for a set with `log m_ρ = ln_m`, inside the
/// admissibility window or a "pre-asymptotic regime" error reporting
/// the threshold on `|log m_ρ|`.
pub fn select_parameters(ln_m: f64, params: &AnalysisParams, q_plus: usize) -> Result<ParameterChoice> {
    let attempt = choose_u(ln_m, params.t0, q_plus).and_then(|u| {
        let eps = choose_eps(ln_m, u)?;
        check_window(u, eps, q_plus)?;
        Ok(ParameterChoice { ln_m_rho: ln_m, u, eps, d: shell_exponent(q_plus) })
    });
    attempt.map_err(|e| match e {
        Error::InvalidInput(msg) => Error::invalid(format!(
            "pre-asymptotic regime: |log m_ρ| = {} is below the threshold {:.6} ({})",
            -ln_m,
            admissibility_threshold(params.t0, q_plus),
            msg.trim_start_matches("pre-asymptotic regime: ")
        )),
        other => other,
    })
}
