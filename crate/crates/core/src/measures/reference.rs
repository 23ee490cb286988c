use super::{LambdaRegion, LambdaSet, MeasureResult, Parity, PlaceSet, ProductRegion, SpectralConfig};

/// `G_b(t) = ∫_0^t p(is)^b ds` with weight `p(is) = 1` for `s < 1` and
/// `s` above: `t` on `[0, 1]`, then `1 + (t^{b+1} − 1)/(b + 1)`
/// (`1 + ln t` when `b = −1`).
pub fn reference_antiderivative(b: f64, t: f64) -> f64 {
    if t <= 1.0 {
        t.max(0.0)
    } else if (b + 1.0).abs() < 1e-12 {
        1.0 + t.ln()
    } else {
        1.0 + (t.powf(b + 1.0) - 1.0) / (b + 1.0)
    }
}

/// `Φ_b(λ) = ∫_{λ_*}^λ dV_b` for the continuous part of `V_b`: density
/// `(1/2)|λ − 1/4|^{−1/2}` on `[λ_*, 5/4]` and `(1/2)(λ − 1/4)^{(b−1)/2}`
/// above `5/4`.
pub fn v_lambda_antiderivative(cfg: &SpectralConfig, b: f64, lambda: f64) -> f64 {
    let nu_theta = cfg.nu_theta();
    if lambda <= cfg.lambda_star {
        0.0
    } else if lambda <= 0.25 {
        nu_theta - (0.25 - lambda).sqrt()
    } else if lambda <= 1.25 {
        nu_theta + (lambda - 0.25).sqrt()
    } else if (b + 1.0).abs() < 1e-12 {
        nu_theta + 1.0 + 0.5 * (lambda - 0.25).ln()
    } else {
        nu_theta + 1.0 + ((lambda - 0.25).powf((b + 1.0) / 2.0) - 1.0) / (b + 1.0)
    }
}

fn beta_weight(b: f64, beta: f64) -> f64 {
    beta.abs().powf(b)
}

/// `ν̃_b` of a set at one place. The base measure `d_Q` is Lebesgue
/// measure on `i[0, ∞)` and on `(0, ν_θ]` plus counting measure on the
/// discrete series; the weight is `p(q)^b` with `p(q) = 1` on
/// `(0, ν_θ] ∪ i[0, 1)` and `|q|` elsewhere.
pub fn nv_b_place(cfg: &SpectralConfig, b: f64, parity: Parity, set: &PlaceSet) -> MeasureResult {
    let nu_theta = cfg.nu_theta();
    let mut continuous = 0.0;
    let mut scale = 0.0;
    for &(lo, hi) in &set.imag {
        let v = reference_antiderivative(b, hi) - reference_antiderivative(b, lo);
        continuous += v;
        scale += reference_antiderivative(b, hi).abs();
    }
    let mut discrete = 0.0;
    for &(lo, hi) in &set.real {
        continuous += (hi.min(nu_theta) - lo.min(nu_theta)).max(0.0);
        scale += nu_theta;
        for beta in parity.discrete_in(lo, hi) {
            discrete += beta_weight(b, beta);
        }
    }
    for &p in &set.points {
        if parity.is_discrete(p) {
            discrete += beta_weight(b, p);
        }
    }
    MeasureResult::closed_form(continuous + discrete, scale + discrete)
}

/// `ν̃_b(Ω) = ∫_Ω ∏_j p(q_j)^b dQ(q)` for a product set.
pub fn nv_b(cfg: &SpectralConfig, b: f64, region: &ProductRegion) -> MeasureResult {
    let factors: Vec<MeasureResult> = region.parity.iter().zip(&region.places).map(|(&p, s)| nv_b_place(cfg, b, p, s)).collect();
    MeasureResult::product(&factors)
}

/// `V_b` of a set of `λ` values at one place: the continuous density of
/// [`v_lambda_antiderivative`] plus weight `|β|^b` at `λ = 1/4 − β²` for
/// admissible discrete-series parameters `β`.
pub fn v_b_lambda_place(cfg: &SpectralConfig, b: f64, parity: Parity, set: &LambdaSet) -> MeasureResult {
    let mut continuous = 0.0;
    let mut scale = 0.0;
    let mut discrete = 0.0;
    for &(lo, hi) in &set.intervals {
        let top = v_lambda_antiderivative(cfg, b, hi);
        continuous += top - v_lambda_antiderivative(cfg, b, lo);
        scale += top.abs();
        if lo < 0.25 {
            for beta in parity.discrete_in((0.25 - hi.min(0.25)).sqrt(), (0.25 - lo).sqrt()) {
                let l = 0.25 - beta * beta;
                if lo <= l && l <= hi {
                    discrete += beta_weight(b, beta);
                }
            }
        }
    }
    for &l in &set.points {
        if l < 0.25 {
            let beta = (0.25 - l).sqrt();
            if parity.is_discrete(beta) {
                discrete += beta_weight(b, beta);
            }
        }
    }
    MeasureResult::closed_form(continuous + discrete, scale + discrete)
}

/// `V_b` of a product set in `λ`-space.
pub fn v_b_lambda(cfg: &SpectralConfig, b: f64, region: &LambdaRegion) -> MeasureResult {
    let factors: Vec<MeasureResult> =
        region.parity.iter().zip(&region.places).map(|(&p, s)| v_b_lambda_place(cfg, b, p, s)).collect();
    MeasureResult::product(&factors)
}
