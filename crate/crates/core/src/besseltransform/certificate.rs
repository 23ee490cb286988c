//! Empirical check of `|Bφ(t)| ≪ min(|t|^{2τ}, 1)`.

use serde::{Deserialize, Serialize};

use super::transform::BesselTransformer;
use crate::{Error, Result};

/// `k = max |f(t)| / min(|t|^{2τ}, 1)` over the samples, and least-squares
/// slopes against `log t` over the samples with `t ≤ 10^{−2}` of `log|f|`
/// (`exponent`) and of the log-envelope (`envelope_exponent`). The
/// envelope (sum of the moduli of the half-line contributions) matters for
/// sharply peaked test functions, whose transforms oscillate like
/// `cos(2|q| log t)` so that a fit of `log|f|` itself is meaningless.
/// Samples are `(t, |f(t)|, envelope)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayCertificate {
    pub k: f64,
    pub exponent: Option<f64>,
    pub envelope_exponent: Option<f64>,
    pub samples: Vec<(f64, f64, f64)>,
}

/// Evaluates the transform by the contour formula (accurate for small
/// `|t|`) at each sample point.
pub fn decay_certificate(transformer: &BesselTransformer<'_>, eta: i8, tau: f64, ts: &[f64]) -> Result<DecayCertificate> {
    if ts.is_empty() || ts.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
        return Err(Error::invalid("sample points must be positive and finite"));
    }
    let mut samples = Vec::with_capacity(ts.len());
    let mut k: f64 = 0.0;
    for &t in ts {
        let r = transformer.contour(eta, t)?;
        let f = r.value.norm();
        k = k.max(f / t.powf(2.0 * tau).min(1.0));
        samples.push((t, f, r.envelope));
    }
    let exponent = fit(samples.iter().map(|&(t, f, _)| (t, f)));
    let envelope_exponent = fit(samples.iter().map(|&(t, _, e)| (t, e)));
    Ok(DecayCertificate { k, exponent, envelope_exponent, samples })
}

/// Least-squares slope of `log y` against `log t` over the points with
/// `t ≤ 10^{−2}` and `y > 0` (at least two needed).
fn fit(points: impl Iterator<Item = (f64, f64)>) -> Option<f64> {
    let small: Vec<(f64, f64)> = points.filter(|(t, y)| *t <= 1e-2 && *y > 0.0).map(|(t, y)| (t.ln(), y.ln())).collect();
    (small.len() >= 2).then(|| {
        let n = small.len() as f64;
        let mx = small.iter().map(|p| p.0).sum::<f64>() / n;
        let my = small.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = small.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = small.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    })
}
