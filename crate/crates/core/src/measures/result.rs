use serde::{Deserialize, Serialize};

/// How a measure value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Quadrature,
    MonteCarlo,
}

/// A measure value with an error estimate.
///
/// Closed forms carry a rounding bound; quadrature the summed
/// Kronrod-minus-Gauss differences; Monte Carlo three standard errors.
/// `detail` counts function evaluations or samples (0 for closed forms).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureResult {
    pub value: f64,
    pub error: f64,
    pub method: Method,
    pub detail: u64,
}

impl MeasureResult {
    pub fn zero() -> Self {
        MeasureResult { value: 0.0, error: 0.0, method: Method::ClosedForm, detail: 0 }
    }

    /// A closed-form value with a relative rounding allowance.
    pub fn closed_form(value: f64, scale: f64) -> Self {
        MeasureResult { value, error: 16.0 * f64::EPSILON * scale.abs().max(value.abs()), method: Method::ClosedForm, detail: 0 }
    }

    /// Sum of measures of disjoint pieces.
    pub fn plus(self, other: MeasureResult) -> Self {
        MeasureResult {
            value: self.value + other.value,
            error: self.error + other.error,
            method: self.method.max(other.method),
            detail: self.detail + other.detail,
        }
    }

    /// Product measure of a product set; the error bound is
    /// `∏(|v_j| + e_j) − ∏|v_j|`.
    pub fn product(factors: &[MeasureResult]) -> Self {
        let mut value = 1.0;
        let mut upper = 1.0;
        let mut abs = 1.0;
        let mut method = Method::ClosedForm;
        let mut detail = 0;
        for f in factors {
            value *= f.value;
            abs *= f.value.abs();
            upper *= f.value.abs() + f.error;
            method = method.max(f.method);
            detail += f.detail;
        }
        MeasureResult { value, error: (upper - abs).max(0.0), method, detail }
    }

    /// Relative deviation `|value/reference − 1|`.
    pub fn rel_diff(&self, reference: f64) -> f64 {
        if reference == 0.0 {
            self.value.abs()
        } else {
            (self.value / reference - 1.0).abs()
        }
    }
}
