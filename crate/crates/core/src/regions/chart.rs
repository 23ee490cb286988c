use serde::{Deserialize, Serialize};

use crate::measures::{reference_antiderivative, MeasureResult, Parity, PlaceSet, ProductRegion, SpectralConfig};
use crate::{Error, Result};

/// Density of `ν̃_b` in the chart coordinate `s` (imaginary `it ↦ t`,
/// real `x ↦ −x`): `1` on `[−ν_θ, 1)` and `s^b` from `1` on.
pub fn chart_weight(b: f64, s: f64) -> f64 {
    if s < 1.0 {
        1.0
    } else {
        s.powf(b)
    }
}

/// Antiderivative of [`chart_weight`] normalized by `H_b(0) = 0`.
pub fn chart_antiderivative(b: f64, s: f64) -> f64 {
    if s <= 1.0 {
        s
    } else {
        reference_antiderivative(b, s)
    }
}

/// A product of closed chart intervals `∏_j [s_j⁻, s_j⁺]`, each inside
/// `[−ν_θ, ∞)`: the continuous part of a product region, in the
/// coordinates used for distances and shells.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartBox {
    pub parity: Vec<Parity>,
    pub sides: Vec<(f64, f64)>,
    pub nu_theta: f64,
}

impl ChartBox {
    pub fn new(parity: Vec<Parity>, sides: Vec<(f64, f64)>, cfg: &SpectralConfig) -> Result<Self> {
        if parity.is_empty() || parity.len() != sides.len() {
            return Err(Error::invalid(format!("{} parities for {} sides", parity.len(), sides.len())));
        }
        let nu_theta = cfg.nu_theta();
        for &(a, b) in &sides {
            if !(a.is_finite() && b.is_finite() && a <= b && a >= -nu_theta * (1.0 + 1e-12)) {
                return Err(Error::invalid(format!("chart side [{a}, {b}] is not a bounded interval in [−ν_θ, ∞)")));
            }
        }
        Ok(ChartBox { parity, sides, nu_theta })
    }

    /// The chart box of a product region whose places are single connected
    /// pieces of `i[0,∞) ∪ (0, ν_θ]`.
    pub fn from_product(region: &ProductRegion, cfg: &SpectralConfig) -> Result<Self> {
        let nu_theta = cfg.nu_theta();
        let mut sides = Vec::with_capacity(region.degree());
        for place in &region.places {
            if !place.points.is_empty() {
                return Err(Error::invalid("shell geometry is defined on continuous places only (found discrete points)"));
            }
            let mut pieces: Vec<(f64, f64)> = place.imag.clone();
            for &(x0, x1) in &place.real {
                if x1 > nu_theta * (1.0 + 1e-12) {
                    return Err(Error::invalid(format!("real interval [{x0}, {x1}] leaves the complementary range (0, ν_θ]")));
                }
                pieces.push((-x1, -x0));
            }
            pieces.sort_by(|a, b| a.0.total_cmp(&b.0));
            let mut merged: Option<(f64, f64)> = None;
            for (a, b) in pieces {
                merged = match merged {
                    None => Some((a, b)),
                    Some((lo, hi)) if a <= hi + 1e-12 => Some((lo, hi.max(b))),
                    Some(_) => return Err(Error::invalid("a place of the region is not connected in the chart")),
                };
            }
            sides.push(merged.ok_or_else(|| Error::invalid("a place of the region is empty"))?);
        }
        ChartBox::new(region.parity.clone(), sides, cfg)
    }

    pub fn to_product(&self) -> ProductRegion {
        let places = self
            .sides
            .iter()
            .map(|&(s0, s1)| {
                let imag = if s1 >= 0.0 { vec![(s0.max(0.0), s1)] } else { vec![] };
                let real = if s0 < 0.0 { vec![((-s1).max(0.0), -s0)] } else { vec![] };
                PlaceSet::new(imag, real, vec![]).expect("chart sides are valid intervals")
            })
            .collect();
        ProductRegion { parity: self.parity.clone(), places }
    }

    pub fn degree(&self) -> usize {
        self.sides.len()
    }

    pub fn contains(&self, s: &[f64]) -> bool {
        s.len() == self.sides.len() && s.iter().zip(&self.sides).all(|(&x, &(a, b))| a <= x && x <= b)
    }

    /// `ν̃_b` of the box (closed form through the chart antiderivative).
    pub fn nv_b(&self, b: f64) -> MeasureResult {
        let factors: Vec<MeasureResult> = self
            .sides
            .iter()
            .map(|&(s0, s1)| {
                let top = chart_antiderivative(b, s1);
                MeasureResult::closed_form(top - chart_antiderivative(b, s0), top.abs())
            })
            .collect();
        MeasureResult::product(&factors)
    }

    /// `C(c)`: for `c ≥ 0` the points within sup-distance `c` of the box
    /// (clipped to the chart range `[−ν_θ, ∞)`); for `c < 0` the points
    /// whose closed `|c|`-cube lies in the box. `None` when empty.
    pub fn shifted(&self, c: f64) -> Option<ChartBox> {
        let mut sides = Vec::with_capacity(self.sides.len());
        for &(a, b) in &self.sides {
            let (lo, hi) = if c >= 0.0 { ((a - c).max(-self.nu_theta), b + c) } else { (a - c, b + c) };
            if lo > hi {
                return None;
            }
            sides.push((lo, hi));
        }
        Some(ChartBox { parity: self.parity.clone(), sides, nu_theta: self.nu_theta })
    }
}
