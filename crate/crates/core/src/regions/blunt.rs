use serde::{Deserialize, Serialize};

use super::family::ChartRegion;
use crate::{Error, Result};

/// Which cube `A(μ, β)` is compared with the set at a point `ν`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BluntnessMode {
    /// The best cube of side `β` that contains `ν`. Boxes with all sides
    /// at least `ε` score exactly 1.
    Containing,
    /// The cube centred at `ν`; corners of a box score `2^{−d}`.
    Centered,
}

/// Sampling grid for [`bluntness_deficit`].
#[derive(Clone, Copy, Debug)]
pub struct BluntnessGrid {
    /// Points per coordinate direction at which `ν` is sampled.
    pub points: usize,
    /// Cube sides `β = ε·k/scales`, `k = 1..=scales`.
    pub scales: usize,
    /// Candidate centre offsets per direction (Containing mode, planar regions).
    pub offsets: usize,
}

impl Default for BluntnessGrid {
    fn default() -> Self {
        BluntnessGrid { points: 9, scales: 4, offsets: 5 }
    }
}

fn overlap_1d(a: f64, b: f64, lo: f64, hi: f64) -> f64 {
    (b.min(hi) - a.max(lo)).max(0.0)
}

/// Estimated bluntness `w`: the minimum over sampled `ν ∈ H` and cube sides
/// `β ∈ (0, ε]` of `vol(A ∩ H)/vol(A)` (Lebesgue measure in chart
/// coordinates). `H` is `(w, ε)`-blunt if the returned value is `≥ w`.
///
/// For boxes the ratio is exact at every sample; for planar regions the
/// containing cube is searched over a grid of offsets, which can only
/// underestimate `w`.
pub fn bluntness_deficit(region: &ChartRegion, eps: f64, grid: BluntnessGrid, mode: BluntnessMode) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::invalid(format!("ε = {eps} must be positive")));
    }
    if grid.points < 2 || grid.scales < 1 || grid.offsets < 1 {
        return Err(Error::invalid("bluntness grid needs ≥ 2 points, ≥ 1 scale and ≥ 1 offset"));
    }
    let betas: Vec<f64> = (1..=grid.scales).map(|k| eps * k as f64 / grid.scales as f64).collect();
    let lin = |a: f64, b: f64, n: usize| -> Vec<f64> { (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect() };
    let mut worst = f64::INFINITY;
    match region {
        ChartRegion::Box(bx) => {
            if bx.sides.iter().any(|&(a, b)| b < a) {
                return Err(Error::invalid("bluntness of an empty set is undefined"));
            }
            for &beta in &betas {
                match mode {
                    BluntnessMode::Containing => {
                        let w: f64 = bx.sides.iter().map(|&(a, b)| ((b - a) / beta).min(1.0)).product();
                        worst = worst.min(w);
                    }
                    BluntnessMode::Centered => {
                        // the ratio factorizes; its minimum is the product of per-side minima
                        let w: f64 = bx
                            .sides
                            .iter()
                            .map(|&(a, b)| {
                                lin(a, b, grid.points)
                                    .into_iter()
                                    .map(|x| overlap_1d(x - beta / 2.0, x + beta / 2.0, a, b) / beta)
                                    .fold(f64::INFINITY, f64::min)
                            })
                            .product();
                        worst = worst.min(w);
                    }
                }
            }
        }
        ChartRegion::Columns(col) => {
            let mut any = false;
            for x in lin(col.x0, col.x1, grid.points) {
                let (l, h) = (col.lo(x), col.hi(x));
                if h < l {
                    continue;
                }
                for y in lin(l, h, grid.points) {
                    any = true;
                    for &beta in &betas {
                        let half = beta / 2.0;
                        let area = beta * beta;
                        let ratio = match mode {
                            BluntnessMode::Centered => col.square_overlap(x, y, half) / area,
                            BluntnessMode::Containing => {
                                let offs = if grid.offsets == 1 { vec![0.0] } else { lin(-half, half, grid.offsets) };
                                let mut best: f64 = 0.0;
                                for &dx in &offs {
                                    for &dy in &offs {
                                        best = best.max(col.square_overlap(x + dx, y + dy, half) / area);
                                    }
                                }
                                best
                            }
                        };
                        worst = worst.min(ratio);
                    }
                }
            }
            if !any {
                return Err(Error::invalid("bluntness of an empty set is undefined"));
            }
        }
    }
    Ok(worst.min(1.0))
}
