//! Spectral-space geometry: points and distances, `ε`-neighbourhoods,
//! bluntness, shells, the `λ ↔ ν` maps, and the parametric region
//! families (boxes, floating hypercubes, spheres, sectors, slanted
//! strips, simplices, discrete singletons).
//!
//! Distances and shells use the chart `it ↦ t`, `x ↦ −x`, which maps
//! `i[0, ∞) ∪ (0, ν_θ]` isometrically onto `[−ν_θ, ∞)`.

mod blunt;
mod chart;
mod column;
mod family;
mod point;

pub use blunt::{bluntness_deficit, BluntnessGrid, BluntnessMode};
pub use chart::{chart_antiderivative, chart_weight, ChartBox};
pub use column::ColumnRegion;
pub use family::{shell_growth_constant, simplex_volume, unit_ball_volume, ChartRegion, Region, Shells};
pub use point::{dist, dist_place, neighborhood_contains, SpectralPoint};
