//! Benchmarks for `kuznetsov-core` live in `benches/`; this crate only
//! carries the fixtures they share.

use kuznetsov_core::measures::{Parity, PlaceSet, ProductRegion};
use kuznetsov_core::numberfield::QuadField;

/// `Q(√5)`, the field used throughout the benchmarks.
pub fn q5() -> QuadField {
    QuadField::new(5).expect("5 is squarefree")
}

/// `i[a, a + σ]²` with even parities.
pub fn square(a: f64, sigma: f64) -> ProductRegion {
    let place = PlaceSet::imag_interval(a, a + sigma).expect("valid interval");
    ProductRegion::new(vec![Parity::Even; 2], vec![place; 2]).expect("two places")
}
