//! Bessel functions of complex order and the Bessel transforms of test
//! functions, by the axis formula and the shifted-contour formula, with
//! the small-`t` decay certificate.

mod bessel;
mod certificate;
mod transform;

pub use bessel::{bessel_j, bessel_j_scaled, BesselMethod, BesselTarget, BesselValue, MAX_ARGUMENT, MAX_IMAG_ORDER};
pub use certificate::{decay_certificate, DecayCertificate};
pub use transform::{transform_axis, transform_contour, BesselTransformResult, BesselTransformer, Formula, TransformOptions};
