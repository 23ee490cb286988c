//! Exact arithmetic in `Q` and real quadratic fields: elements, ideals,
//! residue rings, the inverse different, and lattice-point enumeration.

mod field;
mod ideal;
mod parse;
mod residue;

pub use field::{rat, ratio_to_f64, FieldElement, QuadField, Rational};
pub use ideal::{
    factor_ideal, factor_integer, integral_norm, primes_above, valuation, IdealLattice, LatticeTag, PrimeIdeal,
};
pub use parse::{parse_element, parse_field, parse_ideal, parse_rational};
pub use residue::ResidueRing;
