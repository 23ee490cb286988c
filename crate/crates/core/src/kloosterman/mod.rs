//! Characters modulo the level, Kloosterman sums `S_χ(r, r′; c)`, their
//! trivial and Weil-type bounds, and the truncated Kloosterman series.

mod character;
mod ksum;
mod sum;

pub use character::{compatibility_check, frac, CentralParity, CharacterModI};
pub use ksum::{ksum, FDecay, KSeriesResult};
pub use sum::{kloosterman_sum, kloosterman_sum_shifted, trivial_bound, weil_bound, WeilBound};
