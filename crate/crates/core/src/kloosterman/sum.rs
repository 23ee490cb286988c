//! Kloosterman sums `S_χ(r, r′; c)` with exact phases, and their bounds.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;

use super::character::{frac, CharacterModI};
use crate::error::{Error, Result};
use crate::numberfield::{
    factor_ideal, ratio_to_f64, valuation, FieldElement, IdealLattice, QuadField, Rational, ResidueRing,
};

fn check_inputs(
    field: &QuadField,
    chi: &CharacterModI,
    r: &FieldElement,
    rp: &FieldElement,
    c: &FieldElement,
) -> Result<()> {
    if c.is_zero() {
        return Err(Error::invalid("modulus c must be nonzero"));
    }
    if !chi.level().contains(c) {
        return Err(Error::invalid(format!("modulus {c} does not lie in the level ideal I")));
    }
    let od = IdealLattice::inverse_different(field);
    for (name, x) in [("r", r), ("r′", rp)] {
        if !od.contains(x) {
            return Err(Error::invalid(format!("{name} = {x} does not lie in the inverse different")));
        }
    }
    Ok(())
}

/// Sum `Σ count·e^{2πi·turn}` over an exact phase histogram.
fn sum_phases(hist: &BTreeMap<Rational, i64>) -> Complex64 {
    hist.iter().fold(Complex64::zero(), |acc, (t, n)| {
        acc + Complex64::from_polar(*n as f64, 2.0 * std::f64::consts::PI * ratio_to_f64(t))
    })
}

/// `S_χ(r, r′; c) = Σ*_{a mod c} χ(a) e^{2πi Tr((r a + r′ ã)/c)}`.
///
/// Each phase is reduced exactly modulo 1 and equal phases are grouped
/// before exponentiating, so the only rounding is in the final sum over
/// distinct phases. For a unit modulus the value is 1.
pub fn kloosterman_sum(
    field: &QuadField,
    chi: &CharacterModI,
    r: &FieldElement,
    rp: &FieldElement,
    c: &FieldElement,
) -> Result<Complex64> {
    let zero = FieldElement::zero();
    kloosterman_sum_shifted(field, chi, r, rp, c, &zero, &zero)
}

/// As [`kloosterman_sum`], but with every representative `a` replaced by
/// `a + c·u` and every inverse `ã` by `ã + c·u′`; the result must not depend
/// on `u, u′` (representative independence).
pub fn kloosterman_sum_shifted(
    field: &QuadField,
    chi: &CharacterModI,
    r: &FieldElement,
    rp: &FieldElement,
    c: &FieldElement,
    u: &FieldElement,
    up: &FieldElement,
) -> Result<Complex64> {
    check_inputs(field, chi, r, rp, c)?;
    if !u.is_integral() || !up.is_integral() {
        return Err(Error::invalid("representative shifts must be algebraic integers"));
    }
    let ring = ResidueRing::new(field, c)?;
    let cinv = field.inv(c)?;
    let shift = field.mul(c, u);
    let shift_inv = field.mul(c, up);
    let mut hist: BTreeMap<Rational, i64> = BTreeMap::new();
    for a in ring.units() {
        let at = ring.inverse_mod(a)?;
        let a1 = a + &shift;
        let at1 = &at + &shift_inv;
        let chi_turn = chi
            .turn(&a1)?
            .ok_or_else(|| Error::invalid("unit mod (c) is not a unit mod I"))?;
        let num = &field.mul(r, &a1) + &field.mul(rp, &at1);
        let phase = frac(field.trace(&field.mul(&num, &cinv)) + chi_turn);
        *hist.entry(phase).or_insert(0) += 1;
    }
    Ok(sum_phases(&hist))
}

/// Trivial bound `|S_χ(r, r′; c)| ≤ |N(c)|`.
pub fn trivial_bound(field: &QuadField, c: &FieldElement) -> f64 {
    ratio_to_f64(&field.norm(c)).abs()
}

/// The Weil-type bound with implied constant 1.
///
/// This is a *shape* bound: the true inequality holds only up to an
/// unquantified constant depending on `δ`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeilBound {
    pub value: f64,
    /// `r·r′ = 0`: the bound degenerates to 0.
    pub degenerate: bool,
    /// Always true: the constant is not certified.
    pub shape_only: bool,
}

/// `|N(rr′)|^{1/2} ∏_{𝔭∤I} N𝔭^{v_𝔭(c)/2+δ} ∏_{𝔭|I} N𝔭^{v_𝔭(c)+δ}`.
pub fn weil_bound(
    field: &QuadField,
    level: &IdealLattice,
    r: &FieldElement,
    rp: &FieldElement,
    c: &FieldElement,
    delta: f64,
) -> Result<WeilBound> {
    if c.is_zero() || !c.is_integral() {
        return Err(Error::invalid("modulus c must be a nonzero algebraic integer"));
    }
    if !(delta > 0.0) {
        return Err(Error::invalid("δ must be positive"));
    }
    let nrr = ratio_to_f64(&field.norm(&field.mul(r, rp))).abs();
    if nrr == 0.0 {
        return Ok(WeilBound { value: 0.0, degenerate: true, shape_only: true });
    }
    let cl = IdealLattice::principal(field, c)?;
    let mut value = nrr.sqrt();
    for (p, v) in factor_ideal(&cl)? {
        let np = p.norm as f64;
        let on_level = valuation(&p, level) > 0;
        let e = if on_level { v as f64 + delta } else { v as f64 / 2.0 + delta };
        value *= np.powf(e);
    }
    Ok(WeilBound { value, degenerate: false, shape_only: true })
}
