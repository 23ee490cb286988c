//! Residue rings `O/(c)` with explicit representatives and inverses.

use std::collections::HashMap;

use super::field::{FieldElement, QuadField};
use super::ideal::{factor_ideal, IdealLattice};
use crate::error::{Error, Result};

/// The finite ring `O/(c)` for a nonzero `c ∈ O`.
///
/// Representatives are the canonical HNF representatives
/// `x + y·ω`, `0 ≤ x < h00`, `0 ≤ y < h11`; their number is `|N(c)|`.
/// Arithmetic runs on integer coordinates; the inverses of all units are
/// tabulated on construction.
#[derive(Clone, Debug)]
pub struct ResidueRing {
    field: QuadField,
    modulus: FieldElement,
    lattice: IdealLattice,
    representatives: Vec<FieldElement>,
    units: Vec<FieldElement>,
    inverses: HashMap<(i128, i128), (i128, i128)>,
}

type Key = (i128, i128);

impl ResidueRing {
    pub fn new(field: &QuadField, c: &FieldElement) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::invalid("modulus c must be nonzero"));
        }
        if !c.is_integral() {
            return Err(Error::invalid(format!("modulus {c} is not an algebraic integer")));
        }
        let lattice = IdealLattice::principal(field, c)?;
        let (h00, _, h11, _) = lattice.hnf_data();
        let ylim = if field.degree() == 1 { 1 } else { h11 };
        if h00 * ylim > 50_000_000 {
            return Err(Error::invalid("residue ring too large to enumerate"));
        }
        // a is a unit iff it avoids every prime dividing (c).
        let primes: Vec<IdealLattice> = factor_ideal(&lattice)?.into_iter().map(|(p, _)| p.lattice).collect();
        let (t, n) = field.omega_relation();
        let mul = |a: Key, b: Key| -> Key {
            let yy = a.1 * b.1;
            lattice.reduce_ints(a.0 * b.0 + yy * n, a.0 * b.1 + a.1 * b.0 + yy * t)
        };
        let mut representatives = Vec::with_capacity((h00 * ylim) as usize);
        let mut unit_keys = Vec::new();
        for y in 0..ylim {
            for x in 0..h00 {
                representatives.push(FieldElement::from_ints(x, y));
                if primes.iter().all(|p| p.reduce_ints(x, y) != (0, 0)) {
                    unit_keys.push((x, y));
                }
            }
        }
        let phi = unit_keys.len() as u64;
        let one = lattice.reduce_ints(1, 0);
        let mut inverses: HashMap<Key, Key> = HashMap::with_capacity(unit_keys.len());
        for &a in &unit_keys {
            if inverses.contains_key(&a) {
                continue;
            }
            let mut e = phi - 1;
            let (mut base, mut acc) = (a, one);
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul(acc, base);
                }
                base = mul(base, base);
                e >>= 1;
            }
            debug_assert_eq!(mul(a, acc), one);
            inverses.insert(a, acc);
            inverses.insert(acc, a);
        }
        let units = unit_keys.iter().map(|&(x, y)| FieldElement::from_ints(x, y)).collect();
        Ok(ResidueRing { field: field.clone(), modulus: c.clone(), lattice, representatives, units, inverses })
    }

    pub fn field(&self) -> &QuadField {
        &self.field
    }

    pub fn modulus(&self) -> &FieldElement {
        &self.modulus
    }

    pub fn lattice(&self) -> &IdealLattice {
        &self.lattice
    }

    /// Number of residue classes, `|N(c)|`.
    pub fn size(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[FieldElement] {
        &self.representatives
    }

    /// Representatives of the unit group `(O/(c))*`.
    pub fn units(&self) -> &[FieldElement] {
        &self.units
    }

    pub fn reduce(&self, a: &FieldElement) -> Result<FieldElement> {
        self.lattice.reduce(a)
    }

    /// `a` is a unit mod `(c)` iff `(a) + (c) = O`.
    pub fn is_invertible(&self, a: &FieldElement) -> Result<bool> {
        Ok(self.inverses.contains_key(&self.lattice.reduce_key(a)?))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.reduce(&self.field.mul(a, b))
    }

    /// Inverse `ã` with `a·ã ≡ 1 mod (c)`, as the canonical representative.
    pub fn inverse_mod(&self, a: &FieldElement) -> Result<FieldElement> {
        match self.inverses.get(&self.lattice.reduce_key(a)?) {
            Some(&(x, y)) => Ok(FieldElement::from_ints(x, y)),
            None => Err(Error::invalid(format!("{a} is not invertible modulo ({})", self.modulus))),
        }
    }
}
