//! Characters of `(O/I)*` stored as exact "turns" (`χ(a) = e^{2πi·turn}`).

use std::collections::{HashMap, VecDeque};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numberfield::{ratio_to_f64, FieldElement, IdealLattice, QuadField, Rational};

/// Reduce a rational modulo 1 into `[0, 1)`.
pub fn frac(r: Rational) -> Rational {
    r - r.floor()
}

/// A character of `(O/I)*`, tabulated on canonical residues modulo `I`.
#[derive(Clone, Debug)]
pub struct CharacterModI {
    field: QuadField,
    level: IdealLattice,
    table: HashMap<(i128, i128), Rational>,
    parity: i8,
}

fn unit_keys(level: &IdealLattice) -> Vec<(i128, i128)> {
    let (h00, _, h11, _) = level.hnf_data();
    let ylim = if level.field().degree() == 1 { 1 } else { h11 };
    let mut out = Vec::new();
    for y in 0..ylim {
        for x in 0..h00 {
            if level.coprime_to(&FieldElement::from_ints(x, y)) {
                out.push((x, y));
            }
        }
    }
    out
}

impl CharacterModI {
    fn check_level(level: &IdealLattice) -> Result<()> {
        if !level.is_integral() {
            return Err(Error::invalid("the level I must be an integral ideal"));
        }
        let (h00, _, h11, _) = level.hnf_data();
        if h00 * h11 > 1_000_000 {
            return Err(Error::invalid("level too large to tabulate a character"));
        }
        Ok(())
    }

    /// The trivial character modulo `I`.
    pub fn trivial(level: &IdealLattice) -> Result<Self> {
        Self::check_level(level)?;
        let table = unit_keys(level).into_iter().map(|k| (k, Rational::zero())).collect();
        Ok(CharacterModI { field: level.field().clone(), level: level.clone(), table, parity: 1 })
    }

    /// Extend generator values (given as turns, `g ↦ e^{2πi·v}`) multiplicatively
    /// to all of `(O/I)*`.
    ///
    /// Every Cayley-graph edge is checked, so an inconsistent assignment (one
    /// that is not a homomorphism) is rejected, as is a generator set that
    /// does not generate the full unit group.
    pub fn from_generators(level: &IdealLattice, gens: &[(FieldElement, Rational)]) -> Result<Self> {
        Self::check_level(level)?;
        let field = level.field().clone();
        let mut gen_keys = Vec::new();
        for (g, v) in gens {
            if !g.is_integral() || !level.coprime_to(&level.reduce(g)?) {
                return Err(Error::invalid(format!("generator {g} is not a unit modulo I")));
            }
            gen_keys.push((level.reduce(g)?, frac(*v)));
        }
        let one = level.reduce_key(&FieldElement::one())?;
        let mut table: HashMap<(i128, i128), Rational> = HashMap::new();
        table.insert(one, Rational::zero());
        let mut queue = VecDeque::from([one]);
        while let Some(k) = queue.pop_front() {
            let e = FieldElement::from_ints(k.0, k.1);
            let val = table[&k];
            for (g, v) in &gen_keys {
                let nk = level.reduce_key(&field.mul(&e, g))?;
                let nv = frac(val + v);
                match table.get(&nk) {
                    Some(old) if *old != nv => {
                        return Err(Error::invalid(
                            "generator values are inconsistent with the group structure of (O/I)*",
                        ))
                    }
                    Some(_) => {}
                    None => {
                        table.insert(nk, nv);
                        queue.push_back(nk);
                    }
                }
            }
        }
        let full = unit_keys(level).len();
        if table.len() != full {
            return Err(Error::invalid(format!(
                "generators span a subgroup of order {} in (O/I)* of order {full}",
                table.len()
            )));
        }
        let minus_one = level.reduce_key(&FieldElement::from_int(-1))?;
        let parity = if table[&minus_one].is_zero() { 1 } else { -1 };
        if !(table[&minus_one].is_zero() || table[&minus_one] == Rational::new(1, 2)) {
            return Err(Error::invalid("χ(−1) must be ±1"));
        }
        Ok(CharacterModI { field, level: level.clone(), table, parity })
    }

    pub fn field(&self) -> &QuadField {
        &self.field
    }

    pub fn level(&self) -> &IdealLattice {
        &self.level
    }

    /// `χ(−1) ∈ {+1, −1}`.
    pub fn parity(&self) -> i8 {
        self.parity
    }

    pub fn is_trivial(&self) -> bool {
        self.table.values().all(|v| v.is_zero())
    }

    /// Order of `(O/I)*`.
    pub fn group_order(&self) -> usize {
        self.table.len()
    }

    /// `χ(a)` as a turn, or `None` when `a` is not a unit modulo `I`.
    pub fn turn(&self, a: &FieldElement) -> Result<Option<Rational>> {
        let k = self.level.reduce_key(a)?;
        Ok(self.table.get(&k).copied())
    }

    /// `χ(a)` as a complex number (0 off the unit group).
    pub fn value(&self, a: &FieldElement) -> Result<Complex64> {
        Ok(match self.turn(a)? {
            Some(t) => Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * ratio_to_f64(&t)),
            None => Complex64::zero(),
        })
    }

    /// The complex-conjugate character.
    pub fn conj(&self) -> Self {
        let table = self.table.iter().map(|(k, v)| (*k, frac(-*v))).collect();
        CharacterModI { table, ..self.clone() }
    }
}

/// The central parity vector `ξ ∈ {0,1}^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralParity(pub Vec<u8>);

impl CentralParity {
    pub fn new(xi: Vec<u8>) -> Result<Self> {
        if xi.iter().any(|x| *x > 1) {
            return Err(Error::invalid("parity entries must be 0 or 1"));
        }
        Ok(CentralParity(xi))
    }

    /// `∏_j (−1)^{ξ_j}`.
    pub fn sign(&self) -> i8 {
        if self.0.iter().map(|x| *x as u32).sum::<u32>() % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Compatibility `χ(−1) = ∏_j (−1)^{ξ_j}`.
pub fn compatibility_check(chi: &CharacterModI, xi: &CentralParity) -> bool {
    chi.parity() == xi.sign()
}
