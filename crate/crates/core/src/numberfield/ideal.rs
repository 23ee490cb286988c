//! Fractional ideals as rank-d lattices in Hermite normal form, prime
//! ideals above rational primes, and lattice-point enumeration in boxes.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::field::{rat, FieldElement, QuadField, Rational};
use crate::error::{Error, Result};

/// What a lattice was built to represent (informational only; equality of
/// lattices ignores the tag).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeTag {
    RingOfIntegers,
    LevelIdeal,
    Principal(FieldElement),
    InverseDifferent,
    Generic,
}

/// A fractional ideal (or any full-rank Z-lattice in F), stored as
/// `(1/den)·(Z-span of HNF rows)` in coordinates over `(1, ω)`.
///
/// Rows are upper triangular: `(h00, h01)` and `(0, h11)` with
/// `h00, h11 > 0` and `0 ≤ h01 < h11`; over `Q` only `h00` is used.
/// `den` is minimal, so the representation is canonical.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    field: QuadField,
    h00: i128,
    h01: i128,
    h11: i128,
    den: i128,
    tag: LatticeTag,
}

impl PartialEq for IdealLattice {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field
            && self.h00 == o.h00
            && self.h01 == o.h01
            && self.h11 == o.h11
            && self.den == o.den
    }
}

impl Eq for IdealLattice {}

/// Integer Hermite normal form of the Z-span of `vs` in `Z^dim` (`dim ≤ 2`).
fn hnf(mut vs: Vec<[i128; 2]>, dim: usize) -> Result<(i128, i128, i128)> {
    if dim == 1 {
        let g = vs.iter().fold(0i128, |g, v| g.gcd(&v[0]));
        if g == 0 {
            return Err(Error::invalid("lattice generators span the zero lattice"));
        }
        return Ok((g, 0, 1));
    }
    loop {
        let pivot = vs
            .iter()
            .enumerate()
            .filter(|(_, v)| v[0] != 0)
            .min_by_key(|(_, v)| v[0].abs())
            .map(|(i, _)| i);
        let Some(pi) = pivot else {
            return Err(Error::invalid("lattice generators are not of full rank"));
        };
        let p = vs[pi];
        let mut done = true;
        for (j, v) in vs.iter_mut().enumerate() {
            if j != pi && v[0] != 0 {
                let q = Integer::div_floor(&v[0], &p[0]);
                v[0] -= q * p[0];
                v[1] -= q * p[1];
                if v[0] != 0 {
                    done = false;
                }
            }
        }
        if done {
            let mut p = vs[pi];
            if p[0] < 0 {
                p = [-p[0], -p[1]];
            }
            let h11 = vs
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != pi)
                .fold(0i128, |g, (_, v)| g.gcd(&v[1]));
            if h11 == 0 {
                return Err(Error::invalid("lattice generators are not of full rank"));
            }
            return Ok((p[0], p[1].mod_floor(&h11), h11));
        }
    }
}

impl IdealLattice {
    /// Lattice spanned over Z by the given elements.
    pub fn from_z_span(field: &QuadField, elems: &[FieldElement], tag: LatticeTag) -> Result<Self> {
        if elems.is_empty() {
            return Err(Error::invalid("empty generator list"));
        }
        let l = elems.iter().fold(1i128, |l, e| l.lcm(&e.denominator()));
        let vs: Vec<[i128; 2]> = elems
            .iter()
            .map(|e| {
                let s = e.scale(&rat(l));
                [s.x.to_integer(), s.y.to_integer()]
            })
            .collect();
        let (mut h00, mut h01, mut h11) = hnf(vs, field.degree())?;
        let mut den = l;
        let g = [h00, h01, h11, den].iter().fold(0i128, |g, v| g.gcd(v));
        if field.degree() == 1 {
            let g = h00.gcd(&den);
            h00 /= g;
            den /= g;
        } else {
            h00 /= g;
            h01 /= g;
            h11 /= g;
            den /= g;
        }
        Ok(IdealLattice { field: field.clone(), h00, h01, h11, den, tag })
    }

    /// O-ideal generated by the given elements: Z-span of `{g, g·ω}`.
    pub fn from_generators(field: &QuadField, gens: &[FieldElement], tag: LatticeTag) -> Result<Self> {
        let nonzero: Vec<&FieldElement> = gens.iter().filter(|g| !g.is_zero()).collect();
        if nonzero.is_empty() {
            return Err(Error::invalid("the zero ideal is not a lattice"));
        }
        let w = field.omega();
        let mut span = Vec::new();
        for g in nonzero {
            span.push(g.clone());
            if field.degree() == 2 {
                span.push(field.mul(g, &w));
            }
        }
        Self::from_z_span(field, &span, tag)
    }

    pub fn principal(field: &QuadField, c: &FieldElement) -> Result<Self> {
        Self::from_generators(field, std::slice::from_ref(c), LatticeTag::Principal(c.clone()))
    }

    pub fn ring_of_integers(field: &QuadField) -> Self {
        Self::from_generators(field, &[FieldElement::one()], LatticeTag::RingOfIntegers)
            .expect("O is a lattice")
    }

    /// The inverse different `O′ = {x : Tr(x·O) ⊆ Z}`, computed as the dual
    /// lattice of `O` under the trace form.
    pub fn inverse_different(field: &QuadField) -> Self {
        if field.degree() == 1 {
            let mut o = Self::ring_of_integers(field);
            o.tag = LatticeTag::InverseDifferent;
            return o;
        }
        let basis = [FieldElement::one(), field.omega()];
        let g: Vec<Vec<Rational>> = basis
            .iter()
            .map(|a| basis.iter().map(|b| field.trace(&field.mul(a, b))).collect())
            .collect();
        let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        let inv = [[g[1][1] / det, -g[0][1] / det], [-g[1][0] / det, g[0][0] / det]];
        let dual: Vec<FieldElement> = (0..2)
            .map(|j| FieldElement::new(inv[0][j], inv[1][j]))
            .collect();
        Self::from_z_span(field, &dual, LatticeTag::InverseDifferent).expect("dual lattice has full rank")
    }

    pub fn field(&self) -> &QuadField {
        &self.field
    }

    pub fn tag(&self) -> &LatticeTag {
        &self.tag
    }

    pub fn with_tag(mut self, tag: LatticeTag) -> Self {
        self.tag = tag;
        self
    }

    /// HNF data `(h00, h01, h11, den)`.
    pub fn hnf_data(&self) -> (i128, i128, i128, i128) {
        (self.h00, self.h01, self.h11, self.den)
    }

    /// Z-basis in HNF order.
    pub fn basis(&self) -> Vec<FieldElement> {
        let d = Rational::new(1, self.den);
        if self.field.degree() == 1 {
            vec![FieldElement::new(rat(self.h00) * d, Rational::zero())]
        } else {
            vec![
                FieldElement::new(rat(self.h00) * d, rat(self.h01) * d),
                FieldElement::new(Rational::zero(), rat(self.h11) * d),
            ]
        }
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    pub fn is_ring_of_integers(&self) -> bool {
        self.den == 1 && self.h00 == 1 && self.h01 == 0 && (self.field.degree() == 1 || self.h11 == 1)
    }

    /// Norm of the fractional ideal (the index `[O : L]` for integral `L`).
    pub fn norm(&self) -> Rational {
        if self.field.degree() == 1 {
            Rational::new(self.h00, self.den)
        } else {
            Rational::new(self.h00 * self.h11, self.den * self.den)
        }
    }

    /// Volume of a fundamental domain of the embedded lattice in `R^d`.
    pub fn covolume(&self) -> f64 {
        let n = super::field::ratio_to_f64(&self.norm());
        n * (self.field.discriminant() as f64).sqrt()
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        let s = x.scale(&rat(self.den));
        if !s.is_integral() {
            return false;
        }
        let (xx, yy) = (s.x.to_integer(), s.y.to_integer());
        if self.field.degree() == 1 {
            return xx % self.h00 == 0;
        }
        if xx % self.h00 != 0 {
            return false;
        }
        let c0 = xx / self.h00;
        (yy - c0 * self.h01) % self.h11 == 0
    }

    /// `L ⊆ self`?
    pub fn contains_lattice(&self, other: &IdealLattice) -> bool {
        other.basis().iter().all(|b| self.contains(b))
    }

    pub fn mul(&self, other: &IdealLattice) -> Self {
        let mut prods = Vec::new();
        for a in self.basis() {
            for b in other.basis() {
                prods.push(self.field.mul(&a, &b));
            }
        }
        Self::from_z_span(&self.field, &prods, LatticeTag::Generic).expect("product of lattices has full rank")
    }

    pub fn add(&self, other: &IdealLattice) -> Self {
        let mut all = self.basis();
        all.extend(other.basis());
        Self::from_z_span(&self.field, &all, LatticeTag::Generic).expect("sum of lattices has full rank")
    }

    /// `x·L` for nonzero `x`.
    pub fn scale(&self, x: &FieldElement) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::invalid("scaling a lattice by zero"));
        }
        let gens: Vec<FieldElement> = self.basis().iter().map(|b| self.field.mul(b, x)).collect();
        Self::from_z_span(&self.field, &gens, LatticeTag::Generic)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::ring_of_integers(&self.field);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Canonical representative of `x` modulo this integral lattice, with
    /// coordinates `0 ≤ x < h00`, `0 ≤ y < h11`. `x` must lie in `O`.
    pub fn reduce(&self, x: &FieldElement) -> Result<FieldElement> {
        let (a, b) = self.reduce_key(x)?;
        Ok(FieldElement::from_ints(a, b))
    }

    /// Integer coordinates of [`Self::reduce`], usable as a hash key.
    pub fn reduce_key(&self, x: &FieldElement) -> Result<(i128, i128)> {
        if self.den != 1 {
            return Err(Error::invalid("reduction requires an integral ideal"));
        }
        if !x.is_integral() {
            return Err(Error::invalid(format!("{x} is not an algebraic integer")));
        }
        let (mut xx, mut yy) = (x.x.to_integer(), x.y.to_integer());
        if self.field.degree() == 1 {
            return Ok((xx.mod_floor(&self.h00), 0));
        }
        let q = Integer::div_floor(&xx, &self.h00);
        xx -= q * self.h00;
        yy -= q * self.h01;
        Ok((xx, yy.mod_floor(&self.h11)))
    }

    /// [`Self::reduce_key`] on integer coordinates; `self` must be integral.
    pub(crate) fn reduce_ints(&self, x: i128, y: i128) -> (i128, i128) {
        if self.field.degree() == 1 {
            return (x.mod_floor(&self.h00), 0);
        }
        let q = Integer::div_floor(&x, &self.h00);
        (x - q * self.h00, (y - q * self.h01).mod_floor(&self.h11))
    }

    /// Nonzero lattice points `x` with `|σ_j(x)| ≤ bounds[j]` for every place.
    pub fn lattice_points_in_box(&self, bounds: &[f64]) -> Result<Vec<FieldElement>> {
        let d = self.field.degree();
        if bounds.len() != d || bounds.iter().any(|t| !(*t > 0.0) || !t.is_finite()) {
            return Err(Error::invalid("box bounds must be d positive finite reals"));
        }
        let basis = self.basis();
        let inside = |x: &FieldElement| {
            self.field
                .embed(x)
                .iter()
                .zip(bounds)
                .all(|(s, t)| s.abs() <= t * (1.0 + 1e-12))
        };
        let mut out = Vec::new();
        if d == 1 {
            let b = super::field::ratio_to_f64(&basis[0].x);
            let kmax = (bounds[0] / b * (1.0 + 1e-12)).floor() as i128;
            for k in 1..=kmax {
                for s in [k, -k] {
                    let x = basis[0].scale(&rat(s));
                    if inside(&x) {
                        out.push(x);
                    }
                }
            }
            return Ok(out);
        }
        let e0 = self.field.embed(&basis[0]);
        let e1 = self.field.embed(&basis[1]);
        // σ = M·(m, n) with M = [[e0[0], e1[0]], [e0[1], e1[1]]].
        let det = e0[0] * e1[1] - e1[0] * e0[1];
        let inv = [[e1[1] / det, -e1[0] / det], [-e0[1] / det, e0[0] / det]];
        let range = |row: &[f64; 2]| -> i128 {
            (row[0].abs() * bounds[0] + row[1].abs() * bounds[1]).ceil() as i128 + 1
        };
        let (mr, nr) = (range(&inv[0]), range(&inv[1]));
        if (2 * mr + 1) as f64 * (2 * nr + 1) as f64 > 5e7 {
            return Err(Error::invalid("box too large for enumeration"));
        }
        for mm in -mr..=mr {
            for nn in -nr..=nr {
                if mm == 0 && nn == 0 {
                    continue;
                }
                let x = &basis[0].scale(&rat(mm)) + &basis[1].scale(&rat(nn));
                if inside(&x) {
                    out.push(x);
                }
            }
        }
        Ok(out)
    }
}

/// A prime ideal of `O` together with the rational prime below it.
#[derive(Clone, Debug)]
pub struct PrimeIdeal {
    pub p: i128,
    pub norm: i128,
    pub lattice: IdealLattice,
}

/// Prime ideals of `O` lying above the rational prime `p`.
pub fn primes_above(field: &QuadField, p: i128) -> Vec<PrimeIdeal> {
    let pe = FieldElement::from_int(p);
    if field.degree() == 1 {
        let lattice = IdealLattice::principal(field, &pe).expect("p ≠ 0");
        return vec![PrimeIdeal { p, norm: p, lattice }];
    }
    let (t, n) = field.omega_relation();
    // Roots of X² − tX − n modulo p.
    let roots: Vec<i128> = (0..p)
        .filter(|r| (r * r - t * r - n).mod_floor(&p) == 0)
        .collect();
    if roots.is_empty() {
        let lattice = IdealLattice::principal(field, &pe).expect("p ≠ 0");
        return vec![PrimeIdeal { p, norm: p * p, lattice }];
    }
    let w = field.omega();
    roots
        .iter()
        .map(|r| {
            let gen2 = &w - &FieldElement::from_int(*r);
            let lattice = IdealLattice::from_generators(field, &[pe.clone(), gen2], LatticeTag::Generic)
                .expect("prime ideal is a lattice");
            PrimeIdeal { p, norm: p, lattice }
        })
        .collect()
}

/// Trial-division factorization of `|n|` (at most 10¹² for desk scale).
pub fn factor_integer(n: i128) -> Result<Vec<(i128, u32)>> {
    let mut n = n.abs();
    if n == 0 {
        return Err(Error::invalid("cannot factor zero"));
    }
    if n > 1_000_000_000_000 {
        return Err(Error::Unavailable(format!("|N| = {n} exceeds the trial-division limit 10^12")));
    }
    let mut out = Vec::new();
    let mut p = 2i128;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}

/// Largest `k` with `L ⊆ P^k`, for an integral lattice `L ≠ 0`.
pub fn valuation(prime: &PrimeIdeal, l: &IdealLattice) -> u32 {
    let mut k = 0;
    let mut pk = prime.lattice.clone();
    // v_P(L) ≤ v_p(N(L)) bounds the loop.
    while pk.contains_lattice(l) {
        k += 1;
        pk = pk.mul(&prime.lattice);
        if k > 200 {
            break;
        }
    }
    k
}

/// Prime ideal factorization `(P, v_P(L))` of an integral lattice.
pub fn factor_ideal(l: &IdealLattice) -> Result<Vec<(PrimeIdeal, u32)>> {
    if !l.is_integral() {
        return Err(Error::invalid("factorization requires an integral ideal"));
    }
    let n = l.norm().to_integer();
    let mut out = Vec::new();
    for (p, _) in factor_integer(n)? {
        for pr in primes_above(l.field(), p) {
            let v = valuation(&pr, l);
            if v > 0 {
                out.push((pr, v));
            }
        }
    }
    Ok(out)
}

/// `|N(x)|` as an integer, for `x ∈ O`.
pub fn integral_norm(field: &QuadField, x: &FieldElement) -> Result<i128> {
    if !x.is_integral() {
        return Err(Error::invalid(format!("{x} is not an algebraic integer")));
    }
    Ok(field.norm(x).to_integer().abs())
}

impl IdealLattice {
    /// The unit ideal test used by residue rings: `(a) + L = O`.
    pub fn coprime_to(&self, a: &FieldElement) -> bool {
        if a.is_zero() {
            return self.is_ring_of_integers();
        }
        let mut gens = self.basis();
        gens.push(a.clone());
        if self.field.degree() == 2 {
            gens.push(self.field.mul(a, &self.field.omega()));
        }
        IdealLattice::from_z_span(&self.field, &gens, LatticeTag::Generic)
            .map(|s| s.is_ring_of_integers())
            .unwrap_or(false)
    }

    /// Is the lattice closed under multiplication by `ω` (i.e. an O-module)?
    pub fn is_o_module(&self) -> bool {
        let w = self.field.omega();
        self.basis().iter().all(|b| self.contains(&self.field.mul(b, &w)))
    }

    pub fn is_one(&self) -> bool {
        self.is_ring_of_integers()
    }
}
