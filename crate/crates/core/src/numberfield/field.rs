//! Real quadratic fields (and Q) with exact rational element arithmetic.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational number used for all field coordinates.
pub type Rational = Ratio<i128>;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i128) -> Rational {
    Rational::from_integer(n)
}

/// Element `x + y·ω` of a field, stored by its rational coordinates over
/// the integral basis `(1, ω)`.
///
/// Over `Q` the second coordinate is always zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub x: Rational,
    pub y: Rational,
}

impl FieldElement {
    pub fn new(x: Rational, y: Rational) -> Self {
        FieldElement { x, y }
    }

    pub fn from_int(n: i128) -> Self {
        FieldElement::new(rat(n), Rational::zero())
    }

    pub fn from_ints(x: i128, y: i128) -> Self {
        FieldElement::new(rat(x), rat(y))
    }

    pub fn zero() -> Self {
        FieldElement::from_int(0)
    }

    pub fn one() -> Self {
        FieldElement::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Multiply by a rational scalar.
    pub fn scale(&self, s: &Rational) -> Self {
        FieldElement::new(self.x * s, self.y * s)
    }

    /// True when both coordinates are integers, i.e. the element lies in O.
    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    /// Least common denominator of the two coordinates.
    pub fn denominator(&self) -> i128 {
        self.x.denom().lcm(self.y.denom())
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        FieldElement::new(self.x + o.x, self.y + o.y)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, o: FieldElement) -> FieldElement {
        &self + &o
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        FieldElement::new(self.x - o.x, self.y - o.y)
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, o: FieldElement) -> FieldElement {
        &self - &o
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::new(-self.x, -self.y)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for FieldElement {
    /// Serializes as `x+y*w` with exact rationals (`y` omitted when zero).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return write!(f, "{}", fmt_rational(&self.x));
        }
        let ys = if self.y.is_negative() {
            format!("-{}", fmt_rational(&-self.y))
        } else {
            format!("+{}", fmt_rational(&self.y))
        };
        write!(f, "{}{}*w", fmt_rational(&self.x), ys)
    }
}

/// `Q` or a real quadratic field `Q(√m)`.
///
/// The integral basis is `(1, ω)` with `ω² = t·ω + n`: `ω = √m` (`t = 0`,
/// `n = m`) unless `m ≡ 1 mod 4`, where `ω = (1+√m)/2` (`t = 1`,
/// `n = (m−1)/4`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadField {
    m: i64,
    t: i128,
    n: i128,
}

fn is_squarefree(m: i64) -> bool {
    let mut k = 2i64;
    while k * k <= m {
        if m % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl QuadField {
    /// Build `Q` (`m = 1`) or `Q(√m)` for squarefree `m > 1`.
    pub fn new(m: i64) -> Result<Self> {
        if m <= 0 {
            return Err(Error::invalid(format!("m must be positive, got {m}")));
        }
        if !is_squarefree(m) {
            return Err(Error::invalid(format!("m = {m} is not squarefree")));
        }
        let (t, n) = if m == 1 {
            (1, 0)
        } else if m % 4 == 1 {
            (1, ((m - 1) / 4) as i128)
        } else {
            (0, m as i128)
        };
        Ok(QuadField { m, t, n })
    }

    /// The rational field.
    pub fn rationals() -> Self {
        QuadField { m: 1, t: 1, n: 0 }
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    /// Degree `d` over `Q`.
    pub fn degree(&self) -> usize {
        if self.m == 1 {
            1
        } else {
            2
        }
    }

    /// Field discriminant `D_F`.
    pub fn discriminant(&self) -> i64 {
        if self.m == 1 {
            1
        } else if self.m % 4 == 1 {
            self.m
        } else {
            4 * self.m
        }
    }

    /// Coefficients `(t, n)` of `ω² = t·ω + n`.
    pub fn omega_relation(&self) -> (i128, i128) {
        (self.t, self.n)
    }

    /// The basis element `ω` (equal to 1 over `Q`).
    pub fn omega(&self) -> FieldElement {
        self.elem(Rational::zero(), Rational::one())
    }

    /// Element `x + y·ω`, normalized so that over `Q` the second coordinate is 0.
    pub fn elem(&self, x: Rational, y: Rational) -> FieldElement {
        if self.degree() == 1 {
            FieldElement::new(x + y, Rational::zero())
        } else {
            FieldElement::new(x, y)
        }
    }

    /// `√m` as a field element.
    pub fn sqrt_m(&self) -> FieldElement {
        match (self.degree(), self.t) {
            (1, _) => FieldElement::one(),
            (_, 0) => FieldElement::from_ints(0, 1),
            _ => FieldElement::from_ints(-1, 2),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if self.degree() == 1 {
            return FieldElement::new(a.x * b.x, Rational::zero());
        }
        let t = rat(self.t);
        let n = rat(self.n);
        let bd = a.y * b.y;
        FieldElement::new(a.x * b.x + bd * n, a.x * b.y + a.y * b.x + bd * t)
    }

    /// Galois conjugate (identity over `Q`).
    pub fn conj(&self, a: &FieldElement) -> FieldElement {
        if self.degree() == 1 {
            return a.clone();
        }
        FieldElement::new(a.x + a.y * rat(self.t), -a.y)
    }

    pub fn trace(&self, a: &FieldElement) -> Rational {
        if self.degree() == 1 {
            a.x
        } else {
            a.x * rat(2) + a.y * rat(self.t)
        }
    }

    pub fn norm(&self, a: &FieldElement) -> Rational {
        if self.degree() == 1 {
            a.x
        } else {
            a.x * a.x + a.x * a.y * rat(self.t) - a.y * a.y * rat(self.n)
        }
    }

    /// Exact `(trace, norm)`.
    pub fn trace_and_norm(&self, a: &FieldElement) -> (Rational, Rational) {
        (self.trace(a), self.norm(a))
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        let nm = self.norm(a);
        if nm.is_zero() {
            return Err(Error::invalid("division by zero in field"));
        }
        if self.degree() == 1 {
            return Ok(FieldElement::new(nm.recip(), Rational::zero()));
        }
        Ok(self.conj(a).scale(&nm.recip()))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = FieldElement::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Real embeddings `σ_j(ω)`, `j = 1..d`.
    pub fn omega_embeddings(&self) -> Vec<f64> {
        if self.degree() == 1 {
            return vec![1.0];
        }
        let disc = self.discriminant() as f64;
        let t = self.t as f64;
        vec![(t + disc.sqrt()) / 2.0, (t - disc.sqrt()) / 2.0]
    }

    /// `(σ_1(x), …, σ_d(x))`.
    pub fn embed(&self, a: &FieldElement) -> Vec<f64> {
        let x = ratio_to_f64(&a.x);
        let y = ratio_to_f64(&a.y);
        self.omega_embeddings().into_iter().map(|w| x + y * w).collect()
    }

    /// True iff every real embedding is strictly positive (decided exactly).
    pub fn is_totally_positive(&self, a: &FieldElement) -> bool {
        if self.degree() == 1 {
            return a.x.is_positive();
        }
        self.trace(a).is_positive() && self.norm(a).is_positive()
    }

    /// Human-readable spec string, the inverse of [`crate::numberfield::parse_field`].
    pub fn spec(&self) -> String {
        if self.m == 1 {
            "Q".into()
        } else {
            format!("Q(sqrt {})", self.m)
        }
    }
}

/// Convert an exact rational to the nearest double.
pub fn ratio_to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
