//! Special-function plumbing: double-double arithmetic, the complex
//! log-gamma function, and the complementary error function.

use std::f64::consts::PI;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

/// An unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2` (about 32 digits).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::new(x)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let (hi, lo) = quick_two_sum(p, e + (self.hi * b.lo + self.lo * b.hi));
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

/// Complex double-double.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub const ZERO: CDd = CDd { re: Dd::ZERO, im: Dd::ZERO };
    pub const ONE: CDd = CDd { re: Dd::ONE, im: Dd::ZERO };

    pub fn new(re: Dd, im: Dd) -> Self {
        CDd { re, im }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Modulus in working precision (adequate for error budgets).
    pub fn norm_f64(self) -> f64 {
        self.to_c64().norm()
    }

    pub fn scale(self, s: Dd) -> Self {
        CDd { re: self.re * s, im: self.im * s }
    }

    pub fn inv(self) -> Self {
        let d = self.re * self.re + self.im * self.im;
        CDd { re: self.re / d, im: -(self.im / d) }
    }
}

impl From<Complex64> for CDd {
    fn from(z: Complex64) -> Self {
        CDd { re: Dd::new(z.re), im: Dd::new(z.im) }
    }
}

impl Add for CDd {
    type Output = CDd;
    fn add(self, b: CDd) -> CDd {
        CDd { re: self.re + b.re, im: self.im + b.im }
    }
}

impl Mul for CDd {
    type Output = CDd;
    fn mul(self, b: CDd) -> CDd {
        CDd { re: self.re * b.re - self.im * b.im, im: self.re * b.im + self.im * b.re }
    }
}

/// Bernoulli-number coefficients `B_{2k}/(2k(2k−1))` of the Stirling series.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

/// Stirling series for `Re z ≥ 15` (absolute error below 1e−16 there).
fn ln_gamma_stirling(z: Complex64) -> Complex64 {
    let half_ln_2pi = 0.5 * (2.0 * PI).ln();
    let mut s = (z - 0.5) * z.ln() - z + half_ln_2pi;
    let w = z.inv();
    let w2 = w * w;
    let mut p = w;
    for c in STIRLING {
        s += p * c;
        p *= w2;
    }
    s
}

/// `ln sin(πz)` for `Im z ≥ 0`, stable for large `Im z`.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    // sin πz = e^{−iπz}·(e^{2iπz} − 1)/(2i); the exponential e^{2iπz}
    // has modulus e^{−2π Im z} ≤ 1 and never overflows.
    let e = (2.0 * i * PI * z).exp();
    -i * PI * z + ((e - 1.0) / (2.0 * i)).ln()
}

/// Complex `ln Γ(z)`, correct modulo `2πi` (only `exp` of it is used).
///
/// Shift to `Re z ≥ 15` and use the Stirling series; reflection for
/// `Re z < 1/2`. Poles give `−∞` real part.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return ln_gamma(z.conj()).conj();
    }
    if z.re < 0.5 {
        if z.im == 0.0 && z.re == z.re.round() {
            return Complex64::new(f64::NEG_INFINITY, 0.0);
        }
        return Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma(Complex64::new(1.0, 0.0) - z);
    }
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    let mut prod = Complex64::new(1.0, 0.0);
    while w.re < 15.0 {
        prod *= w;
        // Renormalize to avoid overflow of the running product.
        if prod.norm() > 1e200 {
            shift += prod.ln();
            prod = Complex64::new(1.0, 0.0);
        }
        w += 1.0;
    }
    shift += prod.ln();
    ln_gamma_stirling(w) - shift
}

/// `1/Γ(z)`, exactly 0 at the poles.
pub fn rgamma(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Complex64::new(0.0, 0.0);
    }
    (-ln_gamma(z)).exp()
}

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn dd_recovers_lost_bits() {
        let a = Dd::new(1.0) + Dd::new(1e-20);
        assert_eq!(a.hi, 1.0);
        assert_eq!(a.lo, 1e-20);
        let third = Dd::ONE / Dd::new(3.0);
        let back = third.mul_f64(3.0) - Dd::ONE;
        assert!(back.to_f64().abs() < 1e-31);
        let z = CDd::from(c(1.0, 2.0)) * CDd::from(c(3.0, -1.0));
        assert_eq!(z.to_c64(), c(5.0, 5.0));
        let w = CDd::from(c(0.3, 0.4)).inv().to_c64();
        assert!((w - c(1.2, -1.6)).norm() < 1e-15);
    }

    #[test]
    fn gamma_real_values() {
        assert!(ln_gamma(c(1.0, 0.0)).norm() < 1e-14);
        assert!((ln_gamma(c(5.0, 0.0)).re - 24f64.ln()).abs() < 1e-14);
        assert!((ln_gamma(c(0.5, 0.0)).re - 0.5 * PI.ln()).abs() < 1e-14);
        assert!((rgamma(c(-0.5, 0.0)).re + 1.0 / (2.0 * PI.sqrt())).abs() < 1e-15);
        assert_eq!(rgamma(c(-3.0, 0.0)), c(0.0, 0.0));
        for x in [0.1, 0.7, 2.5, 9.3, 33.0, 150.0] {
            let ours = ln_gamma(c(x, 0.0)).re;
            let reference = libm::lgamma(x);
            assert!((ours - reference).abs() < 1e-13 * reference.abs().max(1.0), "x = {x}");
        }
    }

    #[test]
    fn gamma_modulus_on_imaginary_axis() {
        // |Γ(iy)|² = π / (y sinh πy)
        for y in [0.1, 1.0, 5.0, 40.0, 120.0] {
            let lg = ln_gamma(c(0.0, y)).re;
            let expect = 0.5 * (PI.ln() - y.ln() - (PI * y - 2f64.ln() + (-(-2.0 * PI * y).exp()).ln_1p()));
            assert!((lg - expect).abs() < 1e-12 * expect.abs().max(1.0), "y = {y}");
        }
    }

    #[test]
    fn gamma_recurrence_and_reflection() {
        for z in [c(0.3, 0.2), c(-2.7, 1.5), c(4.0, -30.0), c(0.5, 90.0), c(-7.25, 0.0)] {
            let g = ln_gamma(z);
            let g1 = ln_gamma(z + 1.0);
            let d = (g1 - g - z.ln()).exp();
            assert!((d - 1.0).norm() < 1e-12, "z = {z}");
            let refl = ln_gamma(z) + ln_gamma(1.0 - z);
            let expect = c(PI, 0.0) / (z * PI).sin();
            assert!((refl.exp() / expect - 1.0).norm() < 1e-11, "z = {z}");
        }
    }

    #[test]
    fn erfc_values() {
        assert!((erfc(0.0) - 1.0).abs() < 1e-16);
        assert!((erfc(1.0) - 0.157_299_207_050_285_13).abs() < 1e-15, "{:e}", erfc(1.0) - 0.157_299_207_050_285_13);
        assert!(erfc(10.0) > 0.0 && erfc(10.0) < 1e-44);
    }
}
