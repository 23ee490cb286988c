//! Test functions obtained by Gaussian smoothing in the `λ`-variable:
//! `φ(ν) = √(T/π) ∫ e^{−T(λ − w)²} f(λ) dλ` with `w = 1/4 − ν²`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::{LocalTestFunction, PhiP, Provenance, TestParams};
use crate::quadrature::{gauss_hermite, integrate_panels, QuadOptions};
use crate::{Error, Result};

/// How the smoothing integral is evaluated on the two axes (where `w` is
/// real). Off the axes `w` is complex and adaptive quadrature is always used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmoothingRule {
    /// Adaptive Gauss–Kronrod over the support, with the kinks of `f` and
    /// the Gaussian window as breakpoints.
    Adaptive,
    /// `n`-point Gauss–Hermite in `y = √T(λ − w)`.
    GaussHermite(usize),
}

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// `λ`-smoothing of a compactly supported `C¹` function `f`.
#[derive(Clone)]
pub struct LambdaSmoothed {
    f: RealFn,
    support: (f64, f64),
    kinks: Vec<f64>,
    t: f64,
    params: TestParams,
    rule: SmoothingRule,
    hermite: Arc<(Vec<f64>, Vec<f64>)>,
}

impl fmt::Debug for LambdaSmoothed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LambdaSmoothed")
            .field("support", &self.support)
            .field("kinks", &self.kinks)
            .field("t", &self.t)
            .field("params", &self.params)
            .field("rule", &self.rule)
            .finish()
    }
}

impl LambdaSmoothed {
    /// `f` must vanish outside `support = [lo, hi]`; `kinks` lists points
    /// where `f` is not smooth (used as quadrature breakpoints).
    pub fn new<F>(f: F, support: (f64, f64), kinks: &[f64], t: f64, params: TestParams) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let (lo, hi) = support;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::invalid("λ-smoothing needs a compact support [lo, hi] with lo < hi"));
        }
        if !(t >= 4.0 && t.is_finite()) {
            return Err(Error::invalid(format!("smoothing parameter T = {t} must be at least 4")));
        }
        for d in [1e-6, 1e-3, 0.1, 1.0, 10.0, 1e3] {
            let (a, b) = (f(lo - d), f(hi + d));
            if a != 0.0 || b != 0.0 {
                return Err(Error::invalid(format!("f does not vanish outside [{lo}, {hi}]: f({}) = {a}, f({}) = {b}", lo - d, hi + d)));
            }
        }
        let mut kinks: Vec<f64> = kinks.iter().copied().filter(|k| *k > lo && *k < hi).collect();
        kinks.sort_by(f64::total_cmp);
        Ok(LambdaSmoothed {
            f: Arc::new(f),
            support,
            kinks,
            t,
            params,
            rule: SmoothingRule::Adaptive,
            hermite: Arc::new((Vec::new(), Vec::new())),
        })
    }

    pub fn with_rule(mut self, rule: SmoothingRule) -> Self {
        if let SmoothingRule::GaussHermite(n) = rule {
            self.hermite = Arc::new(gauss_hermite(n.max(2)));
        }
        self.rule = rule;
        self
    }

    pub fn smoothing(&self) -> f64 {
        self.t
    }

    /// The unsmoothed value `f(1/4 − ν²)` on the axes.
    pub fn target(&self, z: Complex64) -> f64 {
        (self.f)(0.25 - (z * z).re)
    }

    fn adaptive(&self, w: Complex64) -> Complex64 {
        let (lo, hi) = self.support;
        let t = self.t;
        let sigma = 1.0 / t.sqrt();
        let centre = w.re.clamp(lo, hi);
        let gap = w.re - centre;
        // Outside |λ − Re w| ≤ reach the integrand is below e^{−750} of its peak.
        let reach = (750.0 / t + gap * gap).sqrt();
        let (a, b) = ((w.re - reach).max(lo), (w.re + reach).min(hi));
        if !(b > a) {
            return Complex64::new(0.0, 0.0);
        }
        let mut pts = vec![a, b];
        pts.extend(self.kinks.iter().copied().filter(|k| *k > a && *k < b));
        let waves = (t * w.im.abs() * (b - a) / PI).ceil() as usize;
        let steps = ((b - a) / sigma).ceil() as usize;
        let n = (steps.max(waves) + 1).min(4000);
        pts.extend((1..n).map(|k| a + (b - a) * k as f64 / n as f64));
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        let norm = (t / PI).sqrt();
        let g = |l: f64| {
            let d = Complex64::new(l, 0.0) - w;
            (-(d * d) * t).exp() * ((self.f)(l) * norm)
        };
        integrate_panels(g, &pts, QuadOptions::tol(1e-300, 1e-12)).value
    }

    fn hermite_axis(&self, w: f64) -> f64 {
        let (x, wt) = &*self.hermite;
        let s = 1.0 / self.t.sqrt();
        x.iter().zip(wt).map(|(y, c)| c * (self.f)(w + y * s)).sum::<f64>() / PI.sqrt()
    }

    /// Smallest `K` with `|φ(ν) − f(1/4 − ν²)| ≤ K T^{−1/2} φ_p(ν)` on a grid
    /// of the two axes (`ν = it`, `0 ≤ t ≤ t_max`, and `ν ∈ [0, τ]`).
    pub fn approximation_constant(&self, p: f64, t_max: f64) -> Result<f64> {
        let phip = PhiP::new(p, self.params)?;
        let mut k: f64 = 0.0;
        let n = 2000;
        let imag = (0..=n).map(|i| Complex64::new(0.0, t_max * i as f64 / n as f64));
        let real = (0..=50).map(|i| Complex64::new(self.params.tau * i as f64 / 50.0, 0.0));
        for z in imag.chain(real) {
            let diff = (self.eval(z).re - self.target(z)).abs();
            k = k.max(diff * self.t.sqrt() / phip.eval(z).re);
        }
        Ok(k)
    }
}

impl LocalTestFunction for LambdaSmoothed {
    fn eval(&self, z: Complex64) -> Complex64 {
        let w = Complex64::new(0.25, 0.0) - z * z;
        let on_axis = z.re == 0.0 || z.im == 0.0;
        match self.rule {
            SmoothingRule::GaussHermite(_) if on_axis => Complex64::new(self.hermite_axis(w.re), 0.0),
            _ => {
                let v = self.adaptive(if on_axis { Complex64::new(w.re, 0.0) } else { w });
                if on_axis {
                    Complex64::new(v.re, 0.0)
                } else {
                    v
                }
            }
        }
    }

    fn eval_discrete(&self, beta: f64) -> f64 {
        let w = 0.25 - beta * beta;
        match self.rule {
            SmoothingRule::GaussHermite(_) => self.hermite_axis(w),
            SmoothingRule::Adaptive => self.adaptive(Complex64::new(w, 0.0)).re,
        }
    }

    fn params(&self) -> TestParams {
        self.params
    }

    fn provenance(&self) -> Provenance {
        Provenance::LambdaSmoothed { t: self.t, support: self.support }
    }

    fn features(&self) -> Vec<f64> {
        let (lo, hi) = self.support;
        [lo, hi].into_iter().filter(|l| *l > 0.25).map(|l| (l - 0.25).sqrt()).collect()
    }
}
