use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal, Poisson};
use serde::{Deserialize, Serialize};

use super::budget::main_term_constant;
use crate::measures::{npl_density, w_plancherel, Parity, PlaceSet, ProductRegion};
use crate::numberfield::QuadField;
use crate::regions::{Region, SpectralPoint};
use crate::testfunctions::TestFunctionProduct;
use crate::{Error, Result};

/// Law of the synthetic weights standing in for `|c^r(ϖ)|²`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum WeightLaw {
    /// Every weight is 1.
    #[default]
    Unit,
    /// `exp(N(−σ²/2, σ²))`, mean 1.
    LogNormal { sigma: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SyntheticPoint {
    pub nu: Vec<SpectralPoint>,
    pub weight: f64,
}

/// A Poisson point configuration with the main-term intensity
/// `(2√|D_F|/(2π)^d)·ν̃pl` on a bounded domain, with nonnegative weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpectrum {
    pub parity: Vec<Parity>,
    pub points: Vec<SyntheticPoint>,
    pub law: WeightLaw,
    pub seed: u64,
    /// Expected number of points, the main term of the domain.
    pub expected: f64,
}

/// One component of a place's `ν̃pl` restricted to the domain.
enum Piece {
    Interval(f64, f64),
    Point(f64),
}

struct PlaceSampler {
    parity: Parity,
    pieces: Vec<Piece>,
    cumulative: Vec<f64>,
}

impl PlaceSampler {
    fn new(parity: Parity, set: &PlaceSet) -> Result<Self> {
        let mut pieces = Vec::new();
        for &(a, b) in &set.imag {
            pieces.push(Piece::Interval(a, b));
        }
        for &(a, b) in &set.real {
            pieces.extend(parity.discrete_in(a, b).map(Piece::Point));
        }
        pieces.extend(set.points.iter().copied().filter(|&p| parity.is_discrete(p)).map(Piece::Point));
        let mut total = 0.0;
        let mut cumulative = Vec::with_capacity(pieces.len());
        for p in &pieces {
            total += match *p {
                Piece::Interval(a, b) => w_plancherel(parity, b).value - w_plancherel(parity, a).value,
                Piece::Point(beta) => 2.0 * beta,
            };
            cumulative.push(total);
        }
        Ok(PlaceSampler { parity, pieces, cumulative })
    }

    fn mass(&self) -> f64 {
        self.cumulative.last().copied().unwrap_or(0.0)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> SpectralPoint {
        let target = rng.random::<f64>() * self.mass();
        let k = self.cumulative.partition_point(|&c| c <= target).min(self.pieces.len() - 1);
        match self.pieces[k] {
            Piece::Point(beta) => SpectralPoint::Discrete(beta),
            Piece::Interval(a, b) => SpectralPoint::Principal(self.invert(a, b, rng.random::<f64>())),
        }
    }

    /// The `u ∈ [a, b]` with `W(u) − W(a) = r(W(b) − W(a))`, by safeguarded
    /// Newton steps on the density `2ν̃plf`.
    fn invert(&self, a: f64, b: f64, r: f64) -> f64 {
        let wa = w_plancherel(self.parity, a).value;
        let goal = wa + r * (w_plancherel(self.parity, b).value - wa);
        let (mut lo, mut hi) = (a, b);
        let mut u = a + r * (b - a);
        for _ in 0..100 {
            let f = w_plancherel(self.parity, u).value - goal;
            if f > 0.0 {
                hi = u;
            } else {
                lo = u;
            }
            let step = f / (2.0 * npl_density(self.parity, u));
            let next = u - step;
            u = if next > lo && next < hi { next } else { 0.5 * (lo + hi) };
            if step.abs() <= 1e-14 * u.max(1.0) || hi - lo <= 1e-14 * hi.max(1.0) {
                break;
            }
        }
        u
    }
}

/// Samples a synthetic spectrum on the bounded product `domain`: a Poisson
/// number of points with mean `(2√|D_F|/(2π)^d)·ν̃pl(domain)`, placed
/// independently by the normalized `ν̃pl` at each place, with weights from
/// `law`. Deterministic for a given seed.
pub fn synth_spectrum(field: &QuadField, domain: &ProductRegion, law: WeightLaw, seed: u64) -> Result<SyntheticSpectrum> {
    if field.degree() != domain.degree() {
        return Err(Error::invalid(format!("a {}-place domain over a field of degree {}", domain.degree(), field.degree())));
    }
    if let WeightLaw::LogNormal { sigma } = law {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::invalid(format!("log-normal σ = {sigma} must be positive")));
        }
    }
    let samplers: Vec<PlaceSampler> =
        domain.parity.iter().zip(&domain.places).map(|(&p, s)| PlaceSampler::new(p, s)).collect::<Result<_>>()?;
    let expected = main_term_constant(field) * samplers.iter().map(|s| s.mass()).product::<f64>();
    if !expected.is_finite() {
        return Err(Error::invalid("the domain must be bounded"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = if expected > 0.0 {
        Poisson::new(expected).map_err(|e| Error::invalid(format!("Poisson mean {expected}: {e}")))?.sample(&mut rng) as usize
    } else {
        0
    };
    let lognormal = match law {
        WeightLaw::LogNormal { sigma } => {
            Some(LogNormal::new(-0.5 * sigma * sigma, sigma).map_err(|e| Error::invalid(format!("log-normal law: {e}")))?)
        }
        WeightLaw::Unit => None,
    };
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        let nu = samplers.iter().map(|s| s.sample(&mut rng)).collect();
        let weight = lognormal.map_or(1.0, |d| d.sample(&mut rng));
        points.push(SyntheticPoint { nu, weight });
    }
    Ok(SyntheticSpectrum { parity: domain.parity.clone(), points, law, seed, expected })
}

impl SyntheticSpectrum {
    /// A spectrum with no points.
    pub fn empty(parity: Vec<Parity>) -> Self {
        SyntheticSpectrum { parity, points: vec![], law: WeightLaw::Unit, seed: 0, expected: 0.0 }
    }

    /// `Σ_{ν_ϖ ∈ Ω} w_ϖ`.
    pub fn count(&self, region: &Region) -> f64 {
        self.count_fn(|nu| {
            let s: Vec<f64> = nu.iter().map(|p| p.chart()).collect();
            if region.contains_chart(&s) {
                1.0
            } else {
                0.0
            }
        })
    }

    /// `Σ_ϖ f(ν_ϖ) w_ϖ`.
    pub fn count_fn<F: Fn(&[SpectralPoint]) -> f64>(&self, f: F) -> f64 {
        self.points.iter().map(|p| p.weight * f(&p.nu)).sum()
    }

    /// `Σ_ϖ φ(ν_ϖ) w_ϖ` for a product test function.
    pub fn count_test_function(&self, phi: &TestFunctionProduct) -> Result<f64> {
        let mut total = 0.0;
        for p in &self.points {
            total += p.weight * phi.at(&p.nu)?;
        }
        Ok(total)
    }
}
