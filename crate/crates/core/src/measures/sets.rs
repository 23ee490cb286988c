use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Parity `χ_j ∈ {0, 1}` of the central character at one place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

/// Relative tolerance for deciding that a real number is a discrete-series point.
const DISCRETE_TOL: f64 = 1e-9;

impl Parity {
    pub fn from_bit(bit: u8) -> Result<Self> {
        match bit {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            _ => Err(Error::invalid(format!("parity must be 0 or 1, got {bit}"))),
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    /// Smallest discrete-series parameter: `1/2` (even) or `1` (odd).
    pub fn first_discrete(self) -> f64 {
        match self {
            Parity::Even => 0.5,
            Parity::Odd => 1.0,
        }
    }

    /// Whether `β` lies in `(χ+1)/2 + N₀`.
    pub fn is_discrete(self, beta: f64) -> bool {
        let k = beta - self.first_discrete();
        k > -DISCRETE_TOL * beta.max(1.0) && (k - k.round()).abs() <= DISCRETE_TOL * beta.max(1.0)
    }

    /// Index range `k` with `first + k ∈ [lo, hi]`.
    fn discrete_range(self, lo: f64, hi: f64) -> std::ops::Range<u64> {
        let first = self.first_discrete();
        let k0 = (lo - first - DISCRETE_TOL * lo.abs().max(1.0)).ceil().max(0.0);
        let k1 = (hi - first + DISCRETE_TOL * hi.abs().max(1.0)).floor();
        if k1 < k0 {
            0..0
        } else {
            k0 as u64..k1 as u64 + 1
        }
    }

    /// Discrete-series parameters in `[lo, hi]`, in increasing order.
    pub fn discrete_in(self, lo: f64, hi: f64) -> impl Iterator<Item = f64> {
        let first = self.first_discrete();
        self.discrete_range(lo, hi).map(move |k| first + k as f64)
    }

    /// Number of discrete-series parameters in `[lo, hi]`.
    pub fn discrete_count(self, lo: f64, hi: f64) -> u64 {
        let r = self.discrete_range(lo, hi);
        r.end - r.start
    }
}

fn check_interval(lo: f64, hi: f64, what: &str) -> Result<()> {
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::invalid(format!("{what} [{lo}, {hi}] is unbounded; truncate it first")));
    }
    if lo > hi {
        return Err(Error::invalid(format!("{what} [{lo}, {hi}] has lo > hi")));
    }
    Ok(())
}

fn merge(mut v: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    v.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(v.len());
    for (a, b) in v {
        match out.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}

/// A bounded subset of the spectral parameter space at one place.
///
/// - `imag`: closed intervals `i[a, b]`, stored as `(a, b)` with `0 ≤ a ≤ b`;
/// - `real`: closed intervals `[a, b] ⊂ (0, ∞)` of real `ν`. They carry
///   Lebesgue measure on their part in `(0, ν_θ]` and counting measure on
///   the discrete-series points they contain;
/// - `points`: isolated real points (mass only if discrete-series points).
///
/// After [`PlaceSet::new`] the intervals are merged and sorted and no point
/// lies inside a real interval, so nothing is counted twice.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PlaceSet {
    #[serde(default)]
    pub imag: Vec<(f64, f64)>,
    #[serde(default)]
    pub real: Vec<(f64, f64)>,
    #[serde(default)]
    pub points: Vec<f64>,
}

impl PlaceSet {
    pub fn new(imag: Vec<(f64, f64)>, real: Vec<(f64, f64)>, points: Vec<f64>) -> Result<Self> {
        for &(a, b) in &imag {
            check_interval(a, b, "imaginary interval")?;
            if a < 0.0 {
                return Err(Error::invalid(format!("imaginary interval starts at t = {a} < 0")));
            }
        }
        for &(a, b) in &real {
            check_interval(a, b, "real interval")?;
            if a < 0.0 {
                return Err(Error::invalid(format!("real interval starts at x = {a} < 0")));
            }
        }
        for &p in &points {
            if !p.is_finite() || p <= 0.0 {
                return Err(Error::invalid(format!("point {p} is not a positive real")));
            }
        }
        let imag = merge(imag);
        let real = merge(real);
        let mut points: Vec<f64> = points.into_iter().filter(|&p| !real.iter().any(|&(a, b)| a <= p && p <= b)).collect();
        points.sort_by(f64::total_cmp);
        points.dedup();
        Ok(PlaceSet { imag, real, points })
    }

    pub fn empty() -> Self {
        PlaceSet::default()
    }

    pub fn imag_interval(a: f64, b: f64) -> Result<Self> {
        PlaceSet::new(vec![(a, b)], vec![], vec![])
    }

    pub fn real_interval(a: f64, b: f64) -> Result<Self> {
        PlaceSet::new(vec![], vec![(a, b)], vec![])
    }

    pub fn point(beta: f64) -> Result<Self> {
        PlaceSet::new(vec![], vec![], vec![beta])
    }

    pub fn is_empty(&self) -> bool {
        self.imag.is_empty() && self.real.is_empty() && self.points.is_empty()
    }

    pub fn union(&self, other: &PlaceSet) -> Result<Self> {
        PlaceSet::new(
            self.imag.iter().chain(&other.imag).copied().collect(),
            self.real.iter().chain(&other.real).copied().collect(),
            self.points.iter().chain(&other.points).copied().collect(),
        )
    }

    /// Image under `λ = 1/4 − ν²`.
    pub fn to_lambda(&self) -> LambdaSet {
        let mut intervals = Vec::new();
        for &(a, b) in &self.imag {
            intervals.push((0.25 + a * a, 0.25 + b * b));
        }
        for &(a, b) in &self.real {
            intervals.push((0.25 - b * b, 0.25 - a * a));
        }
        let points = self.points.iter().map(|p| 0.25 - p * p).collect();
        LambdaSet::new(intervals, points).expect("image of a valid place set is valid")
    }
}

/// A bounded product set `∏_j Ω_j` in `ν`-space with the parity vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductRegion {
    pub parity: Vec<Parity>,
    pub places: Vec<PlaceSet>,
}

impl ProductRegion {
    pub fn new(parity: Vec<Parity>, places: Vec<PlaceSet>) -> Result<Self> {
        if parity.is_empty() || parity.len() != places.len() {
            return Err(Error::invalid(format!("{} parities for {} places", parity.len(), places.len())));
        }
        Ok(ProductRegion { parity, places })
    }

    pub fn degree(&self) -> usize {
        self.places.len()
    }

    pub fn to_lambda(&self) -> LambdaRegion {
        LambdaRegion { parity: self.parity.clone(), places: self.places.iter().map(PlaceSet::to_lambda).collect() }
    }
}

/// A bounded subset of the real `λ` line at one place: closed intervals
/// plus isolated points.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LambdaSet {
    #[serde(default)]
    pub intervals: Vec<(f64, f64)>,
    #[serde(default)]
    pub points: Vec<f64>,
}

impl LambdaSet {
    pub fn new(intervals: Vec<(f64, f64)>, points: Vec<f64>) -> Result<Self> {
        for &(a, b) in &intervals {
            check_interval(a, b, "λ interval")?;
        }
        for &p in &points {
            if !p.is_finite() {
                return Err(Error::invalid("λ point is not finite"));
            }
        }
        let intervals = merge(intervals);
        let mut points: Vec<f64> = points.into_iter().filter(|&p| !intervals.iter().any(|&(a, b)| a <= p && p <= b)).collect();
        points.sort_by(f64::total_cmp);
        points.dedup();
        Ok(LambdaSet { intervals, points })
    }

    pub fn interval(a: f64, b: f64) -> Result<Self> {
        LambdaSet::new(vec![(a, b)], vec![])
    }

    pub fn point(l: f64) -> Result<Self> {
        LambdaSet::new(vec![], vec![l])
    }

    pub fn empty() -> Self {
        LambdaSet::default()
    }

    /// Preimage under `λ = 1/4 − ν²` in the parameter space `ν ∈ i[0,∞) ∪ [0,∞)`.
    pub fn to_nu(&self) -> PlaceSet {
        let mut imag = Vec::new();
        let mut real = Vec::new();
        let mut points = Vec::new();
        for &(a, b) in &self.intervals {
            if b >= 0.25 {
                imag.push(((a.max(0.25) - 0.25).sqrt(), (b - 0.25).sqrt()));
            }
            if a < 0.25 {
                let lo = (0.25 - b.min(0.25)).sqrt();
                real.push((lo, (0.25 - a).sqrt()));
            }
        }
        for &p in &self.points {
            if p < 0.25 {
                points.push((0.25 - p).sqrt());
            }
        }
        // A real interval starting at 0 is the same set as one starting at
        // any ε > 0 for every measure here; keep it as is.
        PlaceSet::new(imag, real, points).expect("preimage of a valid λ set is valid")
    }
}

/// A product set in `λ`-space with the parity vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaRegion {
    pub parity: Vec<Parity>,
    pub places: Vec<LambdaSet>,
}

impl LambdaRegion {
    pub fn new(parity: Vec<Parity>, places: Vec<LambdaSet>) -> Result<Self> {
        if parity.is_empty() || parity.len() != places.len() {
            return Err(Error::invalid(format!("{} parities for {} places", parity.len(), places.len())));
        }
        Ok(LambdaRegion { parity, places })
    }

    pub fn to_nu(&self) -> ProductRegion {
        ProductRegion { parity: self.parity.clone(), places: self.places.iter().map(LambdaSet::to_nu).collect() }
    }
}
