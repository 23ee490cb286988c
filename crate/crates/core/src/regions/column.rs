use std::sync::Arc;

use super::chart::{chart_antiderivative, chart_weight};
use crate::measures::{MeasureResult, Method};
use crate::quadrature::{gk15, integrate_panels, QuadOptions};
use crate::{Error, Result};

type Edge = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A planar region in chart coordinates given column by column:
/// `{(x, y) : x ∈ [x0, x1], lo(x) ≤ y ≤ hi(x)}`.
///
/// Both edges must be unimodal on `[x0, x1]` with their turning point (if
/// any) at `turn`: then extrema of an edge over a window are attained at
/// the window's ends or at the clamped turning point, which makes
/// fattening and shrinking exact. `breaks` lists abscissae where the
/// edges are not smooth; quadrature panels are split there.
#[derive(Clone)]
pub struct ColumnRegion {
    pub x0: f64,
    pub x1: f64,
    lo: Edge,
    hi: Edge,
    turn: Option<f64>,
    breaks: Vec<f64>,
    floor: f64,
}

impl std::fmt::Debug for ColumnRegion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ColumnRegion").field("x0", &self.x0).field("x1", &self.x1).field("turn", &self.turn).finish_non_exhaustive()
    }
}

impl ColumnRegion {
    /// `floor` is the lower end of the chart range (`−ν_θ`); fattened
    /// regions are clipped to it.
    pub fn new<L, H>(x0: f64, x1: f64, lo: L, hi: H, turn: Option<f64>, floor: f64) -> Result<Self>
    where
        L: Fn(f64) -> f64 + Send + Sync + 'static,
        H: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(x0.is_finite() && x1.is_finite() && x0 <= x1) {
            return Err(Error::invalid(format!("column range [{x0}, {x1}] is not a bounded interval")));
        }
        Ok(ColumnRegion { x0, x1, lo: Arc::new(lo), hi: Arc::new(hi), turn, breaks: Vec::new(), floor })
    }

    pub fn lo(&self, x: f64) -> f64 {
        (self.lo)(x)
    }

    pub fn hi(&self, x: f64) -> f64 {
        (self.hi)(x)
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        self.x0 <= x && x <= self.x1 && self.lo(x) <= y && y <= self.hi(x)
    }

    /// Bounding box `[x0, x1] × [min lo, max hi]`.
    pub fn bounding_box(&self) -> [(f64, f64); 2] {
        let (lo_min, _) = self.extrema(&self.lo, self.x0, self.x1);
        let (_, hi_max) = self.extrema(&self.hi, self.x0, self.x1);
        [(self.x0, self.x1), (lo_min, hi_max)]
    }

    /// `(min, max)` of an edge over `[u, v] ∩ [x0, x1]`.
    fn extrema(&self, edge: &Edge, u: f64, v: f64) -> (f64, f64) {
        let u = u.max(self.x0);
        let v = v.min(self.x1);
        let mut lo = edge(u).min(edge(v));
        let mut hi = edge(u).max(edge(v));
        if let Some(t) = self.turn {
            let m = edge(t.clamp(u, v));
            lo = lo.min(m);
            hi = hi.max(m);
        }
        (lo, hi)
    }

    fn panels(&self) -> Vec<f64> {
        let mut pts = vec![self.x0, self.x1];
        for &b in self.breaks.iter().chain(self.turn.as_ref()).chain(std::iter::once(&1.0)) {
            if self.x0 < b && b < self.x1 {
                pts.push(b);
            }
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    /// `∫ w(x) (A(hi(x)) − A(lo(x)))₊ dx`: a product measure with density
    /// `w` in `x` and antiderivative `A` in `y`, integrated column by
    /// column with the inner integral in closed form.
    pub fn integrate_weighted<W, A>(&self, w: W, anti: A, opts: QuadOptions) -> Result<MeasureResult>
    where
        W: Fn(f64) -> f64,
        A: Fn(f64) -> f64,
    {
        if self.x0 == self.x1 {
            return Ok(MeasureResult::zero());
        }
        let f = |x: f64| {
            let (l, h) = (self.lo(x), self.hi(x));
            if h <= l {
                0.0
            } else {
                w(x) * (anti(h) - anti(l))
            }
        };
        let q = integrate_panels(f, &self.panels(), opts);
        if !q.converged {
            return Err(Error::precision(format!("column quadrature did not converge (error {:e})", q.error)));
        }
        Ok(MeasureResult { value: q.value, error: q.error, method: Method::Quadrature, detail: q.evaluations as u64 })
    }

    /// `ν̃_b` of the region.
    pub fn nv_b(&self, b: f64, opts: QuadOptions) -> Result<MeasureResult> {
        self.integrate_weighted(|x| chart_weight(b, x), |y| chart_antiderivative(b, y), opts)
    }

    /// The points within sup-distance `c ≥ 0` of the region (clipped to the
    /// chart floor), or for `c < 0` the points whose `|c|`-cube lies inside.
    /// `None` if the result is empty.
    pub fn shifted(&self, c: f64) -> Option<ColumnRegion> {
        if c == 0.0 {
            return Some(self.clone());
        }
        let base = self.clone();
        let (x0, x1) = if c > 0.0 { ((self.x0 - c).max(self.floor), self.x1 + c) } else { (self.x0 - c, self.x1 + c) };
        if x0 > x1 {
            return None;
        }
        let r = c.abs();
        let floor = self.floor;
        let (lo, hi): (Edge, Edge) = if c > 0.0 {
            let b1 = base.clone();
            let b2 = base.clone();
            (
                Arc::new(move |x| (b1.extrema(&b1.lo, x - r, x + r).0 - r).max(floor)),
                Arc::new(move |x| b2.extrema(&b2.hi, x - r, x + r).1 + r),
            )
        } else {
            let b1 = base.clone();
            let b2 = base.clone();
            (Arc::new(move |x| b1.extrema(&b1.lo, x - r, x + r).1 + r), Arc::new(move |x| b2.extrema(&b2.hi, x - r, x + r).0 - r))
        };
        let mut breaks = vec![self.x0 - r, self.x0 + r, self.x1 - r, self.x1 + r];
        if let Some(t) = self.turn {
            breaks.extend([t - r, t + r]);
        }
        breaks.extend(self.breaks.iter().flat_map(|&b| [b - r, b + r]));
        Some(ColumnRegion { x0, x1, lo, hi, turn: None, breaks, floor })
    }

    /// Lebesgue measure of the intersection with the square
    /// `[cx − h, cx + h] × [cy − h, cy + h]`.
    pub fn square_overlap(&self, cx: f64, cy: f64, h: f64) -> f64 {
        let u = (cx - h).max(self.x0);
        let v = (cx + h).min(self.x1);
        if u >= v {
            return 0.0;
        }
        let f = |x: f64| ((cy + h).min(self.hi(x)) - (cy - h).max(self.lo(x))).max(0.0);
        let mut pts = vec![u, v];
        for &b in self.breaks.iter().chain(self.turn.as_ref()) {
            if u < b && b < v {
                pts.push(b);
            }
        }
        pts.sort_by(f64::total_cmp);
        // The integrand is piecewise smooth with kinks where an edge crosses
        // the square; a few fixed panels per piece are ample for a ratio.
        let mut total = 0.0;
        for w in pts.windows(2) {
            let n = 16;
            let step = (w[1] - w[0]) / n as f64;
            for k in 0..n {
                let a = w[0] + k as f64 * step;
                total += gk15(&f, a, a + step).0;
            }
        }
        total
    }
}
