use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{MeasureResult, Method};
use crate::{Error, Result};

/// Samples per batch. Batch `k` draws from ChaCha8 stream `k` of the seed,
/// so the estimate depends only on `(seed, n_samples)`, never on the
/// number of threads.
pub const MC_BATCH: u64 = 1 << 14;

/// Monte-Carlo estimate of `∫_R w(x) dx` for a region `R` inside the box
/// `bbox = ∏[lo_i, hi_i]`, with uniform sampling on the box.
///
/// The reported error is three standard errors.
pub fn monte_carlo_measure<C, W>(bbox: &[(f64, f64)], contains: C, weight: W, n_samples: u64, seed: u64) -> Result<MeasureResult>
where
    C: Fn(&[f64]) -> bool + Sync,
    W: Fn(&[f64]) -> f64 + Sync,
{
    if bbox.is_empty() {
        return Err(Error::invalid("bounding box has no coordinates"));
    }
    for &(lo, hi) in bbox {
        if !(lo.is_finite() && hi.is_finite() && hi > lo) {
            return Err(Error::invalid(format!("degenerate bounding-box side [{lo}, {hi}]")));
        }
    }
    if n_samples < 2 {
        return Err(Error::invalid("Monte Carlo needs at least two samples"));
    }
    let volume: f64 = bbox.iter().map(|(lo, hi)| hi - lo).product();
    let batches = n_samples.div_ceil(MC_BATCH);
    let sums: Vec<(f64, f64)> = (0..batches)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let count = MC_BATCH.min(n_samples - k * MC_BATCH);
            let mut x = vec![0.0; bbox.len()];
            let (mut s1, mut s2) = (0.0, 0.0);
            for _ in 0..count {
                for (xi, &(lo, hi)) in x.iter_mut().zip(bbox) {
                    *xi = lo + (hi - lo) * rng.random::<f64>();
                }
                if contains(&x) {
                    let w = weight(&x);
                    s1 += w;
                    s2 += w * w;
                }
            }
            (s1, s2)
        })
        .collect();
    let (s1, s2) = sums.iter().fold((0.0, 0.0), |acc, s| (acc.0 + s.0, acc.1 + s.1));
    let n = n_samples as f64;
    let mean = s1 / n;
    let var = ((s2 / n - mean * mean) * n / (n - 1.0)).max(0.0);
    Ok(MeasureResult { value: volume * mean, error: 3.0 * volume * (var / n).sqrt(), method: Method::MonteCarlo, detail: n_samples })
}
