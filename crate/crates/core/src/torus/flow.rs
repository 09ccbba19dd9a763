use super::{bn_membership, TorusPoint};
use crate::error::{invalid, Result};
use crate::numeric::frac;
use rayon::prelude::*;

/// Direction of the linear flow `y -> y + t x mod 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowDirection {
    x: Vec<f64>,
}

impl FlowDirection {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        if x.is_empty() || x.iter().any(|v| !v.is_finite()) {
            return Err(invalid("flow direction needs finite coordinates"));
        }
        Ok(Self { x })
    }

    /// Direction with all coordinates in `(0, 1)`, as used for the standard flow.
    pub fn unit_cube(x: Vec<f64>) -> Result<Self> {
        if let Some(bad) = x.iter().find(|v| !(**v > 0.0 && **v < 1.0)) {
            return Err(invalid(format!("coordinate {bad} outside (0, 1)")));
        }
        Self::new(x)
    }

    pub fn coords(&self) -> &[f64] {
        &self.x
    }

    /// Phases of the flow started at the origin, at time `t`.
    pub fn phases_at(&self, t: f64, out: &mut Vec<f64>) {
        out.clear();
        out.extend(self.x.iter().map(|x| frac(x * t)));
    }
}

/// A measurable subset of the torus, given by phase vectors.
pub trait TorusSet: Sync {
    fn contains(&self, phases: &[f64]) -> bool;

    /// Haar volume when known in closed form.
    fn volume(&self) -> Option<f64> {
        None
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct WholeTorus;

impl TorusSet for WholeTorus {
    fn contains(&self, _: &[f64]) -> bool {
        true
    }

    fn volume(&self) -> Option<f64> {
        Some(1.0)
    }
}

/// Product of half-open intervals `[lo_j, hi_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusBox {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl TorusBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(invalid("box bounds must have equal non-zero length"));
        }
        if lo.iter().zip(&hi).any(|(l, h)| !(0.0 <= *l && l <= h && *h <= 1.0)) {
            return Err(invalid("box bounds must satisfy 0 <= lo <= hi <= 1"));
        }
        Ok(Self { lo, hi })
    }

    pub fn cube(dim: usize, side: f64) -> Result<Self> {
        Self::new(vec![0.0; dim], vec![side; dim])
    }
}

impl TorusSet for TorusBox {
    fn contains(&self, phases: &[f64]) -> bool {
        phases.len() == self.lo.len()
            && phases.iter().zip(self.lo.iter().zip(&self.hi)).all(|(p, (l, h))| l <= p && p < h)
    }

    fn volume(&self) -> Option<f64> {
        Some(self.lo.iter().zip(&self.hi).map(|(l, h)| h - l).product())
    }
}

/// The far-from-Poisson set for a given `alpha`.
#[derive(Debug, Clone, Copy)]
pub struct BnSet {
    pub alpha: f64,
}

impl TorusSet for BnSet {
    fn contains(&self, phases: &[f64]) -> bool {
        TorusPoint::new(phases.to_vec()).map(|a| bn_membership(&a, self.alpha)).unwrap_or(false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowAverage {
    pub average: f64,
    pub volume: Option<f64>,
}

const CHUNK: usize = 1 << 14;

/// Counts midpoint times `tau_i = -T + (i + 1/2) 2T/steps` whose flow point
/// lies in `set`. Counts are integers, so the result does not depend on the
/// chunking.
fn count_hits<F>(horizon: f64, steps: usize, hit: F) -> usize
where
    F: Fn(f64, &mut Vec<f64>) -> bool + Sync,
{
    let dt = 2.0 * horizon / steps as f64;
    let chunks = steps.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut buf = Vec::new();
            (c * CHUNK..((c + 1) * CHUNK).min(steps))
                .filter(|&i| hit(-horizon + (i as f64 + 0.5) * dt, &mut buf))
                .count()
        })
        .sum()
}

fn check_time_grid(horizon: f64, steps: usize) -> Result<()> {
    if steps < 10 {
        return Err(invalid(format!("need >= 10 time steps, got {steps}")));
    }
    if !(horizon > 0.0) || !horizon.is_finite() {
        return Err(invalid(format!("horizon {horizon} must be positive")));
    }
    Ok(())
}

/// Riemann-sum time average of the indicator of `set` along the flow from
/// the origin over `[-T, T]`.
pub fn flow_time_average(
    x: &FlowDirection,
    set: &dyn TorusSet,
    horizon: f64,
    steps: usize,
) -> Result<FlowAverage> {
    check_time_grid(horizon, steps)?;
    let hits = count_hits(horizon, steps, |t, buf| {
        x.phases_at(t, buf);
        set.contains(buf)
    });
    Ok(FlowAverage { average: hits as f64 / steps as f64, volume: set.volume() })
}

/// Fraction of sampled times at which the phases `frac(e_j t)` lie in the
/// far-from-Poisson set.
pub fn rn_time_fraction(eigenvalues: &[f64], alpha: f64, horizon: f64, steps: usize) -> Result<f64> {
    check_time_grid(horizon, steps)?;
    if eigenvalues.len() < 2 {
        return Err(invalid("need at least 2 eigenvalues"));
    }
    let dir = FlowDirection::new(eigenvalues.to_vec())?;
    let set = BnSet { alpha };
    let hits = count_hits(horizon, steps, |t, buf| {
        dir.phases_at(t, buf);
        set.contains(buf)
    });
    Ok(hits as f64 / steps as f64)
}

/// Measured Birkhoff average against the set volume for one representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WidthSample {
    pub volume: f64,
    pub time_average: f64,
    pub horizon: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibilityReport {
    pub alpha: f64,
    /// `e^{-(alpha/2) sqrt(ln d_k)}` per k.
    pub terms: Vec<f64>,
    pub partial_sums: Vec<f64>,
    /// `k^2 * term_k` per k; at most 1 exactly when `ln d_k >= (2 ln k / alpha)^2`.
    pub weighted_terms: Vec<f64>,
    pub growth_admissible: bool,
    pub width_ok: Vec<bool>,
    /// First k (1-based) from which every width check passes.
    pub k0: Option<usize>,
    /// Largest horizon used from `k0` on.
    pub t0: Option<f64>,
}

/// Growth and width diagnostics for a sequence of representation dimensions.
///
/// Dimensions are passed as natural logarithms since the interesting
/// sequences overflow `f64` almost immediately. Growth is declared
/// admissible when `k^2 * term_k <= 1` over the second half of the supplied
/// range, which implies summability of the tail.
pub fn admissibility_report(
    ln_dims: &[f64],
    alpha: f64,
    widths: &[WidthSample],
    epsilon: f64,
) -> Result<AdmissibilityReport> {
    if ln_dims.is_empty() {
        return Err(invalid("need at least one dimension"));
    }
    if ln_dims.windows(2).any(|w| !(w[1] > w[0])) || ln_dims[0] < 0.0 {
        return Err(invalid("dimensions must be strictly increasing and >= 1"));
    }
    if !(alpha > 0.0) {
        return Err(invalid("alpha must be positive"));
    }
    let terms: Vec<f64> = ln_dims.iter().map(|l| (-(alpha / 2.0) * l.sqrt()).exp()).collect();
    let mut acc = 0.0;
    let partial_sums = terms
        .iter()
        .map(|t| {
            acc += t;
            acc
        })
        .collect();
    let weighted_terms: Vec<f64> =
        terms.iter().enumerate().map(|(i, t)| ((i + 1) as f64).powi(2) * t).collect();
    let half = weighted_terms.len() / 2;
    let growth_admissible = weighted_terms[half..].iter().all(|w| *w <= 1.0);
    let width_ok: Vec<bool> =
        widths.iter().map(|w| (w.volume - w.time_average).abs() < epsilon).collect();
    let k0 = match width_ok.iter().rposition(|ok| !ok) {
        None if !width_ok.is_empty() => Some(1),
        None => None,
        Some(last_bad) if last_bad + 1 < width_ok.len() => Some(last_bad + 2),
        Some(_) => None,
    };
    let t0 = k0.map(|k| widths[k - 1..].iter().map(|w| w.horizon).fold(0.0, f64::max));
    Ok(AdmissibilityReport {
        alpha,
        terms,
        partial_sums,
        weighted_terms,
        growth_admissible,
        width_ok,
        k0,
        t0,
    })
}
