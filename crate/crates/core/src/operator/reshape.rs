use crate::error::{invalid, Result};
use crate::numeric::frac;
use crate::spacing::{ks_distance, nn_measure, Normalization, OrderedTuple, ReferenceMeasure};
use crate::torus::{spacing_of, TorusPoint};
use std::f64::consts::TAU;

/// Phases `frac(e_j t)` of `exp(2 pi i t H)` for a spectrum `e`.
pub fn exp_flow_angles(spectrum: &[f64], t: f64) -> Result<TorusPoint> {
    if spectrum.iter().any(|e| !e.is_finite()) || !t.is_finite() {
        return Err(invalid("spectrum and time must be finite"));
    }
    TorusPoint::new(spectrum.iter().map(|e| frac(e * t)).collect())
}

/// Mass that the wrapped spacing measure of `exp_flow_angles(spectrum, t)`
/// gives to `[0, 1/(2 pi)]`.
pub fn collapse_mass(spectrum: &[f64], t: f64) -> Result<f64> {
    Ok(spacing_of(&exp_flow_angles(spectrum, t)?).cdf(1.0 / TAU))
}

/// Which preconditions [`spectral_reshape`] enforces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReshapeChecks {
    /// Each target tuple contains the previous one.
    pub nested: bool,
    /// `N_{k+1} >= k (N_k + 2)` with `k` counted from 1.
    pub growth: bool,
}

impl Default for ReshapeChecks {
    fn default() -> Self {
        Self { nested: true, growth: true }
    }
}

/// Per-representation outcome of a reshaping.
#[derive(Debug, Clone, PartialEq)]
pub struct ReshapeLevel {
    pub size: usize,
    /// Spacing distance of the reshaped spectrum to the reference.
    pub ks_to_reference: Option<f64>,
    /// `(N_{k-1} + 2) / N_k`, from the second level on.
    pub bound: Option<f64>,
}

/// Finite graph of the reshaping function and level diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct ReshapeResult {
    /// Pairs `(x, f(x))` sorted by `x`, over the union of all spectra.
    pub graph: Vec<(f64, f64)>,
    pub reshaped: Vec<OrderedTuple>,
    pub levels: Vec<ReshapeLevel>,
}

impl ReshapeResult {
    /// Value of the reshaping function at a spectral point.
    pub fn apply(&self, x: f64) -> Option<f64> {
        self.graph
            .binary_search_by(|(a, _)| a.total_cmp(&x))
            .ok()
            .map(|i| self.graph[i].1)
    }
}

/// Sends the sorted spectrum of each representation onto the sorted target
/// tuple of the same size.
///
/// Spectra must be simple and pairwise disjoint, so a single function on
/// their union realizes all assignments at once.
pub fn spectral_reshape(
    spectra: &[Vec<f64>],
    targets: &[Vec<f64>],
    reference: Option<&ReferenceMeasure>,
    checks: ReshapeChecks,
) -> Result<ReshapeResult> {
    if spectra.len() != targets.len() || spectra.is_empty() {
        return Err(invalid("need one target tuple per spectrum"));
    }
    let mut graph: Vec<(f64, f64)> = Vec::new();
    let mut reshaped = Vec::with_capacity(spectra.len());
    let mut levels = Vec::with_capacity(spectra.len());
    for (k, (spec, target)) in spectra.iter().zip(targets).enumerate() {
        if spec.len() != target.len() {
            return Err(invalid(format!("level {k}: spectrum and target sizes differ")));
        }
        let mut s = spec.clone();
        s.sort_by(|a, b| a.total_cmp(b));
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid(format!("level {k}: spectrum is not simple")));
        }
        let t = OrderedTuple::new(target.clone())?;
        graph.extend(s.iter().copied().zip(t.values().iter().copied()));
        let ks = reference.map(|r| ks_distance(&nn_measure(&t, Normalization::NOverRange), r));
        let bound = (k > 0).then(|| (spectra[k - 1].len() as f64 + 2.0) / spec.len() as f64);
        levels.push(ReshapeLevel { size: spec.len(), ks_to_reference: ks, bound });
        reshaped.push(t);
    }
    graph.sort_by(|a, b| a.0.total_cmp(&b.0));
    if graph.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(invalid("spectra of different representations overlap"));
    }
    if checks.nested {
        for (k, w) in reshaped.windows(2).enumerate() {
            let outer = w[1].values();
            if !w[0].values().iter().all(|x| outer.contains(x)) {
                return Err(invalid(format!("target {k} is not contained in target {}", k + 1)));
            }
        }
    }
    if checks.growth {
        for (k, w) in spectra.windows(2).enumerate() {
            let need = (k + 1) * (w[0].len() + 2);
            if w[1].len() < need {
                return Err(invalid(format!(
                    "size {} at level {} is below the required {need}",
                    w[1].len(),
                    k + 1
                )));
            }
        }
    }
    Ok(ReshapeResult { graph, reshaped, levels })
}
