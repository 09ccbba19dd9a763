//! Nearest-neighbor spacing measures, distances between them, and
//! quantile-built spectra that approximate a prescribed spacing law.

mod approx;
mod grid;
mod measure;

pub use approx::approx_tuple;
pub use grid::{mgrid_build, mgrid_ks, MGrid};
pub use measure::{ks_distance, Atom, AtomicMeasure, Law, ReferenceKind, ReferenceMeasure};

use crate::error::{invalid, Result};
use std::f64::consts::TAU;

/// A non-decreasing sequence of at least two reals.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedTuple {
    values: Vec<f64>,
}

impl OrderedTuple {
    /// Sorts (stably) and validates the input.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(invalid(format!("tuple needs at least 2 values, got {}", values.len())));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(invalid("tuple values must be finite"));
        }
        values.sort_by(|a, b| a.total_cmp(b));
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> f64 {
        self.values[0]
    }

    pub fn last(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn range(&self) -> f64 {
        self.last() - self.first()
    }

    /// Consecutive differences `x_{j+1} - x_j`.
    pub fn gaps(&self) -> Vec<f64> {
        self.values.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// How gaps of a real spectrum are scaled and weighted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Location `N/range * gap`, mass `1/N`.
    #[default]
    NOverRange,
    /// Location `N/range * gap`, mass `1/(N-1)`.
    UnitMass,
    /// Location `(N-1)/range * gap`, mass `1/(N-1)`.
    UnitMassRescaled,
}

/// Spacing measure of a real spectrum.
///
/// A spectrum with all values equal yields a single atom at 0 carrying the
/// whole mass of the chosen normalization.
pub fn nn_measure(x: &OrderedTuple, normalization: Normalization) -> AtomicMeasure {
    let n = x.len();
    let (scale, denom) = match normalization {
        Normalization::NOverRange => (n as f64, n),
        Normalization::UnitMass => (n as f64, n - 1),
        Normalization::UnitMassRescaled => ((n - 1) as f64, n - 1),
    };
    let range = x.range();
    let locations: Vec<f64> = if range == 0.0 {
        vec![0.0; n - 1]
    } else {
        x.gaps().iter().map(|g| scale * (g / range)).collect()
    };
    AtomicMeasure::equal_weights(locations, denom).expect("gaps are finite and non-negative")
}

fn check_angles(x: &OrderedTuple) -> Result<()> {
    match x.values().iter().find(|v| !(**v >= 0.0 && **v < TAU)) {
        Some(bad) => Err(invalid(format!("angle {bad} outside [0, 2pi)"))),
        None => Ok(()),
    }
}

/// Scaled gaps of sorted phases in `[0, 1)`; the last entry is the wrapped gap.
pub(crate) fn circle_locations(sorted_phases: &[f64]) -> Vec<f64> {
    let n = sorted_phases.len();
    let nf = n as f64;
    let mut out: Vec<f64> = sorted_phases.windows(2).map(|w| nf * (w[1] - w[0])).collect();
    out.push(nf * (1.0 - sorted_phases[n - 1] + sorted_phases[0]));
    out
}

/// Spacing measure of eigenangles on the circle, including the wrapped gap.
pub fn nn_measure_circle(x: &OrderedTuple) -> Result<AtomicMeasure> {
    check_angles(x)?;
    let phases: Vec<f64> = x.values().iter().map(|v| v / TAU).collect();
    AtomicMeasure::equal_weights(circle_locations(&phases), x.len())
}

/// The circle spacing measure without the wrapped gap.
pub fn nn_measure_naive(x: &OrderedTuple) -> Result<AtomicMeasure> {
    check_angles(x)?;
    let phases: Vec<f64> = x.values().iter().map(|v| v / TAU).collect();
    let mut locs = circle_locations(&phases);
    locs.pop();
    AtomicMeasure::equal_weights(locs, x.len())
}

/// One histogram bar `[left, right)` with its density height.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramBin {
    pub left: f64,
    pub right: f64,
    pub density: f64,
}

/// Density histogram of the gaps rescaled by `(N-1)/range`.
///
/// Bins start at 0 and run contiguously up to the last occupied bin; the
/// total area is one.
pub fn histogram(x: &OrderedTuple, bin_width: f64) -> Result<Vec<HistogramBin>> {
    if !(bin_width > 0.0) || !bin_width.is_finite() {
        return Err(invalid(format!("bin width {bin_width} must be positive")));
    }
    let range = x.range();
    if range == 0.0 {
        return Ok(vec![HistogramBin { left: 0.0, right: bin_width, density: 1.0 / bin_width }]);
    }
    let scale = (x.len() - 1) as f64;
    let idx: Vec<usize> = x
        .gaps()
        .iter()
        .map(|g| (scale * (g / range) / bin_width).floor() as usize)
        .collect();
    let bins = idx.iter().copied().max().unwrap_or(0) + 1;
    let mut counts = vec![0usize; bins];
    for i in idx {
        counts[i] += 1;
    }
    let norm = scale * bin_width;
    Ok(counts
        .iter()
        .enumerate()
        .map(|(i, &c)| HistogramBin {
            left: i as f64 * bin_width,
            right: (i + 1) as f64 * bin_width,
            density: c as f64 / norm,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn tuple(v: &[f64]) -> OrderedTuple {
        OrderedTuple::new(v.to_vec()).unwrap()
    }

    #[test]
    fn tuple_validation() {
        assert!(OrderedTuple::new(vec![1.0]).is_err());
        assert!(OrderedTuple::new(vec![1.0, f64::NAN]).is_err());
        assert_eq!(tuple(&[3.0, 1.0, 2.0]).values(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn degenerate_tuple() {
        let m = nn_measure(&tuple(&[2.0; 4]), Normalization::NOverRange);
        assert_eq!(m.atoms(), &[Atom { location: 0.0, mass: 0.75 }]);
    }

    #[test]
    fn equal_spacings() {
        let m = nn_measure(&tuple(&[0.0, 1.0, 2.0, 3.0]), Normalization::NOverRange);
        assert_eq!(m.atoms().len(), 1);
        assert!((m.atoms()[0].location - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(m.total_mass(), 0.75);
    }

    #[test]
    fn uneven_spacings() {
        let m = nn_measure(&tuple(&[0.0, 1.0, 3.0, 6.0]), Normalization::NOverRange);
        let locs: Vec<f64> = m.atoms().iter().map(|a| a.location).collect();
        for (got, want) in locs.iter().zip([2.0 / 3.0, 4.0 / 3.0, 2.0]) {
            assert!((got - want).abs() < 1e-15);
        }
        assert!((m.expectation() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn circle_identity_and_rigid() {
        let m = nn_measure_circle(&tuple(&[0.0; 5])).unwrap();
        assert_eq!(m.atoms(), &[Atom { location: 0.0, mass: 0.8 }, Atom { location: 5.0, mass: 0.2 }]);
        let r = nn_measure_circle(&tuple(&[0.0, PI / 2.0, PI, 1.5 * PI])).unwrap();
        for a in r.atoms() {
            assert!((a.location - 1.0).abs() < 1e-14);
        }
        assert_eq!(r.total_mass(), 1.0);
        assert!(nn_measure_circle(&tuple(&[0.0, 7.0])).is_err());
    }

    #[test]
    fn naive_drops_wrap() {
        let m = nn_measure_naive(&tuple(&[0.0; 5])).unwrap();
        assert_eq!(m.atoms(), &[Atom { location: 0.0, mass: 0.8 }]);
        let r = nn_measure_naive(&tuple(&[0.0, PI / 2.0, PI, 1.5 * PI])).unwrap();
        assert!((r.total_mass() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn identity_distance_to_poisson() {
        for n in [3usize, 10, 100] {
            let m = nn_measure_circle(&tuple(&vec![0.0; n])).unwrap();
            let d = ks_distance(&m, &ReferenceMeasure::poisson());
            assert_eq!(d, (n - 1) as f64 / n as f64);
        }
    }

    #[test]
    fn histogram_rigid() {
        let x: Vec<f64> = (0..11).map(|i| i as f64).collect();
        let h = histogram(&tuple(&x), 0.5).unwrap();
        assert_eq!(h.len(), 3);
        assert_eq!(h[2], HistogramBin { left: 1.0, right: 1.5, density: 2.0 });
        assert!(histogram(&tuple(&x), 0.0).is_err());
    }

    #[test]
    fn histogram_degenerate() {
        let h = histogram(&tuple(&[1.0, 1.0, 1.0]), 0.25).unwrap();
        assert_eq!(h, vec![HistogramBin { left: 0.0, right: 0.25, density: 4.0 }]);
    }
}
