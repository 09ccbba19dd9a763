//! Haar sampling on the diagonal torus, Monte-Carlo distances to the
//! Poisson law, the far-from-Poisson sets, and linear flows.

mod flow;

pub use flow::{
    admissibility_report, flow_time_average, rn_time_fraction, AdmissibilityReport, BnSet,
    FlowAverage, FlowDirection, TorusBox, TorusSet, WholeTorus, WidthSample,
};

use crate::error::{invalid, Error, Result};
use crate::numeric::jackknife_mean;
use crate::spacing::{circle_locations, ks_distance, AtomicMeasure, ReferenceMeasure};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Blocks used for jackknife standard errors.
pub const JACKKNIFE_BLOCKS: usize = 20;

/// A point of the N-torus in phase units (angle / 2pi).
#[derive(Debug, Clone, PartialEq)]
pub struct TorusPoint {
    phases: Vec<f64>,
}

impl TorusPoint {
    pub fn new(phases: Vec<f64>) -> Result<Self> {
        if phases.len() < 2 {
            return Err(invalid("torus point needs at least 2 phases"));
        }
        if let Some(bad) = phases.iter().find(|p| !(**p >= 0.0 && **p < 1.0)) {
            return Err(invalid(format!("phase {bad} outside [0, 1)")));
        }
        Ok(Self { phases })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(vec![0.0; n])
    }

    pub fn equispaced(n: usize) -> Result<Self> {
        Self::new((0..n).map(|j| j as f64 / n as f64).collect())
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn dim(&self) -> usize {
        self.phases.len()
    }

    /// The point multiplied by the scalar `e^{2 pi i c}`.
    pub fn shifted(&self, c: f64) -> Self {
        Self { phases: self.phases.iter().map(|p| crate::numeric::frac(p + c)).collect() }
    }
}

/// Sampling parameters. `alpha` enters only the far-from-Poisson threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    pub seed: u64,
    pub samples: usize,
    pub alpha: f64,
}

impl Default for McConfig {
    fn default() -> Self {
        Self { seed: 0, samples: 1000, alpha: 4.0 / 3.0 }
    }
}

/// Monte-Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
}

/// Independent random stream for sample `index` under `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Haar-random torus point number `index` of the stream `seed`.
pub fn haar_sample(n: usize, seed: u64, index: u64) -> Result<TorusPoint> {
    if n < 2 {
        return Err(invalid("torus dimension must be >= 2"));
    }
    let mut rng = sample_rng(seed, index);
    TorusPoint::new((0..n).map(|_| rng.random::<f64>()).collect())
}

/// Wrapped spacing measure of the eigenangles `2 pi phases`.
pub fn spacing_of(a: &TorusPoint) -> AtomicMeasure {
    let mut sorted = a.phases.clone();
    sorted.sort_by(|x, y| x.total_cmp(y));
    AtomicMeasure::equal_weights(circle_locations(&sorted), sorted.len())
        .expect("torus gaps are non-negative")
}

/// KS distance of the spacing measure of `a` to the Poisson law.
pub fn ks_to_poisson(a: &TorusPoint) -> f64 {
    ks_distance(&spacing_of(a), &ReferenceMeasure::poisson())
}

/// Evaluates `stat` on `cfg.samples` Haar points in parallel and returns the
/// per-sample values in sample order.
pub fn mc_values<F>(n: usize, cfg: &McConfig, stat: F) -> Result<Vec<f64>>
where
    F: Fn(&TorusPoint) -> f64 + Sync,
{
    if n < 2 {
        return Err(invalid("torus dimension must be >= 2"));
    }
    Ok((0..cfg.samples as u64)
        .into_par_iter()
        .map(|i| stat(&haar_sample(n, cfg.seed, i).expect("validated dimension")))
        .collect())
}

/// Monte-Carlo mean of the KS distance to Poisson over the Haar torus.
pub fn mc_expected_ks(n: usize, cfg: &McConfig) -> Result<McEstimate> {
    if cfg.samples < 100 {
        return Err(invalid(format!("need >= 100 samples, got {}", cfg.samples)));
    }
    let values = mc_values(n, cfg, ks_to_poisson)?;
    let (estimate, std_error) = jackknife_mean(&values, JACKKNIFE_BLOCKS);
    Ok(McEstimate { estimate, std_error })
}

/// Distance level `e^{-(alpha/2) sqrt(ln n)}` above which a point is far from Poisson.
pub fn bn_threshold(n: usize, alpha: f64) -> f64 {
    (-(alpha / 2.0) * (n as f64).ln().sqrt()).exp()
}

pub fn bn_membership(a: &TorusPoint, alpha: f64) -> bool {
    ks_to_poisson(a) >= bn_threshold(a.dim(), alpha)
}

/// Monte-Carlo volume of the far-from-Poisson set.
pub fn bn_volume(n: usize, cfg: &McConfig) -> Result<McEstimate> {
    let alpha = cfg.alpha;
    let values = mc_values(n, cfg, |a| if bn_membership(a, alpha) { 1.0 } else { 0.0 })?;
    let (estimate, std_error) = jackknife_mean(&values, JACKKNIFE_BLOCKS);
    Ok(McEstimate { estimate, std_error })
}

/// Membership bits of the far-from-Poisson set on a cubical lattice,
/// evaluated at cell centers, row-major with the first coordinate slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct BnGrid {
    pub n: usize,
    pub resolution: usize,
    pub alpha: f64,
    pub cells: Vec<bool>,
}

impl BnGrid {
    pub fn index_of(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.resolution + i)
    }

    pub fn coords_of(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for slot in out.iter_mut().rev() {
            *slot = flat % self.resolution;
            flat /= self.resolution;
        }
        out
    }

    pub fn get(&self, idx: &[usize]) -> bool {
        self.cells[self.index_of(idx)]
    }

    pub fn member_fraction(&self) -> f64 {
        self.cells.iter().filter(|c| **c).count() as f64 / self.cells.len() as f64
    }

    /// True when the bitmask is unchanged by every shift along the diagonal.
    pub fn is_diagonal_shift_invariant(&self) -> bool {
        let r = self.resolution;
        (1..r).all(|s| {
            (0..self.cells.len()).all(|flat| {
                let shifted: Vec<usize> = self.coords_of(flat).iter().map(|i| (i + s) % r).collect();
                self.cells[flat] == self.get(&shifted)
            })
        })
    }

    /// Cells whose centers lie within half a cell of the hyperplane through
    /// `(1/2, ..., 1/2)` normal to the diagonal.
    pub fn diagonal_slice(&self) -> Vec<(Vec<usize>, bool)> {
        let r = self.resolution as f64;
        let target = self.n as f64 / 2.0;
        (0..self.cells.len())
            .filter_map(|flat| {
                let c = self.coords_of(flat);
                let sum: f64 = c.iter().map(|&i| (i as f64 + 0.5) / r).sum();
                ((sum - target).abs() <= 0.5 / r).then(|| (c, self.cells[flat]))
            })
            .collect()
    }
}

/// Spacing measure of lattice cell centers, computed from integer index gaps
/// so that it depends only on the cyclic gap pattern.
fn lattice_spacing(idx: &[usize], resolution: usize) -> AtomicMeasure {
    let mut s = idx.to_vec();
    s.sort_unstable();
    let n = s.len();
    let scale = n as f64 / resolution as f64;
    let mut locs: Vec<f64> = s.windows(2).map(|w| scale * (w[1] - w[0]) as f64).collect();
    locs.push(scale * (resolution - s[n - 1] + s[0]) as f64);
    AtomicMeasure::equal_weights(locs, n).expect("non-negative gaps")
}

pub fn bn_grid(n: usize, resolution: usize, alpha: f64) -> Result<BnGrid> {
    if !(n == 3 || n == 4) {
        return Err(Error::Unsupported(format!("lattice scans support N in {{3, 4}}, got {n}")));
    }
    if resolution < 4 {
        return Err(invalid(format!("resolution {resolution} must be >= 4")));
    }
    let threshold = bn_threshold(n, alpha);
    let poisson = ReferenceMeasure::poisson();
    let total = resolution.pow(n as u32);
    let proto = BnGrid { n, resolution, alpha, cells: Vec::new() };
    let cells = (0..total)
        .into_par_iter()
        .map(|flat| {
            let idx = proto.coords_of(flat);
            ks_distance(&lattice_spacing(&idx, resolution), &poisson) >= threshold
        })
        .collect();
    Ok(BnGrid { cells, ..proto })
}
