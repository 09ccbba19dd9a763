use crate::error::{invalid, Error, Result};

/// A single point mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub location: f64,
    pub mass: f64,
}

/// Finitely many point masses on the non-negative reals.
///
/// Atoms are kept sorted by location with equal locations merged, so the
/// CDF is a right-continuous step function that can be evaluated by binary
/// search.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicMeasure {
    atoms: Vec<Atom>,
    cumulative: Vec<f64>,
}

impl AtomicMeasure {
    /// Builds a measure from arbitrary `(location, mass)` pairs.
    pub fn from_atoms(pairs: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut raw: Vec<(f64, f64)> = pairs.into_iter().collect();
        for &(loc, mass) in &raw {
            if !loc.is_finite() || loc < 0.0 {
                return Err(invalid(format!("atom location {loc} must be finite and >= 0")));
            }
            if !(mass > 0.0) || !mass.is_finite() {
                return Err(invalid(format!("atom mass {mass} must be positive")));
            }
        }
        if raw.is_empty() {
            return Err(invalid("a measure needs at least one atom"));
        }
        raw.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut atoms: Vec<Atom> = Vec::with_capacity(raw.len());
        for (location, mass) in raw {
            match atoms.last_mut() {
                Some(last) if last.location == location => last.mass += mass,
                _ => atoms.push(Atom { location, mass }),
            }
        }
        let mut acc = 0.0;
        let cumulative = atoms
            .iter()
            .map(|a| {
                acc += a.mass;
                acc
            })
            .collect::<Vec<_>>();
        if acc > 1.0 + 1e-12 {
            return Err(invalid(format!("total mass {acc} exceeds 1")));
        }
        Ok(Self { atoms, cumulative })
    }

    /// Builds a measure where each location carries mass `1/denominator`.
    ///
    /// Cumulative masses are computed as `count / denominator`, so a merged
    /// atom of `k` equal locations has mass exactly `k / denominator` up to a
    /// single rounding.
    pub fn equal_weights(mut locations: Vec<f64>, denominator: usize) -> Result<Self> {
        if locations.is_empty() || locations.len() > denominator {
            return Err(invalid("need 1..=denominator locations"));
        }
        if let Some(bad) = locations.iter().find(|l| !l.is_finite() || **l < 0.0) {
            return Err(invalid(format!("atom location {bad} must be finite and >= 0")));
        }
        locations.sort_by(|a, b| a.total_cmp(b));
        let d = denominator as f64;
        let mut atoms: Vec<Atom> = Vec::new();
        let mut counts: Vec<usize> = Vec::new();
        for loc in locations {
            match atoms.last() {
                Some(last) if last.location == loc => *counts.last_mut().unwrap() += 1,
                _ => {
                    atoms.push(Atom { location: loc, mass: 0.0 });
                    counts.push(1);
                }
            }
        }
        let mut run = 0usize;
        let mut cumulative = Vec::with_capacity(atoms.len());
        for (atom, &c) in atoms.iter_mut().zip(&counts) {
            atom.mass = c as f64 / d;
            run += c;
            cumulative.push(run as f64 / d);
        }
        Ok(Self { atoms, cumulative })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        *self.cumulative.last().expect("non-empty by construction")
    }

    /// `F(t) = mu((-inf, t])`.
    pub fn cdf(&self, t: f64) -> f64 {
        let idx = self.atoms.partition_point(|a| a.location <= t);
        if idx == 0 {
            0.0
        } else {
            self.cumulative[idx - 1]
        }
    }

    /// `F(t-) = mu((-inf, t))`.
    pub fn cdf_left(&self, t: f64) -> f64 {
        let idx = self.atoms.partition_point(|a| a.location < t);
        if idx == 0 {
            0.0
        } else {
            self.cumulative[idx - 1]
        }
    }

    /// First moment `sum location * mass`.
    pub fn expectation(&self) -> f64 {
        let terms: Vec<f64> = self.atoms.iter().map(|a| a.location * a.mass).collect();
        crate::numeric::pairwise_sum(&terms)
    }

    /// Mass carried by the atom at exactly zero.
    pub fn mass_at_zero(&self) -> f64 {
        match self.atoms.first() {
            Some(a) if a.location == 0.0 => a.mass,
            _ => 0.0,
        }
    }
}

/// The family of a continuous reference law.
#[derive(Debug, Clone, PartialEq)]
pub enum ReferenceKind {
    /// Density `e^{-x}` on `[0, inf)`.
    Poisson,
    /// A piecewise-linear density on a finite grid starting at 0,
    /// normalized to total mass one.
    Tabulated {
        xs: Vec<f64>,
        density: Vec<f64>,
        cdf: Vec<f64>,
    },
}

/// Continuous reference measure on the non-negative reals.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceMeasure {
    kind: ReferenceKind,
}

impl ReferenceMeasure {
    pub fn poisson() -> Self {
        Self { kind: ReferenceKind::Poisson }
    }

    /// Piecewise-linear density through `(xs[i], density[i])`, zero outside
    /// `[xs[0], xs[last]]`. The table is renormalized to mass one.
    pub fn tabulated(xs: Vec<f64>, density: Vec<f64>) -> Result<Self> {
        if xs.len() < 2 || xs.len() != density.len() {
            return Err(invalid("tabulated density needs >= 2 matching nodes"));
        }
        if xs[0] < 0.0 || xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(invalid("tabulated nodes must be non-negative and strictly increasing"));
        }
        if density.iter().any(|d| !(*d >= 0.0) || !d.is_finite()) {
            return Err(invalid("tabulated density must be non-negative"));
        }
        let mut cdf = vec![0.0; xs.len()];
        for i in 1..xs.len() {
            cdf[i] = cdf[i - 1] + 0.5 * (density[i] + density[i - 1]) * (xs[i] - xs[i - 1]);
        }
        let total = *cdf.last().unwrap();
        if !(total > 0.0) {
            return Err(invalid("tabulated density has zero mass"));
        }
        let density = density.iter().map(|d| d / total).collect();
        let cdf = cdf.iter().map(|c| c / total).collect();
        Ok(Self { kind: ReferenceKind::Tabulated { xs, density, cdf } })
    }

    pub fn kind(&self) -> &ReferenceKind {
        &self.kind
    }

    pub fn density(&self, t: f64) -> f64 {
        match &self.kind {
            ReferenceKind::Poisson => {
                if t < 0.0 {
                    0.0
                } else {
                    (-t).exp()
                }
            }
            ReferenceKind::Tabulated { xs, density, .. } => {
                if t < xs[0] || t > *xs.last().unwrap() {
                    return 0.0;
                }
                let i = xs.partition_point(|x| *x <= t).clamp(1, xs.len() - 1);
                let w = (t - xs[i - 1]) / (xs[i] - xs[i - 1]);
                density[i - 1] + w * (density[i] - density[i - 1])
            }
        }
    }

    pub fn cdf(&self, t: f64) -> f64 {
        match &self.kind {
            ReferenceKind::Poisson => {
                if t <= 0.0 {
                    0.0
                } else {
                    -(-t).exp_m1()
                }
            }
            ReferenceKind::Tabulated { xs, density, cdf } => {
                if t <= xs[0] {
                    return 0.0;
                }
                if t >= *xs.last().unwrap() {
                    return 1.0;
                }
                let i = xs.partition_point(|x| *x <= t).clamp(1, xs.len() - 1);
                let h = t - xs[i - 1];
                let slope = (density[i] - density[i - 1]) / (xs[i] - xs[i - 1]);
                (cdf[i - 1] + density[i - 1] * h + 0.5 * slope * h * h).min(1.0)
            }
        }
    }

    /// Smallest `t` with `cdf(t) >= p`, for `p` in `(0, 1)`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(invalid(format!("quantile level {p} outside (0, 1)")));
        }
        match &self.kind {
            ReferenceKind::Poisson => Ok(-(-p).ln_1p()),
            ReferenceKind::Tabulated { xs, cdf, .. } => {
                let i = cdf.partition_point(|c| *c < p);
                if i == 0 || i >= xs.len() {
                    return Err(Error::Config("quantile outside tabulated support".into()));
                }
                let (mut lo, mut hi) = (xs[i - 1], xs[i]);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if self.cdf(mid) < p {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                Ok(hi)
            }
        }
    }

    /// First moment of the reference law.
    pub fn mean(&self) -> f64 {
        match &self.kind {
            ReferenceKind::Poisson => 1.0,
            ReferenceKind::Tabulated { xs, density, .. } => {
                // exact for piecewise-linear densities: integrate x*(a + b x)
                let mut acc = 0.0;
                for i in 1..xs.len() {
                    let (x0, x1) = (xs[i - 1], xs[i]);
                    let (d0, d1) = (density[i - 1], density[i]);
                    let b = (d1 - d0) / (x1 - x0);
                    let a = d0 - b * x0;
                    acc += a * (x1 * x1 - x0 * x0) / 2.0 + b * (x1.powi(3) - x0.powi(3)) / 3.0;
                }
                acc
            }
        }
    }

    /// Points where a difference with this CDF should be sampled when
    /// comparing two continuous laws.
    fn probe_points(&self, levels: usize) -> Vec<f64> {
        let mut out: Vec<f64> = (1..levels)
            .filter_map(|k| self.quantile(k as f64 / levels as f64).ok())
            .collect();
        if let ReferenceKind::Tabulated { xs, .. } = &self.kind {
            out.extend_from_slice(xs);
        }
        out
    }
}

/// Either kind of law accepted by [`ks_distance`].
#[derive(Debug, Clone, Copy)]
pub enum Law<'a> {
    Atomic(&'a AtomicMeasure),
    Reference(&'a ReferenceMeasure),
}

impl<'a> From<&'a AtomicMeasure> for Law<'a> {
    fn from(m: &'a AtomicMeasure) -> Self {
        Law::Atomic(m)
    }
}

impl<'a> From<&'a ReferenceMeasure> for Law<'a> {
    fn from(m: &'a ReferenceMeasure) -> Self {
        Law::Reference(m)
    }
}

impl Law<'_> {
    pub fn cdf(&self, t: f64) -> f64 {
        match self {
            Law::Atomic(m) => m.cdf(t),
            Law::Reference(r) => r.cdf(t),
        }
    }

    pub fn cdf_left(&self, t: f64) -> f64 {
        match self {
            Law::Atomic(m) => m.cdf_left(t),
            Law::Reference(r) => r.cdf(t),
        }
    }

    pub fn total_mass(&self) -> f64 {
        match self {
            Law::Atomic(m) => m.total_mass(),
            Law::Reference(_) => 1.0,
        }
    }
}

/// Kolmogorov-Smirnov distance `sup_t |F_a(t) - F_b(t)|`.
///
/// Step-vs-step and step-vs-continuous comparisons are exact: the supremum
/// is attained at an atom, its left limit, or in the limit `t -> inf`.
/// Two distinct continuous references are compared on a dense quantile
/// grid of both laws.
pub fn ks_distance<'a, 'b>(a: impl Into<Law<'a>>, b: impl Into<Law<'b>>) -> f64 {
    let (a, b) = (a.into(), b.into());
    let tail = (a.total_mass() - b.total_mass()).abs();
    match (a, b) {
        (Law::Atomic(x), Law::Atomic(y)) => {
            let mut best = tail;
            for atom in x.atoms().iter().chain(y.atoms()) {
                let t = atom.location;
                best = best.max((x.cdf(t) - y.cdf(t)).abs());
                best = best.max((x.cdf_left(t) - y.cdf_left(t)).abs());
            }
            best
        }
        (Law::Atomic(m), Law::Reference(r)) | (Law::Reference(r), Law::Atomic(m)) => {
            let mut best = tail;
            for atom in m.atoms() {
                let t = atom.location;
                let fr = r.cdf(t);
                best = best.max((m.cdf(t) - fr).abs());
                best = best.max((m.cdf_left(t) - fr).abs());
            }
            best
        }
        (Law::Reference(x), Law::Reference(y)) => {
            if x == y {
                return 0.0;
            }
            let mut pts = x.probe_points(4096);
            pts.extend(y.probe_points(4096));
            pts.iter().fold(0.0, |acc, &t| acc.max((x.cdf(t) - y.cdf(t)).abs()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merging_equal_locations() {
        let m = AtomicMeasure::from_atoms([(1.0, 0.25), (0.0, 0.25), (1.0, 0.25)]).unwrap();
        assert_eq!(m.atoms().len(), 2);
        assert_eq!(m.atoms()[1], Atom { location: 1.0, mass: 0.5 });
        assert_eq!(m.total_mass(), 0.75);
    }

    #[test]
    fn cdf_is_right_continuous() {
        let m = AtomicMeasure::from_atoms([(1.0, 0.5), (2.0, 0.5)]).unwrap();
        assert_eq!(m.cdf(1.0), 0.5);
        assert_eq!(m.cdf_left(1.0), 0.0);
        assert_eq!(m.cdf(1.999), 0.5);
        assert_eq!(m.cdf(2.0), 1.0);
    }

    #[test]
    fn rejects_bad_atoms() {
        assert!(AtomicMeasure::from_atoms([(-1.0, 0.5)]).is_err());
        assert!(AtomicMeasure::from_atoms([(1.0, 0.0)]).is_err());
        assert!(AtomicMeasure::from_atoms([(1.0, 0.7), (2.0, 0.7)]).is_err());
        assert!(AtomicMeasure::from_atoms(Vec::new()).is_err());
    }

    #[test]
    fn equal_weights_masses_are_exact_ratios() {
        let m = AtomicMeasure::equal_weights(vec![0.0; 99], 100).unwrap();
        assert_eq!(m.total_mass(), 99.0 / 100.0);
    }

    #[test]
    fn ks_identity_is_zero() {
        let m = AtomicMeasure::from_atoms([(0.3, 0.2), (1.7, 0.8)]).unwrap();
        assert_eq!(ks_distance(&m, &m), 0.0);
        let p = ReferenceMeasure::poisson();
        assert_eq!(ks_distance(&p, &p), 0.0);
    }

    #[test]
    fn ks_point_mass_vs_poisson() {
        let m = AtomicMeasure::from_atoms([(1.0, 1.0)]).unwrap();
        let d = ks_distance(&m, &ReferenceMeasure::poisson());
        assert!((d - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
    }

    #[test]
    fn ks_is_symmetric() {
        let a = AtomicMeasure::from_atoms([(0.5, 0.5), (1.5, 0.25)]).unwrap();
        let b = AtomicMeasure::from_atoms([(1.0, 0.6), (3.0, 0.4)]).unwrap();
        assert_eq!(ks_distance(&a, &b), ks_distance(&b, &a));
        let p = ReferenceMeasure::poisson();
        assert_eq!(ks_distance(&a, &p), ks_distance(&p, &a));
    }

    #[test]
    fn ks_includes_missing_mass_tail() {
        let a = AtomicMeasure::from_atoms([(0.0, 0.5)]).unwrap();
        let b = AtomicMeasure::from_atoms([(0.0, 0.5), (10.0, 0.5)]).unwrap();
        assert_eq!(ks_distance(&a, &b), 0.5);
    }

    #[test]
    fn poisson_quantile_inverts_cdf() {
        let p = ReferenceMeasure::poisson();
        for &q in &[0.1, 0.5, 0.9] {
            assert!((p.cdf(p.quantile(q).unwrap()) - q).abs() < 1e-14);
        }
        assert!(p.quantile(1.0).is_err());
    }

    #[test]
    fn tabulated_uniform_on_unit_interval() {
        let r = ReferenceMeasure::tabulated(vec![0.0, 2.0], vec![1.0, 1.0]).unwrap();
        assert!((r.cdf(1.0) - 0.5).abs() < 1e-15);
        assert!((r.mean() - 1.0).abs() < 1e-15);
        assert!((r.quantile(0.25).unwrap() - 0.5).abs() < 1e-12);
        assert!((r.density(0.5) - 0.5).abs() < 1e-15);
        assert!(ReferenceMeasure::tabulated(vec![0.0, 0.0], vec![1.0, 1.0]).is_err());
    }

    #[test]
    fn distinct_references_have_positive_distance() {
        let r = ReferenceMeasure::tabulated(vec![0.0, 2.0], vec![1.0, 1.0]).unwrap();
        let d = ks_distance(&r, &ReferenceMeasure::poisson());
        // sup over t of |t/2 - (1 - e^{-t})| on [0, 2]
        let oracle = (0..=200_000)
            .map(|i| {
                let t = 2.0 * i as f64 / 200_000.0;
                (t / 2.0 - (1.0 - (-t).exp())).abs()
            })
            .fold(0.0, f64::max);
        assert!((d - oracle).abs() < 1e-4, "{d} vs {oracle}");
    }
}
