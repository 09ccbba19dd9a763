//! Window sums of a test function over ordered tuples and their torus
//! averages, with the inclusion-exclusion identity that recovers
//! consecutive-window sums from all-window sums.

mod estimate;

pub use estimate::{
    final_bound, naive_cdf_closed_form, naive_cdf_expected, tcor_mc, tcor_universal,
    thickened_diagonal_volume_mc, EstimationParams, FinalBound, TcorReport,
};

use crate::error::{invalid, Result};
use crate::numeric::binomial;
use crate::torus::TorusPoint;

/// Largest tuple length accepted by the exhaustive enumerations.
pub const EXHAUSTIVE_MAX_N: usize = 14;

/// Non-negative finite sum of weighted closed-interval indicators.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacingFunction {
    pieces: Vec<(f64, f64, f64)>,
    support: f64,
    sup_norm: f64,
}

impl SpacingFunction {
    /// `sum value * 1[lo, hi]` over the given pieces.
    pub fn new(pieces: Vec<(f64, f64, f64)>) -> Result<Self> {
        for &(lo, hi, v) in &pieces {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(invalid(format!("bad interval [{lo}, {hi}]")));
            }
            if !(v >= 0.0) || !v.is_finite() {
                return Err(invalid(format!("piece value {v} must be non-negative")));
            }
        }
        let support = pieces.iter().map(|p| p.0.abs().max(p.1.abs())).fold(0.0, f64::max);
        let mut f = Self { pieces, support, sup_norm: 0.0 };
        f.sup_norm = f
            .pieces
            .iter()
            .flat_map(|p| [p.0, p.1])
            .map(|t| f.eval(t))
            .fold(0.0, f64::max);
        Ok(f)
    }

    /// Indicator of `[lo, hi]`.
    pub fn indicator(lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![(lo, hi, 1.0)])
    }

    pub fn zero() -> Self {
        Self { pieces: Vec::new(), support: 0.0, sup_norm: 0.0 }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.pieces.iter().filter(|p| p.0 <= t && t <= p.1).map(|p| p.2).sum()
    }

    pub fn pieces(&self) -> &[(f64, f64, f64)] {
        &self.pieces
    }

    /// Smallest `alpha` with `f = 0` outside `[-alpha, alpha]`.
    pub fn support(&self) -> f64 {
        self.support
    }

    pub fn sup_norm(&self) -> f64 {
        self.sup_norm
    }
}

/// How index tuples in all-window sums are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IndexOrdering {
    /// `t_1 < t_2 < ... < t_{a+2}`.
    #[default]
    Strict,
    /// `t_1 <= t_2 <= ... <= t_{a+2}`, including degenerate windows.
    NonStrict,
}

fn sorted(x: &[f64]) -> Vec<f64> {
    let mut s = x.to_vec();
    s.sort_by(|a, b| a.total_cmp(b));
    s
}

/// Sum of `f(x_{t+a+1} - x_t)` over consecutive windows of the sorted tuple.
pub fn sep(a: usize, f: &SpacingFunction, x: &[f64]) -> f64 {
    let s = sorted(x);
    if a + 2 > s.len() {
        return 0.0;
    }
    (0..s.len() - a - 1).map(|t| f.eval(s[t + a + 1] - s[t])).sum()
}

/// Sum of `f(x_{t_last} - x_{t_first})` over all index windows of length
/// `a + 2`, counted through the number of windows sharing each endpoint pair.
pub fn clump_with(a: usize, f: &SpacingFunction, x: &[f64], ordering: IndexOrdering) -> f64 {
    let s = sorted(x);
    let n = s.len();
    let mut acc = 0.0;
    for i in 0..n {
        if ordering == IndexOrdering::NonStrict {
            acc += f.eval(0.0);
        }
        for j in i + 1..n {
            // f vanishes beyond its support and the tuple is sorted
            if s[j] - s[i] > f.support() {
                break;
            }
            let windows = match ordering {
                IndexOrdering::Strict => binomial((j - i - 1) as u64, a as u64),
                IndexOrdering::NonStrict => binomial((j - i + a) as u64, a as u64),
            };
            if windows > 0.0 {
                acc += windows * f.eval(s[j] - s[i]);
            }
        }
    }
    acc
}

pub fn clump(a: usize, f: &SpacingFunction, x: &[f64]) -> f64 {
    clump_with(a, f, x, IndexOrdering::Strict)
}

/// All-window sum by explicit enumeration of strictly increasing index tuples.
pub fn clump_exhaustive(a: usize, f: &SpacingFunction, x: &[f64]) -> Result<f64> {
    let s = sorted(x);
    let n = s.len();
    if n > EXHAUSTIVE_MAX_N {
        return Err(invalid(format!("exhaustive sums need N <= {EXHAUSTIVE_MAX_N}, got {n}")));
    }
    let width = a + 2;
    if width > n {
        return Ok(0.0);
    }
    let mut acc = 0.0;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != width {
            continue;
        }
        let first = mask.trailing_zeros() as usize;
        let last = 31 - mask.leading_zeros() as usize;
        acc += f.eval(s[last] - s[first]);
    }
    Ok(acc)
}

/// `binom(k, a) * clump(k, f, x)`.
pub fn tclump(k: usize, a: usize, f: &SpacingFunction, x: &[f64]) -> Result<f64> {
    if k < a {
        return Err(invalid(format!("need k >= a, got k = {k}, a = {a}")));
    }
    Ok(binomial(k as u64, a as u64) * clump(k, f, x))
}

/// Torus-normalized statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorusStat {
    Int,
    Cor,
    /// Binomially weighted all-window sum of order `k`.
    TCor { k: usize },
}

/// Eigenangles of `a` rescaled to unit mean spacing, `(N / 2 pi) X(A)`.
pub fn rescaled_angles(a: &TorusPoint) -> Vec<f64> {
    let n = a.dim() as f64;
    a.phases().iter().map(|p| n * p).collect()
}

/// `(1/N)` times Sep, Clump or TClump of the rescaled eigenangles.
pub fn int_cor_tcor(stat: TorusStat, a: usize, f: &SpacingFunction, point: &TorusPoint) -> Result<f64> {
    let x = rescaled_angles(point);
    let n = x.len() as f64;
    let raw = match stat {
        TorusStat::Int => sep(a, f, &x),
        TorusStat::Cor => clump(a, f, &x),
        TorusStat::TCor { k } => tclump(k, a, f, &x)?,
    };
    Ok(raw / n)
}

/// `|Int(a) - sum_{k=a}^{N-2} (-1)^{k-a} TCor(k, a)|` with every all-window
/// sum computed by exhaustive enumeration.
pub fn alternating_identity_check(a: usize, f: &SpacingFunction, point: &TorusPoint) -> Result<f64> {
    let x = rescaled_angles(point);
    let n = x.len();
    let int = sep(a, f, &x) / n as f64;
    let mut alt = 0.0;
    for k in a..n.saturating_sub(1) {
        let sign = if (k - a) % 2 == 0 { 1.0 } else { -1.0 };
        alt += sign * binomial(k as u64, a as u64) * clump_exhaustive(k, f, &x)? / n as f64;
    }
    Ok((int - alt).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(s: f64) -> SpacingFunction {
        SpacingFunction::indicator(0.0, s).unwrap()
    }

    #[test]
    fn three_point_example() {
        let x = [0.0, 1.0, 3.0];
        assert_eq!(sep(0, &chi(1.5), &x), 1.0);
        assert_eq!(clump(0, &chi(1.5), &x), 1.0);
        assert_eq!(clump_exhaustive(0, &chi(1.5), &x).unwrap(), 1.0);
    }

    #[test]
    fn short_tuples_vanish() {
        let x = [0.0, 0.5];
        assert_eq!(sep(1, &chi(2.0), &x), 0.0);
        assert_eq!(clump(1, &chi(2.0), &x), 0.0);
        assert_eq!(tclump(1, 1, &chi(2.0), &x).unwrap(), 0.0);
    }

    #[test]
    fn tclump_weights() {
        let x = [0.0, 0.2, 0.5, 0.9, 1.4, 2.0];
        let f = chi(1.5);
        assert_eq!(tclump(2, 2, &f, &x).unwrap(), clump(2, &f, &x));
        assert_eq!(tclump(3, 1, &f, &x).unwrap(), 3.0 * clump(3, &f, &x));
        assert!(tclump(0, 1, &f, &x).is_err());
    }

    #[test]
    fn pair_formula_matches_enumeration() {
        let x = [0.0, 0.3, 0.35, 1.2, 1.9, 2.0, 3.3, 3.4];
        let f = SpacingFunction::new(vec![(0.0, 1.0, 1.0), (0.5, 2.5, 0.5)]).unwrap();
        for a in 0..6 {
            let fast = clump(a, &f, &x);
            let slow = clump_exhaustive(a, &f, &x).unwrap();
            assert!((fast - slow).abs() < 1e-12, "a = {a}");
        }
    }

    #[test]
    fn non_strict_counts_degenerate_windows() {
        let x = [0.0, 1.0, 3.0];
        // every point contributes f(0) once
        assert_eq!(clump_with(0, &chi(1.5), &x, IndexOrdering::NonStrict), 4.0);
    }

    #[test]
    fn function_metadata() {
        let f = SpacingFunction::new(vec![(-1.0, 0.5, 2.0), (0.0, 2.0, 1.0)]).unwrap();
        assert_eq!(f.support(), 2.0);
        assert_eq!(f.sup_norm(), 3.0);
        assert!(SpacingFunction::new(vec![(0.0, 1.0, -1.0)]).is_err());
        assert_eq!(SpacingFunction::zero().eval(0.0), 0.0);
    }

    #[test]
    fn rigid_point_int() {
        let a = TorusPoint::equispaced(10).unwrap();
        for (s, want) in [(0.5, 0.0), (1.5, 0.9)] {
            let v = int_cor_tcor(TorusStat::Int, 0, &chi(s), &a).unwrap();
            assert!((v - want).abs() < 1e-12);
        }
    }

    #[test]
    fn identity_residual_small() {
        let a = TorusPoint::new(vec![0.05, 0.11, 0.4, 0.42, 0.77, 0.9]).unwrap();
        assert!(alternating_identity_check(0, &chi(1.5), &a).unwrap() < 1e-12);
        assert!(alternating_identity_check(1, &chi(0.5), &a).unwrap() < 1e-12);
        assert_eq!(alternating_identity_check(0, &SpacingFunction::zero(), &a).unwrap(), 0.0);
    }

    #[test]
    fn exhaustive_cap() {
        let x: Vec<f64> = (0..15).map(|i| i as f64).collect();
        assert!(clump_exhaustive(0, &chi(1.0), &x).is_err());
    }
}
