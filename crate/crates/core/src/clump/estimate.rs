use super::{int_cor_tcor, SpacingFunction, TorusStat};
use crate::error::{invalid, Error, Result};
use crate::numeric::{binomial, factorial, jackknife_mean, ln_factorial, sample_variance};
use crate::torus::{mc_values, sample_rng, McConfig, McEstimate, JACKKNIFE_BLOCKS};
use rand::Rng;
use rayon::prelude::*;

/// Large-`N` limit of the torus average of `TCor(k, a, f)`:
/// `binom(k, a) * int_0^inf f(y) y^k / k! dy`.
pub fn tcor_universal(k: usize, a: usize, f: &SpacingFunction) -> f64 {
    let kf = (k + 1) as i32;
    let integral: f64 = f
        .pieces()
        .iter()
        .filter(|p| p.1 > 0.0)
        .map(|&(lo, hi, v)| v * (hi.powi(kf) - lo.max(0.0).powi(kf)))
        .sum();
    binomial(k as u64, a as u64) * integral / factorial(k as u64 + 1)
}

/// Monte-Carlo torus average of `TCor(k, a, f)` against the a-priori bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct TcorReport {
    pub n: usize,
    pub estimate: McEstimate,
    pub variance: f64,
    pub universal: f64,
    /// `binom(k, a) |f| alpha^{k+1} / (k+1)!`.
    pub mean_bound: f64,
    /// Bound on the variance over the torus.
    pub variance_bound: f64,
    /// Bound on `|mean - universal|`.
    pub rate_bound: f64,
}

pub fn tcor_mc(k: usize, a: usize, f: &SpacingFunction, n: usize, cfg: &McConfig) -> Result<TcorReport> {
    if k < a {
        return Err(invalid(format!("need k >= a, got k = {k}, a = {a}")));
    }
    if cfg.samples < 100 {
        return Err(invalid(format!("need >= 100 samples, got {}", cfg.samples)));
    }
    let values = mc_values(n, cfg, |x| {
        int_cor_tcor(TorusStat::TCor { k }, a, f, x).expect("k >= a checked")
    })?;
    let (mean, se) = jackknife_mean(&values, JACKKNIFE_BLOCKS);
    let c = binomial(k as u64, a as u64);
    let alpha = f.support();
    let norm = f.sup_norm();
    let half = (k / 2 + 1) as u64;
    let variance_bound = c * c * norm * norm / n as f64
        * (2.0 * alpha).powi(2 * k as i32 + 2).max(1.0)
        * 2.0
        * ((k + 2) * (k + 2)) as f64
        / factorial(half).powi(2);
    Ok(TcorReport {
        n,
        estimate: McEstimate { estimate: mean, std_error: se },
        variance: sample_variance(&values),
        universal: tcor_universal(k, a, f),
        mean_bound: c * norm * alpha.powi(k as i32 + 1) / factorial(k as u64 + 1),
        variance_bound,
        rate_bound: c * norm * alpha.powi(k as i32 + 1) / (factorial(k as u64) * n as f64),
    })
}

/// Truncated alternating series `sum_{k=1}^{N-1} a_k (-1)^{k+1} p^k / k!`
/// with `a_k = prod_{v=1}^{k} (1 - v/N)`.
pub fn naive_cdf_closed_form(n: usize, p: f64) -> f64 {
    let nf = n as f64;
    let mut acc = 0.0;
    let mut a_k = 1.0;
    let mut term = 1.0;
    for k in 1..n {
        a_k *= 1.0 - k as f64 / nf;
        term *= p / k as f64;
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        acc += sign * a_k * term;
    }
    acc
}

/// Exact Haar average of `Int(0, 1[0, p])`: each of the `N - 1` inner gaps
/// of `N` uniform points is Beta(1, N) distributed.
pub fn naive_cdf_expected(n: usize, p: f64) -> f64 {
    let nf = n as f64;
    let x = (p / nf).clamp(0.0, 1.0);
    (nf - 1.0) / nf * (1.0 - (1.0 - x).powf(nf))
}

/// Parameters of the estimation chain: `alpha` sets the grid count,
/// `gamma` the truncation order, `epsilon` the slack in the exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimationParams {
    pub alpha: f64,
    pub gamma: f64,
    pub epsilon: f64,
}

impl Default for EstimationParams {
    fn default() -> Self {
        Self { alpha: 4.0 / 3.0, gamma: 0.3, epsilon: 0.1 }
    }
}

/// Evaluated error budget at a fixed `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct FinalBound {
    pub n: u64,
    /// Number of quantile cells, the largest integer below `e^{alpha sqrt(ln N)}`.
    pub cells: u64,
    /// Truncation order with `(L-1)! <= N^{gamma^2} <= L!`.
    pub order: u64,
    /// Log-width of the inner quantile range, `ln(cells - 1)`.
    pub beta: f64,
    /// Grid, truncation, variance and rate summands in that order.
    pub summands: [f64; 4],
    pub total: f64,
    /// `ln(cells) <= (alpha/gamma) sqrt(ln order!)`.
    pub cells_vs_order: bool,
    /// `(ln L!)^{L+2} <= (L!)^{1+epsilon}`.
    pub stirling_log: bool,
    /// `(2 alpha / gamma)^{L+2} <= (L!)^{epsilon/2}`.
    pub stirling_power: bool,
}

impl FinalBound {
    /// Index of the largest summand.
    pub fn dominant(&self) -> usize {
        (0..4).max_by(|&i, &j| self.summands[i].total_cmp(&self.summands[j])).unwrap_or(0)
    }
}

pub fn final_bound(n: u64, params: &EstimationParams) -> Result<FinalBound> {
    let EstimationParams { alpha, gamma, epsilon } = *params;
    if n < 3 {
        return Err(Error::Config(format!("N = {n} is too small")));
    }
    if !(alpha > 0.0 && gamma > 0.0 && epsilon > 0.0) {
        return Err(Error::Config("alpha, gamma and epsilon must be positive".into()));
    }
    let ln_n = (n as f64).ln();
    let g2 = gamma * gamma;
    let exponents = [g2 - epsilon * g2, 0.5 - g2 - 2.0 * g2 * epsilon, 0.5 - 2.0 * g2];
    if let Some(e) = exponents.iter().find(|e| **e <= 0.0) {
        return Err(Error::Config(format!("non-positive decay exponent {e}")));
    }
    let cells = ((alpha * ln_n.sqrt()).exp().ceil() as u64).saturating_sub(1);
    if cells < 2 {
        return Err(Error::Config(format!("only {cells} quantile cells at N = {n}")));
    }
    let target = g2 * ln_n;
    let mut order = 1u64;
    while ln_factorial(order) < target {
        order += 1;
    }
    let nf = n as f64;
    let summands = [
        5.0 / cells as f64,
        2.0 / nf.powf(exponents[0]),
        2.0 * 2f64.sqrt() / nf.powf(exponents[1]),
        3.0 * 2f64.sqrt() / nf.powf(exponents[2]),
    ];
    let lf = ln_factorial(order);
    let l2 = (order + 2) as f64;
    let stirling_log = lf > 0.0 && l2 * lf.ln() <= (1.0 + epsilon) * lf;
    let stirling_power = l2 * (2.0 * alpha / gamma).ln() <= epsilon / 2.0 * lf;
    Ok(FinalBound {
        n,
        cells,
        order,
        beta: ((cells - 1) as f64).ln(),
        summands,
        total: summands.iter().sum(),
        cells_vs_order: (cells as f64).ln() <= alpha / gamma * lf.sqrt(),
        stirling_log,
        stirling_power,
    })
}

/// Monte-Carlo estimate of `Vol({x in [0, N]^n : max x - min x <= alpha}) / N`.
pub fn thickened_diagonal_volume_mc(dim: usize, alpha: f64, big_n: f64, cfg: &McConfig) -> Result<McEstimate> {
    if dim < 1 || !(alpha >= 0.0) || !(big_n > 0.0) {
        return Err(invalid("need dim >= 1, alpha >= 0 and N > 0"));
    }
    if cfg.samples < 100 {
        return Err(invalid(format!("need >= 100 samples, got {}", cfg.samples)));
    }
    let scale = big_n.powi(dim as i32 - 1);
    let values: Vec<f64> = (0..cfg.samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(cfg.seed, i);
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for _ in 0..dim {
                let v = rng.random::<f64>() * big_n;
                lo = lo.min(v);
                hi = hi.max(v);
            }
            if hi - lo <= alpha { scale } else { 0.0 }
        })
        .collect();
    let (estimate, std_error) = jackknife_mean(&values, JACKKNIFE_BLOCKS);
    Ok(McEstimate { estimate, std_error })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universal_box_value() {
        let f = SpacingFunction::indicator(0.0, 2.0).unwrap();
        let want = binomial(3, 1) * 2f64.powi(4) / 24.0;
        assert!((tcor_universal(3, 1, &f) - want).abs() < 1e-12);
        // the alternating sum over k reproduces 1 - e^{-s}
        let alt: f64 = (0..30).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 } * tcor_universal(k, 0, &f)).sum();
        assert!((alt - (1.0 - (-2.0f64).exp())).abs() < 1e-12);
    }

    #[test]
    fn closed_form_small_n() {
        // N = 2: a_1 = 1/2
        assert!((naive_cdf_closed_form(2, 0.7) - 0.35).abs() < 1e-15);
        assert_eq!(naive_cdf_closed_form(10, 0.0), 0.0);
        assert!((naive_cdf_expected(2, 0.7) - 0.5 * (1.0 - 0.65f64.powi(2))).abs() < 1e-15);
    }

    #[test]
    fn expected_matches_monte_carlo() {
        let cfg = McConfig { samples: 4000, ..McConfig::default() };
        let f = SpacingFunction::indicator(0.0, 1.0).unwrap();
        let v = mc_values(20, &cfg, |x| int_cor_tcor(TorusStat::Int, 0, &f, x).unwrap()).unwrap();
        let (m, se) = jackknife_mean(&v, JACKKNIFE_BLOCKS);
        assert!((m - naive_cdf_expected(20, 1.0)).abs() < 4.0 * se);
    }

    #[test]
    fn tcor_report_within_bounds() {
        let f = SpacingFunction::indicator(0.0, 1.0).unwrap();
        let cfg = McConfig { samples: 400, ..McConfig::default() };
        let r = tcor_mc(2, 1, &f, 32, &cfg).unwrap();
        assert!(r.estimate.estimate <= r.mean_bound + 3.0 * r.estimate.std_error);
        assert!(r.variance <= r.variance_bound);
        assert!(tcor_mc(0, 1, &f, 32, &cfg).is_err());
    }

    #[test]
    fn final_bound_structure() {
        let p = EstimationParams { alpha: 1.0, gamma: 0.4, epsilon: 0.05 };
        let b = final_bound(1_000_000, &p).unwrap();
        assert_eq!(b.cells, 41);
        assert_eq!(b.order, 4);
        assert!((b.beta - 40f64.ln()).abs() < 1e-12);
        assert!((b.total - b.summands.iter().sum::<f64>()).abs() < 1e-15);
        let bad = EstimationParams { gamma: 0.6, ..EstimationParams::default() };
        assert!(matches!(final_bound(1000, &bad), Err(Error::Config(_))));
    }

    #[test]
    fn diagonal_volume_pair() {
        let cfg = McConfig { samples: 20_000, ..McConfig::default() };
        let est = thickened_diagonal_volume_mc(2, 1.0, 10.0, &cfg).unwrap();
        // exact: (100 - 81) / 10
        assert!((est.estimate - 1.9).abs() < 4.0 * est.std_error);
    }
}
