//! Small numeric helpers shared by the Monte-Carlo and estimation code.

/// Sums `values` by fixed recursive halving.
///
/// The split points depend only on the length, so the result is
/// bit-identical for a given input order regardless of how the values
/// were produced.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 8;
    if values.len() <= LEAF {
        return values.iter().fold(0.0, |acc, v| acc + v);
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    pairwise_sum(values) / values.len() as f64
}

/// Unbiased sample variance.
pub fn sample_variance(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let m = mean(values);
    let sq: Vec<f64> = values.iter().map(|v| (v - m) * (v - m)).collect();
    pairwise_sum(&sq) / (n - 1) as f64
}

/// Mean and delete-one-block jackknife standard error.
///
/// The samples are split into `blocks` contiguous blocks of (nearly) equal
/// size. With fewer samples than blocks every sample becomes its own block.
pub fn jackknife_mean(values: &[f64], blocks: usize) -> (f64, f64) {
    let n = values.len();
    let est = mean(values);
    if n < 2 {
        return (est, 0.0);
    }
    let g = blocks.clamp(2, n);
    let total = pairwise_sum(values);
    let mut leave_out = Vec::with_capacity(g);
    for b in 0..g {
        let lo = b * n / g;
        let hi = (b + 1) * n / g;
        let block = pairwise_sum(&values[lo..hi]);
        leave_out.push((total - block) / (n - (hi - lo)) as f64);
    }
    let lm = mean(&leave_out);
    let dev: Vec<f64> = leave_out.iter().map(|v| (v - lm) * (v - lm)).collect();
    let var = (g - 1) as f64 / g as f64 * pairwise_sum(&dev);
    (est, var.sqrt())
}

/// Ordinary least-squares fit `y = intercept + slope * x`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len(), "linear_fit: length mismatch");
    let mx = mean(xs);
    let my = mean(ys);
    let sxy: Vec<f64> = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).collect();
    let sxx: Vec<f64> = xs.iter().map(|x| (x - mx) * (x - mx)).collect();
    let slope = pairwise_sum(&sxy) / pairwise_sum(&sxx);
    (my - slope * mx, slope)
}

/// `ln(k!)` by direct summation (exact enough for the small `k` used here).
pub fn ln_factorial(k: u64) -> f64 {
    (2..=k).map(|j| (j as f64).ln()).sum()
}

pub fn factorial(k: u64) -> f64 {
    (2..=k).fold(1.0, |acc, j| acc * j as f64)
}

pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}
