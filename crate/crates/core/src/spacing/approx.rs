use super::measure::ReferenceMeasure;
use super::OrderedTuple;
use crate::error::{invalid, Error, Result};

/// Spectrum of length `n` whose spacing measure is within `2/(n-1)` of
/// `reference` in KS distance.
///
/// Gaps are the reference quantiles at levels `j/n`, with the last gap
/// chosen so the spectrum spans `[0, 1]`. With `forced` points the tuple is
/// mapped affinely so the points fit between its second and second-to-last
/// entries, and each point then replaces the nearest unused interior entry;
/// the bound becomes `(2+p)/(n-1)`.
pub fn approx_tuple(
    reference: &ReferenceMeasure,
    n: usize,
    forced: Option<&[f64]>,
) -> Result<OrderedTuple> {
    let mean = reference.mean();
    if !(0.0..=1.0).contains(&mean) {
        return Err(invalid(format!("reference mean {mean} outside [0, 1]")));
    }
    if n < 3 {
        return Err(invalid(format!("need n >= 3, got {n}")));
    }
    let nf = n as f64;
    let mut y: Vec<f64> = (1..n)
        .map(|j| reference.quantile(j as f64 / nf))
        .collect::<Result<_>>()?;
    let head: f64 = y[..n - 2].iter().sum();
    y[n - 2] = nf - head;
    if y[n - 2] < 0.0 {
        return Err(Error::Invariant(format!("last gap {} is negative", y[n - 2])));
    }
    let mut x = Vec::with_capacity(n);
    let mut acc = 0.0;
    x.push(0.0);
    for yj in &y {
        acc += yj;
        x.push(acc / nf);
    }
    x[n - 1] = 1.0;

    let forced = match forced {
        Some(z) if !z.is_empty() => z,
        _ => return OrderedTuple::new(x),
    };
    if n < forced.len() + 2 {
        return Err(invalid(format!("need n >= {} for {} forced points", forced.len() + 2, forced.len())));
    }
    if forced.iter().any(|z| !z.is_finite()) {
        return Err(invalid("forced points must be finite"));
    }
    let zmin = forced.iter().copied().fold(f64::INFINITY, f64::min);
    let zmax = forced.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = (x[1], x[n - 2]);
    let map: Box<dyn Fn(f64) -> f64> = if n == 3 {
        Box::new(move |t| t - lo + zmin)
    } else {
        let (a, b) = if zmin == zmax { (zmin - 1.0, zmax + 1.0) } else { (zmin, zmax) };
        let k = (b - a) / (hi - lo);
        Box::new(move |t| a + k * (t - lo))
    };
    let mut x: Vec<f64> = x.into_iter().map(map).collect();
    let mut used = vec![false; n];
    for &z in forced {
        let k = (1..n - 1)
            .filter(|&k| !used[k])
            .min_by(|&i, &j| (x[i] - z).abs().total_cmp(&(x[j] - z).abs()))
            .expect("enough interior slots");
        used[k] = true;
        x[k] = z;
    }
    OrderedTuple::new(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spacing::{ks_distance, nn_measure, Normalization};

    #[test]
    fn three_point_poisson() {
        let x = approx_tuple(&ReferenceMeasure::poisson(), 3, None).unwrap();
        let v = x.values();
        assert_eq!(v[0], 0.0);
        assert!((v[1] - 1.5f64.ln() / 3.0).abs() < 1e-15);
        assert_eq!(v[2], 1.0);
        let m = nn_measure(&x, Normalization::NOverRange);
        let locs: Vec<f64> = m.atoms().iter().map(|a| a.location).collect();
        assert!((locs[0] - 0.405465).abs() < 1e-6 && (locs[1] - 2.594535).abs() < 1e-6);
    }

    #[test]
    fn forced_point_is_present() {
        let p = ReferenceMeasure::poisson();
        let x = approx_tuple(&p, 50, Some(&[7.25])).unwrap();
        assert!(x.values().contains(&7.25));
        let d = ks_distance(&nn_measure(&x, Normalization::NOverRange), &p);
        assert!(d <= 3.0 / 49.0, "{d}");
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = ReferenceMeasure::poisson();
        assert!(approx_tuple(&p, 2, None).is_err());
        assert!(approx_tuple(&p, 4, Some(&[0.0, 1.0, 2.0])).is_err());
        let wide = ReferenceMeasure::tabulated(vec![0.0, 4.0], vec![1.0, 1.0]).unwrap();
        assert!(approx_tuple(&wide, 10, None).is_err());
    }
}
