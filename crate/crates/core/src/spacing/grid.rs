use super::measure::{Law, ReferenceMeasure};
use crate::error::{Error, Result};

/// Quantile grid of a reference law: `nodes[j-1]` has reference mass `j/M`
/// to its left.
#[derive(Debug, Clone, PartialEq)]
pub struct MGrid {
    m: usize,
    nodes: Vec<f64>,
}

impl MGrid {
    pub fn m(&self) -> usize {
        self.m
    }

    /// The interior nodes `s(1), ..., s(M-1)`.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }
}

pub fn mgrid_build(m: usize, reference: &ReferenceMeasure) -> Result<MGrid> {
    if m < 2 {
        return Err(Error::Config(format!("grid size {m} must be >= 2")));
    }
    let nodes = (1..m)
        .map(|j| reference.quantile(j as f64 / m as f64))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::Config(format!("reference is not invertible: {e}")))?;
    if nodes.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Config("reference CDF is not strictly increasing on the grid".into()));
    }
    Ok(MGrid { m, nodes })
}

/// Grid version of the KS distance: the largest discrepancy of the masses of
/// the closed intervals `[s(1), s(i)]`.
pub fn mgrid_ks<'a, 'b>(mu: impl Into<Law<'a>>, reference: impl Into<Law<'b>>, grid: &MGrid) -> f64 {
    let (mu, reference) = (mu.into(), reference.into());
    let s1 = grid.nodes[0];
    let base_mu = mu.cdf_left(s1);
    let base_ref = reference.cdf_left(s1);
    grid.nodes.iter().fold(0.0, |acc, &s| {
        let a = mu.cdf(s) - base_mu;
        let b = reference.cdf(s) - base_ref;
        acc.max((a - b).abs())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poisson_nodes() {
        let g = mgrid_build(4, &ReferenceMeasure::poisson()).unwrap();
        let want = [(4.0f64 / 3.0).ln(), 2f64.ln(), 4f64.ln()];
        for (a, b) in g.nodes().iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(mgrid_build(1, &ReferenceMeasure::poisson()).is_err());
    }

    #[test]
    fn self_distance_is_zero() {
        let p = ReferenceMeasure::poisson();
        let g = mgrid_build(16, &p).unwrap();
        assert_eq!(mgrid_ks(&p, &p, &g), 0.0);
    }
}
