//! Exact type-A root data, dimensions, weight counts and torus spectra on
//! irreducible representations of `su(n)`.
//!
//! Weights are handled in the ambient `Z^n` realization: the highest weight
//! with fundamental coordinates `(l_1, ..., l_r)` corresponds to the partition
//! `P_i = l_i + ... + l_r` (with `P_n = 0`), and `<lambda, e_a - e_b>` is the
//! sum `l_a + ... + l_{b-1}`. Inner products use the trace form on trace-zero
//! vectors; it is a fixed multiple of the Killing form.

mod weights;

pub use weights::{
    adjoint_ray_weights, distinct_weight_count, gelfand_tsetlin_weights, product_spectrum_count,
    sym_power_spectrum, torus_eigenvalue, RepSpectrum, WeightMultiset,
};

use crate::error::{invalid, Result};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Root data of `su(rank + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TypeARootSystem {
    rank: usize,
}

impl TypeARootSystem {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(invalid("rank must be >= 1"));
        }
        Ok(Self { rank })
    }

    /// Root system of `su(n)`.
    pub fn su(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(invalid(format!("su(n) needs n >= 2, got {n}")));
        }
        Self::new(n - 1)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Size `n` of the ambient space.
    pub fn n(&self) -> usize {
        self.rank + 1
    }

    /// Positive roots `e_a - e_b` as index pairs `(a, b)`, `a < b`.
    pub fn positive_roots(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
    }

    pub fn simple_roots(&self) -> Vec<(usize, usize)> {
        (0..self.rank).map(|a| (a, a + 1)).collect()
    }

    /// Order `(r+1)!` of the Weyl group.
    pub fn weyl_order(&self) -> BigUint {
        (1..=self.n()).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
    }

    /// `<delta, e_a - e_b>`.
    pub fn delta_pairing(&self, root: (usize, usize)) -> u64 {
        (root.1 - root.0) as u64
    }

    /// Ambient trace-zero coordinates of the half-sum of positive roots.
    pub fn delta_ambient(&self) -> Vec<BigRational> {
        let n = self.n() as i64;
        (0..n).map(|i| BigRational::new(BigInt::from(n - 1 - 2 * i), BigInt::from(2))).collect()
    }

    pub(crate) fn check(&self, lambda: &HighestWeight) -> Result<()> {
        if lambda.coeffs.len() != self.rank {
            return Err(invalid(format!(
                "weight has {} coordinates, rank is {}",
                lambda.coeffs.len(),
                self.rank
            )));
        }
        Ok(())
    }
}

/// Dominant weight in the basis of fundamental weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HighestWeight {
    coeffs: Vec<u64>,
}

impl HighestWeight {
    pub fn new(coeffs: Vec<u64>) -> Self {
        Self { coeffs }
    }

    /// Validating constructor for signed input.
    pub fn from_signed(coeffs: &[i64]) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| **c < 0) {
            return Err(invalid(format!("highest weight coefficient {bad} is negative")));
        }
        Ok(Self { coeffs: coeffs.iter().map(|c| *c as u64).collect() })
    }

    /// `m` times the first fundamental weight of `su(n)`.
    pub fn sym_power(n: usize, m: u64) -> Self {
        let mut coeffs = vec![0; n - 1];
        coeffs[0] = m;
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn scaled(&self, m: u64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * m).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    /// `<lambda, e_a - e_b>`.
    pub fn pairing(&self, root: (usize, usize)) -> u64 {
        self.coeffs[root.0..root.1].iter().sum()
    }

    /// Sum of the coefficients.
    pub fn level(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    /// The partition `P_i = l_i + ... + l_r`, padded with a trailing zero.
    pub fn partition(&self) -> Vec<u64> {
        let mut out = vec![0; self.coeffs.len() + 1];
        for i in (0..self.coeffs.len()).rev() {
            out[i] = out[i + 1] + self.coeffs[i];
        }
        out
    }

    /// Trace-zero ambient coordinates.
    pub fn ambient(&self) -> Vec<BigRational> {
        let p = self.partition();
        let n = p.len() as i64;
        let total: u64 = p.iter().sum();
        let shift = BigRational::new(BigInt::from(total), BigInt::from(n));
        p.iter().map(|v| BigRational::from_integer(BigInt::from(*v)) - &shift).collect()
    }
}

/// Exact dimension and the product lower bound over roots with
/// `<lambda, alpha> > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionReport {
    pub dimension: BigUint,
    pub lower_bound: BigRational,
}

/// Weyl dimension formula in exact arithmetic.
pub fn weyl_dimension(rs: &TypeARootSystem, lambda: &HighestWeight) -> Result<DimensionReport> {
    rs.check(lambda)?;
    let mut dim = BigRational::one();
    let mut lower = BigRational::one();
    for root in rs.positive_roots() {
        let l = lambda.pairing(root);
        let d = rs.delta_pairing(root);
        dim *= BigRational::new(BigInt::from(l + d), BigInt::from(d));
        if l > 0 {
            lower *= BigRational::new(BigInt::from(l), BigInt::from(d));
        }
    }
    debug_assert!(dim.is_integer());
    let dimension = dim.to_integer().to_biguint().expect("dimension is positive");
    Ok(DimensionReport { dimension, lower_bound: lower })
}

/// Orbit-style bound `|W| * prod (l_j + 1)` on the number of distinct weights.
pub fn weight_count_bound(rs: &TypeARootSystem, lambda: &HighestWeight) -> Result<BigUint> {
    rs.check(lambda)?;
    Ok(lambda.coeffs.iter().fold(rs.weyl_order(), |acc, l| acc * BigUint::from(l + 1)))
}

/// Coordinates of `lambda` in the basis of simple roots, via the inverse
/// Cartan matrix `min(i,j) (n - max(i,j)) / n`.
pub fn root_coordinates(rs: &TypeARootSystem, lambda: &HighestWeight) -> Result<Vec<BigRational>> {
    rs.check(lambda)?;
    let n = rs.n() as u64;
    Ok((1..=rs.rank as u64)
        .map(|i| {
            let num: u64 = (1..=rs.rank as u64)
                .map(|j| i.min(j) * (n - i.max(j)) * lambda.coeffs[(j - 1) as usize])
                .sum();
            BigRational::new(BigInt::from(num), BigInt::from(n))
        })
        .collect())
}

/// Bound `|W| * prod (floor(c_i) + 1)` over the simple-root coordinates
/// `c_i` of `lambda`.
///
/// Every weight is Weyl-conjugate to a dominant weight `mu <= lambda`, and
/// `lambda - mu` has integer root coordinates between 0 and `c_i`, so this
/// bound always holds. It grows like `m^r` along a ray.
pub fn dominant_weight_count_bound(rs: &TypeARootSystem, lambda: &HighestWeight) -> Result<BigUint> {
    let coords = root_coordinates(rs, lambda)?;
    Ok(coords.iter().fold(rs.weyl_order(), |acc, c| {
        acc * (c.floor().to_integer().to_biguint().expect("dominant") + 1u32)
    }))
}

/// Number `q` of positive roots pairing positively with `lambda`, the
/// constant `c(lambda)`, and the ratio bound `c(lambda) m^{r-q}`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitRatio {
    pub q: usize,
    pub constant: BigRational,
    pub ratio_bound: BigRational,
}

pub fn orbit_dim_and_ratio(rs: &TypeARootSystem, lambda: &HighestWeight, m: u64) -> Result<OrbitRatio> {
    if m == 0 {
        return Err(invalid("ray parameter must be >= 1"));
    }
    let q = rs.positive_roots().iter().filter(|r| lambda.pairing(**r) > 0).count();
    let lower = weyl_dimension(rs, lambda)?.lower_bound;
    let bound = BigRational::from_integer(BigInt::from(weight_count_bound(rs, lambda)?));
    let constant = bound / lower;
    let exp = rs.rank as i32 - q as i32;
    let mr = BigRational::from_integer(BigInt::from(m));
    let ratio_bound = &constant * num_traits::Pow::pow(&mr, exp);
    Ok(OrbitRatio { q, constant, ratio_bound })
}

/// Casimir eigenvalue `<lambda, lambda + 2 delta>` in the trace form.
pub fn casimir_scalar(rs: &TypeARootSystem, lambda: &HighestWeight) -> Result<BigRational> {
    rs.check(lambda)?;
    let l = lambda.ambient();
    let d = rs.delta_ambient();
    let two = BigRational::from_integer(BigInt::from(2));
    Ok(l.iter().zip(&d).fold(BigRational::zero(), |acc, (li, di)| acc + li * (li + di * &two)))
}

/// Trace-form square norm `<lambda, lambda>`.
pub fn weight_norm_sq(rs: &TypeARootSystem, lambda: &HighestWeight) -> Result<BigRational> {
    rs.check(lambda)?;
    Ok(lambda.ambient().iter().fold(BigRational::zero(), |acc, v| acc + v * v))
}

/// Exact binomial coefficient.
pub fn binomial_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc = acc * BigUint::from(n - j) / BigUint::from(j + 1);
    }
    acc
}

/// Monomial basis of degree-`m` forms in `n` variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymPowerBasis {
    pub n: usize,
    pub m: u32,
}

impl SymPowerBasis {
    pub fn new(n: usize, m: u32) -> Result<Self> {
        if n < 2 {
            return Err(invalid(format!("need n >= 2, got {n}")));
        }
        Ok(Self { n, m })
    }

    pub fn dim(&self) -> BigUint {
        binomial_big(self.m as u64 + self.n as u64 - 1, self.n as u64 - 1)
    }

    /// Exponent vectors in reverse lexicographic order, starting with `x_1^m`.
    pub fn monomials(&self) -> Vec<Vec<u32>> {
        fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(cur.clone());
                return;
            }
            for v in (0..=left).rev() {
                cur[pos] = v;
                rec(pos + 1, left - v, cur, out);
            }
        }
        let mut out = Vec::new();
        rec(0, self.m, &mut vec![0u32; self.n], &mut out);
        out
    }

    /// Position of an exponent vector in [`monomials`](Self::monomials).
    pub fn index_of(&self, a: &[u32]) -> Option<usize> {
        if a.len() != self.n || a.iter().sum::<u32>() != self.m {
            return None;
        }
        let mut idx = 0usize;
        let mut left = self.m;
        for (pos, &ai) in a.iter().enumerate().take(self.n - 1) {
            let rest = (self.n - pos - 1) as u64;
            for v in ai + 1..=left {
                let r = (left - v) as u64;
                idx += binomial_small(r + rest - 1, rest - 1);
            }
            left -= ai;
        }
        Some(idx)
    }
}

fn binomial_small(n: u64, k: u64) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, j| acc * (n - j) as u128 / (j + 1) as u128) as usize
}
