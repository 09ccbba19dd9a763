use super::{rat_to_f64, Coefficient};
use crate::error::{invalid, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Exact real number `q_0 + sum_p q_p sqrt(p)` over distinct primes `p`.
///
/// Square roots of distinct primes are linearly independent over the
/// rationals together with 1, so the coordinate vector over
/// `{1, sqrt(p), ...}` decides equality and linear dependence exactly.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymbolicValue {
    rational: BigRational,
    roots: BTreeMap<u64, BigRational>,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl SymbolicValue {
    pub fn rational(q: BigRational) -> Self {
        Self { rational: q, roots: BTreeMap::new() }
    }

    pub fn integer(k: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(k)))
    }

    /// `q * sqrt(p)` for a prime `p`.
    pub fn sqrt_prime(p: u64, q: BigRational) -> Result<Self> {
        if !is_prime(p) {
            return Err(invalid(format!("{p} is not prime")));
        }
        let mut roots = BTreeMap::new();
        if !q.is_zero() {
            roots.insert(p, q);
        }
        Ok(Self { rational: BigRational::zero(), roots })
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn root_parts(&self) -> &BTreeMap<u64, BigRational> {
        &self.roots
    }

    /// Primes that occur with non-zero coefficient.
    pub fn symbols(&self) -> BTreeSet<u64> {
        self.roots.keys().copied().collect()
    }

    /// Coordinates over `{1, sqrt(p) for p in basis}`.
    pub fn coordinates(&self, basis: &[u64]) -> Vec<BigRational> {
        std::iter::once(self.rational.clone())
            .chain(basis.iter().map(|p| self.roots.get(p).cloned().unwrap_or_else(BigRational::zero)))
            .collect()
    }

    pub fn to_f64(&self) -> f64 {
        let mut acc = rat_to_f64(&self.rational);
        for (p, q) in &self.roots {
            acc += rat_to_f64(q) * (*p as f64).sqrt();
        }
        acc
    }

    /// Integer part of `sqrt(p)`, checked by exact squaring.
    pub fn floor_sqrt_prime(p: u64) -> u64 {
        let mut r = (p as f64).sqrt() as u64;
        while r * r > p {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= p {
            r += 1;
        }
        r
    }
}

impl Coefficient for SymbolicValue {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.roots.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.rational += &other.rational;
        for (p, q) in &other.roots {
            let slot = out.roots.entry(*p).or_insert_with(BigRational::zero);
            *slot += q;
            if slot.is_zero() {
                out.roots.remove(p);
            }
        }
        out
    }

    fn neg(&self) -> Self {
        Self {
            rational: -self.rational.clone(),
            roots: self.roots.iter().map(|(p, q)| (*p, -q.clone())).collect(),
        }
    }

    fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::default();
        }
        Self {
            rational: &self.rational * r,
            roots: self.roots.iter().map(|(p, q)| (*p, q * r)).collect(),
        }
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64(), 0.0)
    }

    /// Closed only when at most one factor carries square roots.
    fn try_mul(&self, other: &Self) -> Option<Self> {
        if self.roots.is_empty() {
            Some(other.scale(&self.rational))
        } else if other.roots.is_empty() {
            Some(self.scale(&other.rational))
        } else {
            None
        }
    }
}

/// Rank over the rationals by Gaussian elimination.
pub(crate) fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = BigRational::one() / rows[rank][col].clone();
        let pivot_row: Vec<BigRational> = rows[rank].iter().map(|v| v * &inv).collect();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for (x, p) in rows[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}
