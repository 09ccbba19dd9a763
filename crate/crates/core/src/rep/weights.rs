use super::{HighestWeight, SymPowerBasis, TypeARootSystem};
use crate::error::{invalid, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Weights in ambient integer coordinates with their multiplicities.
pub type WeightMultiset = BTreeMap<Vec<i64>, u64>;

/// Weight multiset of the irreducible representation with highest weight
/// `lambda`, by enumerating Gelfand-Tsetlin patterns.
///
/// The weight of a pattern is the vector of successive row-sum differences,
/// so weights are in the same coordinates as [`HighestWeight::partition`].
pub fn gelfand_tsetlin_weights(rs: &TypeARootSystem, lambda: &HighestWeight) -> Result<WeightMultiset> {
    rs.check(lambda)?;
    let top: Vec<i64> = lambda.partition().iter().map(|v| *v as i64).collect();
    let n = top.len();
    let mut out = WeightMultiset::new();
    // row_sums[k] is the sum of the row of length k + 1
    let mut row_sums = vec![0i64; n];
    row_sums[n - 1] = top.iter().sum();
    descend(&top, &mut row_sums, &mut out);
    Ok(out)
}

fn descend(row: &[i64], row_sums: &mut [i64], out: &mut WeightMultiset) {
    if row.len() == 1 {
        let mut prev = 0;
        let w = row_sums
            .iter()
            .map(|s| {
                let d = s - prev;
                prev = *s;
                d
            })
            .collect();
        *out.entry(w).or_insert(0) += 1;
        return;
    }
    let mut next = Vec::with_capacity(row.len() - 1);
    choose(row, &mut next, row_sums, out);
}

/// Enumerates rows interlacing `row` from below.
fn choose(row: &[i64], next: &mut Vec<i64>, row_sums: &mut [i64], out: &mut WeightMultiset) {
    let pos = next.len();
    if pos + 1 == row.len() {
        row_sums[pos - 1] = next.iter().sum();
        let child = next.clone();
        descend(&child, row_sums, out);
        return;
    }
    for v in row[pos + 1]..=row[pos] {
        next.push(v);
        choose(row, next, row_sums, out);
        next.pop();
    }
}

/// Weight multiset of the representation with highest weight
/// `m (f_1 + f_{n-1})`, computed as `Sym^m (x) Sym^m*` minus
/// `Sym^{m-1} (x) Sym^{m-1}*`. Weights are shifted by `m` so that they use
/// partition coordinates.
pub fn adjoint_ray_weights(n: usize, m: u32) -> Result<WeightMultiset> {
    if n < 3 {
        return Err(invalid("the ray through f_1 + f_{n-1} needs n >= 3"));
    }
    let tensor = |deg: u32| -> WeightMultiset {
        let mons = SymPowerBasis { n, m: deg }.monomials();
        let mut out = WeightMultiset::new();
        for a in &mons {
            for b in &mons {
                let w: Vec<i64> =
                    a.iter().zip(b).map(|(x, y)| *x as i64 - *y as i64 + m as i64).collect();
                *out.entry(w).or_insert(0) += 1;
            }
        }
        out
    };
    let mut big = tensor(m);
    if m > 0 {
        for (w, k) in tensor(m - 1) {
            let slot = big.get_mut(&w).expect("lower tensor weights are contained");
            *slot -= k;
            if *slot == 0 {
                big.remove(&w);
            }
        }
    }
    Ok(big)
}

/// Number of distinct weights of the irreducible representation with
/// highest weight `lambda`: integer vectors with the same total that are
/// majorized by its partition.
pub fn distinct_weight_count(rs: &TypeARootSystem, lambda: &HighestWeight) -> Result<u64> {
    rs.check(lambda)?;
    let p = lambda.partition();
    let n = p.len();
    let total: u64 = p.iter().sum();
    let prefix: Vec<u64> = p
        .iter()
        .scan(0, |acc, v| {
            *acc += v;
            Some(*acc)
        })
        .collect();

    fn rec(pos: usize, left: u64, cap: u64, cur: &mut Vec<u64>, prefix: &[u64], count: &mut u64) {
        let n = prefix.len();
        if pos + 1 == n {
            if left > cap {
                return;
            }
            cur.push(left);
            let mut sorted = cur.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            let mut acc = 0;
            if sorted.iter().zip(prefix).all(|(v, bound)| {
                acc += v;
                acc <= *bound
            }) {
                *count += 1;
            }
            cur.pop();
            return;
        }
        for v in 0..=left.min(cap) {
            cur.push(v);
            rec(pos + 1, left - v, cap, cur, prefix, count);
            cur.pop();
        }
    }

    let mut count = 0;
    rec(0, total, p[0], &mut Vec::with_capacity(n), &prefix, &mut count);
    Ok(count)
}

/// Eigenvalue `sum_j c_j (mu_j - mu_{j+1})` of a torus element on weight `mu`.
pub fn torus_eigenvalue(weight: &[i64], coeffs: &[BigRational]) -> BigRational {
    weight
        .windows(2)
        .zip(coeffs)
        .fold(BigRational::zero(), |acc, (w, c)| acc + c * BigInt::from(w[0] - w[1]))
}

/// Torus spectrum on a representation with its distinct-value statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct RepSpectrum {
    pub eigenvalues: Vec<BigRational>,
    pub dim: usize,
    pub distinct: usize,
    /// Number of distinct eigenvalues over the dimension.
    pub distinct_ratio: BigRational,
    /// Mass at zero of the spacing measure, `1 - distinct_ratio`.
    pub mass_at_zero: BigRational,
}

impl RepSpectrum {
    pub fn from_eigenvalues(eigenvalues: Vec<BigRational>) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(invalid("empty spectrum"));
        }
        let distinct = eigenvalues.iter().collect::<BTreeSet<_>>().len();
        let dim = eigenvalues.len();
        let distinct_ratio =
            BigRational::new(BigInt::from(distinct as u64), BigInt::from(dim as u64));
        let mass_at_zero = BigRational::one() - &distinct_ratio;
        Ok(Self { eigenvalues, dim, distinct, distinct_ratio, mass_at_zero })
    }

    /// Spectrum of a torus element on a weight multiset, repeated by multiplicity.
    pub fn from_weights(weights: &WeightMultiset, coeffs: &[BigRational]) -> Result<Self> {
        let mut ev = Vec::new();
        for (w, k) in weights {
            let e = torus_eigenvalue(w, coeffs);
            ev.extend(std::iter::repeat_n(e, *k as usize));
        }
        Self::from_eigenvalues(ev)
    }
}

/// Spectrum of `sum_j c_j alpha_j` on degree-`m` forms in `n` variables, in
/// monomial order.
pub fn sym_power_spectrum(n: usize, m: u32, coeffs: &[BigRational]) -> Result<RepSpectrum> {
    let basis = SymPowerBasis::new(n, m)?;
    if coeffs.len() != n - 1 {
        return Err(invalid(format!("need {} coefficients, got {}", n - 1, coeffs.len())));
    }
    let ev = basis
        .monomials()
        .iter()
        .map(|a| {
            let w: Vec<i64> = a.iter().map(|v| *v as i64).collect();
            torus_eigenvalue(&w, coeffs)
        })
        .collect();
    RepSpectrum::from_eigenvalues(ev)
}

/// Number of distinct componentwise products of spectra given in a common
/// basis order.
pub fn product_spectrum_count(spectra: &[Vec<BigRational>]) -> Result<usize> {
    let first = spectra.first().ok_or_else(|| invalid("no spectra given"))?;
    if spectra.iter().any(|s| s.len() != first.len()) {
        return Err(invalid("spectra have mismatched lengths"));
    }
    let products: BTreeSet<BigRational> = (0..first.len())
        .map(|i| spectra.iter().fold(BigRational::one(), |acc, s| acc * &s[i]))
        .collect();
    Ok(products.len())
}
