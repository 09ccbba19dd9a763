use super::symbolic::rational_rank;
use super::{Coefficient, ExactComplex, Generator, OperatorPoly, SymbolicValue};
use crate::error::{invalid, Error, Result};
use crate::rep::{
    casimir_scalar, gelfand_tsetlin_weights, weight_norm_sq, weyl_dimension, HighestWeight,
    SymPowerBasis, TypeARootSystem, WeightMultiset,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use std::collections::BTreeSet;

/// A representation in which torus generators and the Casimir act
/// diagonally on a weight basis.
pub trait DiagonalRep {
    fn n(&self) -> usize;
    fn highest_weight(&self) -> HighestWeight;
    /// One weight per basis vector, in partition coordinates.
    fn weights(&self) -> Vec<Vec<i64>>;
}

impl DiagonalRep for SymPowerBasis {
    fn n(&self) -> usize {
        self.n
    }

    fn highest_weight(&self) -> HighestWeight {
        HighestWeight::sym_power(self.n, self.m as u64)
    }

    fn weights(&self) -> Vec<Vec<i64>> {
        self.monomials().iter().map(|a| a.iter().map(|v| *v as i64).collect()).collect()
    }
}

/// Weight basis of an arbitrary irreducible representation.
#[derive(Debug, Clone, PartialEq)]
pub struct IrrepWeights {
    lambda: HighestWeight,
    n: usize,
    weights: Vec<Vec<i64>>,
}

impl IrrepWeights {
    pub fn new(rs: &TypeARootSystem, lambda: &HighestWeight) -> Result<Self> {
        let multiset = gelfand_tsetlin_weights(rs, lambda)?;
        Ok(Self::from_multiset(rs.n(), lambda.clone(), &multiset))
    }

    pub fn from_multiset(n: usize, lambda: HighestWeight, multiset: &WeightMultiset) -> Self {
        let weights = multiset
            .iter()
            .flat_map(|(w, k)| std::iter::repeat_n(w.clone(), *k as usize))
            .collect();
        Self { lambda, n, weights }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }
}

impl DiagonalRep for IrrepWeights {
    fn n(&self) -> usize {
        self.n
    }

    fn highest_weight(&self) -> HighestWeight {
        self.lambda.clone()
    }

    fn weights(&self) -> Vec<Vec<i64>> {
        self.weights.clone()
    }
}

fn generator_value(g: Generator, weight: &[i64], casimir: &BigRational) -> BigRational {
    match g {
        Generator::Casimir => casimir.clone(),
        Generator::Torus(k) => BigRational::from_integer(BigInt::from(weight[k] - weight[k + 1])),
        Generator::Root(..) => unreachable!("checked diagonal"),
    }
}

/// Eigenvalue of a diagonal operator on each basis vector of `rep`.
pub fn diagonal_spectrum<C: Coefficient>(p: &OperatorPoly<C>, rep: &impl DiagonalRep) -> Result<Vec<C>> {
    if !p.is_diagonal() {
        return Err(Error::Unsupported("spectra need torus and Casimir generators only".into()));
    }
    if p.n() != rep.n() {
        return Err(invalid(format!("operator lives in sl({}), representation in sl({})", p.n(), rep.n())));
    }
    let rs = TypeARootSystem::su(rep.n())?;
    let casimir = casimir_scalar(&rs, &rep.highest_weight())?;
    Ok(rep
        .weights()
        .iter()
        .map(|w| {
            p.terms().iter().fold(C::zero(), |acc, (word, c)| {
                let f = word
                    .iter()
                    .fold(BigRational::one(), |f, g| f * generator_value(*g, w, &casimir));
                acc.add(&c.scale(&f))
            })
        })
        .collect())
}

/// True when the eigenvalues are linearly independent over the rationals.
pub fn independence_check(spectrum: &[SymbolicValue]) -> Result<bool> {
    if spectrum.is_empty() {
        return Err(invalid("empty spectrum"));
    }
    let basis: Vec<u64> =
        spectrum.iter().flat_map(|v| v.symbols()).collect::<BTreeSet<_>>().into_iter().collect();
    if spectrum.len() > basis.len() + 1 {
        return Ok(false);
    }
    let rows = spectrum.iter().map(|v| v.coordinates(&basis)).collect();
    Ok(rational_rank(rows) == spectrum.len())
}

/// `b * Casimir + sum_j c_j alpha_j` with `c_j = (sqrt(p_j) - floor(sqrt(p_j))) / n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GenericOperator {
    pub poly: OperatorPoly<SymbolicValue>,
    pub b: BigRational,
    pub c: Vec<SymbolicValue>,
    pub primes: Vec<u64>,
    /// `b * (r(m+1) - r(m))` for `m = 0..=m_max` along the ray through `f_1`.
    pub scaled_gaps: Vec<BigRational>,
}

fn first_primes(k: usize) -> Vec<u64> {
    (2u64..).filter(|p| super::is_prime(*p)).take(k).collect()
}

pub fn generic_operator(n: usize, m_max: u64) -> Result<GenericOperator> {
    if n < 2 || m_max < 1 {
        return Err(invalid("need n >= 2 and m_max >= 1"));
    }
    let rs = TypeARootSystem::su(n)?;
    let primes = first_primes(n - 1);
    let inv_n = BigRational::new(BigInt::one(), BigInt::from(n as u64));
    let c: Vec<SymbolicValue> = primes
        .iter()
        .map(|&p| {
            let fl = SymbolicValue::floor_sqrt_prime(p) as i64;
            SymbolicValue::sqrt_prime(p, inv_n.clone())
                .map(|s| s.add(&SymbolicValue::integer(-fl).scale(&inv_n)))
        })
        .collect::<Result<_>>()?;
    let lambda = HighestWeight::sym_power(n, 1);
    let b = BigRational::one() / weight_norm_sq(&rs, &lambda)?;
    let mut scaled_gaps = Vec::new();
    for m in 0..=m_max {
        let lo = casimir_scalar(&rs, &lambda.scaled(m))?;
        let hi = casimir_scalar(&rs, &lambda.scaled(m + 1))?;
        let g = &b * (hi - lo);
        if g < BigRational::from_integer(BigInt::from(2 * m)) {
            return Err(Error::Invariant(format!("Casimir gap too small at m = {m}")));
        }
        scaled_gaps.push(g);
    }
    let mut terms = vec![(vec![Generator::Casimir], SymbolicValue::rational(b.clone()))];
    for (j, cj) in c.iter().enumerate() {
        terms.push((vec![Generator::Torus(j)], cj.clone()));
    }
    let poly = OperatorPoly::from_terms(n, terms)?;
    Ok(GenericOperator { poly, b, c, primes, scaled_gaps })
}

/// Which scale the norm comparison rescales by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMode {
    None,
    InverseDimension,
    InverseParameter,
}

/// Exact spectral radius of a rescaled diagonal operator against the
/// coefficient bound `sum |a_I| (m |lambda|)^{|I|} / s^{|I|}`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormBound {
    pub exact_sup: f64,
    pub bound: f64,
    /// Scale actually applied to the operator.
    pub scale: BigRational,
    /// Lower estimate of the scale used in the bound.
    pub bound_scale: BigRational,
}

/// Compares the largest eigenvalue modulus of the rescaled operator on the
/// irreducible representation `m * lambda` with its coefficient bound.
///
/// Only torus generators are accepted: the bound controls each of them by
/// `m |lambda|`. For inverse-dimension rescaling the bound uses the product
/// lower estimate of the dimension, so it is always at least the exact value.
pub fn norm_bound(
    p: &OperatorPoly<ExactComplex>,
    lambda: &HighestWeight,
    m: u64,
    mode: NormMode,
) -> Result<NormBound> {
    if m == 0 {
        return Err(invalid("ray parameter must be >= 1"));
    }
    if p.terms().keys().flatten().any(|g| !matches!(g, Generator::Torus(_))) {
        return Err(Error::Unsupported("norm bounds take torus generators only".into()));
    }
    let rs = TypeARootSystem::su(p.n())?;
    let ml = lambda.scaled(m);
    let rep = IrrepWeights::new(&rs, &ml)?;
    let mr = BigRational::from_integer(BigInt::from(m));
    let (scale, bound_scale) = match mode {
        NormMode::None => (BigRational::one(), BigRational::one()),
        NormMode::InverseParameter => (mr.clone(), mr.clone()),
        NormMode::InverseDimension => {
            let dim = BigRational::from_integer(BigInt::from(weyl_dimension(&rs, &ml)?.dimension));
            (dim, weyl_dimension(&rs, &ml)?.lower_bound)
        }
    };
    let scaled = p.rescale(&super::RescalingMap { mode: super::RescaleMode::ByInteger, scale: scale.clone() });
    let exact_sup = diagonal_spectrum(&scaled, &rep)?
        .iter()
        .map(|v| v.to_complex().norm())
        .fold(0.0, f64::max);
    let per_generator = (m * lambda.level()) as f64;
    let bs = bound_scale.to_f64().unwrap_or(f64::NAN);
    let bound = p
        .terms()
        .iter()
        .map(|(w, c)| c.to_complex().norm() * (per_generator / bs).powi(w.len() as i32))
        .sum();
    Ok(NormBound { exact_sup, bound, scale, bound_scale })
}

#[cfg(test)]
mod tests {
    use super::super::exact;
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn single_generator_on_binary_forms_is_dependent() {
        let p = OperatorPoly::monomial(2, vec![Generator::Torus(0)], SymbolicValue::sqrt_prime(2, q(1, 1)).unwrap())
            .unwrap();
        let spec = diagonal_spectrum(&p, &SymPowerBasis::new(2, 2).unwrap()).unwrap();
        assert!(spec[1].is_zero());
        assert!(!independence_check(&spec).unwrap());
        assert!(independence_check(&[]).is_err());
    }

    #[test]
    fn generic_operator_is_generic_on_the_standard_rep() {
        let g = generic_operator(2, 10).unwrap();
        assert_eq!(g.b, q(2, 1));
        let spec = diagonal_spectrum(&g.poly, &SymPowerBasis::new(2, 1).unwrap()).unwrap();
        assert!(independence_check(&spec).unwrap());
    }

    #[test]
    fn generic_torus_part_on_su3_standard_rep() {
        let g = generic_operator(3, 1).unwrap();
        let torus_only = OperatorPoly::from_terms(
            3,
            g.c.iter().enumerate().map(|(j, c)| (vec![Generator::Torus(j)], c.clone())),
        )
        .unwrap();
        let spec = diagonal_spectrum(&torus_only, &SymPowerBasis::new(3, 1).unwrap()).unwrap();
        let distinct: BTreeSet<_> = spec.iter().map(|v| v.coordinates(&g.primes)).collect();
        assert_eq!(distinct.len(), 3);
        for m in 1..6 {
            let spec = diagonal_spectrum(&torus_only, &SymPowerBasis::new(3, m).unwrap()).unwrap();
            assert!(spec.iter().all(|v| v.to_f64().abs() <= m as f64));
        }
    }

    #[test]
    fn casimir_gaps_grow() {
        let g = generic_operator(4, 20).unwrap();
        for (m, gap) in g.scaled_gaps.iter().enumerate() {
            assert!(*gap >= q(2 * m as i64 + 1, 1));
        }
    }

    #[test]
    fn root_generators_are_rejected() {
        let p = OperatorPoly::monomial(2, vec![Generator::Root(0, 1)], exact(1, 0)).unwrap();
        assert!(matches!(
            diagonal_spectrum(&p, &SymPowerBasis::new(2, 1).unwrap()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn unrescaled_torus_generator_norm() {
        let p = OperatorPoly::monomial(3, vec![Generator::Torus(0)], exact(1, 0)).unwrap();
        let r = norm_bound(&p, &HighestWeight::new(vec![1, 0]), 7, NormMode::None).unwrap();
        assert_eq!(r.exact_sup, 7.0);
        assert_eq!(r.bound, 7.0);
    }

    #[test]
    fn sl2_inverse_dimension_does_not_collapse() {
        let p = OperatorPoly::monomial(2, vec![Generator::Torus(0)], exact(1, 0)).unwrap();
        for m in [1u64, 5, 40] {
            let r = norm_bound(&p, &HighestWeight::new(vec![1]), m, NormMode::InverseDimension).unwrap();
            assert!((r.exact_sup - m as f64 / (m + 1) as f64).abs() < 1e-15);
            assert!(r.exact_sup <= r.bound);
        }
    }
}
