//! Formal operator polynomials in the universal enveloping algebra of
//! `sl(n)`, kept in ordered (PBW) normal form, with exact coefficients.

mod reshape;
mod spectrum;
mod symbolic;

pub use reshape::{
    collapse_mass, exp_flow_angles, spectral_reshape, ReshapeChecks, ReshapeLevel, ReshapeResult,
};
pub use spectrum::{
    diagonal_spectrum, generic_operator, independence_check, norm_bound, DiagonalRep,
    GenericOperator, IrrepWeights, NormBound, NormMode,
};
pub use symbolic::{is_prime, SymbolicValue};

use crate::error::{invalid, Error, Result};
use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt::Debug;

/// Complex numbers with exact rational parts.
pub type ExactComplex = Complex<BigRational>;

/// Basis element of the Lie algebra (plus the Casimir symbol).
///
/// The derived order `Casimir < Torus < Root` with lexicographic indices is
/// the order used for normal forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// Central Casimir element.
    Casimir,
    /// Simple coroot `E_kk - E_{k+1,k+1}` (0-based `k`).
    Torus(usize),
    /// Matrix unit `E_ij`, `i != j` (0-based).
    Root(usize, usize),
}

impl Generator {
    pub fn is_diagonal(&self) -> bool {
        !matches!(self, Generator::Root(..))
    }

    /// Image under the formal adjoint.
    pub fn dagger(&self) -> Self {
        match *self {
            Generator::Root(i, j) => Generator::Root(j, i),
            g => g,
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        let ok = match *self {
            Generator::Casimir => true,
            Generator::Torus(k) => k + 1 < n,
            Generator::Root(i, j) => i != j && i < n && j < n,
        };
        if ok {
            Ok(())
        } else {
            Err(invalid(format!("generator {self:?} is not defined for sl({n})")))
        }
    }
}

/// `<e_k - e_{k+1}, e_i - e_j>`.
fn coroot_pairing(k: usize, i: usize, j: usize) -> i64 {
    let e = |a: usize, b: usize| i64::from(a == b);
    e(k, i) - e(k + 1, i) - e(k, j) + e(k + 1, j)
}

/// `[x, y]` as an integer combination of generators.
fn bracket(n: usize, x: Generator, y: Generator) -> Vec<(Generator, i64)> {
    use Generator::*;
    match (x, y) {
        (Casimir, _) | (_, Casimir) | (Torus(_), Torus(_)) => Vec::new(),
        (Torus(k), Root(i, j)) => {
            let c = coroot_pairing(k, i, j);
            if c == 0 {
                Vec::new()
            } else {
                vec![(Root(i, j), c)]
            }
        }
        (Root(i, j), Torus(k)) => {
            let c = coroot_pairing(k, i, j);
            if c == 0 {
                Vec::new()
            } else {
                vec![(Root(i, j), -c)]
            }
        }
        (Root(i, j), Root(k, l)) => {
            // [E_ij, E_kl] = d_jk E_il - d_li E_kj
            let mut out = Vec::new();
            let mut diag = vec![0i64; n];
            if j == k {
                if i == l {
                    diag[i] += 1;
                } else {
                    out.push((Root(i, l), 1));
                }
            }
            if l == i {
                if k == j {
                    diag[k] -= 1;
                } else {
                    out.push((Root(k, j), -1));
                }
            }
            let mut acc = 0;
            for (a, d) in diag.iter().enumerate().take(n - 1) {
                acc += d;
                if acc != 0 {
                    out.push((Torus(a), acc));
                }
            }
            out
        }
    }
}

/// Exact field of coefficients for operator polynomials.
pub trait Coefficient: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, r: &BigRational) -> Self;
    fn conj(&self) -> Self;
    fn to_complex(&self) -> Complex64;

    /// Product, when the coefficient set is closed under it.
    fn try_mul(&self, other: &Self) -> Option<Self>;

    fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Coefficient for ExactComplex {
    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn neg(&self) -> Self {
        -self.clone()
    }

    fn scale(&self, r: &BigRational) -> Self {
        Complex::new(&self.re * r, &self.im * r)
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    fn try_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
}

/// Exact complex number from integer real and imaginary parts.
pub fn exact(re: i64, im: i64) -> ExactComplex {
    Complex::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
}

/// Finite sum of ordered monomials in the generators of `sl(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorPoly<C: Coefficient> {
    n: usize,
    terms: BTreeMap<Vec<Generator>, C>,
}

impl<C: Coefficient> OperatorPoly<C> {
    pub fn zero(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(invalid(format!("sl(n) needs n >= 2, got {n}")));
        }
        Ok(Self { n, terms: BTreeMap::new() })
    }

    /// Builds the normal form of an arbitrary sum of words.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Vec<Generator>, C)>) -> Result<Self> {
        let mut p = Self::zero(n)?;
        for (word, c) in terms {
            for g in &word {
                g.validate(n)?;
            }
            p.push_word(word, c);
        }
        Ok(p)
    }

    pub fn monomial(n: usize, word: Vec<Generator>, c: C) -> Result<Self> {
        Self::from_terms(n, [(word, c)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Generator>, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// True when every generator is a torus element or the Casimir.
    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().flatten().all(Generator::is_diagonal)
    }

    fn accumulate(&mut self, word: Vec<Generator>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(slot) => {
                *slot = slot.add(&c);
                if slot.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, c);
            }
        }
    }

    /// Straightens `word` with the commutation relations and adds it.
    fn push_word(&mut self, word: Vec<Generator>, c: C) {
        let mut stack = vec![(word, c)];
        while let Some((w, c)) = stack.pop() {
            if c.is_zero() {
                continue;
            }
            match w.windows(2).position(|p| p[0] > p[1]) {
                None => self.accumulate(w, c),
                Some(i) => {
                    let (x, y) = (w[i], w[i + 1]);
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    stack.push((swapped, c.clone()));
                    for (g, k) in bracket(self.n, x, y) {
                        let mut shorter = Vec::with_capacity(w.len() - 1);
                        shorter.extend_from_slice(&w[..i]);
                        shorter.push(g);
                        shorter.extend_from_slice(&w[i + 2..]);
                        stack.push((shorter, c.scale_int(k)));
                    }
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(invalid("operators live in different algebras"));
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.accumulate(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let mut out = Self { n: self.n, terms: BTreeMap::new() };
        for (w, c) in &self.terms {
            out.accumulate(w.clone(), c.scale(r));
        }
        out
    }

    /// Product in the enveloping algebra.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(invalid("operators live in different algebras"));
        }
        let mut out = Self { n: self.n, terms: BTreeMap::new() };
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let word: Vec<Generator> = w1.iter().chain(w2).copied().collect();
                let c = c1
                    .try_mul(c2)
                    .ok_or_else(|| Error::Unsupported("coefficient product leaves the field".into()))?;
                out.push_word(word, c);
            }
        }
        Ok(out)
    }

    /// Formal adjoint: conjugate coefficients, reverse words, swap `E_ij`
    /// with `E_ji`, then return to normal form.
    pub fn dagger(&self) -> Self {
        let mut out = Self { n: self.n, terms: BTreeMap::new() };
        for (w, c) in &self.terms {
            let word = w.iter().rev().map(Generator::dagger).collect();
            out.push_word(word, c.conj());
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        self.dagger() == *self
    }

    /// Divides each coefficient by `s^{|I|}`.
    pub fn rescale(&self, map: &RescalingMap) -> Self {
        let mut out = Self { n: self.n, terms: BTreeMap::new() };
        for (w, c) in &self.terms {
            let factor = num_traits::Pow::pow(&map.scale, w.len() as u32);
            out.accumulate(w.clone(), c.scale(&(BigRational::from_integer(1.into()) / factor)));
        }
        out
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> OperatorPoly<D> {
        let mut out = OperatorPoly { n: self.n, terms: BTreeMap::new() };
        for (w, c) in &self.terms {
            out.accumulate(w.clone(), f(c));
        }
        out
    }
}

/// How a rescaling map chooses its scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RescaleMode {
    ByInteger,
    InverseDimension,
    InverseParameter,
}

/// Degree-graded map `a_I -> a_I / s^{|I|}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RescalingMap {
    pub mode: RescaleMode,
    pub scale: BigRational,
}

impl RescalingMap {
    fn checked(mode: RescaleMode, scale: BigRational) -> Result<Self> {
        if scale <= BigRational::zero() {
            return Err(invalid(format!("rescaling factor {scale} must be positive")));
        }
        Ok(Self { mode, scale })
    }

    pub fn by_integer(s: i64) -> Result<Self> {
        Self::checked(RescaleMode::ByInteger, BigRational::from_integer(s.into()))
    }

    pub fn inverse_dimension(dim: &num_bigint::BigUint) -> Result<Self> {
        Self::checked(RescaleMode::InverseDimension, BigRational::from_integer(BigInt::from(dim.clone())))
    }

    pub fn inverse_parameter(m: u64) -> Result<Self> {
        Self::checked(RescaleMode::InverseParameter, BigRational::from_integer(BigInt::from(m)))
    }
}

#[cfg(test)]
mod tests {
    use super::Generator::*;
    use super::*;

    fn poly(n: usize, terms: Vec<(Vec<Generator>, ExactComplex)>) -> OperatorPoly<ExactComplex> {
        OperatorPoly::from_terms(n, terms).unwrap()
    }

    #[test]
    fn self_adjoint_generator() {
        let p = poly(3, vec![(vec![Torus(0)], exact(1, 0))]);
        assert_eq!(p.dagger(), p);
        assert!(p.is_hermitian());
    }

    #[test]
    fn imaginary_multiple_is_not_hermitian() {
        let p = poly(3, vec![(vec![Torus(0)], exact(0, 1))]);
        assert_eq!(p.dagger(), poly(3, vec![(vec![Torus(0)], exact(0, -1))]));
        assert!(!p.is_hermitian());
    }

    #[test]
    fn symmetric_product_is_hermitian() {
        let p = poly(3, vec![(vec![Torus(0), Torus(1)], exact(2, 0)), (vec![Torus(1), Torus(0)], exact(2, 0))]);
        assert!(p.is_hermitian());
        assert_eq!(p.terms().len(), 1);
    }

    #[test]
    fn commutator_of_root_vectors() {
        // E_01 E_10 - E_10 E_01 = H_0
        let p = poly(2, vec![(vec![Root(0, 1), Root(1, 0)], exact(1, 0)), (vec![Root(1, 0), Root(0, 1)], exact(-1, 0))]);
        assert_eq!(p, poly(2, vec![(vec![Torus(0)], exact(1, 0))]));
        // E_02 E_20 - E_20 E_02 = H_0 + H_1
        let q = poly(3, vec![(vec![Root(0, 2), Root(2, 0)], exact(1, 0)), (vec![Root(2, 0), Root(0, 2)], exact(-1, 0))]);
        assert_eq!(q, poly(3, vec![(vec![Torus(0)], exact(1, 0)), (vec![Torus(1)], exact(1, 0))]));
    }

    #[test]
    fn torus_root_commutator() {
        // [H_0, E_01] = 2 E_01 ; written in reverse order: E_01 H_0 = H_0 E_01 - 2 E_01
        let p = poly(2, vec![(vec![Root(0, 1), Torus(0)], exact(1, 0))]);
        let want = poly(2, vec![(vec![Torus(0), Root(0, 1)], exact(1, 0)), (vec![Root(0, 1)], exact(-2, 0))]);
        assert_eq!(p, want);
    }

    #[test]
    fn casimir_is_central() {
        let p = poly(3, vec![(vec![Root(1, 2), Casimir], exact(1, 0))]);
        assert_eq!(p.terms().keys().next().unwrap(), &vec![Casimir, Root(1, 2)]);
    }

    #[test]
    fn dagger_is_involution_with_roots() {
        let p = poly(
            3,
            vec![
                (vec![Root(0, 1), Root(1, 2), Torus(0)], exact(3, 2)),
                (vec![Root(2, 0)], exact(0, 1)),
                (vec![Casimir, Root(1, 0)], exact(-1, 5)),
            ],
        );
        assert_eq!(p.dagger().dagger(), p);
        let h = p.add(&p.dagger()).unwrap();
        assert!(h.is_hermitian());
    }

    #[test]
    fn rescale_by_degree() {
        let p = poly(2, vec![(vec![Torus(0)], exact(1, 0)), (vec![Torus(0), Torus(0)], exact(1, 0))]);
        let r = p.rescale(&RescalingMap::by_integer(10).unwrap());
        let t = r.terms();
        assert_eq!(t[&vec![Torus(0)]], Complex::new(BigRational::new(1.into(), 10.into()), BigRational::zero()));
        assert_eq!(t[&vec![Torus(0), Torus(0)]], Complex::new(BigRational::new(1.into(), 100.into()), BigRational::zero()));
        assert!(RescalingMap::by_integer(0).is_err());
    }

    #[test]
    fn rejects_foreign_generators() {
        assert!(OperatorPoly::<ExactComplex>::monomial(2, vec![Torus(1)], exact(1, 0)).is_err());
        assert!(OperatorPoly::<ExactComplex>::monomial(2, vec![Root(1, 1)], exact(1, 0)).is_err());
    }

    #[test]
    fn products_straighten() {
        let e = poly(2, vec![(vec![Root(0, 1)], exact(1, 0))]);
        let f = poly(2, vec![(vec![Root(1, 0)], exact(1, 0))]);
        let ef = e.mul(&f).unwrap();
        let fe = f.mul(&e).unwrap();
        let diff = ef.add(&fe.scale(&BigRational::from_integer((-1).into()))).unwrap();
        assert_eq!(diff, poly(2, vec![(vec![Torus(0)], exact(1, 0))]));
    }
}
