//! States on the lowering orbit of the highest-weight vector of degree-`m`
//! forms, their expectation values, and the classical limit read off from
//! rescaled expectations along the ray.

use crate::error::{invalid, Error, Result};
use crate::numeric::ln_factorial;
use crate::operator::{Coefficient, Generator, OperatorPoly};
use crate::rep::{casimir_scalar, HighestWeight, SymPowerBasis, TypeARootSystem};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};

/// Point of the lowering chart: `u = exp(sum w_ij E_ij)` over `i > j`.
#[derive(Debug, Clone, PartialEq)]
pub struct LoweringPoint {
    n: usize,
    entries: Vec<((usize, usize), Complex64)>,
}

impl LoweringPoint {
    pub fn new(n: usize, entries: Vec<((usize, usize), Complex64)>) -> Result<Self> {
        if n < 2 {
            return Err(invalid(format!("need n >= 2, got {n}")));
        }
        for &((i, j), w) in &entries {
            if !(i > j && i < n) {
                return Err(invalid(format!("({i}, {j}) is not a lowering direction for n = {n}")));
            }
            if !(w.re.is_finite() && w.im.is_finite()) {
                return Err(invalid("lowering parameters must be finite"));
            }
        }
        Ok(Self { n, entries })
    }

    pub fn origin(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    /// The one-parameter chart of `su(2)`.
    pub fn su2(w: Complex64) -> Self {
        Self { n: 2, entries: vec![((1, 0), w)] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[((usize, usize), Complex64)] {
        &self.entries
    }

    /// `u e_1`, the linear form whose `m`-th power is the orbit state.
    pub fn first_column(&self) -> Vec<Complex64> {
        let mut col = vec![Complex64::new(0.0, 0.0); self.n];
        col[0] = Complex64::new(1.0, 0.0);
        let mut term = col.clone();
        for k in 1..self.n {
            let mut next = vec![Complex64::new(0.0, 0.0); self.n];
            for &((i, j), w) in &self.entries {
                next[i] += w * term[j];
            }
            for (c, t) in col.iter_mut().zip(&mut next) {
                *t /= k as f64;
                *c += *t;
            }
            term = next;
        }
        col
    }
}

/// Vector in degree-`m` forms, kept as unit amplitudes over the orthonormal
/// basis `x^a / sqrt(a!/m!)` plus the log of the squared norm.
#[derive(Debug, Clone)]
pub struct RepState {
    basis: SymPowerBasis,
    monomials: Vec<Vec<u32>>,
    amps: Vec<Complex64>,
    ln_norm_sq: f64,
}

fn ln_weight(a: &[u32], m: u32) -> f64 {
    // ln(a!/m!)
    a.iter().map(|&v| ln_factorial(v as u64)).sum::<f64>() - ln_factorial(m as u64)
}

impl RepState {
    fn from_log_parts(basis: SymPowerBasis, monomials: Vec<Vec<u32>>, parts: Vec<Option<(f64, f64)>>) -> Result<Self> {
        let top = parts.iter().flatten().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        if !top.is_finite() {
            return Err(invalid("state is zero"));
        }
        let mut amps: Vec<Complex64> = parts
            .iter()
            .map(|p| p.map_or(Complex64::new(0.0, 0.0), |(lm, ph)| Complex64::from_polar((lm - top).exp(), ph)))
            .collect();
        let sq: f64 = amps.iter().map(|c| c.norm_sqr()).sum();
        let s = sq.sqrt();
        amps.iter_mut().for_each(|c| *c /= s);
        Ok(Self { basis, monomials, amps, ln_norm_sq: 2.0 * top + sq.ln() })
    }

    /// State with the given coefficients on [`SymPowerBasis::monomials`].
    pub fn from_monomial_coefficients(n: usize, m: u32, coeffs: &[Complex64]) -> Result<Self> {
        let basis = SymPowerBasis::new(n, m)?;
        let monomials = basis.monomials();
        if coeffs.len() != monomials.len() {
            return Err(invalid(format!("expected {} coefficients, got {}", monomials.len(), coeffs.len())));
        }
        let parts = coeffs
            .iter()
            .zip(&monomials)
            .map(|(c, a)| (c.norm() > 0.0).then(|| (c.norm().ln() + 0.5 * ln_weight(a, m), c.arg())))
            .collect();
        Self::from_log_parts(basis, monomials, parts)
    }

    pub fn n(&self) -> usize {
        self.basis.n
    }

    pub fn level(&self) -> u32 {
        self.basis.m
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    /// Unit-norm amplitudes over the orthonormal monomial basis.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// `ln <x, x>` in the invariant inner product.
    pub fn ln_norm_sq(&self) -> f64 {
        self.ln_norm_sq
    }

    /// Coefficients on the monomials; may overflow for large levels.
    pub fn monomial_coefficients(&self) -> Vec<Complex64> {
        let m = self.basis.m;
        self.amps
            .iter()
            .zip(&self.monomials)
            .map(|(c, a)| c * (0.5 * (self.ln_norm_sq - ln_weight(a, m))).exp())
            .collect()
    }

    fn index(&self) -> HashMap<&[u32], usize> {
        self.monomials.iter().enumerate().map(|(i, a)| (a.as_slice(), i)).collect()
    }

    fn apply_vec(&self, g: Generator, v: &[Complex64], index: &HashMap<&[u32], usize>) -> Result<Vec<Complex64>> {
        let n = self.n();
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        match g {
            Generator::Casimir => {
                let rs = TypeARootSystem::su(n)?;
                let c = casimir_scalar(&rs, &HighestWeight::sym_power(n, self.level() as u64))?;
                let c = c.to_f64().unwrap_or(f64::NAN);
                out.iter_mut().zip(v).for_each(|(o, x)| *o = x * c);
            }
            Generator::Torus(k) if k + 1 < n => {
                for ((o, x), a) in out.iter_mut().zip(v).zip(&self.monomials) {
                    *o = x * (a[k] as f64 - a[k + 1] as f64);
                }
            }
            Generator::Root(i, j) if i != j && i < n && j < n => {
                let mut b = vec![0u32; n];
                for (x, a) in v.iter().zip(&self.monomials) {
                    if a[j] == 0 || x.norm_sqr() == 0.0 {
                        continue;
                    }
                    b.copy_from_slice(a);
                    b[j] -= 1;
                    b[i] += 1;
                    let f = ((a[j] as f64) * (a[i] as f64 + 1.0)).sqrt();
                    out[index[b.as_slice()]] += x * f;
                }
            }
            _ => return Err(invalid(format!("generator {g:?} is not defined for n = {n}"))),
        }
        Ok(out)
    }

    /// `rho(g) x` as amplitudes relative to the unit-normalized state.
    pub fn apply(&self, g: Generator) -> Result<Vec<Complex64>> {
        self.apply_vec(g, &self.amps, &self.index())
    }

    /// `<x, rho(g_1) ... rho(g_p) x> / <x, x>`; the empty word gives 1.
    pub fn expectation_word(&self, word: &[Generator]) -> Result<Complex64> {
        let index = self.index();
        let mut v = self.amps.clone();
        for &g in word.iter().rev() {
            v = self.apply_vec(g, &v, &index)?;
        }
        Ok(self.amps.iter().zip(&v).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn expectation<C: Coefficient>(&self, op: &OperatorPoly<C>) -> Result<Complex64> {
        if op.n() != self.n() {
            return Err(invalid("operator and state live on different algebras"));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (word, c) in op.terms() {
            acc += c.to_complex() * self.expectation_word(word)?;
        }
        Ok(acc)
    }

    /// Action of the torus element with eigenphases `exp(2 pi i theta_k)`.
    pub fn torus_act(&self, theta: &[f64]) -> Result<Self> {
        if theta.len() != self.n() {
            return Err(invalid("need one phase per coordinate"));
        }
        let mut out = self.clone();
        for (c, a) in out.amps.iter_mut().zip(&self.monomials) {
            let ph: f64 = a.iter().zip(theta).map(|(&k, t)| k as f64 * t).sum();
            *c *= Complex64::from_polar(1.0, std::f64::consts::TAU * ph);
        }
        Ok(out)
    }
}

/// `sum conj(x_a) y_a a!/m!` for coefficient vectors on the monomials.
pub fn invariant_inner_product(basis: &SymPowerBasis, x: &[Complex64], y: &[Complex64]) -> Result<Complex64> {
    let monomials = basis.monomials();
    if x.len() != monomials.len() || y.len() != monomials.len() {
        return Err(invalid("coefficient vectors do not match the basis"));
    }
    Ok(monomials
        .iter()
        .zip(x.iter().zip(y))
        .map(|(a, (p, q))| p.conj() * q * ln_weight(a, basis.m).exp())
        .sum())
}

/// Sum of generator words with complex coefficients, kept as written.
///
/// The classical maps weight each word by its written length, so words are
/// not reordered; equal words are merged.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    n: usize,
    terms: BTreeMap<Vec<Generator>, Complex64>,
}

impl Observable {
    pub fn from_words(n: usize, words: impl IntoIterator<Item = (Vec<Generator>, Complex64)>) -> Result<Self> {
        if n < 2 {
            return Err(invalid(format!("need n >= 2, got {n}")));
        }
        let mut terms: BTreeMap<Vec<Generator>, Complex64> = BTreeMap::new();
        for (word, c) in words {
            for g in &word {
                let ok = match *g {
                    Generator::Casimir => true,
                    Generator::Torus(k) => k + 1 < n,
                    Generator::Root(i, j) => i != j && i < n && j < n,
                };
                if !ok {
                    return Err(invalid(format!("generator {g:?} is not defined for n = {n}")));
                }
            }
            *terms.entry(word).or_default() += c;
        }
        terms.retain(|_, c| c.norm() != 0.0);
        Ok(Self { n, terms })
    }

    /// The normal-form terms of `op` read as words.
    pub fn from_poly<C: Coefficient>(op: &OperatorPoly<C>) -> Self {
        Self { n: op.n(), terms: op.terms().iter().map(|(w, c)| (w.clone(), c.to_complex())).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Generator>, Complex64> {
        &self.terms
    }

    /// Reversed words with adjoint letters and conjugate coefficients.
    pub fn dagger(&self) -> Self {
        let mut terms: BTreeMap<Vec<Generator>, Complex64> = BTreeMap::new();
        for (w, c) in &self.terms {
            *terms.entry(w.iter().rev().map(Generator::dagger).collect()).or_default() += c.conj();
        }
        Self { n: self.n, terms }
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let d = self.dagger();
        d.terms.len() == self.terms.len()
            && d.terms.iter().all(|(w, c)| self.terms.get(w).is_some_and(|v| (v - c).norm() <= tol))
    }

    fn reject_casimir(&self) -> Result<()> {
        if self.terms.keys().flatten().any(|g| *g == Generator::Casimir) {
            return Err(Error::Unsupported("the classical limit is defined on Lie algebra words only".into()));
        }
        Ok(())
    }
}

impl<C: Coefficient> From<&OperatorPoly<C>> for Observable {
    fn from(op: &OperatorPoly<C>) -> Self {
        Self::from_poly(op)
    }
}

/// `u . x_1^m`, i.e. the `m`-th power of the linear form `u e_1`.
pub fn lowering_state(point: &LoweringPoint, m: u32) -> Result<RepState> {
    if m < 1 {
        return Err(invalid("level must be >= 1"));
    }
    let basis = SymPowerBasis::new(point.n(), m)?;
    let monomials = basis.monomials();
    let col = point.first_column();
    let half_lm = 0.5 * ln_factorial(m as u64);
    let parts = monomials
        .iter()
        .map(|a| {
            let mut lm = half_lm;
            let mut ph = 0.0;
            for (&k, l) in a.iter().zip(&col) {
                if k == 0 {
                    continue;
                }
                if l.norm() == 0.0 {
                    return None;
                }
                lm += k as f64 * l.norm().ln() - 0.5 * ln_factorial(k as u64);
                ph += k as f64 * l.arg();
            }
            Some((lm, ph))
        })
        .collect();
    RepState::from_log_parts(basis, monomials, parts)
}

/// Sum over words of the coefficient times the product of level-one
/// expectations of the letters.
pub fn cl_exact(op: &Observable, point: &LoweringPoint) -> Result<Complex64> {
    op.reject_casimir()?;
    if op.n() != point.n() {
        return Err(invalid("observable and point live on different algebras"));
    }
    let state = lowering_state(point, 1)?;
    let mut cache: HashMap<Generator, Complex64> = HashMap::new();
    let mut acc = Complex64::new(0.0, 0.0);
    for (word, c) in op.terms() {
        let mut prod = *c;
        for g in word {
            let v = match cache.get(g) {
                Some(v) => *v,
                None => {
                    let v = state.expectation_word(std::slice::from_ref(g))?;
                    cache.insert(*g, v);
                    v
                }
            };
            prod *= v;
        }
        acc += prod;
    }
    Ok(acc)
}

/// `sum_I a_I level^{-|I|} <word_I>` on the orbit state of the given level.
pub fn cl_approx(op: &Observable, point: &LoweringPoint, level: u32) -> Result<Complex64> {
    op.reject_casimir()?;
    if op.n() != point.n() {
        return Err(invalid("observable and point live on different algebras"));
    }
    let state = lowering_state(point, level)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (word, c) in op.terms() {
        let w = (level as f64).powi(-(word.len() as i32));
        acc += c * state.expectation_word(word)? * w;
    }
    Ok(acc)
}

/// [`cl_approx`] over several levels, in input order.
pub fn cl_sweep(op: &Observable, point: &LoweringPoint, levels: &[u32]) -> Result<Vec<Complex64>> {
    levels.par_iter().map(|&l| cl_approx(op, point, l)).collect()
}

/// `|cl_n(xi eta) - cl_n(xi) cl_n(eta)|` with the words taken as written.
pub fn factorization_gap(xi: Generator, eta: Generator, point: &LoweringPoint, level: u32) -> Result<f64> {
    if xi == Generator::Casimir || eta == Generator::Casimir {
        return Err(Error::Unsupported("the classical limit is defined on Lie algebra words only".into()));
    }
    let state = lowering_state(point, level)?;
    let l = level as f64;
    let joint = state.expectation_word(&[xi, eta])? / (l * l);
    let a = state.expectation_word(&[xi])? / l;
    let b = state.expectation_word(&[eta])? / l;
    Ok((joint - a * b).norm())
}

/// Squared norms at level `m` and level one, and `N_m / N_1^m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormPowerLaw {
    pub ln_norm_sq_m: f64,
    pub ln_norm_sq_1: f64,
    pub ratio: f64,
}

pub fn norm_power_law(point: &LoweringPoint, m: u32) -> Result<NormPowerLaw> {
    let big = lowering_state(point, m)?.ln_norm_sq();
    let one = lowering_state(point, 1)?.ln_norm_sq();
    Ok(NormPowerLaw { ln_norm_sq_m: big, ln_norm_sq_1: one, ratio: (big - m as f64 * one).exp() })
}

/// Outcome of the bracket check on `su(2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracCheck {
    /// `k` in the chart form `k du dv / (1 + |w|^2)^2`, fixed at `w = 0`.
    pub form_scale: f64,
    /// Largest `|cl(i[xi, eta]) - 2 {cl xi, cl eta}|` over the sample points.
    pub max_residual: f64,
}

/// Compares `cl(i[xi, eta])` with twice the chart Poisson bracket of
/// `cl(xi)` and `cl(eta)` for the hermitian pair `E_12 + E_21`,
/// `-i(E_12 - E_21)` using central differences of step `h`.
pub fn dirac_check_su2(points: &[Complex64], h: f64) -> Result<DiracCheck> {
    use crate::operator::ExactComplex;
    if !(h > 0.0) {
        return Err(invalid("step must be positive"));
    }
    let e = |re: i64, im: i64| crate::operator::exact(re, im);
    let up = Generator::Root(0, 1);
    let down = Generator::Root(1, 0);
    let xi = OperatorPoly::<ExactComplex>::from_terms(2, [(vec![up], e(1, 0)), (vec![down], e(1, 0))])?;
    let eta = OperatorPoly::<ExactComplex>::from_terms(2, [(vec![up], e(0, -1)), (vec![down], e(0, 1))])?;
    let comm = xi.mul(&eta)?.add(&eta.mul(&xi)?.map_coeffs(|c: &ExactComplex| c.neg()))?;
    let bracket = comm.map_coeffs(|c: &ExactComplex| ExactComplex::new(-c.im.clone(), c.re.clone()));
    let (xi, eta, bracket) = (Observable::from(&xi), Observable::from(&eta), Observable::from(&bracket));
    let cl = |op: &Observable, w: Complex64| -> Result<f64> {
        Ok(cl_exact(op, &LoweringPoint::su2(w))?.re)
    };
    let poisson_raw = |w: Complex64| -> Result<f64> {
        let du = Complex64::new(h, 0.0);
        let dv = Complex64::new(0.0, h);
        let fu = (cl(&xi, w + du)? - cl(&xi, w - du)?) / (2.0 * h);
        let fv = (cl(&xi, w + dv)? - cl(&xi, w - dv)?) / (2.0 * h);
        let gu = (cl(&eta, w + du)? - cl(&eta, w - du)?) / (2.0 * h);
        let gv = (cl(&eta, w + dv)? - cl(&eta, w - dv)?) / (2.0 * h);
        Ok((1.0 + w.norm_sqr()).powi(2) * (fu * gv - fv * gu))
    };
    let origin = Complex64::new(0.0, 0.0);
    let form_scale = 2.0 * poisson_raw(origin)? / cl(&bracket, origin)?;
    let mut max_residual: f64 = 0.0;
    for &w in points {
        let lhs = cl(&bracket, w)?;
        let rhs = 2.0 * poisson_raw(w)? / form_scale;
        max_residual = max_residual.max((lhs - rhs).abs());
    }
    Ok(DiracCheck { form_scale, max_residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{exact, ExactComplex};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn alpha1_poly(n: usize) -> OperatorPoly<ExactComplex> {
        OperatorPoly::monomial(n, vec![Generator::Torus(0)], exact(1, 0)).unwrap()
    }

    fn alpha1(n: usize) -> Observable {
        Observable::from(&alpha1_poly(n))
    }

    #[test]
    fn binomial_expansion() {
        let s = lowering_state(&LoweringPoint::su2(c(1.0, 0.0)), 2).unwrap();
        let coeffs = s.monomial_coefficients();
        for (got, want) in coeffs.iter().zip([1.0, 2.0, 1.0]) {
            assert!((got - c(want, 0.0)).norm() < 1e-12);
        }
        assert!((s.ln_norm_sq() - 4f64.ln()).abs() < 1e-12);
        let v = lowering_state(&LoweringPoint::origin(3).unwrap(), 4).unwrap();
        assert!((v.amplitudes()[0] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn su2_expectations() {
        let m = 7;
        let top = lowering_state(&LoweringPoint::origin(2).unwrap(), m).unwrap();
        assert!((top.expectation(&alpha1_poly(2)).unwrap() - c(m as f64, 0.0)).norm() < 1e-12);
        let w = c(0.6, -0.3);
        let s = lowering_state(&LoweringPoint::su2(w), m).unwrap();
        let r = w.norm_sqr();
        let want = m as f64 * (1.0 - r) / (1.0 + r);
        assert!((s.expectation(&alpha1_poly(2)).unwrap().re - want).abs() < 1e-12);
        assert_eq!(s.expectation_word(&[]).unwrap(), s.amplitudes().iter().map(|a| a.norm_sqr()).sum::<f64>().into());
    }

    #[test]
    fn raising_kills_top() {
        let top = lowering_state(&LoweringPoint::origin(3).unwrap(), 3).unwrap();
        for g in [Generator::Root(0, 1), Generator::Root(0, 2), Generator::Root(1, 2)] {
            assert!(top.apply(g).unwrap().iter().all(|v| v.norm() == 0.0));
        }
    }

    #[test]
    fn skew_generators_preserve_product() {
        let basis = SymPowerBasis::new(3, 3).unwrap();
        let dim = basis.monomials().len();
        let x: Vec<Complex64> = (0..dim).map(|i| c(i as f64 * 0.3 - 1.0, (i * i) as f64 * 0.1)).collect();
        let y: Vec<Complex64> = (0..dim).map(|i| c(0.5 - i as f64 * 0.2, 1.0 / (i + 1) as f64)).collect();
        let sx = RepState::from_monomial_coefficients(3, 3, &x).unwrap();
        let sy = RepState::from_monomial_coefficients(3, 3, &y).unwrap();
        let to_coeffs = |s: &RepState, v: Vec<Complex64>| -> Vec<Complex64> {
            v.iter()
                .zip(s.monomials())
                .map(|(a, m)| a * (0.5 * (s.ln_norm_sq() - ln_weight(m, 3))).exp())
                .collect()
        };
        let (i, j) = (0, 2);
        let skew = |s: &RepState| -> Vec<Complex64> {
            let a = s.apply(Generator::Root(i, j)).unwrap();
            let b = s.apply(Generator::Root(j, i)).unwrap();
            to_coeffs(s, a.iter().zip(&b).map(|(p, q)| p - q).collect())
        };
        let lhs = invariant_inner_product(&basis, &skew(&sx), &y).unwrap();
        let rhs = invariant_inner_product(&basis, &x, &skew(&sy)).unwrap();
        assert!((lhs + rhs).norm() < 1e-9);
    }

    #[test]
    fn cl_exact_su2() {
        let w = c(0.4, 0.9);
        let r = w.norm_sqr();
        let base = (1.0 - r) / (1.0 + r);
        let p = LoweringPoint::su2(w);
        assert!((cl_exact(&alpha1(2), &p).unwrap().re - base).abs() < 1e-12);
        let sq = Observable::from(&alpha1_poly(2).mul(&alpha1_poly(2)).unwrap());
        assert!((cl_exact(&sq, &p).unwrap().re - base * base).abs() < 1e-12);
        for lvl in [1, 5, 40] {
            assert!((cl_approx(&alpha1(2), &p, lvl).unwrap() - cl_exact(&alpha1(2), &p).unwrap()).norm() < 1e-12);
        }
    }

    #[test]
    fn factorization_rate() {
        let p = LoweringPoint::su2(c(1.0, 0.0));
        let t = Generator::Torus(0);
        for n in [32u32, 64, 128] {
            let g1 = factorization_gap(t, t, &p, n).unwrap();
            assert!((g1 * n as f64 - 1.0).abs() < 1e-9);
        }
        assert_eq!(factorization_gap(t, t, &LoweringPoint::origin(2).unwrap(), 9).unwrap(), 0.0);
    }

    #[test]
    fn power_law_su3() {
        let p = LoweringPoint::new(3, vec![((1, 0), c(0.3, 0.2)), ((2, 1), c(-0.7, 0.5)), ((2, 0), c(0.1, 0.0))])
            .unwrap();
        for m in 1..=5 {
            assert!((norm_power_law(&p, m).unwrap().ratio - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn dirac_relation() {
        let pts = [c(0.3, -0.2), c(1.1, 0.7), c(-1.5, 0.4)];
        let d = dirac_check_su2(&pts, 1e-4).unwrap();
        assert!(d.max_residual < 1e-6, "{d:?}");
    }

    #[test]
    fn words_keep_their_order() {
        let (up, down) = (Generator::Root(0, 1), Generator::Root(1, 0));
        let h = Observable::from_words(2, [(vec![up, down], c(1.0, 0.0)), (vec![down, up], c(1.0, 0.0))]).unwrap();
        assert_eq!(h.terms().len(), 2);
        assert!(h.is_hermitian(0.0));
        let skew = Observable::from_words(2, [(vec![up], c(0.0, 1.0))]).unwrap();
        assert!(!skew.is_hermitian(1e-12));
        assert!(Observable::from_words(2, [(vec![Generator::Torus(1)], c(1.0, 0.0))]).is_err());
    }

    #[test]
    fn casimir_rejected() {
        let op = OperatorPoly::monomial(2, vec![Generator::Casimir], exact(1, 0)).unwrap();
        let p = LoweringPoint::su2(c(0.0, 0.0));
        assert!(matches!(cl_exact(&Observable::from(&op), &p), Err(Error::Unsupported(_))));
        let s = lowering_state(&p, 3).unwrap();
        // m(m+2)/2 at m = 3
        assert!((s.expectation(&op).unwrap().re - 7.5).abs() < 1e-12);
    }
}
