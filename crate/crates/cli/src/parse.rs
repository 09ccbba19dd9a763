//! Text forms used in config values: rationals, generator words, operator
//! terms `re[,im]: word`, lowering-chart entries `i,j: re,im`, spectra.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use specstat::Generator;

use crate::error::{CliError, CliResult};

fn bad(what: &str, text: &str) -> CliError {
    CliError::Config(format!("cannot parse {what} from `{text}`"))
}

/// Integer, `p/q`, or finite decimal.
pub fn rational(text: &str) -> CliResult<BigRational> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad("a rational", text))?;
        let q: BigInt = q.trim().parse().map_err(|_| bad("a rational", text))?;
        if q.is_zero() {
            return Err(bad("a rational", text));
        }
        return Ok(BigRational::new(p, q));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !(int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())) {
        return Err(bad("a rational", text));
    }
    let digits: BigInt = format!("0{int}{frac}").parse().map_err(|_| bad("a rational", text))?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let r = BigRational::new(digits, den);
    Ok(if neg { -r } else { r })
}

/// `t<k>`, `e<i>_<j>` or `casimir`, indices 0-based.
pub fn generator(text: &str) -> CliResult<Generator> {
    let t = text.trim();
    if t == "casimir" {
        return Ok(Generator::Casimir);
    }
    if let Some(k) = t.strip_prefix('t') {
        return k.parse().map(Generator::Torus).map_err(|_| bad("a generator", text));
    }
    if let Some((i, j)) = t.strip_prefix('e').and_then(|r| r.split_once('_')) {
        let i = i.parse().map_err(|_| bad("a generator", text))?;
        let j = j.parse().map_err(|_| bad("a generator", text))?;
        return Ok(Generator::Root(i, j));
    }
    Err(bad("a generator", text))
}

/// Whitespace-separated generators; the empty word is the identity.
pub fn word(text: &str) -> CliResult<Vec<Generator>> {
    text.split_whitespace().map(generator).collect()
}

fn split_term(text: &str) -> CliResult<(&str, Option<&str>, &str)> {
    let (coef, w) = text.split_once(':').ok_or_else(|| bad("a term", text))?;
    let (re, im) = match coef.split_once(',') {
        Some((re, im)) => (re, Some(im)),
        None => (coef, None),
    };
    Ok((re, im, w))
}

/// `re[,im]: word` with rational parts.
pub fn exact_term(text: &str) -> CliResult<(Vec<Generator>, specstat::ExactComplex)> {
    let (re, im, w) = split_term(text)?;
    let im = im.map(rational).transpose()?.unwrap_or_else(BigRational::zero);
    Ok((word(w)?, specstat::ExactComplex::new(rational(re)?, im)))
}

fn float(text: &str, what: &str) -> CliResult<f64> {
    text.trim().parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| bad(what, text))
}

/// `re[,im]: word` with float parts.
pub fn float_term(text: &str) -> CliResult<(Vec<Generator>, Complex64)> {
    let (re, im, w) = split_term(text)?;
    let im = im.map(|v| float(v, "a coefficient")).transpose()?.unwrap_or(0.0);
    Ok((word(w)?, Complex64::new(float(re, "a coefficient")?, im)))
}

/// `i,j: re,im`.
pub fn chart_entry(text: &str) -> CliResult<((usize, usize), Complex64)> {
    let (idx, val) = text.split_once(':').ok_or_else(|| bad("a chart entry", text))?;
    let (i, j) = idx.split_once(',').ok_or_else(|| bad("a chart entry", text))?;
    let (re, im) = val.split_once(',').unwrap_or((val, "0"));
    let i = i.trim().parse().map_err(|_| bad("a chart entry", text))?;
    let j = j.trim().parse().map_err(|_| bad("a chart entry", text))?;
    Ok(((i, j), Complex64::new(float(re, "a chart entry")?, float(im, "a chart entry")?)))
}

/// Real numbers separated by whitespace or commas; `#` starts a comment.
pub fn spectrum(text: &str) -> CliResult<Vec<f64>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split(|c: char| c.is_whitespace() || c == ','))
        .filter(|t| !t.is_empty())
        .map(|t| float(t, "an eigenvalue"))
        .collect()
}

/// `1 / 997^j` for `j = 0..k`, a torus element that separates small weights.
pub fn default_coeffs(k: usize) -> Vec<BigRational> {
    let base = BigInt::from(997);
    (0..k).map(|j| BigRational::new(BigInt::one(), num_traits::pow(base.clone(), j))).collect()
}
