//! Cyclic words, the trace map, the `∂_i` decomposition and one-variable
//! power series evaluated on associative series.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freelie::{bch_xy, AssocSeries, TruncationConfig, Word};
use crate::rational::{fmt_q, Q};
use crate::terms::Terms;

/// A cyclic word, stored as its lexicographically least rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Necklace(Word);

impl Necklace {
    /// Canonical necklace of a nonempty word.
    pub fn of(w: &Word) -> Self {
        debug_assert!(!w.is_empty());
        Necklace(w.min_rotation())
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

/// Truncated element of `cyc_n`, optionally modulo the degree-one part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSeries {
    config: TruncationConfig,
    terms: Terms<Necklace>,
    quotient_linear: bool,
}

impl CyclicSeries {
    pub fn zero(config: &TruncationConfig) -> Self {
        CyclicSeries { config: config.clone(), terms: Terms::new(), quotient_linear: false }
    }

    pub fn from_terms(config: &TruncationConfig, terms: impl IntoIterator<Item = (Word, Q)>) -> Result<Self> {
        let mut t = Terms::new();
        for (w, c) in terms {
            if w.is_empty() {
                continue;
            }
            if let Some(&bad) = w.letters().iter().find(|&&a| a as usize >= config.n()) {
                return Err(Error::IndexOutOfRange { index: bad as usize, n: config.n() });
            }
            if w.len() > config.max_degree() {
                return Err(Error::DegreeOutOfRange { degree: w.len(), max: config.max_degree() });
            }
            t.add_term(Necklace::of(&w), c);
        }
        Ok(CyclicSeries { config: config.clone(), terms: t, quotient_linear: false })
    }

    pub(crate) fn from_raw(config: &TruncationConfig, terms: Terms<Necklace>, quotient_linear: bool) -> Self {
        let mut c = CyclicSeries { config: config.clone(), terms, quotient_linear };
        if quotient_linear {
            c.terms.retain(|k| k.degree() != 1);
        }
        c
    }

    pub fn config(&self) -> &TruncationConfig {
        &self.config
    }

    pub fn terms(&self) -> &Terms<Necklace> {
        &self.terms
    }

    pub fn is_quotient_linear(&self) -> bool {
        self.quotient_linear
    }

    pub fn coeff(&self, w: &Word) -> Q {
        if w.is_empty() {
            return Q::zero();
        }
        self.terms.get(&Necklace::of(w))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_part(&self, d: usize) -> Self {
        CyclicSeries {
            config: self.config.clone(),
            terms: self.terms.filtered(|k| k.degree() == d),
            quotient_linear: self.quotient_linear,
        }
    }

    fn ensure_compatible(&self, other: &Self) -> Result<()> {
        self.config.ensure_same(&other.config)?;
        if self.quotient_linear != other.quotient_linear {
            return Err(Error::ConfigMismatch("mixing cyc and cyc modulo degree one".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ensure_compatible(other)?;
        Ok(self.add_scaled(other, &Q::one()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.ensure_compatible(other)?;
        Ok(self.add_scaled(other, &-Q::one()))
    }

    pub(crate) fn add_scaled(&self, other: &Self, c: &Q) -> Self {
        let mut t = self.terms.clone();
        t.add_scaled(&other.terms, c);
        CyclicSeries { config: self.config.clone(), terms: t, quotient_linear: self.quotient_linear }
    }

    pub fn scale(&self, c: &Q) -> Self {
        CyclicSeries { config: self.config.clone(), terms: self.terms.scaled(c), quotient_linear: self.quotient_linear }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    /// Drops degree-one necklaces and marks the value as living in the
    /// quotient by them.
    pub fn quotient_linear(&self) -> Self {
        Self::from_raw(&self.config, self.terms.clone(), true)
    }

    pub fn retruncate(&self, max_degree: usize) -> Result<Self> {
        Ok(CyclicSeries {
            config: self.config.with_max_degree(max_degree)?,
            terms: self.terms.filtered(|k| k.degree() <= max_degree),
            quotient_linear: self.quotient_linear,
        })
    }

    /// Largest degree with a nonzero coefficient.
    pub fn max_degree_present(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.degree()).max()
    }
}

/// Projection `ass_n -> cyc_n`; the scalar part is discarded.
pub fn trace(a: &AssocSeries) -> CyclicSeries {
    let mut t = Terms::new();
    for (w, c) in a.terms().iter() {
        if !w.is_empty() {
            t.add_term(Necklace::of(w), c.clone());
        }
    }
    CyclicSeries::from_raw(a.config(), t, false)
}

/// The words of `a` ending in generator `i`, with that last letter removed.
pub fn partial(a: &AssocSeries, i: usize) -> Result<AssocSeries> {
    let i = a.config().check_index(i)?;
    let terms = a.terms().iter().filter_map(|(w, c)| match w.letters().split_last() {
        Some((&last, rest)) if last == i => Some((Word::new(rest.to_vec()), c.clone())),
        _ => None,
    });
    AssocSeries::from_terms(a.config(), terms)
}

/// Power series in one variable with no terms below degree two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneVarSeries {
    max_degree: usize,
    coeffs: BTreeMap<usize, Q>,
}

impl OneVarSeries {
    pub fn zero(max_degree: usize) -> Self {
        OneVarSeries { max_degree, coeffs: BTreeMap::new() }
    }

    /// Single term `c u^d`.
    pub fn monomial(max_degree: usize, d: usize, c: Q) -> Result<Self> {
        Self::from_coeffs(max_degree, [(d, c)])
    }

    pub fn from_coeffs(max_degree: usize, coeffs: impl IntoIterator<Item = (usize, Q)>) -> Result<Self> {
        let mut s = Self::zero(max_degree);
        for (d, c) in coeffs {
            if d < 2 {
                return Err(Error::Precondition(format!("one-variable series has a term of degree {d} < 2")));
            }
            if d > max_degree {
                return Err(Error::DegreeOutOfRange { degree: d, max: max_degree });
            }
            s.add_term(d, c);
        }
        Ok(s)
    }

    fn add_term(&mut self, d: usize, c: Q) {
        let e = self.coeffs.entry(d).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&d);
        }
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn coeff(&self, d: usize) -> Q {
        self.coeffs.get(&d).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn ensure_same(&self, other: &Self) -> Result<()> {
        if self.max_degree == other.max_degree {
            Ok(())
        } else {
            Err(Error::ConfigMismatch(format!("series truncated at {} vs {}", self.max_degree, other.max_degree)))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ensure_same(other)?;
        let mut s = self.clone();
        for (d, c) in other.coeffs() {
            s.add_term(d, c.clone());
        }
        Ok(s)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut s = Self::zero(self.max_degree);
        for (d, v) in self.coeffs() {
            s.add_term(d, v * c);
        }
        s
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    pub fn retruncate(&self, max_degree: usize) -> Self {
        OneVarSeries {
            max_degree,
            coeffs: self.coeffs.iter().filter(|(d, _)| **d <= max_degree).map(|(d, c)| (*d, c.clone())).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("series1 N={}\n", self.max_degree);
        for (d, c) in self.coeffs() {
            s.push_str(&format!("{d} {}\n", fmt_q(c)));
        }
        s
    }
}

/// `r(arg)` truncated; `arg` must have zero scalar part.
pub fn eval_series(r: &OneVarSeries, arg: &AssocSeries) -> Result<AssocSeries> {
    if !arg.scalar().is_zero() {
        return Err(Error::ScalarPart("series argument must have zero scalar part".into()));
    }
    let config = arg.config();
    let mut acc = AssocSeries::zero(config);
    let mut power = AssocSeries::one(config);
    for d in 1..=config.max_degree() {
        power = power.mul_unchecked(arg);
        if power.is_zero() {
            break;
        }
        let c = r.coeff(d);
        if !c.is_zero() {
            acc = acc.add_unchecked(&power, &c);
        }
    }
    Ok(acc)
}

fn xy_assoc(config: &TruncationConfig) -> Result<(AssocSeries, AssocSeries)> {
    if config.n() != 2 {
        return Err(Error::ArityMismatch { expected: 2, got: config.n() });
    }
    Ok((AssocSeries::generator(config, 0)?, AssocSeries::generator(config, 1)?))
}

fn check_series_truncation(r: &OneVarSeries, config: &TruncationConfig) -> Result<()> {
    if r.max_degree() != config.max_degree() {
        return Err(Error::ConfigMismatch(format!(
            "series truncated at {} vs config at {}",
            r.max_degree(),
            config.max_degree()
        )));
    }
    Ok(())
}

/// `tr(r(x+y) - r(x) - r(y))` in `cyc_2`.
pub fn duflo_combination(r: &OneVarSeries, config: &TruncationConfig) -> Result<CyclicSeries> {
    check_series_truncation(r, config)?;
    let (x, y) = xy_assoc(config)?;
    let s = x.add(&y)?;
    let v = eval_series(r, &s)?.sub(&eval_series(r, &x)?)?.sub(&eval_series(r, &y)?)?;
    Ok(trace(&v))
}

/// `tr(σ(bch(x,y)) - σ(x) - σ(y))` in `cyc_2`.
pub fn bch_combination(sigma: &OneVarSeries, config: &TruncationConfig) -> Result<CyclicSeries> {
    check_series_truncation(sigma, config)?;
    let (x, y) = xy_assoc(config)?;
    let z = bch_xy(config)?.embed();
    let v = eval_series(sigma, &z)?.sub(&eval_series(sigma, &x)?)?.sub(&eval_series(sigma, &y)?)?;
    Ok(trace(&v))
}

/// Necklace `x^{d-1} y`, the coordinate used to read off Duflo series.
pub fn duflo_probe(d: usize) -> Word {
    let mut l = vec![0u8; d - 1];
    l.push(1);
    Word::new(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn cfg(n: usize, d: usize) -> TruncationConfig {
        TruncationConfig::new(n, d).unwrap()
    }

    fn w(l: &[u8]) -> Word {
        Word::new(l.to_vec())
    }

    fn assoc(c: &TruncationConfig, t: &[(&[u8], i64)]) -> AssocSeries {
        AssocSeries::from_terms(c, t.iter().map(|(l, k)| (w(l), qi(*k)))).unwrap()
    }

    #[test]
    fn trace_examples() {
        let c = cfg(2, 4);
        assert!(trace(&assoc(&c, &[(&[0, 1], 1), (&[1, 0], -1)])).is_zero());
        assert!(trace(&assoc(&c, &[(&[0, 1, 1], 1), (&[1, 0, 1], -1)])).is_zero());
        let t = trace(&assoc(&c, &[(&[0, 0, 1], 1)]));
        assert_eq!(t.terms().len(), 1);
        assert_eq!(t.coeff(&w(&[0, 0, 1])), qi(1));
        assert_eq!(t.coeff(&w(&[1, 0, 0])), qi(1));
        assert!(trace(&AssocSeries::one(&c)).is_zero());
    }

    #[test]
    fn partial_examples() {
        let c = cfg(2, 4);
        let y = assoc(&c, &[(&[1], 1)]);
        let x = assoc(&c, &[(&[0], 1)]);
        assert!(partial(&y, 0).unwrap().is_zero());
        assert!(partial(&x, 1).unwrap().is_zero());
        assert_eq!(partial(&assoc(&c, &[(&[1, 0], 1)]), 0).unwrap(), y);
        let comm = assoc(&c, &[(&[0, 1], 1), (&[1, 0], -1)]);
        assert_eq!(partial(&comm, 0).unwrap(), y.neg());
        assert!(partial(&comm, 2).is_err());
    }

    #[test]
    fn reconstruction() {
        let c = cfg(3, 3);
        let a = assoc(&c, &[(&[], 3), (&[0, 2], 1), (&[2, 1, 0], -4), (&[1], 2), (&[1, 1, 2], 5)]);
        let mut acc = AssocSeries::scalar_value(&c, a.scalar());
        for i in 0..3 {
            let xi = AssocSeries::generator(&c, i).unwrap();
            acc = acc.add(&partial(&a, i).unwrap().mul(&xi).unwrap()).unwrap();
        }
        assert_eq!(acc, a);
    }

    #[test]
    fn duflo_examples() {
        let c = cfg(2, 4);
        assert!(duflo_combination(&OneVarSeries::zero(4), &c).unwrap().is_zero());
        let r = OneVarSeries::monomial(4, 2, qi(1)).unwrap();
        let d = duflo_combination(&r, &c).unwrap();
        assert_eq!(d.terms().len(), 1);
        assert_eq!(d.coeff(&w(&[0, 1])), qi(2));
        let x = AssocSeries::generator(&c, 0).unwrap();
        assert_eq!(eval_series(&r, &x).unwrap(), assoc(&c, &[(&[0, 0], 1)]));
        assert!(eval_series(&r, &AssocSeries::one(&c)).is_err());
        assert!(duflo_combination(&r, &cfg(2, 5)).is_err());
    }

    #[test]
    fn duflo_probe_coefficient_is_degree() {
        // brute force: expand (x+y)^d and count words that rotate to x^{d-1}y
        for d in 2..=6 {
            let c = cfg(2, 6);
            let r = OneVarSeries::monomial(6, d, qi(1)).unwrap();
            let got = duflo_combination(&r, &c).unwrap().coeff(&duflo_probe(d));
            let count = (0..(1u32 << d))
                .filter(|m| m.count_ones() == 1)
                .count();
            assert_eq!(got, qi(count as i64));
            assert_eq!(got, qi(d as i64));
        }
    }

    #[test]
    fn bch_combination_examples() {
        let c = cfg(2, 4);
        assert!(bch_combination(&OneVarSeries::zero(4), &c).unwrap().is_zero());
        let s = OneVarSeries::monomial(4, 2, qi(1)).unwrap();
        let b = bch_combination(&s, &c).unwrap();
        assert_eq!(b.degree_part(2), duflo_combination(&s, &c).unwrap());
        assert!(b.degree_part(3).is_zero());
    }

    #[test]
    fn quotient_examples() {
        let c = cfg(2, 4);
        let tx = trace(&assoc(&c, &[(&[0], 1)]));
        assert!(tx.quotient_linear().is_zero());
        let txy = trace(&assoc(&c, &[(&[0, 1], 1)]));
        assert_eq!(txy.quotient_linear().terms(), txy.terms());
        let mixed = trace(&assoc(&c, &[(&[0], 1), (&[0, 0, 1], 1)])).quotient_linear();
        assert_eq!(mixed.terms().len(), 1);
        assert!(mixed.is_quotient_linear());
        assert!(mixed.add(&txy).is_err());
    }

    #[test]
    fn series_rejects_low_degree() {
        assert!(OneVarSeries::monomial(4, 1, q(1, 2)).is_err());
        assert!(OneVarSeries::monomial(4, 5, q(1, 2)).is_err());
    }
}
