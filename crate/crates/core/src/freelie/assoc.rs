use num_traits::{One, Zero};

use super::config::TruncationConfig;
use super::lie::LieSeries;
use super::lyndon::decompose_lie;
use super::word::Word;
use crate::error::{Error, Result};
use crate::rational::{qi, Q};
use crate::terms::Terms;

/// Truncated element of the free associative algebra. The empty word
/// carries the scalar part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocSeries {
    config: TruncationConfig,
    terms: Terms<Word>,
}

impl AssocSeries {
    pub fn zero(config: &TruncationConfig) -> Self {
        AssocSeries { config: config.clone(), terms: Terms::new() }
    }

    pub fn one(config: &TruncationConfig) -> Self {
        Self::scalar_value(config, Q::one())
    }

    pub fn scalar_value(config: &TruncationConfig, c: Q) -> Self {
        AssocSeries { config: config.clone(), terms: Terms::single(Word::empty(), c) }
    }

    pub fn generator(config: &TruncationConfig, i: usize) -> Result<Self> {
        let i = config.check_index(i)?;
        Ok(AssocSeries { config: config.clone(), terms: Terms::single(Word::letter(i), Q::one()) })
    }

    /// Builds a series from terms; words longer than the truncation are
    /// dropped, letters are range-checked.
    pub fn from_terms(config: &TruncationConfig, terms: impl IntoIterator<Item = (Word, Q)>) -> Result<Self> {
        let mut t = Terms::new();
        for (w, c) in terms {
            if let Some(&bad) = w.letters().iter().find(|&&a| a as usize >= config.n()) {
                return Err(Error::IndexOutOfRange { index: bad as usize, n: config.n() });
            }
            if w.len() <= config.max_degree() {
                t.add_term(w, c);
            }
        }
        Ok(AssocSeries { config: config.clone(), terms: t })
    }

    pub(crate) fn from_raw(config: &TruncationConfig, terms: Terms<Word>) -> Self {
        AssocSeries { config: config.clone(), terms }
    }

    pub fn config(&self) -> &TruncationConfig {
        &self.config
    }

    pub fn terms(&self) -> &Terms<Word> {
        &self.terms
    }

    pub fn coeff(&self, w: &Word) -> Q {
        self.terms.get(w)
    }

    pub fn scalar(&self) -> Q {
        self.terms.get(&Word::empty())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_part(&self, d: usize) -> Self {
        AssocSeries { config: self.config.clone(), terms: self.terms.filtered(|w| w.len() == d) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.config.ensure_same(&other.config)?;
        Ok(self.add_unchecked(other, &Q::one()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.config.ensure_same(&other.config)?;
        Ok(self.add_unchecked(other, &-Q::one()))
    }

    pub(crate) fn add_unchecked(&self, other: &Self, c: &Q) -> Self {
        let mut t = self.terms.clone();
        t.add_scaled(&other.terms, c);
        AssocSeries { config: self.config.clone(), terms: t }
    }

    pub fn scale(&self, c: &Q) -> Self {
        AssocSeries { config: self.config.clone(), terms: self.terms.scaled(c) }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.config.ensure_same(&other.config)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let max = self.config.max_degree();
        let mut t = Terms::new();
        for (a, ca) in self.terms.iter() {
            for (b, cb) in other.terms.iter() {
                if a.len() + b.len() <= max {
                    t.add_term(a.concat(b), ca * cb);
                }
            }
        }
        AssocSeries { config: self.config.clone(), terms: t }
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// `sum_k a^k / k!`; requires zero scalar part.
    pub fn exp_trunc(&self) -> Result<Self> {
        if !self.scalar().is_zero() {
            return Err(Error::ScalarPart("exp requires a zero scalar part".into()));
        }
        let mut acc = Self::one(&self.config);
        let mut power = Self::one(&self.config);
        for k in 1..=self.config.max_degree() {
            power = power.mul_unchecked(self).scale(&(Q::one() / qi(k as i64)));
            if power.is_zero() {
                break;
            }
            acc = acc.add_unchecked(&power, &Q::one());
        }
        Ok(acc)
    }

    /// `sum_k (-1)^(k+1) (g-1)^k / k`; requires scalar part exactly one.
    pub fn log_trunc(&self) -> Result<Self> {
        if !self.scalar().is_one() {
            return Err(Error::ScalarPart("log requires scalar part one".into()));
        }
        let h = self.add_unchecked(&Self::one(&self.config), &-Q::one());
        let mut acc = Self::zero(&self.config);
        let mut power = Self::one(&self.config);
        for k in 1..=self.config.max_degree() {
            power = power.mul_unchecked(&h);
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { Q::one() } else { -Q::one() };
            acc = acc.add_unchecked(&power, &(sign / qi(k as i64)));
        }
        Ok(acc)
    }

    /// Dynkin projection: each degree-`d` word goes to its left-normed
    /// bracketing divided by `d`. The identity on Lie elements.
    pub fn dynkin_project(&self) -> Result<LieSeries> {
        if !self.scalar().is_zero() {
            return Err(Error::ScalarPart("Dynkin projection requires a zero scalar part".into()));
        }
        let mut acc: Terms<Word> = Terms::new();
        for (w, c) in self.terms.iter() {
            let letters = w.letters();
            let mut cur: Terms<Word> = Terms::single(Word::letter(letters[0]), Q::one());
            for &l in &letters[1..] {
                let lw = Word::letter(l);
                let mut next = Terms::new();
                for (u, cu) in cur.iter() {
                    next.add_term(u.concat(&lw), cu.clone());
                    next.add_term(lw.concat(u), -cu.clone());
                }
                cur = next;
            }
            acc.add_scaled(&cur, &(c / qi(w.len() as i64)));
        }
        Ok(LieSeries::from_raw(&self.config, decompose_lie(acc)?))
    }

    /// Rewrites an element already known to be Lie in the Lyndon basis.
    pub fn to_lie(&self) -> Result<LieSeries> {
        if !self.scalar().is_zero() {
            return Err(Error::NotLie("nonzero scalar part".into()));
        }
        Ok(LieSeries::from_raw(&self.config, decompose_lie(self.terms.clone())?))
    }

    pub fn retruncate(&self, max_degree: usize) -> Result<Self> {
        let config = self.config.with_max_degree(max_degree)?;
        Ok(AssocSeries { config, terms: self.terms.filtered(|w| w.len() <= max_degree) })
    }
}
