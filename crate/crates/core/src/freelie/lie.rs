use num_traits::One;

use super::assoc::AssocSeries;
use super::config::TruncationConfig;
use super::lyndon::{bracket_basis, standard_expansion, LyndonWord};
use super::word::Word;
use crate::error::{Error, Result};
use crate::lie_algebra::{substitute_lie, LieElement};
use crate::rational::Q;
use crate::terms::Terms;

/// Truncated element of the free Lie algebra in the Lyndon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieSeries {
    config: TruncationConfig,
    terms: Terms<LyndonWord>,
}

impl LieSeries {
    pub fn zero(config: &TruncationConfig) -> Self {
        LieSeries { config: config.clone(), terms: Terms::new() }
    }

    pub fn generator(config: &TruncationConfig, i: usize) -> Result<Self> {
        let i = config.check_index(i)?;
        Ok(LieSeries { config: config.clone(), terms: Terms::single(LyndonWord::letter(i), Q::one()) })
    }

    pub fn generators(config: &TruncationConfig) -> Vec<Self> {
        (0..config.n()).map(|i| Self::generator(config, i).expect("index in range")).collect()
    }

    /// Basis element for a Lyndon word of degree at most the truncation.
    pub fn basis_element(config: &TruncationConfig, w: &LyndonWord) -> Result<Self> {
        Self::from_terms(config, [(w.clone(), Q::one())])
    }

    pub fn from_terms(config: &TruncationConfig, terms: impl IntoIterator<Item = (LyndonWord, Q)>) -> Result<Self> {
        let mut t = Terms::new();
        for (w, c) in terms {
            if let Some(&bad) = w.letters().iter().find(|&&a| a as usize >= config.n()) {
                return Err(Error::IndexOutOfRange { index: bad as usize, n: config.n() });
            }
            if w.degree() > config.max_degree() {
                return Err(Error::DegreeOutOfRange { degree: w.degree(), max: config.max_degree() });
            }
            t.add_term(w, c);
        }
        Ok(LieSeries { config: config.clone(), terms: t })
    }

    pub(crate) fn from_raw(config: &TruncationConfig, terms: Terms<LyndonWord>) -> Self {
        let mut terms = terms;
        terms.retain(|w| w.degree() <= config.max_degree());
        LieSeries { config: config.clone(), terms }
    }

    pub fn config(&self) -> &TruncationConfig {
        &self.config
    }

    pub fn terms(&self) -> &Terms<LyndonWord> {
        &self.terms
    }

    pub fn coeff(&self, w: &LyndonWord) -> Q {
        self.terms.get(w)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_part(&self, d: usize) -> Self {
        LieSeries { config: self.config.clone(), terms: self.terms.filtered(|w| w.degree() == d) }
    }

    /// Terms of degree at most `d`, same config.
    pub fn up_to_degree(&self, d: usize) -> Self {
        LieSeries { config: self.config.clone(), terms: self.terms.filtered(|w| w.degree() <= d) }
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.degree()).min()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.config.ensure_same(&other.config)?;
        Ok(self.add_scaled(other, &Q::one()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.config.ensure_same(&other.config)?;
        Ok(self.add_scaled(other, &-Q::one()))
    }

    pub fn neg(&self) -> Self {
        LieElement::scale(self, &-Q::one())
    }

    pub fn scale(&self, c: &Q) -> Self {
        LieSeries { config: self.config.clone(), terms: self.terms.scaled(c) }
    }

    /// Truncated Lie bracket, in the Lyndon basis.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.config.ensure_same(&other.config)?;
        Ok(self.bracket_unchecked(other))
    }

    pub(crate) fn bracket_unchecked(&self, other: &Self) -> Self {
        let max = self.config.max_degree();
        let mut t = Terms::new();
        for (u, a) in self.terms.iter() {
            for (v, b) in other.terms.iter() {
                if u.degree() + v.degree() > max || u == v {
                    continue;
                }
                let ab = a * b;
                for (w, c) in bracket_basis(u, v).iter() {
                    t.add_term(w.clone(), c * &ab);
                }
            }
        }
        LieSeries { config: self.config.clone(), terms: t }
    }

    /// Image in the free associative algebra.
    pub fn embed(&self) -> AssocSeries {
        let mut t: Terms<Word> = Terms::new();
        for (w, c) in self.terms.iter() {
            for (v, cv) in standard_expansion(w).iter() {
                t.add_term(v.clone(), c * Q::from_integer(cv.clone()));
            }
        }
        AssocSeries::from_raw(&self.config, t)
    }

    /// `log(e^a e^b)` computed in the associative algebra and brought back
    /// by the Dynkin projection.
    pub fn bch(&self, other: &Self) -> Result<Self> {
        self.config.ensure_same(&other.config)?;
        let g = self.embed().exp_trunc()?.mul(&other.embed().exp_trunc()?)?;
        g.log_trunc()?.dynkin_project()
    }

    /// Image under the Lie map sending generator `i` to `args[i]`.
    pub fn substitute(&self, args: &[LieSeries]) -> Result<LieSeries> {
        if let Some(first) = args.first() {
            for a in &args[1..] {
                first.config.ensure_same(&a.config)?;
            }
        }
        substitute_lie(self, args)
    }

    /// Same generators at another truncation degree: higher-degree terms
    /// are dropped when lowering.
    pub fn retruncate(&self, max_degree: usize) -> Result<Self> {
        let config = self.config.with_max_degree(max_degree)?;
        Ok(LieSeries { terms: self.terms.filtered(|w| w.degree() <= max_degree), config })
    }

    /// Same letters, larger generator set (letters keep their indices).
    pub fn widen(&self, config: &TruncationConfig) -> Result<Self> {
        if config.n() < self.config.n() || config.max_degree() < self.config.max_degree() {
            return Err(Error::ConfigMismatch("target config is smaller".into()));
        }
        Ok(LieSeries { config: config.clone(), terms: self.terms.clone() })
    }
}

impl LieElement for LieSeries {
    fn zero_like(&self) -> Self {
        LieSeries::zero(&self.config)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_scaled(&self, other: &Self, c: &Q) -> Self {
        debug_assert_eq!(self.config, other.config);
        let mut t = self.terms.clone();
        t.add_scaled(&other.terms, c);
        LieSeries { config: self.config.clone(), terms: t }
    }

    fn lie_bracket(&self, other: &Self) -> Self {
        debug_assert_eq!(self.config, other.config);
        self.bracket_unchecked(other)
    }
}

/// Universal BCH series in the first two generators of `config`.
pub fn bch_xy(config: &TruncationConfig) -> Result<LieSeries> {
    if config.n() < 2 {
        return Err(Error::InvalidConfig("BCH needs two generators".into()));
    }
    let x = LieSeries::generator(config, 0)?;
    let y = LieSeries::generator(config, 1)?;
    x.bch(&y)
}
