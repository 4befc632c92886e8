//! Tangential derivations in tuple form, the group `TAut_n` through
//! truncated logarithms, coface maps and the embedding of `t_n`.
//!
//! A derivation `u = (a_1, .., a_n)` acts by `u(x_i) = [x_i, a_i]`. Tuples
//! are always kept canonical: slot `k` carries no `x_k` term, since that term
//! does not change the derivation.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::cyclic::{trace, CyclicSeries};
use crate::error::{Error, Result};
use crate::freelie::{lyndon_basis, AssocSeries, LieSeries, LyndonWord, TruncationConfig, Word};
use crate::lie_algebra::{bch_recursive, LieElement};
use crate::rational::Q;
use crate::terms::Terms;

/// Coefficients of the abelian part `a_n`, one per strand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct APart(pub Vec<Q>);

impl APart {
    pub fn zero(n: usize) -> Self {
        APart(vec![Q::zero(); n])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.0.len() != other.0.len() {
            return Err(Error::ArityMismatch { expected: self.0.len(), got: other.0.len() });
        }
        Ok(APart(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn neg(&self) -> Self {
        APart(self.0.iter().map(|a| -a).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentialDerivation {
    config: TruncationConfig,
    slots: Vec<LieSeries>,
}

impl TangentialDerivation {
    pub fn zero(config: &TruncationConfig) -> Self {
        TangentialDerivation { config: config.clone(), slots: vec![LieSeries::zero(config); config.n()] }
    }

    /// Builds the canonical derivation of a tuple; the stripped `x_k`
    /// coefficients are dropped.
    pub fn from_tuple(config: &TruncationConfig, slots: Vec<LieSeries>) -> Result<Self> {
        Ok(Self::from_tuple_with_apart(config, slots)?.0)
    }

    /// Like [`from_tuple`](Self::from_tuple), also returning the stripped
    /// `a_n` coefficients.
    pub fn from_tuple_with_apart(config: &TruncationConfig, slots: Vec<LieSeries>) -> Result<(Self, APart)> {
        if slots.len() != config.n() {
            return Err(Error::ArityMismatch { expected: config.n(), got: slots.len() });
        }
        for s in &slots {
            config.ensure_same(s.config())?;
        }
        Ok(Self::canonical(config, slots))
    }

    fn canonical(config: &TruncationConfig, mut slots: Vec<LieSeries>) -> (Self, APart) {
        let mut a = APart::zero(slots.len());
        for (k, s) in slots.iter_mut().enumerate() {
            let xk = LyndonWord::letter(k as u8);
            let c = s.coeff(&xk);
            if !c.is_zero() {
                let mut t = s.terms().clone();
                t.remove(&xk);
                *s = LieSeries::from_raw(config, t);
                a.0[k] = c;
            }
        }
        (TangentialDerivation { config: config.clone(), slots }, a)
    }

    pub fn config(&self) -> &TruncationConfig {
        &self.config
    }

    pub fn arity(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[LieSeries] {
        &self.slots
    }

    pub fn slot(&self, k: usize) -> &LieSeries {
        &self.slots[k]
    }

    pub fn is_zero(&self) -> bool {
        self.slots.iter().all(LieSeries::is_zero)
    }

    /// Smallest degree present in any slot.
    pub fn min_degree(&self) -> Option<usize> {
        self.slots.iter().filter_map(LieSeries::min_degree).min()
    }

    pub fn degree_part(&self, d: usize) -> Self {
        self.map_slots(|s| s.degree_part(d))
    }

    pub fn up_to_degree(&self, d: usize) -> Self {
        self.map_slots(|s| s.up_to_degree(d))
    }

    fn map_slots(&self, f: impl Fn(&LieSeries) -> LieSeries) -> Self {
        TangentialDerivation { config: self.config.clone(), slots: self.slots.iter().map(f).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.config.ensure_same(&other.config)?;
        Ok(LieElement::plus(self, other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.config.ensure_same(&other.config)?;
        Ok(LieElement::minus(self, other))
    }

    pub fn scale(&self, c: &Q) -> Self {
        self.map_slots(|s| s.scale(c))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    pub fn retruncate(&self, max_degree: usize) -> Result<Self> {
        let config = self.config.with_max_degree(max_degree)?;
        let slots = self.slots.iter().map(|s| s.retruncate(max_degree)).collect::<Result<Vec<_>>>()?;
        Ok(TangentialDerivation { config, slots })
    }

    /// `u(x_i) = [x_i, a_i]` for every generator.
    pub fn generator_images(&self) -> Vec<LieSeries> {
        self.slots
            .iter()
            .enumerate()
            .map(|(i, a)| LieSeries::generator(&self.config, i).expect("in range").bracket_unchecked(a))
            .collect()
    }

    /// The derivation applied to a Lie series.
    pub fn apply(&self, a: &LieSeries) -> Result<LieSeries> {
        self.config.ensure_same(a.config())?;
        Ok(self.apply_unchecked(a))
    }

    pub(crate) fn apply_unchecked(&self, a: &LieSeries) -> LieSeries {
        let Some(du) = self.min_degree() else {
            return LieSeries::zero(&self.config);
        };
        let max = self.config.max_degree();
        let images = self.generator_images();
        let mut memo: HashMap<LyndonWord, LieSeries> = HashMap::new();
        let mut acc = Terms::new();
        for (w, c) in a.terms().iter() {
            if w.degree() + du > max {
                continue;
            }
            let v = self.apply_basis(w, &images, du, &mut memo);
            acc.add_scaled(v.terms(), c);
        }
        LieSeries::from_raw(&self.config, acc)
    }

    fn apply_basis(
        &self,
        w: &LyndonWord,
        images: &[LieSeries],
        du: usize,
        memo: &mut HashMap<LyndonWord, LieSeries>,
    ) -> LieSeries {
        if let Some(v) = memo.get(w) {
            return v.clone();
        }
        let v = if w.degree() + du > self.config.max_degree() {
            LieSeries::zero(&self.config)
        } else {
            match w.split() {
                None => images[w.letters()[0] as usize].clone(),
                Some((l, r)) => {
                    let pl = LieSeries::basis_element(&self.config, &l).expect("basis");
                    let pr = LieSeries::basis_element(&self.config, &r).expect("basis");
                    let ul = self.apply_basis(&l, images, du, memo);
                    let ur = self.apply_basis(&r, images, du, memo);
                    ul.bracket_unchecked(&pr).plus(&pl.bracket_unchecked(&ur))
                }
            }
        };
        memo.insert(w.clone(), v.clone());
        v
    }

    /// Leibniz extension to the free associative algebra.
    pub fn apply_assoc(&self, a: &AssocSeries) -> Result<AssocSeries> {
        self.config.ensure_same(a.config())?;
        Ok(self.apply_assoc_unchecked(a))
    }

    fn apply_assoc_unchecked(&self, a: &AssocSeries) -> AssocSeries {
        let Some(du) = self.min_degree() else {
            return AssocSeries::zero(&self.config);
        };
        let max = self.config.max_degree();
        let images: Vec<AssocSeries> = self.generator_images().iter().map(LieSeries::embed).collect();
        let mut acc: Terms<Word> = Terms::new();
        for (w, c) in a.terms().iter() {
            if w.is_empty() || w.len() + du > max {
                continue;
            }
            let l = w.letters();
            for (p, &letter) in l.iter().enumerate() {
                let prefix = Word::new(l[..p].to_vec());
                let suffix = Word::new(l[p + 1..].to_vec());
                for (m, cm) in images[letter as usize].terms().iter() {
                    let out = prefix.concat(m).concat(&suffix);
                    if out.len() <= max {
                        acc.add_term(out, c * cm);
                    }
                }
            }
        }
        AssocSeries::from_raw(&self.config, acc)
    }

    /// The induced action on cyclic words.
    pub fn apply_cyc(&self, c: &CyclicSeries) -> Result<CyclicSeries> {
        self.config.ensure_same(c.config())?;
        Ok(self.apply_cyc_unchecked(c))
    }

    pub(crate) fn apply_cyc_unchecked(&self, c: &CyclicSeries) -> CyclicSeries {
        let rep = AssocSeries::from_raw(
            &self.config,
            c.terms().iter().map(|(k, v)| (k.word().clone(), v.clone())).collect(),
        );
        let t = trace(&self.apply_assoc_unchecked(&rep));
        CyclicSeries::from_raw(&self.config, t.terms().clone(), c.is_quotient_linear())
    }

    /// Bracket of derivations: slot `k` of `[u, v]` is
    /// `u(b_k) - v(a_k) + [a_k, b_k]`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.config.ensure_same(&other.config)?;
        Ok(self.bracket_unchecked(other))
    }

    fn bracket_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return self.zero_like();
        }
        let slots = (0..self.arity())
            .map(|k| {
                let (a, b) = (&self.slots[k], &other.slots[k]);
                self.apply_unchecked(b).minus(&other.apply_unchecked(a)).plus(&a.bracket_unchecked(b))
            })
            .collect();
        Self::canonical(&self.config, slots).0
    }

    /// Image under a strand map; see [`StrandMap`].
    pub fn coface(&self, map: &StrandMap) -> Result<Self> {
        if map.source_arity() != self.arity() {
            return Err(Error::ArityMismatch { expected: map.source_arity(), got: self.arity() });
        }
        let target = TruncationConfig::new(map.target_arity(), self.config.max_degree())?;
        let args = map.generator_images(&target);
        let mut slots = vec![LieSeries::zero(&target); map.target_arity()];
        for (k, group) in map.groups.iter().enumerate() {
            let image = self.slots[k].substitute(&args)?;
            for &j in group {
                slots[j] = image.clone();
            }
        }
        Ok(Self::canonical(&target, slots).0)
    }

    /// Coordinates of the degree-`d` part in the order of [`tder_basis`].
    pub fn coordinates(&self, d: usize) -> Result<Vec<Q>> {
        let mut out = Vec::new();
        for (k, s) in self.slots.iter().enumerate() {
            for w in lyndon_basis(&self.config, d)? {
                if d == 1 && w.letters()[0] as usize == k {
                    continue;
                }
                out.push(s.coeff(&w));
            }
        }
        Ok(out)
    }
}

/// Canonical basis of the degree-`d` tuples: one Lyndon word in one slot,
/// skipping `x_k` in slot `k`.
pub fn tder_basis(config: &TruncationConfig, d: usize) -> Result<Vec<TangentialDerivation>> {
    let words = lyndon_basis(config, d)?;
    let mut out = Vec::new();
    for k in 0..config.n() {
        for w in &words {
            if d == 1 && w.letters()[0] as usize == k {
                continue;
            }
            let mut slots = vec![LieSeries::zero(config); config.n()];
            slots[k] = LieSeries::basis_element(config, w)?;
            out.push(TangentialDerivation { config: config.clone(), slots });
        }
    }
    Ok(out)
}

/// `t^{i,j}` with 1-based strands: `x_j` in slot `i`, `x_i` in slot `j`.
pub fn t_embed(config: &TruncationConfig, i: usize, j: usize) -> Result<TangentialDerivation> {
    let n = config.n();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    if i >= j {
        return Err(Error::Precondition(format!("t^{{{i},{j}}} needs i < j")));
    }
    let mut slots = vec![LieSeries::zero(config); n];
    slots[i - 1] = LieSeries::generator(config, j - 1)?;
    slots[j - 1] = LieSeries::generator(config, i - 1)?;
    Ok(TangentialDerivation { config: config.clone(), slots })
}

impl LieElement for TangentialDerivation {
    fn zero_like(&self) -> Self {
        TangentialDerivation::zero(&self.config)
    }

    fn is_zero(&self) -> bool {
        TangentialDerivation::is_zero(self)
    }

    fn add_scaled(&self, other: &Self, c: &Q) -> Self {
        debug_assert_eq!(self.config, other.config);
        let slots = self.slots.iter().zip(&other.slots).map(|(a, b)| a.add_scaled(b, c)).collect();
        TangentialDerivation { config: self.config.clone(), slots }
    }

    fn lie_bracket(&self, other: &Self) -> Self {
        self.bracket_unchecked(other)
    }
}

/// Where each old strand goes: old strand `k` becomes the group `groups[k]`
/// of new strands, and generator `x_k` becomes the sum over the group.
///
/// Text form lists the groups with 1-based digits separated by commas:
/// `"2,3"` inserts an empty first strand into a two-strand picture,
/// `"1,23"` doubles the second strand, `"12,3"` the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrandMap {
    groups: Vec<Vec<usize>>,
    target: usize,
}

impl StrandMap {
    /// Groups are 0-based here. They must be nonempty, disjoint and inside
    /// `0..target`.
    pub fn new(groups: Vec<Vec<usize>>, target: usize) -> Result<Self> {
        let mut seen = vec![false; target];
        for g in &groups {
            if g.is_empty() {
                return Err(Error::BadStrandSpec("empty strand group".into()));
            }
            for &j in g {
                if j >= target {
                    return Err(Error::BadStrandSpec(format!("strand {} beyond target arity {target}", j + 1)));
                }
                if std::mem::replace(&mut seen[j], true) {
                    return Err(Error::BadStrandSpec(format!("strand {} used twice", j + 1)));
                }
            }
        }
        if groups.is_empty() {
            return Err(Error::BadStrandSpec("no strands".into()));
        }
        Ok(StrandMap { groups, target })
    }

    /// Parses `"1,23"`-style notation. The target arity is the largest
    /// strand named unless `target` is given.
    pub fn parse(spec: &str, target: Option<usize>) -> Result<Self> {
        let mut groups = Vec::new();
        for part in spec.trim().split(',') {
            let g = part
                .chars()
                .map(|c| match c.to_digit(10) {
                    Some(d) if d > 0 => Ok(d as usize - 1),
                    _ => Err(Error::BadStrandSpec(format!("bad strand {c:?} in {spec:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            groups.push(g);
        }
        let used = groups.iter().flatten().map(|j| j + 1).max().unwrap_or(0);
        Self::new(groups, target.unwrap_or(used))
    }

    pub fn source_arity(&self) -> usize {
        self.groups.len()
    }

    pub fn target_arity(&self) -> usize {
        self.target
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    fn generator_images(&self, target: &TruncationConfig) -> Vec<LieSeries> {
        self.groups
            .iter()
            .map(|g| {
                g.iter().fold(LieSeries::zero(target), |acc, &j| {
                    acc.plus(&LieSeries::generator(target, j).expect("checked"))
                })
            })
            .collect()
    }
}

impl fmt::Display for StrandMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.groups.iter().map(|g| g.iter().map(|j| (j + 1).to_string()).collect()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Element of `TAut_n`, stored by its logarithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TAutElement {
    log: TangentialDerivation,
}

impl TAutElement {
    pub fn identity(config: &TruncationConfig) -> Self {
        TAutElement { log: TangentialDerivation::zero(config) }
    }

    pub fn exp(log: TangentialDerivation) -> Self {
        TAutElement { log }
    }

    pub fn log(&self) -> &TangentialDerivation {
        &self.log
    }

    pub fn config(&self) -> &TruncationConfig {
        &self.log.config
    }

    pub fn is_identity(&self) -> bool {
        self.log.is_zero()
    }

    /// `sum_k u^k(a) / k!`.
    pub fn exp_apply(&self, a: &LieSeries) -> Result<LieSeries> {
        self.log.config.ensure_same(a.config())?;
        Ok(exp_series(a.clone(), |t| self.log.apply_unchecked(t), self.config().max_degree()))
    }

    pub fn exp_apply_assoc(&self, a: &AssocSeries) -> Result<AssocSeries> {
        self.log.config.ensure_same(a.config())?;
        let max = self.config().max_degree();
        let mut acc = a.clone();
        let mut term = a.clone();
        for k in 1..=max {
            term = self.log.apply_assoc_unchecked(&term).scale(&(Q::one() / Q::from_integer(k.into())));
            if term.is_zero() {
                break;
            }
            acc = acc.add_unchecked(&term, &Q::one());
        }
        Ok(acc)
    }

    pub fn exp_apply_cyc(&self, c: &CyclicSeries) -> Result<CyclicSeries> {
        self.log.config.ensure_same(c.config())?;
        let max = self.config().max_degree();
        let mut acc = c.clone();
        let mut term = c.clone();
        for k in 1..=max {
            term = self.log.apply_cyc_unchecked(&term).scale(&(Q::one() / Q::from_integer(k.into())));
            if term.is_zero() {
                break;
            }
            acc = acc.add_scaled(&term, &Q::one());
        }
        Ok(acc)
    }

    /// Acts as `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.log.config.ensure_same(&other.log.config)?;
        Ok(TAutElement { log: bch_recursive(&self.log, &other.log, self.config().max_degree()) })
    }

    pub fn inverse(&self) -> Self {
        TAutElement { log: self.log.neg() }
    }

    pub fn coface(&self, map: &StrandMap) -> Result<Self> {
        Ok(TAutElement { log: self.log.coface(map)? })
    }

    pub fn retruncate(&self, max_degree: usize) -> Result<Self> {
        Ok(TAutElement { log: self.log.retruncate(max_degree)? })
    }
}

fn exp_series(a: LieSeries, step: impl Fn(&LieSeries) -> LieSeries, max: usize) -> LieSeries {
    let mut acc = a.clone();
    let mut term = a;
    for k in 1..=max {
        term = step(&term).scale(&(Q::one() / Q::from_integer(k.into())));
        if term.is_zero() {
            break;
        }
        acc = acc.plus(&term);
    }
    acc
}

/// Product of several elements, leftmost acting last.
pub fn compose_all(config: &TruncationConfig, items: &[TAutElement]) -> Result<TAutElement> {
    items.iter().try_fold(TAutElement::identity(config), |acc, g| acc.compose(g))
}
