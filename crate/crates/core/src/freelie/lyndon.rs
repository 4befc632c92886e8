use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::config::TruncationConfig;
use super::word::Word;
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::terms::Terms;

/// A word that is strictly smaller than all of its proper rotations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LyndonWord(Word);

impl LyndonWord {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        Self::from_word(Word::new(letters))
    }

    pub fn from_word(w: Word) -> Result<Self> {
        if w.is_lyndon() {
            Ok(LyndonWord(w))
        } else {
            Err(Error::NotLyndon(w.to_string()))
        }
    }

    pub fn letter(i: u8) -> Self {
        LyndonWord(Word::letter(i))
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn letters(&self) -> &[u8] {
        self.0.letters()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Standard factorization into two Lyndon words, `None` for letters.
    pub fn split(&self) -> Option<(LyndonWord, LyndonWord)> {
        self.0.standard_factorization().map(|(u, v)| (LyndonWord(u), LyndonWord(v)))
    }
}

/// Lyndon words of length exactly `d` over `n` letters in lexicographic order.
pub fn lyndon_words(n: usize, d: usize) -> Vec<LyndonWord> {
    // Duval's generation of Lyndon words of length <= d in lexicographic order.
    let mut out = Vec::new();
    if n == 0 || d == 0 {
        return out;
    }
    let top = (n - 1) as u8;
    let mut w: Vec<u8> = vec![0];
    loop {
        if w.len() == d {
            out.push(LyndonWord(Word::new(w.clone())));
        }
        let m = w.len();
        while w.len() < d {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == top {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

/// Lyndon basis of the degree-`d` part of the free Lie algebra.
pub fn lyndon_basis(config: &TruncationConfig, d: usize) -> Result<Vec<LyndonWord>> {
    if d == 0 || d > config.max_degree() {
        return Err(Error::DegreeOutOfRange { degree: d, max: config.max_degree() });
    }
    Ok(lyndon_words(config.n(), d))
}

/// Witt's dimension formula `(1/d) sum_{e | d} mu(d/e) n^e`.
pub fn witt_dimension(n: usize, d: usize) -> usize {
    let mut acc: i128 = 0;
    for e in 1..=d {
        if d.is_multiple_of(e) {
            acc += mobius(d / e) as i128 * (n as i128).pow(e as u32);
        }
    }
    (acc / d as i128) as usize
}

fn mobius(mut m: usize) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

type AssocExpansion = Arc<Vec<(Word, BigInt)>>;

fn expansion_cache() -> &'static RwLock<HashMap<Word, AssocExpansion>> {
    static CACHE: OnceLock<RwLock<HashMap<Word, AssocExpansion>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Associative expansion of the standard bracketing of a Lyndon word.
/// Its least word is the Lyndon word itself, with coefficient one.
pub fn standard_expansion(w: &LyndonWord) -> AssocExpansion {
    if let Some(hit) = expansion_cache().read().unwrap().get(w.word()) {
        return hit.clone();
    }
    let value: Vec<(Word, BigInt)> = match w.split() {
        None => vec![(w.word().clone(), BigInt::one())],
        Some((u, v)) => {
            let pu = standard_expansion(&u);
            let pv = standard_expansion(&v);
            let mut acc: std::collections::BTreeMap<Word, BigInt> = Default::default();
            for (a, ca) in pu.iter() {
                for (b, cb) in pv.iter() {
                    *acc.entry(a.concat(b)).or_default() += ca * cb;
                    *acc.entry(b.concat(a)).or_default() -= ca * cb;
                }
            }
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
        }
    };
    let value = Arc::new(value);
    expansion_cache().write().unwrap().insert(w.word().clone(), value.clone());
    value
}

/// Rewrites a Lie polynomial given by its associative expansion in the
/// Lyndon basis. Fails when the input is not a Lie element.
pub fn decompose_lie(mut p: Terms<Word>) -> Result<Terms<LyndonWord>> {
    let mut out = Terms::new();
    while let Some((w, c)) = p.first() {
        let (w, c) = (w.clone(), c.clone());
        let lw = LyndonWord::from_word(w.clone())
            .map_err(|_| Error::NotLie(format!("leading word {w} is not Lyndon")))?;
        for (v, cv) in standard_expansion(&lw).iter() {
            p.add_term(v.clone(), -(&c * Q::from_integer(cv.clone())));
        }
        debug_assert!(p.get(&w).is_zero());
        out.add_term(lw, c);
    }
    Ok(out)
}

type BracketTable = Arc<Vec<(LyndonWord, Q)>>;

fn bracket_cache() -> &'static RwLock<HashMap<(LyndonWord, LyndonWord), BracketTable>> {
    static CACHE: OnceLock<RwLock<HashMap<(LyndonWord, LyndonWord), BracketTable>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Bracket of two Lyndon basis elements, in the Lyndon basis.
pub fn bracket_basis(u: &LyndonWord, v: &LyndonWord) -> BracketTable {
    let key = (u.clone(), v.clone());
    if let Some(hit) = bracket_cache().read().unwrap().get(&key) {
        return hit.clone();
    }
    let pu = standard_expansion(u);
    let pv = standard_expansion(v);
    let mut p = Terms::new();
    for (a, ca) in pu.iter() {
        for (b, cb) in pv.iter() {
            let c = Q::from_integer(ca * cb);
            p.add_term(a.concat(b), c.clone());
            p.add_term(b.concat(a), -c);
        }
    }
    let dec = decompose_lie(p).expect("commutator of Lie elements is Lie");
    let table: BracketTable = Arc::new(dec.iter().map(|(k, c)| (k.clone(), c.clone())).collect());
    bracket_cache().write().unwrap().insert(key, table.clone());
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(n: usize, d: usize) -> Vec<Vec<u8>> {
        let mut all: Vec<Vec<u8>> = vec![vec![]];
        for _ in 0..d {
            all = all
                .into_iter()
                .flat_map(|w| (0..n as u8).map(move |a| [w.clone(), vec![a]].concat()))
                .collect();
        }
        all.into_iter()
            .filter(|w| (1..d).all(|k| *w < [&w[k..], &w[..k]].concat()))
            .collect()
    }

    #[test]
    fn generation_matches_rotation_filter_and_witt() {
        for n in 1..=4 {
            for d in 1..=6 {
                let got: Vec<Vec<u8>> = lyndon_words(n, d).iter().map(|w| w.letters().to_vec()).collect();
                let mut want = brute_force(n, d);
                want.sort();
                assert_eq!(got, want, "n={n} d={d}");
                assert_eq!(got.len(), witt_dimension(n, d));
            }
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(lyndon_words(2, 1).len(), 2);
        assert_eq!(lyndon_words(2, 3).len(), 2);
        assert_eq!(lyndon_words(2, 6).len(), 9);
    }

    #[test]
    fn expansion_is_triangular() {
        for d in 1..=6 {
            for w in lyndon_words(3, d.min(5)) {
                let e = standard_expansion(&w);
                let (least, c) = e.iter().min_by(|a, b| a.0.cmp(&b.0)).unwrap();
                assert_eq!(least, w.word());
                assert!(c.is_one());
            }
        }
    }

    #[test]
    fn basis_range_checked() {
        let c = TruncationConfig::new(2, 3).unwrap();
        assert!(lyndon_basis(&c, 0).is_err());
        assert!(lyndon_basis(&c, 4).is_err());
        assert_eq!(lyndon_basis(&c, 1).unwrap().len(), 2);
    }
}
