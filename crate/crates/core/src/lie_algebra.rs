//! Operations that only need a Lie bracket: BCH by recursion and Lie-word
//! substitution. Used for free Lie series and tangential derivations alike.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freelie::{LieSeries, LyndonWord};
use crate::rational::{bernoulli, factorial, qi, Q};

/// An element of a graded Lie algebra over the rationals whose degrees
/// start at one. Values combined here must share one truncation config.
pub trait LieElement: Clone + Send + Sync {
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// `self + c * other`.
    fn add_scaled(&self, other: &Self, c: &Q) -> Self;
    fn lie_bracket(&self, other: &Self) -> Self;

    fn scale(&self, c: &Q) -> Self {
        self.zero_like().add_scaled(self, c)
    }

    fn plus(&self, other: &Self) -> Self {
        self.add_scaled(other, &Q::one())
    }

    fn minus(&self, other: &Self) -> Self {
        self.add_scaled(other, &-Q::one())
    }
}

/// `log(e^a e^b)` through Varadarajan's recursion for the homogeneous
/// components `Z_n`, summed for `n <= max_degree`.
pub fn bch_recursive<T: LieElement>(a: &T, b: &T, max_degree: usize) -> T {
    let sum = a.plus(b);
    let diff = a.minus(b);
    let bern = bernoulli(max_degree.max(2));
    let zero = a.zero_like();
    // z[n] is the component of formal degree n
    let mut z: Vec<T> = vec![zero.clone(), sum.clone()];
    // nested[m][t]: sum over k_1+..+k_m = t of ad_{Z_k1}..ad_{Z_km}(a+b)
    let mut nested: Vec<Vec<T>> = vec![vec![sum.clone()]];
    for n in 1..max_degree {
        nested[0].push(zero.clone());
        nested.push(vec![zero.clone(); n]);
        for m in 1..=n {
            let mut acc = zero.clone();
            for k in 1..=n {
                let inner = &nested[m - 1][n - k];
                if !inner.is_zero() && !z[k].is_zero() {
                    acc = acc.plus(&z[k].lie_bracket(inner));
                }
            }
            nested[m].push(acc);
        }
        let mut next = diff.lie_bracket(&z[n]).scale(&(Q::one() / qi(2)));
        for p in 1..=(n / 2) {
            let c = &bern[2 * p] / factorial(2 * p);
            if !c.is_zero() {
                next = next.add_scaled(&nested[2 * p][n], &c);
            }
        }
        z.push(next.scale(&(Q::one() / qi(n as i64 + 1))));
    }
    z.iter().fold(a.zero_like(), |acc, t| acc.plus(t))
}

/// Evaluates the Lie series `word` (in `k` generators) at `args`, the
/// unique Lie map sending generator `i` to `args[i]`.
pub fn substitute_lie<T: LieElement>(word: &LieSeries, args: &[T]) -> Result<T> {
    let k = word.config().n();
    if args.len() != k {
        return Err(Error::ArityMismatch { expected: k, got: args.len() });
    }
    let mut memo: HashMap<LyndonWord, T> = HashMap::new();
    let mut acc = args[0].zero_like();
    for (w, c) in word.terms().iter() {
        let v = eval_basis(w, args, &mut memo);
        acc = acc.add_scaled(&v, c);
    }
    Ok(acc)
}

fn eval_basis<T: LieElement>(w: &LyndonWord, args: &[T], memo: &mut HashMap<LyndonWord, T>) -> T {
    if let Some(v) = memo.get(w) {
        return v.clone();
    }
    let v = match w.split() {
        None => args[w.letters()[0] as usize].clone(),
        Some((u, v)) => {
            let a = eval_basis(&u, args, memo);
            let b = eval_basis(&v, args, memo);
            a.lie_bracket(&b)
        }
    };
    memo.insert(w.clone(), v.clone());
    v
}
