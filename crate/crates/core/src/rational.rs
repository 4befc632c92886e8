//! Exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficient field: reduced rationals over arbitrary-precision integers.
pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn factorial(k: usize) -> Q {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= BigInt::from(i);
    }
    Q::from_integer(acc)
}

/// `num/den`, always with an explicit denominator.
pub fn fmt_q(c: &Q) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_q(s: &str) -> Option<Q> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

/// Bernoulli numbers B_0..=B_m with B_1 = -1/2.
pub fn bernoulli(m: usize) -> Vec<Q> {
    let mut b = vec![Q::zero(); m + 1];
    b[0] = Q::one();
    for k in 1..=m {
        let mut acc = Q::zero();
        for (j, bj) in b.iter().enumerate().take(k) {
            acc += binomial(k + 1, j) * bj;
        }
        b[k] = -acc / qi(k as i64 + 1);
    }
    b
}

pub fn binomial(n: usize, k: usize) -> Q {
    if k > n {
        return Q::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Q::from_integer(acc)
}
