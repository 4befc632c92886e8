use std::sync::Arc;

use crate::error::{Error, Result};

/// Number of generators, truncation degree and generator names.
///
/// Two values can only be combined when their configs are equal; moving a
/// value to a different truncation is always explicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncationConfig {
    n: usize,
    max_degree: usize,
    names: Arc<[String]>,
}

impl TruncationConfig {
    /// Config with the default names: `x, y, z` for up to three generators,
    /// `x1..xn` otherwise.
    pub fn new(n: usize, max_degree: usize) -> Result<Self> {
        Self::with_names(n, max_degree, default_names(n))
    }

    pub fn with_names(n: usize, max_degree: usize, names: Vec<String>) -> Result<Self> {
        if n == 0 || n > 255 {
            return Err(Error::InvalidConfig(format!("generator count {n} not in 1..=255")));
        }
        if max_degree == 0 {
            return Err(Error::InvalidConfig("truncation degree must be at least 1".into()));
        }
        if names.len() != n {
            return Err(Error::InvalidConfig(format!("{} names for {n} generators", names.len())));
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() || a.contains(|c: char| c.is_whitespace() || c == '.') {
                return Err(Error::InvalidConfig(format!("bad generator name {a:?}")));
            }
            if names[..i].contains(a) {
                return Err(Error::InvalidConfig(format!("duplicate generator name {a:?}")));
            }
        }
        Ok(TruncationConfig { n, max_degree, names: names.into() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: u8) -> &str {
        &self.names[i as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|a| a == name).map(|i| i as u8)
    }

    /// Same generators, different truncation degree.
    pub fn with_max_degree(&self, max_degree: usize) -> Result<Self> {
        Self::with_names(self.n, max_degree, self.names.to_vec())
    }

    pub fn ensure_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ConfigMismatch(format!(
                "n={} N={} vs n={} N={}",
                self.n, self.max_degree, other.n, other.max_degree
            )))
        }
    }

    pub fn check_index(&self, i: usize) -> Result<u8> {
        if i < self.n {
            Ok(i as u8)
        } else {
            Err(Error::IndexOutOfRange { index: i, n: self.n })
        }
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}
