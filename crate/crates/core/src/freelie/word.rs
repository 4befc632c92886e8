use std::cmp::Ordering;
use std::fmt;

/// A word over generator indices.
///
/// Ordered first by length, then lexicographically, so maps keyed by words
/// iterate degree by degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: u8) -> Self {
        Word(vec![i])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn rotation(&self, k: usize) -> Word {
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// Lexicographically least rotation.
    pub fn min_rotation(&self) -> Word {
        (0..self.len().max(1))
            .map(|k| if self.is_empty() { self.clone() } else { self.rotation(k) })
            .min_by(|a, b| a.0.cmp(&b.0))
            .unwrap_or_default()
    }

    /// Strictly smaller than each of its proper rotations.
    pub fn is_lyndon(&self) -> bool {
        !self.is_empty() && (1..self.len()).all(|k| self.0 < self.rotation(k).0)
    }

    /// Standard factorization `w = u v` of a Lyndon word of length at least
    /// two, where `v` is its longest proper Lyndon suffix.
    pub fn standard_factorization(&self) -> Option<(Word, Word)> {
        if self.len() < 2 {
            return None;
        }
        (1..self.len())
            .map(|k| (Word(self.0[..k].to_vec()), Word(self.0[k..].to_vec())))
            .find(|(_, v)| v.is_lyndon())
    }

    pub fn display_with(&self, names: &[String]) -> String {
        self.0.iter().map(|&i| names[i as usize].as_str()).collect::<Vec<_>>().join(".")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}
