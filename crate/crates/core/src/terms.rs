//! Sparse linear combinations with exact coefficients.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::rational::Q;

/// Finite linear combination of keys; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Terms<K: Ord>(BTreeMap<K, Q>);

impl<K: Ord> Default for Terms<K> {
    fn default() -> Self {
        Terms(BTreeMap::new())
    }
}

impl<K: Ord + Clone> Terms<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(k: K, c: Q) -> Self {
        let mut t = Self::new();
        t.add_term(k, c);
        t
    }

    pub fn add_term(&mut self, k: K, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Terms<K>, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.0 {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Terms(self.0.iter().map(|(k, v)| (k.clone(), v * c)).collect())
    }

    pub fn get(&self, k: &K) -> Q {
        self.0.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Q)> {
        self.0.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.0.keys()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn retain(&mut self, mut f: impl FnMut(&K) -> bool) {
        self.0.retain(|k, _| f(k));
    }

    pub fn filtered(&self, mut f: impl FnMut(&K) -> bool) -> Self {
        Terms(self.0.iter().filter(|(k, _)| f(k)).map(|(k, v)| (k.clone(), v.clone())).collect())
    }

    pub fn first(&self) -> Option<(&K, &Q)> {
        self.0.iter().next()
    }

    pub fn remove(&mut self, k: &K) -> Option<Q> {
        self.0.remove(k)
    }
}

impl<K: Ord + Clone> FromIterator<(K, Q)> for Terms<K> {
    fn from_iter<I: IntoIterator<Item = (K, Q)>>(iter: I) -> Self {
        let mut t = Terms::new();
        for (k, c) in iter {
            t.add_term(k, c);
        }
        t
    }
}
