//! Sparse exact linear systems over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Q;

type Row = BTreeMap<usize, Q>;

/// `A z = b` with sparse rows, built one equation at a time.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    ncols: usize,
    rows: Vec<(Row, Q)>,
}

/// Reduced form of a consistent system: pivot variables expressed through
/// the free ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    ncols: usize,
    // (pivot column, coefficients on free columns, right-hand side)
    pivots: Vec<(usize, Row, Q)>,
    free: Vec<usize>,
}

impl LinearSystem {
    pub fn new(ncols: usize) -> Self {
        LinearSystem { ncols, rows: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn push(&mut self, coeffs: impl IntoIterator<Item = (usize, Q)>, rhs: Q) {
        let mut row = Row::new();
        for (j, c) in coeffs {
            assert!(j < self.ncols, "column {j} out of range");
            if c.is_zero() {
                continue;
            }
            let e = row.entry(j).or_insert_with(Q::zero);
            *e += c;
            if e.is_zero() {
                row.remove(&j);
            }
        }
        if row.is_empty() && rhs.is_zero() {
            return;
        }
        self.rows.push((row, rhs));
    }

    /// Adds equations from columns: `columns[j]` lists the entries of
    /// column `j` keyed by equation label, `rhs` the right-hand sides.
    pub fn push_columns<K: Ord + Clone>(&mut self, columns: &[BTreeMap<K, Q>], rhs: &BTreeMap<K, Q>) {
        let mut rows: BTreeMap<K, Row> = BTreeMap::new();
        for (j, col) in columns.iter().enumerate() {
            for (k, c) in col {
                if !c.is_zero() {
                    rows.entry(k.clone()).or_default().insert(j, c.clone());
                }
            }
        }
        for k in rhs.keys() {
            rows.entry(k.clone()).or_default();
        }
        for (k, row) in rows {
            let b = rhs.get(&k).cloned().unwrap_or_else(Q::zero);
            self.push(row, b);
        }
    }

    /// Gauss-Jordan elimination, taking pivots from the last column down.
    /// `None` if the system is inconsistent.
    pub fn solve(&self) -> Option<AffineSolution> {
        let mut rows = self.rows.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut used = vec![false; rows.len()];
        for col in (0..self.ncols).rev() {
            let Some(p) = (0..rows.len()).find(|&i| !used[i] && rows[i].0.contains_key(&col)) else {
                continue;
            };
            used[p] = true;
            let inv = Q::one() / &rows[p].0[&col];
            let (prow, prhs) = {
                let (r, b) = &mut rows[p];
                for v in r.values_mut() {
                    *v *= &inv;
                }
                *b *= &inv;
                (r.clone(), b.clone())
            };
            for (i, (r, b)) in rows.iter_mut().enumerate() {
                if i == p {
                    continue;
                }
                let Some(f) = r.get(&col).cloned() else { continue };
                for (j, v) in &prow {
                    let e = r.entry(*j).or_insert_with(Q::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        r.remove(j);
                    }
                }
                *b -= &f * &prhs;
            }
            pivots.push((col, p));
        }
        if rows.iter().enumerate().any(|(i, (r, b))| !used[i] && r.is_empty() && !b.is_zero()) {
            return None;
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|(c, _)| *c).collect();
        let free = (0..self.ncols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut out: Vec<(usize, Row, Q)> = pivots
            .into_iter()
            .map(|(c, p)| {
                let (r, b) = &rows[p];
                let others = r.iter().filter(|(j, _)| **j != c).map(|(j, v)| (*j, v.clone())).collect();
                (c, others, b.clone())
            })
            .collect();
        out.sort_by_key(|(c, _, _)| *c);
        Some(AffineSolution { ncols: self.ncols, pivots: out, free })
    }
}

impl AffineSolution {
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Free columns in increasing order.
    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The solution with the given values on the free columns.
    pub fn point(&self, free_values: &[Q]) -> Vec<Q> {
        assert_eq!(free_values.len(), self.free.len());
        let mut z = vec![Q::zero(); self.ncols];
        for (c, v) in self.free.iter().zip(free_values) {
            z[*c] = v.clone();
        }
        for (c, r, b) in &self.pivots {
            let mut v = b.clone();
            for (j, a) in r {
                v -= a * &z[*j];
            }
            z[*c] = v;
        }
        z
    }

    /// Basis of the homogeneous solutions, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        self.free
            .iter()
            .map(|&f| {
                let mut z = vec![Q::zero(); self.ncols];
                z[f] = Q::one();
                for (c, r, _) in &self.pivots {
                    if let Some(a) = r.get(&f) {
                        z[*c] = -a.clone();
                    }
                }
                z
            })
            .collect()
    }
}
