use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{solkv_eq1_residual, KVCandidate};
use crate::cyclic::{duflo_combination, Necklace, OneVarSeries};
use crate::divjac::{divergence, jacobian};
use crate::error::{Error, Result};
use crate::freelie::{LieSeries, LyndonWord, TruncationConfig};
use crate::linalg::LinearSystem;
use crate::rational::Q;
use crate::tder::{tder_basis, TAutElement, TangentialDerivation};

/// Which point of each degree's affine solution space the solver keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gauge {
    /// Free parameters set to zero.
    Zero,
    /// Free parameters set to one.
    Unit,
}

impl Gauge {
    fn value(self) -> Q {
        match self {
            Gauge::Zero => Q::zero(),
            Gauge::Unit => Q::one(),
        }
    }
}

impl fmt::Display for Gauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gauge::Zero => "zero",
            Gauge::Unit => "unit",
        })
    }
}

impl FromStr for Gauge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" => Ok(Gauge::Zero),
            "unit" => Ok(Gauge::Unit),
            _ => Err(Error::InvalidConfig(format!("unknown gauge {s:?} (expected zero or unit)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KvSolution {
    pub candidate: KVCandidate,
    pub gauge: Gauge,
    /// Dimension of the affine solution space at degrees `1..=N`.
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Row {
    Lie(LyndonWord),
    Cyc(Necklace),
}

/// Solves both SolKV equations degree by degree up to `max_degree`.
///
/// The degree-`d` part `u_d` of `log F` enters the first equation at degree
/// `d+1` through `u_d(x+y)` and the second at degree `d` through `j(u_d)`,
/// together with the coefficient `r_d`. Both constraints are solved
/// jointly. Work happens at truncation `N+1` so that `u_N` is pinned by the
/// first equation as well.
pub fn solve_kv(max_degree: usize, gauge: Gauge) -> Result<KvSolution> {
    let work = TruncationConfig::new(2, max_degree + 1)?;
    let x = LieSeries::generator(&work, 0)?;
    let s = x.add(&LieSeries::generator(&work, 1)?)?;
    let mut u = TangentialDerivation::zero(&work);
    let mut r: Vec<(usize, Q)> = Vec::new();
    let mut dims = Vec::new();
    for d in 1..=max_degree {
        let f0 = TAutElement::exp(u.clone());
        let e1 = solkv_eq1_residual(&f0)?.degree_part(d + 1);
        let e2 = jacobian(&f0).degree_part(d);
        let basis = tder_basis(&work, d)?;
        let mut columns: Vec<BTreeMap<Row, Q>> = basis
            .par_iter()
            .map(|b| {
                let mut col = BTreeMap::new();
                for (w, c) in b.apply(&s).expect("same config").terms().iter() {
                    col.insert(Row::Lie(w.clone()), c.clone());
                }
                for (k, c) in divergence(b).terms().iter() {
                    col.insert(Row::Cyc(k.clone()), c.clone());
                }
                col
            })
            .collect();
        if d >= 2 {
            let unit = OneVarSeries::monomial(work.max_degree(), d, Q::one())?;
            let dc = duflo_combination(&unit, &work)?;
            columns.push(dc.terms().iter().map(|(k, c)| (Row::Cyc(k.clone()), -c.clone())).collect());
        }
        let mut rhs = BTreeMap::new();
        for (w, c) in e1.terms().iter() {
            rhs.insert(Row::Lie(w.clone()), -c.clone());
        }
        for (k, c) in e2.terms().iter() {
            rhs.insert(Row::Cyc(k.clone()), -c.clone());
        }
        let mut system = LinearSystem::new(columns.len());
        system.push_columns(&columns, &rhs);
        let sol = system
            .solve()
            .ok_or_else(|| Error::Infeasible { degree: d, what: "SolKV equations have no solution".into() })?;
        dims.push(sol.dimension());
        let z = sol.point(&vec![gauge.value(); sol.dimension()]);
        for (b, c) in basis.iter().zip(&z) {
            if !c.is_zero() {
                u = u.add(&b.scale(c))?;
            }
        }
        if d >= 2 && !z[basis.len()].is_zero() {
            r.push((d, z[basis.len()].clone()));
        }
    }
    let f = TAutElement::exp(u).retruncate(max_degree)?;
    let r = OneVarSeries::from_coeffs(max_degree, r)?;
    Ok(KvSolution { candidate: KVCandidate::new(f, Some(r))?, gauge, dims })
}
