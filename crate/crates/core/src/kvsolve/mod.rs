//! Kashiwara–Vergne solutions and symmetry groups: membership checks, Duflo
//! extraction, the degree-by-degree solver, group actions and the
//! correspondence with automorphism data of arrow diagrams.

mod actions;
mod solve;
mod theta;

pub use actions::{act_kv, act_krv, t_conj, transitivity_witness};
pub use solve::{solve_kv, Gauge, KvSolution};
pub use theta::{
    check_aut_equations, expansion_from_solkv, post_compose, solkv_from_expansion, theta, theta_bar, theta_inv,
    AutArrowsElement, VertexValue,
};

use num_traits::Zero;

use crate::cyclic::{bch_combination, duflo_combination, duflo_probe, CyclicSeries, OneVarSeries};
use crate::divjac::jacobian;
use crate::error::{Error, Result};
use crate::freelie::{bch_xy, LieSeries, TruncationConfig};
use crate::rational::Q;
use crate::report::DegreeReport;
use crate::tder::TAutElement;

/// Candidate solution `(F, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KVCandidate {
    pub f: TAutElement,
    pub r: Option<OneVarSeries>,
}

/// Element `(alpha, s)` of KRV.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KRVElement {
    pub alpha: TAutElement,
    pub s: OneVarSeries,
}

/// Element `(a, sigma)` of KV.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KVGroupElement {
    pub a: TAutElement,
    pub sigma: OneVarSeries,
}

fn check_two_strands(config: &TruncationConfig) -> Result<()> {
    if config.n() != 2 {
        return Err(Error::ArityMismatch { expected: 2, got: config.n() });
    }
    Ok(())
}

fn check_series(config: &TruncationConfig, s: &OneVarSeries) -> Result<()> {
    if s.max_degree() != config.max_degree() {
        return Err(Error::ConfigMismatch(format!(
            "series truncated at {} but automorphism at {}",
            s.max_degree(),
            config.max_degree()
        )));
    }
    Ok(())
}

impl KVCandidate {
    pub fn new(f: TAutElement, r: Option<OneVarSeries>) -> Result<Self> {
        check_two_strands(f.config())?;
        if let Some(r) = &r {
            check_series(f.config(), r)?;
        }
        Ok(KVCandidate { f, r })
    }

    pub fn config(&self) -> &TruncationConfig {
        self.f.config()
    }
}

impl KRVElement {
    pub fn new(alpha: TAutElement, s: OneVarSeries) -> Result<Self> {
        check_two_strands(alpha.config())?;
        check_series(alpha.config(), &s)?;
        Ok(KRVElement { alpha, s })
    }

    pub fn identity(config: &TruncationConfig) -> Self {
        KRVElement { alpha: TAutElement::identity(config), s: OneVarSeries::zero(config.max_degree()) }
    }

    pub fn config(&self) -> &TruncationConfig {
        self.alpha.config()
    }

    /// `(alpha_1, s_1) * (alpha_2, s_2) = (alpha_2 o alpha_1, s_1 + s_2)`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        Ok(KRVElement { alpha: other.alpha.compose(&self.alpha)?, s: self.s.add(&other.s)? })
    }

    pub fn inverse(&self) -> Self {
        KRVElement { alpha: self.alpha.inverse(), s: self.s.neg() }
    }
}

impl KVGroupElement {
    pub fn new(a: TAutElement, sigma: OneVarSeries) -> Result<Self> {
        check_two_strands(a.config())?;
        check_series(a.config(), &sigma)?;
        Ok(KVGroupElement { a, sigma })
    }

    pub fn identity(config: &TruncationConfig) -> Self {
        KVGroupElement { a: TAutElement::identity(config), sigma: OneVarSeries::zero(config.max_degree()) }
    }

    pub fn config(&self) -> &TruncationConfig {
        self.a.config()
    }

    /// `(a_1 o a_2, sigma_1 + sigma_2)`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        Ok(KVGroupElement { a: self.a.compose(&other.a)?, sigma: self.sigma.add(&other.sigma)? })
    }

    pub fn inverse(&self) -> Self {
        KVGroupElement { a: self.a.inverse(), sigma: self.sigma.neg() }
    }
}

pub(crate) fn lie_counts(report: &mut DegreeReport, eq: &str, residual: &LieSeries, max: usize) {
    for d in 1..=max {
        report.push(d, eq, residual.terms().keys().filter(|w| w.degree() == d).count());
    }
}

pub(crate) fn cyc_counts(report: &mut DegreeReport, eq: &str, residual: &CyclicSeries, max: usize) {
    for d in 1..=max {
        report.push(d, eq, residual.terms().keys().filter(|w| w.degree() == d).count());
    }
}

fn xy(config: &TruncationConfig) -> (LieSeries, LieSeries) {
    (LieSeries::generator(config, 0).expect("n=2"), LieSeries::generator(config, 1).expect("n=2"))
}

/// `bch(F(x), F(y)) - (x + y)`.
pub fn solkv_eq1_residual(f: &TAutElement) -> Result<LieSeries> {
    check_two_strands(f.config())?;
    let (x, y) = xy(f.config());
    f.exp_apply(&x)?.bch(&f.exp_apply(&y)?)?.sub(&x.add(&y)?)
}

/// `bch(a(x), a(y)) - bch(x, y)`.
pub fn kv_eq1_residual(a: &TAutElement) -> Result<LieSeries> {
    check_two_strands(a.config())?;
    let (x, y) = xy(a.config());
    a.exp_apply(&x)?.bch(&a.exp_apply(&y)?)?.sub(&bch_xy(a.config())?)
}

/// `alpha(x + y) - (x + y)`.
pub fn krv_eq1_residual(alpha: &TAutElement) -> Result<LieSeries> {
    check_two_strands(alpha.config())?;
    let (x, y) = xy(alpha.config());
    let s = x.add(&y)?;
    alpha.exp_apply(&s)?.sub(&s)
}

pub fn check_solkv(c: &KVCandidate) -> Result<DegreeReport> {
    let r = c.r.as_ref().ok_or(Error::MissingDuflo)?;
    let config = c.config();
    let mut rep = DegreeReport::new();
    lie_counts(&mut rep, "solkv-1", &solkv_eq1_residual(&c.f)?, config.max_degree());
    let e2 = jacobian(&c.f).sub(&duflo_combination(r, config)?)?;
    cyc_counts(&mut rep, "solkv-2", &e2, config.max_degree());
    Ok(rep)
}

pub fn check_kv_group(g: &KVGroupElement) -> Result<DegreeReport> {
    let config = g.config();
    let mut rep = DegreeReport::new();
    lie_counts(&mut rep, "kv-1", &kv_eq1_residual(&g.a)?, config.max_degree());
    let e2 = jacobian(&g.a).sub(&bch_combination(&g.sigma, config)?)?;
    cyc_counts(&mut rep, "kv-2", &e2, config.max_degree());
    Ok(rep)
}

pub fn check_krv_group(e: &KRVElement) -> Result<DegreeReport> {
    let config = e.config();
    let mut rep = DegreeReport::new();
    lie_counts(&mut rep, "krv-1", &krv_eq1_residual(&e.alpha)?, config.max_degree());
    let e2 = jacobian(&e.alpha).sub(&duflo_combination(&e.s, config)?)?;
    cyc_counts(&mut rep, "krv-2", &e2, config.max_degree());
    Ok(rep)
}

/// Best fit `r` for `c = tr(r(x+y) - r(x) - r(y))` from the coefficients
/// of `x^{d-1} y`, with the residual `c - tr(..)`.
pub fn duflo_fit(c: &CyclicSeries) -> Result<(OneVarSeries, CyclicSeries)> {
    let config = c.config();
    check_two_strands(config)?;
    let max = config.max_degree();
    let coeffs = (2..=max).map(|d| (d, c.coeff(&duflo_probe(d)) / Q::from_integer(d.into())));
    let r = OneVarSeries::from_coeffs(max, coeffs)?;
    let mut image = duflo_combination(&r, config)?;
    if c.is_quotient_linear() {
        image = image.quotient_linear();
    }
    let rest = c.sub(&image)?;
    Ok((r, rest))
}

/// The series `r` with `c = tr(r(x+y) - r(x) - r(y))`. Fails when `c` is
/// not of that form.
pub fn duflo_preimage(c: &CyclicSeries) -> Result<OneVarSeries> {
    let (r, rest) = duflo_fit(c)?;
    if let Some(d) = rest.terms().keys().map(|k| k.degree()).min() {
        return Err(Error::Infeasible { degree: d, what: "value is not of the form tr(r(x+y)-r(x)-r(y))".into() });
    }
    Ok(r)
}

/// Duflo series `r` of a SolKV candidate `F`, from `J(F)`.
pub fn extract_duflo(f: &TAutElement) -> Result<OneVarSeries> {
    duflo_preimage(&jacobian(f))
}

/// Duflo series `s` of a KRV candidate `alpha`.
pub fn extract_krv_duflo(alpha: &TAutElement) -> Result<OneVarSeries> {
    duflo_preimage(&jacobian(alpha))
}

/// The series `sigma` with `J(a) = tr(sigma(bch(x,y)) - sigma(x) - sigma(y))`.
pub fn extract_kv_duflo(a: &TAutElement) -> Result<OneVarSeries> {
    let config = a.config();
    check_two_strands(config)?;
    let max = config.max_degree();
    let mut rest = jacobian(a);
    let mut sigma = OneVarSeries::zero(max);
    for d in 2..=max {
        let c = rest.coeff(&duflo_probe(d)) / Q::from_integer(d.into());
        if c.is_zero() {
            continue;
        }
        let term = OneVarSeries::monomial(max, d, c)?;
        rest = rest.sub(&bch_combination(&term, config)?)?;
        sigma = sigma.add(&term)?;
    }
    if let Some(d) = rest.terms().keys().map(|k| k.degree()).min() {
        return Err(Error::Infeasible { degree: d, what: "J(a) is not of the form tr(s(bch)-s(x)-s(y))".into() });
    }
    Ok(sigma)
}
