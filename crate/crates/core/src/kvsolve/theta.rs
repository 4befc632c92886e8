//! Automorphism data `(w, n, a, gamma)` in the model
//! `(tder_2 + a_2) ⋉ cyc_2` and the maps to and from KRV.
//!
//! `theta(G) = (e^{-n}, -2 gamma)` and `theta_bar(G) = (e^{n}, 2 gamma)` are
//! inverse to each other in KRV. `theta_inv` inverts `theta_bar`, so
//! `theta(theta_inv(e))` is the KRV inverse of `e`.

use num_traits::One;

use super::{check_krv_group, cyc_counts, krv_eq1_residual, lie_counts, solkv_eq1_residual, KRVElement};
use crate::cyclic::{eval_series, trace, CyclicSeries, OneVarSeries};
use crate::divjac::jacobian;
use crate::error::{Error, Result};
use crate::freelie::{AssocSeries, TruncationConfig};
use crate::lie_algebra::bch_recursive;
use crate::rational::{q, Q};
use crate::report::DegreeReport;
use crate::tder::{APart, TAutElement, TangentialDerivation};

/// Vertex value `e^w e^{n + a}` together with the cap series `gamma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutArrowsElement {
    pub w: CyclicSeries,
    pub n_part: TangentialDerivation,
    pub a_part: APart,
    pub gamma: OneVarSeries,
}

/// Group-like triple `e^b e^{nu + a}` on two strands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexValue {
    pub b: CyclicSeries,
    pub nu: TangentialDerivation,
    pub a: APart,
}

fn semidirect(
    w1: &CyclicSeries,
    n1: &TangentialDerivation,
    w2: &CyclicSeries,
    n2: &TangentialDerivation,
) -> Result<(CyclicSeries, TangentialDerivation)> {
    let g1 = TAutElement::exp(n1.clone());
    let w = w1.add(&g1.exp_apply_cyc(w2)?)?;
    let n = bch_recursive(n1, n2, n1.config().max_degree());
    Ok((w, n))
}

impl AutArrowsElement {
    pub fn identity(config: &TruncationConfig) -> Self {
        AutArrowsElement {
            w: CyclicSeries::zero(config),
            n_part: TangentialDerivation::zero(config),
            a_part: APart::zero(config.n()),
            gamma: OneVarSeries::zero(config.max_degree()),
        }
    }

    pub fn config(&self) -> &TruncationConfig {
        self.n_part.config()
    }

    pub fn is_v_small(&self) -> bool {
        self.a_part.is_zero()
    }

    /// Pointwise product: vertex values multiply in the semidirect
    /// product, cap series and `a` parts add.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let (w, n_part) = semidirect(&self.w, &self.n_part, &other.w, &other.n_part)?;
        Ok(AutArrowsElement { w, n_part, a_part: self.a_part.add(&other.a_part)?, gamma: self.gamma.add(&other.gamma)? })
    }
}

impl VertexValue {
    pub fn config(&self) -> &TruncationConfig {
        self.nu.config()
    }
}

fn cyc_gamma(gamma: &OneVarSeries, arg: &AssocSeries) -> Result<CyclicSeries> {
    Ok(trace(&eval_series(gamma, arg)?))
}

/// Equations R4', U', C' and v-smallness.
pub fn check_aut_equations(g: &AutArrowsElement) -> Result<DegreeReport> {
    let config = g.config();
    if config.n() != 2 {
        return Err(Error::ArityMismatch { expected: 2, got: config.n() });
    }
    let max = config.max_degree();
    let en = TAutElement::exp(g.n_part.clone());
    let mut rep = DegreeReport::new();
    lie_counts(&mut rep, "R4'", &krv_eq1_residual(&en)?, max);

    let u = jacobian(&en).add(&g.w.scale(&Q::from_integer(2.into())))?;
    cyc_counts(&mut rep, "U'", &u, max);

    let x = AssocSeries::generator(config, 0)?;
    let y = AssocSeries::generator(config, 1)?;
    let c = g
        .w
        .add(&en.exp_apply_cyc(&cyc_gamma(&g.gamma, &x.add(&y)?)?)?)?
        .sub(&cyc_gamma(&g.gamma, &x)?)?
        .sub(&cyc_gamma(&g.gamma, &y)?)?
        .quotient_linear();
    cyc_counts(&mut rep, "C'", &c, max);

    rep.push(1, "v-small", g.a_part.0.iter().filter(|a| !num_traits::Zero::is_zero(*a)).count());
    Ok(rep)
}

fn require_aut(g: &AutArrowsElement) -> Result<()> {
    if !check_aut_equations(g)?.passed() {
        return Err(Error::Precondition("automorphism data fails R4', U', C' or v-smallness".into()));
    }
    Ok(())
}

/// `(e^{-n}, -2 gamma)`.
pub fn theta(g: &AutArrowsElement) -> Result<KRVElement> {
    require_aut(g)?;
    KRVElement::new(TAutElement::exp(g.n_part.neg()), g.gamma.scale(&Q::from_integer((-2).into())))
}

/// `(e^{n}, 2 gamma)`, the KRV inverse of [`theta`].
pub fn theta_bar(g: &AutArrowsElement) -> Result<KRVElement> {
    require_aut(g)?;
    KRVElement::new(TAutElement::exp(g.n_part.clone()), g.gamma.scale(&Q::from_integer(2.into())))
}

/// Inverse of [`theta_bar`]: `n = log alpha`, `w = -J(alpha)/2`,
/// `gamma = s/2`, `a = 0`.
pub fn theta_inv(e: &KRVElement) -> Result<AutArrowsElement> {
    if !check_krv_group(e)?.passed() {
        return Err(Error::Precondition("element fails the KRV equations".into()));
    }
    Ok(AutArrowsElement {
        w: jacobian(&e.alpha).scale(&q(-1, 2)),
        n_part: e.alpha.log().clone(),
        a_part: APart::zero(2),
        gamma: e.s.scale(&q(1, 2)),
    })
}

/// Vertex value of the expansion attached to `F`: `b = -J(F^{-1})/2`,
/// `nu = log F^{-1}`, `a = 0`.
pub fn expansion_from_solkv(f: &TAutElement) -> Result<VertexValue> {
    if !f.is_identity() && !solkv_eq1_residual(f)?.is_zero() {
        return Err(Error::Precondition("F fails the first SolKV equation".into()));
    }
    let finv = f.inverse();
    Ok(VertexValue { b: jacobian(&finv).scale(&q(-1, 2)), nu: finv.log().clone(), a: APart::zero(f.config().n()) })
}

/// `F = (e^{nu})^{-1}`.
pub fn solkv_from_expansion(v: &VertexValue) -> TAutElement {
    TAutElement::exp(v.nu.clone()).inverse()
}

/// Vertex value after post-composing the expansion with `g`: `V N^{-1}`
/// where `N` is the vertex value of `g`.
pub fn post_compose(v: &VertexValue, g: &AutArrowsElement) -> Result<VertexValue> {
    v.nu.config().ensure_same(g.config())?;
    let ninv = TAutElement::exp(g.n_part.neg());
    let w_inv = ninv.exp_apply_cyc(&g.w)?.scale(&-Q::one());
    let (b, nu) = semidirect(&v.b, &v.nu, &w_inv, &ninv.log().clone())?;
    Ok(VertexValue { b, nu, a: v.a.add(&g.a_part.neg())? })
}
