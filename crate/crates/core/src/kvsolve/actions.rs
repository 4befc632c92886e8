use super::{
    check_krv_group, check_kv_group, check_solkv, extract_kv_duflo, solkv_eq1_residual, KRVElement, KVCandidate,
    KVGroupElement,
};
use crate::error::{Error, Result};
use crate::tder::TAutElement;

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} fails its membership check")))
    }
}

/// Left action `a . F = F o a^{-1}`, with `r - sigma`.
pub fn act_kv(g: &KVGroupElement, c: &KVCandidate) -> Result<KVCandidate> {
    require(check_kv_group(g)?.passed(), "KV element")?;
    require(check_solkv(c)?.passed(), "SolKV candidate")?;
    let r = c.r.as_ref().expect("checked").sub(&g.sigma)?;
    KVCandidate::new(c.f.compose(&g.a.inverse())?, Some(r))
}

/// Right action `F . alpha = alpha^{-1} o F`, with `r - s`.
pub fn act_krv(c: &KVCandidate, e: &KRVElement) -> Result<KVCandidate> {
    require(check_krv_group(e)?.passed(), "KRV element")?;
    require(check_solkv(c)?.passed(), "SolKV candidate")?;
    let r = c.r.as_ref().expect("checked").sub(&e.s)?;
    KVCandidate::new(e.alpha.inverse().compose(&c.f)?, Some(r))
}

/// `T_F(a) = F a F^{-1}` with the same Duflo series.
pub fn t_conj(f: &TAutElement, g: &KVGroupElement) -> Result<KRVElement> {
    require(solkv_eq1_residual(f)?.is_zero(), "F")?;
    require(check_kv_group(g)?.passed(), "KV element")?;
    KRVElement::new(f.compose(&g.a.compose(&f.inverse())?)?, g.sigma.clone())
}

/// The KV element carrying `F_2` to `F_1`: `F_1^{-1} o F_2`, whose Duflo
/// series is read off from its Jacobian.
pub fn transitivity_witness(f1: &TAutElement, f2: &TAutElement) -> Result<KVGroupElement> {
    let a = f1.inverse().compose(f2)?;
    let sigma = extract_kv_duflo(&a)?;
    KVGroupElement::new(a, sigma)
}
