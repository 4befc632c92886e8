//! Divergence `j`, the Jacobian cocycle `J` and its exponential.

use num_traits::One;

use crate::cyclic::{partial, trace, CyclicSeries};
use crate::freelie::AssocSeries;
use crate::rational::Q;
use crate::tder::{TAutElement, TangentialDerivation};

/// `j(u) = tr(sum_i d_i(a_i) x_i)`.
pub fn divergence(u: &TangentialDerivation) -> CyclicSeries {
    let config = u.config();
    let mut acc = AssocSeries::zero(config);
    for (i, a) in u.slots().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let xi = AssocSeries::generator(config, i).expect("slot index");
        let d = partial(&a.embed(), i).expect("slot index");
        acc = acc.add_unchecked(&d.mul_unchecked(&xi), &Q::one());
    }
    trace(&acc)
}

/// `J(e^u) = sum_k u^k(j(u)) / (k+1)!`.
pub fn jacobian(f: &TAutElement) -> CyclicSeries {
    let u = f.log();
    let max = u.config().max_degree();
    let mut term = divergence(u);
    let mut acc = term.clone();
    for k in 1..=max {
        term = u.apply_cyc_unchecked(&term).scale(&(Q::one() / Q::from_integer((k + 1).into())));
        if term.is_zero() {
            break;
        }
        acc = acc.add_scaled(&term, &Q::one());
    }
    acc
}

/// Element of `exp(cyc_n)`, kept by its logarithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLikeCyc {
    pub log: CyclicSeries,
}

impl GroupLikeCyc {
    pub fn unit(config: &crate::freelie::TruncationConfig) -> Self {
        GroupLikeCyc { log: CyclicSeries::zero(config) }
    }

    pub fn is_unit(&self) -> bool {
        self.log.is_zero()
    }

    pub fn mul(&self, other: &Self) -> crate::Result<Self> {
        Ok(GroupLikeCyc { log: self.log.add(&other.log)? })
    }
}

/// `e^{J(F)}`.
pub fn jac_exp(f: &TAutElement) -> GroupLikeCyc {
    GroupLikeCyc { log: jacobian(f) }
}

pub fn cyc_group_power(g: &GroupLikeCyc, q: &Q) -> GroupLikeCyc {
    GroupLikeCyc { log: g.log.scale(q) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::CyclicSeries;
    use crate::freelie::{LieSeries, TruncationConfig, Word};
    use crate::rational::{q, qi};
    use crate::tder::t_embed;

    fn cfg(n: usize, d: usize) -> TruncationConfig {
        TruncationConfig::new(n, d).unwrap()
    }

    #[test]
    fn divergence_examples() {
        let c = cfg(2, 6);
        assert!(divergence(&t_embed(&c, 1, 2).unwrap()).is_zero());
        assert!(divergence(&TangentialDerivation::zero(&c)).is_zero());
        let x = LieSeries::generator(&c, 0).unwrap();
        let y = LieSeries::generator(&c, 1).unwrap();
        let u = TangentialDerivation::from_tuple(&c, vec![x.bracket(&y).unwrap(), LieSeries::zero(&c)]).unwrap();
        let expect = CyclicSeries::from_terms(&c, [(Word::new(vec![0, 1]), qi(-1))]).unwrap();
        assert_eq!(divergence(&u), expect);
    }

    #[test]
    fn jacobian_examples() {
        let c = cfg(2, 6);
        assert!(jacobian(&TAutElement::identity(&c)).is_zero());
        assert!(jacobian(&TAutElement::exp(t_embed(&c, 1, 2).unwrap())).is_zero());
        let x = LieSeries::generator(&c, 0).unwrap();
        let y = LieSeries::generator(&c, 1).unwrap();
        let u = TangentialDerivation::from_tuple(&c, vec![x.bracket(&y).unwrap(), LieSeries::zero(&c)]).unwrap();
        let g = TAutElement::exp(u);
        let lhs = jacobian(&g.compose(&g).unwrap());
        let rhs = jacobian(&g).add(&g.exp_apply_cyc(&jacobian(&g)).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        // exp(u) exp(u) = exp(2u)
        assert_eq!(lhs, jacobian(&TAutElement::exp(g.log().scale(&qi(2)))));
    }

    #[test]
    fn group_powers() {
        let c = cfg(2, 4);
        let g = GroupLikeCyc { log: CyclicSeries::from_terms(&c, [(Word::new(vec![0, 1]), q(3, 7))]).unwrap() };
        assert_eq!(cyc_group_power(&g, &qi(1)), g);
        let h = cyc_group_power(&g, &q(-1, 2));
        assert!(h.mul(&h).unwrap().mul(&g).unwrap().is_unit());
        assert!(jac_exp(&TAutElement::identity(&c)).is_unit());
    }
}
