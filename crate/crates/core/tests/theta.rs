use kvforge::cyclic::OneVarSeries;
use kvforge::divjac::jacobian;
use kvforge::freelie::{LieSeries, TruncationConfig};
use kvforge::grt::{rho, solve_grt, GrtCandidate};
use kvforge::kvsolve::*;
use kvforge::rational::{q, qi};
use kvforge::tder::{t_embed, APart, TAutElement};
use kvforge::Q;

const N: usize = 5;

fn config() -> TruncationConfig {
    TruncationConfig::new(2, N).unwrap()
}

fn grt_krv(d: usize, lambda: Q) -> KRVElement {
    let basis = solve_grt(N).unwrap();
    let psi = basis.degrees.iter().find(|(e, _)| *e == d).unwrap().1[0].clone();
    let alpha = TAutElement::exp(rho(&GrtCandidate::new(psi).unwrap()).unwrap().scale(&lambda));
    let s = extract_krv_duflo(&alpha).unwrap();
    KRVElement::new(alpha, s).unwrap()
}

fn samples() -> Vec<KRVElement> {
    static S: std::sync::OnceLock<Vec<KRVElement>> = std::sync::OnceLock::new();
    S.get_or_init(build_samples).clone()
}

fn build_samples() -> Vec<KRVElement> {
    let t12 = KRVElement::new(TAutElement::exp(t_embed(&config(), 1, 2).unwrap().scale(&q(2, 3))), OneVarSeries::zero(N)).unwrap();
    let a = grt_krv(3, qi(1));
    let b = grt_krv(5, q(-1, 2));
    let ab = a.product(&b).unwrap();
    let abt = ab.product(&t12).unwrap();
    vec![KRVElement::identity(&config()), t12, a, b, ab, abt]
}

#[test]
fn samples_are_krv() {
    for e in samples() {
        assert!(check_krv_group(&e).unwrap().passed());
    }
}

#[test]
fn theta_of_identity() {
    let id = AutArrowsElement::identity(&config());
    assert!(check_aut_equations(&id).unwrap().passed());
    assert_eq!(theta(&id).unwrap(), KRVElement::identity(&config()));
}

#[test]
fn theta_inv_outputs_satisfy_aut_equations() {
    for e in samples() {
        let g = theta_inv(&e).unwrap();
        let rep = check_aut_equations(&g).unwrap();
        assert!(rep.passed(), "{rep}");
        assert!(g.is_v_small());
    }
}

#[test]
fn round_trips() {
    for e in samples() {
        let g = theta_inv(&e).unwrap();
        assert_eq!(theta_bar(&g).unwrap(), e);
        assert_eq!(theta(&g).unwrap(), e.inverse());
        assert_eq!(theta_inv(&theta_bar(&g).unwrap()).unwrap(), g);
    }
}

#[test]
fn theta_is_a_homomorphism() {
    let s = samples();
    for e1 in &s {
        for e2 in &s[2..4] {
            let g1 = theta_inv(e1).unwrap();
            let g2 = theta_inv(e2).unwrap();
            let g = g1.product(&g2).unwrap();
            assert!(check_aut_equations(&g).unwrap().passed());
            assert_eq!(theta(&g).unwrap(), theta(&g1).unwrap().product(&theta(&g2).unwrap()).unwrap());
        }
    }
}

#[test]
fn w_matches_recomputed_jacobian() {
    // J(alpha) = -alpha . J(alpha^{-1}), so w = alpha . J(alpha^{-1}) / 2
    for e in samples() {
        let g = theta_inv(&e).unwrap();
        let other = e.alpha.exp_apply_cyc(&jacobian(&e.alpha.inverse())).unwrap().scale(&q(1, 2));
        assert_eq!(g.w, other);
    }
}

#[test]
fn nonzero_a_part_fails_v_smallness() {
    let mut g = theta_inv(&samples()[2]).unwrap();
    g.a_part = APart(vec![qi(1), qi(0)]);
    let rep = check_aut_equations(&g).unwrap();
    assert!(!rep.passed_equation("v-small"));
    assert!(rep.passed_equation("R4'") && rep.passed_equation("U'") && rep.passed_equation("C'"));
    assert!(theta(&g).is_err());
}

#[test]
fn broken_data_fails_aut_equations() {
    let mut g = theta_inv(&samples()[2]).unwrap();
    g.gamma = g.gamma.add(&OneVarSeries::monomial(N, 3, qi(1)).unwrap()).unwrap();
    assert!(!check_aut_equations(&g).unwrap().passed_equation("C'"));
    let mut g = theta_inv(&samples()[2]).unwrap();
    g.w = g.w.scale(&qi(2));
    assert!(!check_aut_equations(&g).unwrap().passed_equation("U'"));
}

#[test]
fn expansion_round_trip() {
    let c = config();
    let v = expansion_from_solkv(&TAutElement::identity(&c)).unwrap();
    assert!(v.b.is_zero() && v.nu.is_zero() && v.a.is_zero());
    let sol = solve_kv(4, Gauge::Zero).unwrap();
    let f = &sol.candidate.f;
    let v = expansion_from_solkv(f).unwrap();
    assert_eq!(v.b, jacobian(&f.inverse()).scale(&q(-1, 2)));
    assert_eq!(&solkv_from_expansion(&v), f);
}

#[test]
fn post_composition_matches_krv_action() {
    let sol = solve_kv(N, Gauge::Zero).unwrap();
    let v = expansion_from_solkv(&sol.candidate.f).unwrap();
    for e in samples() {
        let g = theta_inv(&e).unwrap();
        let lhs = solkv_from_expansion(&post_compose(&v, &g).unwrap());
        let rhs = act_krv(&sol.candidate, &theta(&g).unwrap()).unwrap();
        assert_eq!(lhs, rhs.f);
        assert!(check_solkv(&rhs).unwrap().passed());
    }
}

#[test]
fn theta_inv_rejects_non_members() {
    let c = config();
    let y = LieSeries::generator(&c, 1).unwrap();
    let bad = KRVElement::new(
        TAutElement::exp(kvforge::tder::TangentialDerivation::from_tuple(&c, vec![y, LieSeries::zero(&c)]).unwrap()),
        OneVarSeries::zero(N),
    )
    .unwrap();
    assert!(theta_inv(&bad).is_err());
}
