use kvforge::freelie::{lyndon_basis, witt_dimension, AssocSeries, LieSeries, LyndonWord, TruncationConfig, Word};
use kvforge::lie_algebra::bch_recursive;
use kvforge::rational::{q, qi};
use proptest::prelude::*;

fn config(n: usize, max: usize) -> TruncationConfig {
    TruncationConfig::new(n, max).unwrap()
}

fn basis_upto(c: &TruncationConfig, max: usize) -> Vec<LieSeries> {
    (1..=max)
        .flat_map(|d| lyndon_basis(c, d).unwrap())
        .map(|w| LieSeries::basis_element(c, &w).unwrap())
        .collect()
}

fn lie_of(c: &TruncationConfig, letters: &[u8], coeff: i64) -> LieSeries {
    LieSeries::basis_element(c, &LyndonWord::new(letters.to_vec()).unwrap()).unwrap().scale(&qi(coeff))
}

// brute force: all words of length d, keep those strictly below every proper rotation
fn brute_lyndon_count(n: usize, d: usize) -> usize {
    let mut count = 0;
    let total = n.pow(d as u32);
    for mut k in 0..total {
        let mut w = vec![0u8; d];
        for slot in w.iter_mut().rev() {
            *slot = (k % n) as u8;
            k /= n;
        }
        let lyndon = (1..d).all(|r| {
            let mut rot = w[r..].to_vec();
            rot.extend_from_slice(&w[..r]);
            w < rot
        });
        if lyndon {
            count += 1;
        }
    }
    count
}

#[test]
fn lyndon_counts_match_enumeration() {
    for n in 1..=4 {
        let c = config(n, 6);
        for d in 1..=6 {
            if n.pow(d as u32) > 5000 {
                continue;
            }
            let b = lyndon_basis(&c, d).unwrap();
            assert_eq!(b.len(), brute_lyndon_count(n, d), "n={n} d={d}");
            assert_eq!(b.len(), witt_dimension(n, d));
        }
    }
}

#[test]
fn bracket_antisymmetry_and_jacobi() {
    let c = config(2, 5);
    let b = basis_upto(&c, 3);
    for u in &b {
        for v in &b {
            let uv = u.bracket(v).unwrap();
            assert_eq!(uv, v.bracket(u).unwrap().neg());
        }
    }
    let small = basis_upto(&c, 2);
    for u in &small {
        for v in &small {
            for w in &small {
                let j = u
                    .bracket(&v.bracket(w).unwrap())
                    .unwrap()
                    .add(&v.bracket(&w.bracket(u).unwrap()).unwrap())
                    .unwrap()
                    .add(&w.bracket(&u.bracket(v).unwrap()).unwrap())
                    .unwrap();
                assert!(j.is_zero());
            }
        }
    }
}

#[test]
fn bch_low_degrees_displayed_series() {
    let c = config(2, 3);
    let x = LieSeries::generator(&c, 0).unwrap();
    let y = LieSeries::generator(&c, 1).unwrap();
    let xy = x.bracket(&y).unwrap();
    let expect = x
        .add(&y)
        .unwrap()
        .add(&xy.scale(&q(1, 2)))
        .unwrap()
        .add(&x.bracket(&xy).unwrap().scale(&q(1, 12)))
        .unwrap()
        .add(&y.bracket(&y.bracket(&x).unwrap()).unwrap().scale(&q(1, 12)))
        .unwrap();
    assert_eq!(x.bch(&y).unwrap(), expect);
    assert_eq!(x.bch(&y).unwrap().terms().len(), 5);
}

#[test]
fn bch_routes_agree_to_degree_six() {
    let c = config(2, 6);
    let x = LieSeries::generator(&c, 0).unwrap();
    let y = LieSeries::generator(&c, 1).unwrap();
    assert_eq!(bch_recursive(&x, &y, 6), x.bch(&y).unwrap());
    // degree-4 coefficient of BCH is -1/24 [y,[x,[x,y]]]
    let z = x.bch(&y).unwrap().degree_part(4);
    let expect = y.bracket(&x.bracket(&x.bracket(&y).unwrap()).unwrap()).unwrap().scale(&q(-1, 24));
    assert_eq!(z, expect);
}

#[test]
fn dynkin_inverts_embed_on_homogeneous() {
    let c = config(3, 5);
    for d in 1..=4 {
        for w in lyndon_basis(&c, d).unwrap() {
            let a = LieSeries::basis_element(&c, &w).unwrap();
            assert_eq!(a.embed().dynkin_project().unwrap(), a);
        }
    }
}

#[test]
fn substitute_is_a_lie_map() {
    let c = config(2, 5);
    let x = LieSeries::generator(&c, 0).unwrap();
    let y = LieSeries::generator(&c, 1).unwrap();
    let args = [x.add(&y.bracket(&x).unwrap()).unwrap(), y.scale(&qi(3)).add(&x).unwrap()];
    let b = basis_upto(&c, 2);
    for u in &b {
        for v in &b {
            let lhs = u.bracket(v).unwrap().substitute(&args).unwrap();
            let rhs = u.substitute(&args).unwrap().bracket(&v.substitute(&args).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

fn arb_lie(c: TruncationConfig, max_deg: usize) -> impl Strategy<Value = LieSeries> {
    let basis: Vec<LyndonWord> = (1..=max_deg).flat_map(|d| lyndon_basis(&c, d).unwrap()).collect();
    proptest::collection::vec(-3i64..=3, basis.len()).prop_map(move |coeffs| {
        LieSeries::from_terms(&c, basis.iter().cloned().zip(coeffs.into_iter().map(qi))).unwrap()
    })
}

fn arb_assoc(c: TruncationConfig, max_len: usize) -> impl Strategy<Value = AssocSeries> {
    let n = c.n() as u8;
    proptest::collection::vec((proptest::collection::vec(0..n, 1..=max_len), -3i64..=3), 0..6)
        .prop_map(move |terms| AssocSeries::from_terms(&c, terms.into_iter().map(|(w, k)| (Word::new(w), qi(k)))).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bch_is_associative(a in arb_lie(config(2, 5), 2), b in arb_lie(config(2, 5), 2), cc in arb_lie(config(2, 5), 2)) {
        let left = a.bch(&b.bch(&cc).unwrap()).unwrap();
        let right = a.bch(&b).unwrap().bch(&cc).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn bch_routes_agree_on_samples(a in arb_lie(config(3, 5), 2), b in arb_lie(config(3, 5), 2)) {
        prop_assert_eq!(bch_recursive(&a, &b, 5), a.bch(&b).unwrap());
    }

    #[test]
    fn exp_log_inverse(a in arb_assoc(config(2, 5), 3)) {
        prop_assert_eq!(a.exp_trunc().unwrap().log_trunc().unwrap(), a.clone());
        let one = AssocSeries::one(a.config());
        let g = one.add(&a).unwrap();
        prop_assert_eq!(g.log_trunc().unwrap().exp_trunc().unwrap(), g);
    }

    #[test]
    fn bracket_matches_commutator(a in arb_lie(config(2, 6), 3), b in arb_lie(config(2, 6), 3)) {
        prop_assert_eq!(a.bracket(&b).unwrap().embed(), a.embed().commutator(&b.embed()).unwrap());
    }
}

#[test]
fn scalar_part_rejected() {
    let c = config(2, 3);
    let one = AssocSeries::one(&c);
    assert!(one.exp_trunc().is_err());
    assert!(AssocSeries::zero(&c).log_trunc().is_err());
    assert_eq!(lie_of(&c, &[0, 1], 2).coeff(&LyndonWord::new(vec![0, 1]).unwrap()), qi(2));
}
