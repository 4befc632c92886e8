use std::collections::{BTreeMap, BTreeSet};

use kvforge::wiring::{Boundary, Endpoint, WiringDiagram};

fn shape(minus: usize, plus: usize, tag: &str) -> Boundary {
    Boundary::new((1..=minus).map(|k| format!("{tag}m{k}")), (1..=plus).map(|k| format!("{tag}p{k}")))
}

// boundaries with at most `max` labels
fn shapes(max: usize, tag: &str) -> Vec<Boundary> {
    let mut out = Vec::new();
    for m in 0..=max {
        for p in 0..=max - m {
            out.push(shape(m, p, tag));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

// every diagram on these discs, with the given circle count
fn all_diagrams(discs: &[Boundary], circles: usize) -> Vec<WiringDiagram> {
    let starts: Vec<Endpoint> =
        discs.iter().enumerate().flat_map(|(d, b)| b.minus.iter().map(move |l| Endpoint::new(d, l.clone()))).collect();
    let ends: Vec<Endpoint> =
        discs.iter().enumerate().flat_map(|(d, b)| b.plus.iter().map(move |l| Endpoint::new(d, l.clone()))).collect();
    if starts.len() != ends.len() {
        return Vec::new();
    }
    permutations(starts.len())
        .into_iter()
        .map(|p| {
            let strands = starts.iter().cloned().zip(p.iter().map(|&k| ends[k].clone()));
            WiringDiagram::new(discs.to_vec(), strands, circles).unwrap()
        })
        .collect()
}

// gluing by connected components, independent of compose_at
fn glue_oracle(d: &WiringDiagram, i: usize, e: &WiringDiagram) -> (BTreeSet<(Endpoint, Endpoint)>, usize) {
    let s = e.arity();
    type Node = (u8, Endpoint);
    let mut adj: BTreeMap<Node, Vec<Node>> = BTreeMap::new();
    let mut link = |a: Node, b: Node| {
        adj.entry(a.clone()).or_default().push(b.clone());
        adj.entry(b).or_default().push(a);
    };
    for (a, b) in d.strands() {
        link((0, a.clone()), (0, b.clone()));
    }
    for (a, b) in e.strands() {
        link((1, a.clone()), (1, b.clone()));
    }
    let glued: Vec<String> = d.input(i).unwrap().minus.iter().chain(&d.input(i).unwrap().plus).cloned().collect();
    for l in &glued {
        link((0, Endpoint::new(i, l.clone())), (1, Endpoint::new(0, l.clone())));
    }
    let free = |n: &Node| if n.0 == 0 { n.1.disc != i } else { n.1.disc != 0 };
    let rename = |n: &Node| {
        let disc = if n.0 == 0 {
            if n.1.disc < i { n.1.disc } else { n.1.disc + s - 1 }
        } else {
            i - 1 + n.1.disc
        };
        Endpoint::new(disc, n.1.label.clone())
    };
    let mut seen = BTreeSet::new();
    let mut pairs = BTreeSet::new();
    let mut loops = 0;
    let nodes: Vec<Node> = adj.keys().cloned().collect();
    for start in nodes {
        if seen.contains(&start) {
            continue;
        }
        let mut stack = vec![start.clone()];
        let mut comp = Vec::new();
        seen.insert(start);
        while let Some(n) = stack.pop() {
            comp.push(n.clone());
            for m in &adj[&n] {
                if seen.insert(m.clone()) {
                    stack.push(m.clone());
                }
            }
        }
        let ends: Vec<Endpoint> = comp.iter().filter(|n| free(n)).map(rename).collect();
        match ends.len() {
            0 => loops += 1,
            2 => {
                let (a, b) = (ends[0].clone(), ends[1].clone());
                pairs.insert((a.clone().min(b.clone()), a.max(b)));
            }
            k => panic!("component with {k} free ends"),
        }
    }
    (pairs, d.circles() + e.circles() + loops)
}

fn undirected(d: &WiringDiagram) -> BTreeSet<(Endpoint, Endpoint)> {
    d.strands().map(|(a, b)| (a.clone().min(b.clone()), a.clone().max(b.clone()))).collect()
}

#[test]
fn compose_matches_component_oracle() {
    let mut checked = 0;
    for b0 in shapes(4, "o") {
        for b1 in shapes(4, "i") {
            for b2 in shapes(4, "j") {
                let ds = all_diagrams(&[b0.clone(), b1.clone()], 1);
                let es = all_diagrams(&[b1.reversed(), b2.clone()], 2);
                for d in &ds {
                    for e in &es {
                        let c = d.compose_at(1, e).unwrap();
                        let (pairs, circles) = glue_oracle(d, 1, e);
                        assert_eq!(undirected(&c), pairs);
                        assert_eq!(c.circles(), circles);
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 1000, "{checked}");
}

#[test]
fn sequential_associativity() {
    // (D o_1 E) o_1 F = D o_1 (E o_1 F) on chains of one-input diagrams
    let mut checked = 0;
    for b0 in shapes(4, "a") {
        for b1 in shapes(4, "b") {
            let ds = all_diagrams(&[b0.clone(), b1.clone()], 0);
            if ds.is_empty() {
                continue;
            }
            for b2 in shapes(4, "c") {
                let es = all_diagrams(&[b1.reversed(), b2.clone()], 0);
                if es.is_empty() {
                    continue;
                }
                for b3 in shapes(2, "d") {
                    let fs = all_diagrams(&[b2.reversed(), b3.clone()], 0);
                    for d in &ds {
                        for e in &es {
                            let de = d.compose_at(1, e).unwrap();
                            for f in &fs {
                                let lhs = de.compose_at(1, f).unwrap();
                                let rhs = d.compose_at(1, &e.compose_at(1, f).unwrap()).unwrap();
                                assert_eq!(lhs, rhs);
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 10_000, "{checked}");
}

#[test]
fn nested_associativity_with_two_inputs() {
    // D has two inputs; E is inserted in slot i, then F into input j of E
    let mut checked = 0;
    for b0 in shapes(4, "a") {
        for b1 in shapes(4, "b") {
            for b2 in shapes(4, "c") {
                if b0.len() + b1.len() + b2.len() > 8 {
                    continue;
                }
                let ds = all_diagrams(&[b0.clone(), b1.clone(), b2.clone()], 0);
                if ds.is_empty() {
                    continue;
                }
                for b3 in shapes(4, "e") {
                    for b4 in shapes(4, "f") {
                        if b1.len() + b3.len() + b4.len() > 8 {
                            continue;
                        }
                        let es = all_diagrams(&[b1.reversed(), b3.clone(), b4.clone()], 0);
                        let fs = all_diagrams(&[b4.reversed()], 0);
                        for d in &ds {
                            for e in &es {
                                let de = d.compose_at(1, e).unwrap();
                                for f in &fs {
                                    let lhs = de.compose_at(2, f).unwrap();
                                    let rhs = d.compose_at(1, &e.compose_at(2, f).unwrap()).unwrap();
                                    assert_eq!(lhs, rhs);
                                    checked += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 1000, "{checked}");
}

#[test]
fn parallel_associativity() {
    // (D o_1 E) o_{2+s-1} F = (D o_2 F) o_1 E
    let mut checked = 0;
    for b0 in shapes(4, "a") {
        for b1 in shapes(4, "b") {
            for b2 in shapes(4, "c") {
                if b0.len() + b1.len() + b2.len() > 8 {
                    continue;
                }
                let ds = all_diagrams(&[b0.clone(), b1.clone(), b2.clone()], 0);
                if ds.is_empty() {
                    continue;
                }
                for b3 in shapes(2, "e") {
                    let es = all_diagrams(&[b1.reversed(), b3.clone()], 1);
                    let fs = all_diagrams(&[b2.reversed()], 0);
                    for d in &ds {
                        for e in &es {
                            let de = d.compose_at(1, e).unwrap();
                            for f in &fs {
                                let lhs = de.compose_at(2 + e.arity() - 1, f).unwrap();
                                let rhs = d.compose_at(2, f).unwrap().compose_at(1, e).unwrap();
                                assert_eq!(lhs, rhs);
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 1000, "{checked}");
}

// the inputs of D o_i E, named by where they came from
#[derive(Clone, Debug, PartialEq, Eq)]
enum Origin {
    Outer(usize),
    Inner(usize),
}

fn composed_origins(r: usize, i: usize, s: usize) -> Vec<Origin> {
    let mut v: Vec<Origin> = (1..i).map(Origin::Outer).collect();
    v.extend((1..=s).map(Origin::Inner));
    v.extend((i + 1..=r).map(Origin::Outer));
    v
}

// tau with input k of `want` = input tau[k-1] of `have`
fn matching(want: &[Origin], have: &[Origin]) -> Vec<usize> {
    want.iter().map(|o| have.iter().position(|h| h == o).unwrap() + 1).collect()
}

#[test]
fn equivariance() {
    let mut checked = 0;
    let mut seen_sigma = 0;
    for b0 in shapes(4, "a") {
        for b1 in shapes(4, "b") {
            for b2 in shapes(4, "c") {
                if b0.len() + b1.len() + b2.len() > 8 {
                    continue;
                }
                let ds = all_diagrams(&[b0.clone(), b1.clone(), b2.clone()], 0);
                for b3 in shapes(4, "e") {
                    for b4 in shapes(4, "f") {
                        if b3.len() + b4.len() > 4 {
                            continue;
                        }
                        for sigma in permutations(2) {
                            let sigma: Vec<usize> = sigma.iter().map(|k| k + 1).collect();
                            seen_sigma += 1;
                            for k in 1..=2 {
                                let m = sigma[k - 1];
                                let slot = [&b1, &b2][m - 1].reversed();
                                let es = all_diagrams(&[slot, b3.clone(), b4.clone()], 0);
                                for d in &ds {
                                    let sd = d.sym_act(&sigma).unwrap();
                                    for e in &es {
                                        let lhs = sd.compose_at(k, e).unwrap();
                                        let rhs = d.compose_at(m, e).unwrap();
                                        // LHS inputs, in terms of D's inputs
                                        let want: Vec<Origin> = composed_origins(2, k, e.arity())
                                            .into_iter()
                                            .map(|o| match o {
                                                Origin::Outer(j) => Origin::Outer(sigma[j - 1]),
                                                inner => inner,
                                            })
                                            .collect();
                                        let tau = matching(&want, &composed_origins(2, m, e.arity()));
                                        assert_eq!(lhs, rhs.sym_act(&tau).unwrap());
                                        // permuting the inner diagram
                                        let inner = vec![2, 1];
                                        let se = e.sym_act(&inner).unwrap();
                                        let lhs = d.compose_at(m, &se).unwrap();
                                        let want: Vec<Origin> = composed_origins(2, m, 2)
                                            .into_iter()
                                            .map(|o| match o {
                                                Origin::Inner(t) => Origin::Inner(inner[t - 1]),
                                                outer => outer,
                                            })
                                            .collect();
                                        let tau = matching(&want, &composed_origins(2, m, 2));
                                        assert_eq!(lhs, rhs.sym_act(&tau).unwrap());
                                        checked += 1;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 1000 && seen_sigma > 0, "{checked}");
}

#[test]
fn sym_act_basics() {
    let b = shape(1, 1, "x");
    for d in all_diagrams(&[shape(1, 1, "o"), b.clone(), shape(1, 1, "y")], 0) {
        assert_eq!(d.sym_act(&[1, 2]).unwrap(), d);
        assert_eq!(d.sym_act(&[2, 1]).unwrap().sym_act(&[2, 1]).unwrap(), d);
        assert!(d.sym_act(&[1, 1]).is_err());
        assert!(d.sym_act(&[1]).is_err());
    }
}

fn compose_perm(a: &[usize], b: &[usize]) -> Vec<usize> {
    // b after a
    a.iter().map(|&k| b[k]).collect()
}

#[test]
fn permutation_diagrams_multiply() {
    for n in 0..=3 {
        let st = WiringDiagram::stack(n);
        for pa in permutations(n) {
            for pb in permutations(n) {
                for (ca, cb) in [(0, 0), (1, 0), (2, 3)] {
                    let a = WiringDiagram::from_permutation(&pa, ca).unwrap();
                    let b = WiringDiagram::from_permutation(&pb, cb).unwrap();
                    assert_eq!(a.perm_of(n).unwrap(), (pa.clone(), ca));
                    let ab = st.compose_at(2, &b).unwrap().compose_at(1, &a).unwrap();
                    assert_eq!(ab.perm_of(n).unwrap(), (compose_perm(&pa, &pb), ca + cb));
                }
            }
        }
    }
    let id = WiringDiagram::from_permutation(&[0, 1, 2], 0).unwrap();
    assert_eq!(id.perm_of(3).unwrap(), (vec![0, 1, 2], 0));
    let circle = WiringDiagram::new(vec![Boundary::default()], [], 1).unwrap();
    assert_eq!(circle.perm_of(0).unwrap(), (vec![], 1));
}

#[test]
fn closed_loops_are_counted() {
    // an input wired back to itself with k strands, filled by a diagram that closes each one
    for k in 1..=3 {
        let b = shape(k, k, "g");
        let out = Boundary::default();
        let d = WiringDiagram::new(
            vec![out, b.clone()],
            (1..=k).map(|j| (Endpoint::new(1, format!("gm{j}")), Endpoint::new(1, format!("gp{j}")))),
            0,
        )
        .unwrap();
        for e in all_diagrams(&[b.reversed()], 0) {
            let (pairs, circles) = glue_oracle(&d, 1, &e);
            let c = d.compose_at(1, &e).unwrap();
            assert!(pairs.is_empty());
            assert_eq!(c.circles(), circles);
            assert!(c.circles() >= 1 && c.circles() <= k);
        }
    }
}

#[test]
fn text_round_trip() {
    for d in all_diagrams(&[shape(2, 1, "o"), shape(1, 2, "i")], 3) {
        let t = d.to_text();
        assert_eq!(WiringDiagram::parse(&t).unwrap(), d);
        assert_eq!(WiringDiagram::parse(&t.replace("->", "→")).unwrap(), d);
    }
    assert!(WiringDiagram::parse("wd out- [a] out+ [] strands circles 0").is_err());
    assert!(WiringDiagram::parse("wd out- [a] out+ [b] strands (0:a->0:b) circles").is_err());
}
