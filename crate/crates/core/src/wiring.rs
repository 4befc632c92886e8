//! Oriented wiring diagrams as combinatorial data: labelled boundary
//! points on an output disc and `r` input discs, directed strands matching
//! outgoing labels to incoming labels, and a count of closed circles.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// A boundary point: disc `0` is the output disc, `1..=r` the inputs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Endpoint {
    pub disc: usize,
    pub label: String,
}

impl Endpoint {
    pub fn new(disc: usize, label: impl Into<String>) -> Self {
        Endpoint { disc, label: label.into() }
    }
}

/// Outgoing (`minus`) and incoming (`plus`) labels of one disc.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Boundary {
    pub minus: BTreeSet<String>,
    pub plus: BTreeSet<String>,
}

impl Boundary {
    pub fn new<S: Into<String>>(minus: impl IntoIterator<Item = S>, plus: impl IntoIterator<Item = S>) -> Self {
        Boundary {
            minus: minus.into_iter().map(Into::into).collect(),
            plus: plus.into_iter().map(Into::into).collect(),
        }
    }

    /// Roles swapped, as seen from the other side of a gluing.
    pub fn reversed(&self) -> Self {
        Boundary { minus: self.plus.clone(), plus: self.minus.clone() }
    }

    pub fn len(&self) -> usize {
        self.minus.len() + self.plus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WiringDiagram {
    discs: Vec<Boundary>,
    // start (an outgoing label) -> end (an incoming label)
    strands: BTreeMap<Endpoint, Endpoint>,
    circles: usize,
}

impl WiringDiagram {
    /// `discs[0]` is the output boundary. Every outgoing label must start
    /// exactly one strand and every incoming label end exactly one.
    pub fn new(discs: Vec<Boundary>, strands: impl IntoIterator<Item = (Endpoint, Endpoint)>, circles: usize) -> Result<Self> {
        if discs.is_empty() {
            return Err(Error::Wiring("a diagram needs an output disc".into()));
        }
        let mut map = BTreeMap::new();
        let mut ends = BTreeSet::new();
        for (a, b) in strands {
            let da = discs.get(a.disc).ok_or_else(|| Error::Wiring(format!("no disc {}", a.disc)))?;
            let db = discs.get(b.disc).ok_or_else(|| Error::Wiring(format!("no disc {}", b.disc)))?;
            if !da.minus.contains(&a.label) {
                return Err(Error::Wiring(format!("{}:{} is not an outgoing label", a.disc, a.label)));
            }
            if !db.plus.contains(&b.label) {
                return Err(Error::Wiring(format!("{}:{} is not an incoming label", b.disc, b.label)));
            }
            if !ends.insert(b.clone()) {
                return Err(Error::Wiring(format!("{}:{} ends two strands", b.disc, b.label)));
            }
            if map.insert(a.clone(), b).is_some() {
                return Err(Error::Wiring(format!("{}:{} starts two strands", a.disc, a.label)));
            }
        }
        let minus: usize = discs.iter().map(|d| d.minus.len()).sum();
        let plus: usize = discs.iter().map(|d| d.plus.len()).sum();
        if map.len() != minus || ends.len() != plus {
            return Err(Error::Wiring("every boundary label must lie on exactly one strand".into()));
        }
        Ok(WiringDiagram { discs, strands: map, circles })
    }

    /// The diagram with one input disc whose labels are wired straight
    /// through to the output: the operad unit for that boundary.
    pub fn identity(output: &Boundary) -> Self {
        let discs = vec![output.clone(), output.reversed()];
        let mut strands = BTreeMap::new();
        for l in &output.minus {
            strands.insert(Endpoint::new(0, l.clone()), Endpoint::new(1, l.clone()));
        }
        for l in &output.plus {
            strands.insert(Endpoint::new(1, l.clone()), Endpoint::new(0, l.clone()));
        }
        WiringDiagram { discs, strands, circles: 0 }
    }

    pub fn output(&self) -> &Boundary {
        &self.discs[0]
    }

    /// Boundary of input disc `i` (1-based).
    pub fn input(&self, i: usize) -> Option<&Boundary> {
        if i == 0 {
            None
        } else {
            self.discs.get(i)
        }
    }

    pub fn arity(&self) -> usize {
        self.discs.len() - 1
    }

    pub fn circles(&self) -> usize {
        self.circles
    }

    pub fn strands(&self) -> impl Iterator<Item = (&Endpoint, &Endpoint)> {
        self.strands.iter()
    }

    /// `self ∘_i other`: glue `other` into input disc `i` (1-based). The
    /// inputs of `other` take the place of disc `i`.
    pub fn compose_at(&self, i: usize, other: &WiringDiagram) -> Result<WiringDiagram> {
        let r = self.arity();
        if i == 0 || i > r {
            return Err(Error::IndexOutOfRange { index: i, n: r });
        }
        if self.discs[i] != other.discs[0].reversed() {
            return Err(Error::Wiring(format!("input disc {i} does not match the output of the inserted diagram")));
        }
        let s = other.arity();
        let outer = |j: usize| if j < i { j } else { j + s - 1 };
        let inner = |k: usize| i - 1 + k;

        let mut discs = Vec::with_capacity(r + s);
        discs.extend(self.discs[..i].iter().cloned());
        discs.extend(other.discs[1..].iter().cloned());
        discs.extend(self.discs[i + 1..].iter().cloned());

        // Follows a strand through the glued boundary until it leaves it.
        let walk = |mut in_outer: bool, mut start: Endpoint, seen: &mut BTreeSet<(bool, Endpoint)>| -> Endpoint {
            loop {
                seen.insert((in_outer, start.clone()));
                if in_outer {
                    let end = &self.strands[&start];
                    if end.disc != i {
                        return Endpoint::new(outer(end.disc), end.label.clone());
                    }
                    start = Endpoint::new(0, end.label.clone());
                } else {
                    let end = &other.strands[&start];
                    if end.disc != 0 {
                        return Endpoint::new(inner(end.disc), end.label.clone());
                    }
                    start = Endpoint::new(i, end.label.clone());
                }
                in_outer = !in_outer;
            }
        };

        let mut seen = BTreeSet::new();
        let mut strands = BTreeMap::new();
        for a in self.strands.keys().filter(|a| a.disc != i) {
            let b = walk(true, a.clone(), &mut seen);
            strands.insert(Endpoint::new(outer(a.disc), a.label.clone()), b);
        }
        for a in other.strands.keys().filter(|a| a.disc != 0) {
            let b = walk(false, a.clone(), &mut seen);
            strands.insert(Endpoint::new(inner(a.disc), a.label.clone()), b);
        }
        // whatever is left runs only between the two sides of the gluing
        let mut loops = 0;
        for a in self.strands.keys().filter(|a| a.disc == i) {
            if seen.contains(&(true, a.clone())) {
                continue;
            }
            loops += 1;
            let mut cur = a.clone();
            let mut side = true;
            while seen.insert((side, cur.clone())) {
                let end = if side { &self.strands[&cur] } else { &other.strands[&cur] };
                cur = Endpoint::new(if side { 0 } else { i }, end.label.clone());
                side = !side;
            }
        }
        Ok(WiringDiagram { discs, strands, circles: self.circles + other.circles + loops })
    }

    /// Reorders the inputs: input `k` of the result is input `sigma[k-1]`
    /// of `self` (so `sigma` is 1-based and a permutation of `1..=r`).
    pub fn sym_act(&self, sigma: &[usize]) -> Result<WiringDiagram> {
        let r = self.arity();
        if sigma.len() != r {
            return Err(Error::ArityMismatch { expected: r, got: sigma.len() });
        }
        let mut inv = vec![0; r + 1];
        for (k, &s) in sigma.iter().enumerate() {
            if s == 0 || s > r || inv[s] != 0 {
                return Err(Error::Wiring(format!("{sigma:?} is not a permutation of 1..={r}")));
            }
            inv[s] = k + 1;
        }
        let re = |e: &Endpoint| Endpoint::new(inv[e.disc], e.label.clone());
        let mut discs = vec![self.discs[0].clone()];
        discs.extend(sigma.iter().map(|&s| self.discs[s].clone()));
        let strands = self.strands.iter().map(|(a, b)| (re(a), re(b))).collect();
        Ok(WiringDiagram { discs, strands, circles: self.circles })
    }

    /// Diagram with no inputs and labels `1..=n` on both sides of the output
    /// realizing `perm` (0-based images): strand `k` runs to `perm[k]`.
    pub fn from_permutation(perm: &[usize], circles: usize) -> Result<WiringDiagram> {
        let labels: Vec<String> = (1..=perm.len()).map(|k| k.to_string()).collect();
        let out = Boundary::new(labels.clone(), labels.clone());
        let strands = perm.iter().enumerate().map(|(k, &p)| {
            (Endpoint::new(0, labels[k].clone()), Endpoint::new(0, labels.get(p).cloned().unwrap_or_default()))
        });
        WiringDiagram::new(vec![out], strands, circles)
    }

    /// The permutation and circle count of a diagram in `WD(n)`.
    pub fn perm_of(&self, n: usize) -> Result<(Vec<usize>, usize)> {
        let labels: BTreeSet<String> = (1..=n).map(|k| k.to_string()).collect();
        if self.arity() != 0 || self.discs[0].minus != labels || self.discs[0].plus != labels {
            return Err(Error::Precondition(format!("diagram is not in WD({n})")));
        }
        let mut perm = vec![0; n];
        for (a, b) in &self.strands {
            let from: usize = a.label.parse().expect("numeric label");
            let to: usize = b.label.parse().expect("numeric label");
            perm[from - 1] = to - 1;
        }
        Ok((perm, self.circles))
    }

    /// Two inputs with labels `1..=n` stacked in series: the output's
    /// outgoing strand `k` passes through input 1, then input 2.
    pub fn stack(n: usize) -> WiringDiagram {
        let labels: Vec<String> = (1..=n).map(|k| k.to_string()).collect();
        let b = Boundary::new(labels.clone(), labels.clone());
        let mut strands = Vec::new();
        for l in &labels {
            strands.push((Endpoint::new(0, l.clone()), Endpoint::new(1, l.clone())));
            strands.push((Endpoint::new(1, l.clone()), Endpoint::new(2, l.clone())));
            strands.push((Endpoint::new(2, l.clone()), Endpoint::new(0, l.clone())));
        }
        WiringDiagram::new(vec![b.clone(), b.clone(), b], strands, 0).expect("well formed")
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<WiringDiagram> {
        parse_wd(text)
    }
}

fn fmt_set(s: &BTreeSet<String>) -> String {
    let v: Vec<&str> = s.iter().map(String::as_str).collect();
    format!("[{}]", v.join(" "))
}

impl fmt::Display for WiringDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "wd out- {} out+ {}", fmt_set(&self.discs[0].minus), fmt_set(&self.discs[0].plus))?;
        for (k, d) in self.discs.iter().enumerate().skip(1) {
            write!(f, " in{k}- {} in{k}+ {}", fmt_set(&d.minus), fmt_set(&d.plus))?;
        }
        write!(f, " strands")?;
        for (a, b) in &self.strands {
            write!(f, " ({}:{}->{}:{})", a.disc, a.label, b.disc, b.label)?;
        }
        write!(f, " circles {}", self.circles)
    }
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse { line: 1, msg: msg.into() }
}

fn parse_wd(text: &str) -> Result<WiringDiagram> {
    let spaced = text.replace('[', " [ ").replace(']', " ] ").replace('→', "->");
    let mut toks = spaced.split_whitespace().peekable();
    if toks.next() != Some("wd") {
        return Err(parse_err("expected `wd`"));
    }
    let set = |toks: &mut std::iter::Peekable<std::str::SplitWhitespace<'_>>| -> Result<BTreeSet<String>> {
        if toks.next() != Some("[") {
            return Err(parse_err("expected `[`"));
        }
        let mut out = BTreeSet::new();
        loop {
            match toks.next() {
                Some("]") => return Ok(out),
                Some(l) => {
                    if !out.insert(l.to_string()) {
                        return Err(parse_err(format!("label {l} repeated")));
                    }
                }
                None => return Err(parse_err("unterminated label list")),
            }
        }
    };
    let mut discs = Vec::new();
    let expect = |toks: &mut std::iter::Peekable<std::str::SplitWhitespace<'_>>, want: &str| -> Result<()> {
        match toks.next() {
            Some(t) if t == want => Ok(()),
            t => Err(parse_err(format!("expected `{want}`, found {t:?}"))),
        }
    };
    expect(&mut toks, "out-")?;
    let m = set(&mut toks)?;
    expect(&mut toks, "out+")?;
    let p = set(&mut toks)?;
    discs.push(Boundary { minus: m, plus: p });
    while let Some(t) = toks.peek() {
        if *t == "strands" {
            break;
        }
        let k = discs.len();
        expect(&mut toks, &format!("in{k}-"))?;
        let m = set(&mut toks)?;
        expect(&mut toks, &format!("in{k}+"))?;
        let p = set(&mut toks)?;
        discs.push(Boundary { minus: m, plus: p });
    }
    expect(&mut toks, "strands")?;
    let endpoint = |s: &str| -> Result<Endpoint> {
        let (d, l) = s.split_once(':').ok_or_else(|| parse_err(format!("bad endpoint {s:?}")))?;
        let disc = d.parse().map_err(|_| parse_err(format!("bad disc in {s:?}")))?;
        Ok(Endpoint::new(disc, l))
    };
    let mut strands = Vec::new();
    while let Some(t) = toks.peek() {
        if *t == "circles" {
            break;
        }
        let t = toks.next().expect("peeked");
        let inner = t
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| parse_err(format!("bad strand {t:?}")))?;
        let (a, b) = inner.split_once("->").ok_or_else(|| parse_err(format!("bad strand {t:?}")))?;
        strands.push((endpoint(a)?, endpoint(b)?));
    }
    expect(&mut toks, "circles")?;
    let circles = toks
        .next()
        .and_then(|c| c.parse().ok())
        .ok_or_else(|| parse_err("expected a circle count"))?;
    if let Some(t) = toks.next() {
        return Err(parse_err(format!("trailing input {t:?}")));
    }
    WiringDiagram::new(discs, strands, circles)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(d: usize, l: &str) -> Endpoint {
        Endpoint::new(d, l)
    }

    #[test]
    fn transpositions_cancel() {
        let t = WiringDiagram::from_permutation(&[1, 0], 0).unwrap();
        let st = WiringDiagram::stack(2);
        let d = st.compose_at(1, &t).unwrap().compose_at(1, &t).unwrap();
        assert_eq!(d.perm_of(2).unwrap(), (vec![0, 1], 0));
    }

    #[test]
    fn cup_into_cap() {
        let cup = WiringDiagram::new(vec![Boundary::new(["a"], ["b"])], [(e(0, "a"), e(0, "b"))], 0).unwrap();
        let cap = WiringDiagram::new(
            vec![Boundary::default(), Boundary::new(["b"], ["a"])],
            [(e(1, "b"), e(1, "a"))],
            0,
        )
        .unwrap();
        let d = cap.compose_at(1, &cup).unwrap();
        assert_eq!(d.circles(), 1);
        assert_eq!(d.arity(), 0);
        assert!(d.output().is_empty());
    }

    #[test]
    fn unit_laws() {
        let d = WiringDiagram::new(
            vec![Boundary::new(["p"], ["q"]), Boundary::new(["a"], ["b"])],
            [(e(0, "p"), e(1, "b")), (e(1, "a"), e(0, "q"))],
            2,
        )
        .unwrap();
        let id_in = WiringDiagram::identity(&d.input(1).unwrap().reversed());
        assert_eq!(d.compose_at(1, &id_in).unwrap(), d);
        let id_out = WiringDiagram::identity(d.output());
        assert_eq!(id_out.compose_at(1, &d).unwrap(), d);
        assert!(d.compose_at(1, &WiringDiagram::identity(d.output())).is_err());
        assert!(d.compose_at(2, &id_in).is_err());
    }

    #[test]
    fn permutations_and_text() {
        let id = WiringDiagram::from_permutation(&[0, 1, 2], 0).unwrap();
        assert_eq!(id.perm_of(3).unwrap(), (vec![0, 1, 2], 0));
        let circle = WiringDiagram::new(vec![Boundary::default()], [], 1).unwrap();
        assert_eq!(circle.perm_of(0).unwrap(), (vec![], 1));
        let st = WiringDiagram::stack(3);
        assert_eq!(WiringDiagram::parse(&st.to_text()).unwrap(), st);
        let arrow = st.to_text().replace("->", "→");
        assert_eq!(WiringDiagram::parse(&arrow).unwrap(), st);
        assert_eq!(st.sym_act(&[1, 2]).unwrap(), st);
        let sw = st.sym_act(&[2, 1]).unwrap();
        assert_ne!(sw, st);
        assert_eq!(sw.sym_act(&[2, 1]).unwrap(), st);
        assert!(st.sym_act(&[1, 1]).is_err());
        assert!(WiringDiagram::parse("wd out- [a] out+ [] strands circles 0").is_err());
        assert!(WiringDiagram::parse("wd out- [a] out+ [a] strands (0:a->0:a) circles").is_err());
    }
}
