//! Line-oriented text formats for every value the CLI reads or writes.
//!
//! Data lines are `<degree> <num>/<den> <letters joined by '.'>`; headers
//! and section markers start with a keyword. `#` starts a comment.

use std::fmt::Write as _;

use crate::cyclic::{CyclicSeries, Necklace, OneVarSeries};
use crate::error::{Error, Result};
use crate::freelie::{AssocSeries, LieSeries, LyndonWord, TruncationConfig, Word};
use crate::grt::GrtBasis;
use crate::kvsolve::{AutArrowsElement, Gauge, KRVElement, KVCandidate, KVGroupElement, KvSolution};
use crate::rational::{fmt_q, parse_q, Q};
use crate::tder::{APart, TAutElement, TangentialDerivation};
use crate::terms::Terms;

/// `[x,[x,y]]`-style bracketing of a Lyndon basis element.
pub fn bracket_form(w: &LyndonWord, names: &[String]) -> String {
    match w.split() {
        None => names[w.letters()[0] as usize].clone(),
        Some((u, v)) => format!("[{},{}]", bracket_form(&u, names), bracket_form(&v, names)),
    }
}

fn data_line(out: &mut String, degree: usize, c: &Q, word: &Word, names: &[String]) {
    writeln!(out, "{degree} {} {}", fmt_q(c), word.display_with(names)).unwrap();
}

pub fn lie_to_text(a: &LieSeries) -> String {
    let c = a.config();
    let mut out = format!("lie n={} N={}\n", c.n(), c.max_degree());
    for (w, v) in a.terms().iter() {
        data_line(&mut out, w.degree(), v, w.word(), c.names());
    }
    out
}

/// Lie series with each basis element followed by its bracket form.
pub fn lie_to_text_annotated(a: &LieSeries) -> String {
    let c = a.config();
    let mut out = format!("lie n={} N={}\n", c.n(), c.max_degree());
    for (w, v) in a.terms().iter() {
        writeln!(out, "{} {} {}  # {}", w.degree(), fmt_q(v), w.word().display_with(c.names()), bracket_form(w, c.names()))
            .unwrap();
    }
    out
}

pub fn assoc_to_text(a: &AssocSeries) -> String {
    let c = a.config();
    let mut out = format!("assoc n={} N={}\n", c.n(), c.max_degree());
    for (w, v) in a.terms().iter() {
        data_line(&mut out, w.len(), v, w, c.names());
    }
    out
}

pub fn cyc_to_text(a: &CyclicSeries) -> String {
    let c = a.config();
    let ml = if a.is_quotient_linear() { " modlinear" } else { "" };
    let mut out = format!("cyc n={} N={}{ml}\n", c.n(), c.max_degree());
    for (k, v) in a.terms().iter() {
        data_line(&mut out, k.degree(), v, k.word(), c.names());
    }
    out
}

pub fn series_to_text(s: &OneVarSeries) -> String {
    s.to_text()
}

pub fn tder_to_text(u: &TangentialDerivation) -> String {
    let c = u.config();
    let mut out = format!("tder n={} N={}\n", c.n(), c.max_degree());
    for (k, s) in u.slots().iter().enumerate() {
        writeln!(out, "slot {}", k + 1).unwrap();
        out.push_str(&lie_to_text(s));
    }
    out
}

pub fn kvsol_to_text(sol: &KvSolution) -> String {
    let f = &sol.candidate.f;
    let mut out = format!("kvsol N={} gauge={}\n", f.config().max_degree(), sol.gauge);
    out.push_str(&tder_to_text(f.log()));
    let r = sol.candidate.r.clone().unwrap_or_else(|| OneVarSeries::zero(f.config().max_degree()));
    out.push_str(&r.to_text());
    out
}

pub fn krv_to_text(e: &KRVElement) -> String {
    let mut out = format!("krv N={}\n", e.config().max_degree());
    out.push_str(&tder_to_text(e.alpha.log()));
    out.push_str(&e.s.to_text());
    out
}

pub fn kvgroup_to_text(g: &KVGroupElement) -> String {
    let mut out = format!("kvgroup N={}\n", g.config().max_degree());
    out.push_str(&tder_to_text(g.a.log()));
    out.push_str(&g.sigma.to_text());
    out
}

pub fn autarrows_to_text(g: &AutArrowsElement) -> String {
    let mut out = format!("autarrows N={}\n", g.config().max_degree());
    out.push_str(&cyc_to_text(&g.w));
    out.push_str(&tder_to_text(&g.n_part));
    let a: Vec<String> = g.a_part.0.iter().map(fmt_q).collect();
    writeln!(out, "apart {}", a.join(" ")).unwrap();
    out.push_str(&g.gamma.to_text());
    out
}

pub fn grtbasis_to_text(b: &GrtBasis) -> String {
    let mut out = format!("grtbasis N={}\n", b.max_degree);
    for v in b.vectors() {
        out.push_str(&lie_to_text(v));
    }
    out
}

/// Line cursor shared by the parsers.
pub struct Reader<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Reader { lines, pos: 0 }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let line = self.lines.get(self.pos).or(self.lines.last()).map_or(0, |l| l.0);
        Error::Parse { line, msg: msg.into() }
    }

    fn peek(&self) -> Option<&'a str> {
        self.lines.get(self.pos).map(|l| l.1)
    }

    fn next_line(&mut self) -> Option<&'a str> {
        let l = self.peek();
        self.pos += 1;
        l
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.lines.len()
    }

    pub fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }

    fn peek_keyword(&self) -> Option<&'a str> {
        self.peek().and_then(|l| l.split_whitespace().next())
    }

    /// Reads a header `<keyword> k=v ...` and returns its fields.
    fn header(&mut self, keyword: &str) -> Result<Vec<(&'a str, &'a str)>> {
        let Some(line) = self.peek() else {
            return Err(self.err(format!("expected `{keyword}` header, found end of input")));
        };
        let mut toks = line.split_whitespace();
        if toks.next() != Some(keyword) {
            return Err(self.err(format!("expected `{keyword}` header")));
        }
        let fields = toks.map(|t| t.split_once('=').unwrap_or((t, ""))).collect();
        self.pos += 1;
        Ok(fields)
    }

    fn field<T: std::str::FromStr>(&self, fields: &[(&str, &str)], key: &str) -> Result<T> {
        let v = fields
            .iter()
            .find(|(k, _)| *k == key)
            .ok_or_else(|| { let mut r = Reader { lines: self.lines.clone(), pos: self.pos.saturating_sub(1) }; r.pos = r.pos.min(self.lines.len()); r.err(format!("missing `{key}=`")) })?;
        v.1.parse().map_err(|_| self.prev_err(format!("bad value for `{key}`")))
    }

    fn prev_err(&self, msg: impl Into<String>) -> Error {
        let line = self.lines.get(self.pos.saturating_sub(1)).map_or(0, |l| l.0);
        Error::Parse { line, msg: msg.into() }
    }

    /// Data lines up to the next keyword line.
    fn data_lines(&mut self) -> Vec<(usize, &'a str)> {
        let mut out = Vec::new();
        while let Some(&(n, l)) = self.lines.get(self.pos) {
            if !l.starts_with(|c: char| c.is_ascii_digit()) {
                break;
            }
            out.push((n, l));
            self.pos += 1;
        }
        out
    }
}

fn parse_term(n: usize, line: &str, config: &TruncationConfig, with_word: bool) -> Result<(usize, Q, Word)> {
    let err = |msg: String| Error::Parse { line: n, msg };
    let mut toks = line.split_whitespace();
    let deg: usize = toks.next().and_then(|t| t.parse().ok()).ok_or_else(|| err("bad degree".into()))?;
    let c = toks.next().and_then(parse_q).ok_or_else(|| err("bad coefficient".into()))?;
    let word = if with_word {
        let w = toks.next().ok_or_else(|| err("missing word".into()))?;
        let letters = w
            .split('.')
            .map(|a| config.index_of(a).ok_or_else(|| err(format!("unknown generator {a:?}"))))
            .collect::<Result<Vec<u8>>>()?;
        Word::new(letters)
    } else {
        Word::empty()
    };
    if toks.next().is_some() {
        return Err(err("trailing tokens".into()));
    }
    if with_word && word.len() != deg {
        return Err(err(format!("degree {deg} does not match word length {}", word.len())));
    }
    if deg > config.max_degree() {
        return Err(err(format!("degree {deg} exceeds N={}", config.max_degree())));
    }
    Ok((deg, c, word))
}

fn config_header(r: &mut Reader<'_>, keyword: &str) -> Result<(TruncationConfig, Vec<String>)> {
    let fields = r.header(keyword)?;
    let n: usize = r.field(&fields, "n")?;
    let max: usize = r.field(&fields, "N")?;
    let flags = fields.iter().filter(|(_, v)| v.is_empty()).map(|(k, _)| k.to_string()).collect();
    let config = TruncationConfig::new(n, max).map_err(|e| r.prev_err(e.to_string()))?;
    Ok((config, flags))
}

pub fn read_lie(r: &mut Reader<'_>) -> Result<LieSeries> {
    let (config, _) = config_header(r, "lie")?;
    let mut terms = Terms::new();
    for (n, line) in r.data_lines() {
        let (_, c, w) = parse_term(n, line, &config, true)?;
        let lw = LyndonWord::from_word(w).map_err(|e| Error::Parse { line: n, msg: e.to_string() })?;
        terms.add_term(lw, c);
    }
    LieSeries::from_terms(&config, terms.iter().map(|(k, v)| (k.clone(), v.clone())))
}

pub fn read_assoc(r: &mut Reader<'_>) -> Result<AssocSeries> {
    let (config, _) = config_header(r, "assoc")?;
    let mut terms = Vec::new();
    for (n, line) in r.data_lines() {
        let (_, c, w) = parse_term(n, line, &config, true)?;
        terms.push((w, c));
    }
    AssocSeries::from_terms(&config, terms)
}

pub fn read_cyc(r: &mut Reader<'_>) -> Result<CyclicSeries> {
    let (config, flags) = config_header(r, "cyc")?;
    let mut terms = Vec::new();
    for (n, line) in r.data_lines() {
        let (_, c, w) = parse_term(n, line, &config, true)?;
        if Necklace::of(&w).word() != &w {
            return Err(Error::Parse { line: n, msg: "necklace not in least rotation".into() });
        }
        terms.push((w, c));
    }
    let c = CyclicSeries::from_terms(&config, terms)?;
    Ok(if flags.iter().any(|f| f == "modlinear") { c.quotient_linear() } else { c })
}

pub fn read_series(r: &mut Reader<'_>) -> Result<OneVarSeries> {
    let fields = r.header("series1")?;
    let max: usize = r.field(&fields, "N")?;
    let config = TruncationConfig::new(1, max.max(1))?;
    let mut coeffs = Vec::new();
    for (n, line) in r.data_lines() {
        let (d, c, _) = parse_term(n, line, &config, false)?;
        coeffs.push((d, c));
    }
    OneVarSeries::from_coeffs(max, coeffs)
}

pub fn read_tder(r: &mut Reader<'_>) -> Result<TangentialDerivation> {
    let (config, _) = config_header(r, "tder")?;
    let mut slots = Vec::new();
    for k in 1..=config.n() {
        let fields = r.header("slot")?;
        if fields.first().map(|f| f.0) != Some(&*k.to_string()) {
            return Err(r.prev_err(format!("expected `slot {k}`")));
        }
        let s = read_lie(r)?;
        if s.config() != &config {
            return Err(r.prev_err("slot payload has a different n or N"));
        }
        slots.push(s);
    }
    TangentialDerivation::from_tuple(&config, slots)
}

fn check_n(r: &Reader<'_>, expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(r.prev_err(format!("truncation mismatch: header N={expected}, payload N={got}")));
    }
    Ok(())
}

pub fn read_kvsol(r: &mut Reader<'_>) -> Result<KvSolution> {
    let fields = r.header("kvsol")?;
    let max: usize = r.field(&fields, "N")?;
    let gauge: Gauge = r.field(&fields, "gauge")?;
    let log = read_tder(r)?;
    check_n(r, max, log.config().max_degree())?;
    let s = read_series(r)?;
    check_n(r, max, s.max_degree())?;
    let candidate = KVCandidate::new(TAutElement::exp(log), Some(s))?;
    Ok(KvSolution { candidate, gauge, dims: Vec::new() })
}

pub fn read_krv(r: &mut Reader<'_>) -> Result<KRVElement> {
    let fields = r.header("krv")?;
    let max: usize = r.field(&fields, "N")?;
    let log = read_tder(r)?;
    check_n(r, max, log.config().max_degree())?;
    let s = read_series(r)?;
    KRVElement::new(TAutElement::exp(log), s)
}

pub fn read_kvgroup(r: &mut Reader<'_>) -> Result<KVGroupElement> {
    let fields = r.header("kvgroup")?;
    let max: usize = r.field(&fields, "N")?;
    let log = read_tder(r)?;
    check_n(r, max, log.config().max_degree())?;
    let s = read_series(r)?;
    KVGroupElement::new(TAutElement::exp(log), s)
}

pub fn read_autarrows(r: &mut Reader<'_>) -> Result<AutArrowsElement> {
    let fields = r.header("autarrows")?;
    let max: usize = r.field(&fields, "N")?;
    let w = read_cyc(r)?;
    let n_part = read_tder(r)?;
    check_n(r, max, n_part.config().max_degree())?;
    w.config().ensure_same(n_part.config())?;
    let line = r.next_line().ok_or_else(|| r.err("expected `apart`"))?;
    let mut toks = line.split_whitespace();
    if toks.next() != Some("apart") {
        return Err(r.prev_err("expected `apart`"));
    }
    let a = toks.map(|t| parse_q(t).ok_or_else(|| r.prev_err("bad apart coefficient"))).collect::<Result<Vec<_>>>()?;
    if a.len() != n_part.arity() {
        return Err(r.prev_err("apart needs one coefficient per strand"));
    }
    let gamma = read_series(r)?;
    check_n(r, max, gamma.max_degree())?;
    Ok(AutArrowsElement { w, n_part, a_part: APart(a), gamma })
}

pub fn read_grtbasis(r: &mut Reader<'_>) -> Result<Vec<LieSeries>> {
    let fields = r.header("grtbasis")?;
    let max: usize = r.field(&fields, "N")?;
    let mut out = Vec::new();
    while r.peek_keyword() == Some("lie") {
        let v = read_lie(r)?;
        check_n(r, max, v.config().max_degree())?;
        out.push(v);
    }
    Ok(out)
}

/// Parses a whole input with `f`, rejecting trailing content.
pub fn parse_all<T>(text: &str, f: impl FnOnce(&mut Reader<'_>) -> Result<T>) -> Result<T> {
    let mut r = Reader::new(text);
    let v = f(&mut r)?;
    r.finish()?;
    Ok(v)
}

/// Keyword of the first header line, used to sniff payload kinds.
pub fn payload_kind(text: &str) -> Option<&str> {
    Reader::new(text).peek_keyword()
}
