use std::fs;
use std::io::Write;
use std::path::Path;

use kvforge::divjac::{divergence, jacobian};
use kvforge::freelie::{bch_xy, lyndon_basis, TruncationConfig};
use kvforge::grt::{bubble_identity_with, check_grt, check_krv_lie, rho, solve_grt, BubbleOrientation, GrtCandidate};
use kvforge::kvsolve::{check_krv_group, check_solkv, solve_kv, theta, theta_bar, theta_inv, Gauge};
use kvforge::report::DegreeReport;
use kvforge::tder::TAutElement;
use kvforge::text::*;
use kvforge::wiring::WiringDiagram;

use crate::{Command, Failure, Opts};

const DEFAULT_N: usize = 6;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn input(opts: &Opts) -> Result<String, Failure> {
    let path = opts.input.as_ref().ok_or_else(|| Failure::Input("this command needs --in".into()))?;
    read(path)
}

fn emit(opts: &Opts, text: &str) -> Result<(), Failure> {
    match &opts.output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Failure::Input(e.to_string()))
        }
    }
}

/// Prints a report and turns its verdict into the exit status.
fn verdict(rep: &DegreeReport, extra: &str) -> Result<bool, Failure> {
    print!("{rep}");
    print!("{extra}");
    Ok(rep.passed())
}

fn check_n(opts: &Opts, found: usize) -> Result<(), Failure> {
    match opts.max_degree {
        Some(n) if n != found => Err(Failure::Input(format!("truncation mismatch: --N {n} but the input has N={found}"))),
        _ => Ok(()),
    }
}

fn fresh_config(opts: &Opts, default_n: usize) -> Result<TruncationConfig, Failure> {
    Ok(TruncationConfig::new(opts.n.unwrap_or(default_n), opts.max_degree.unwrap_or(DEFAULT_N))?)
}

fn parse<T>(text: &str, f: impl FnOnce(&mut Reader<'_>) -> kvforge::Result<T>) -> Result<T, Failure> {
    parse_all(text, f).map_err(|e| Failure::Input(e.to_string()))
}

pub fn run(command: &Command, opts: &Opts) -> Result<bool, Failure> {
    if opts.format != "text" {
        return Err(Failure::Input(format!("unknown format {:?}; only text is supported", opts.format)));
    }
    match command {
        Command::Bch => {
            let c = fresh_config(opts, 2)?;
            emit(opts, &lie_to_text(&bch_xy(&c)?))?;
        }
        Command::Lyndon => {
            let c = fresh_config(opts, 2)?;
            let mut s = format!("lyndon n={} N={}\n", c.n(), c.max_degree());
            for d in 1..=c.max_degree() {
                for w in lyndon_basis(&c, d)? {
                    s.push_str(&format!("{d} {} {}\n", w.word().display_with(c.names()), bracket_form(&w, c.names())));
                }
            }
            emit(opts, &s)?;
        }
        Command::Div => {
            let u = parse(&input(opts)?, read_tder)?;
            check_n(opts, u.config().max_degree())?;
            emit(opts, &cyc_to_text(&divergence(&u)))?;
        }
        Command::Jac => {
            let text = input(opts)?;
            let f = match payload_kind(&text) {
                Some("tder") => TAutElement::exp(parse(&text, read_tder)?),
                Some("kvsol") => parse(&text, read_kvsol)?.candidate.f,
                Some("krv") => parse(&text, read_krv)?.alpha,
                Some("kvgroup") => parse(&text, read_kvgroup)?.a,
                k => return Err(Failure::Input(format!("jac expects tder, kvsol, krv or kvgroup input, found {k:?}"))),
            };
            check_n(opts, f.config().max_degree())?;
            emit(opts, &cyc_to_text(&jacobian(&f)))?;
        }
        Command::KvCheck => {
            let sol = parse(&input(opts)?, read_kvsol)?;
            check_n(opts, sol.candidate.config().max_degree())?;
            return verdict(&check_solkv(&sol.candidate)?, "");
        }
        Command::KvSolve => {
            let gauge: Gauge = opts.gauge.parse().map_err(|e: kvforge::Error| Failure::Input(e.to_string()))?;
            let sol = solve_kv(opts.max_degree.unwrap_or(DEFAULT_N), gauge)?;
            emit(opts, &kvsol_to_text(&sol))?;
        }
        Command::KrvCheck => {
            let text = input(opts)?;
            match payload_kind(&text) {
                Some("krv") => {
                    let e = parse(&text, read_krv)?;
                    check_n(opts, e.config().max_degree())?;
                    return verdict(&check_krv_group(&e)?, "");
                }
                Some("tder") => {
                    let u = parse(&text, read_tder)?;
                    check_n(opts, u.config().max_degree())?;
                    let k = check_krv_lie(&u)?;
                    return verdict(&k.report, &k.s.to_text());
                }
                k => return Err(Failure::Input(format!("krv-check expects krv or tder input, found {k:?}"))),
            }
        }
        Command::GrtCheck => {
            let psi = GrtCandidate::new(parse(&input(opts)?, read_lie)?)?;
            check_n(opts, psi.config().max_degree())?;
            return verdict(&check_grt(&psi)?, "");
        }
        Command::GrtSolve => {
            let b = solve_grt(opts.max_degree.unwrap_or(DEFAULT_N))?;
            emit(opts, &grtbasis_to_text(&b))?;
        }
        Command::Rho => {
            let psi = GrtCandidate::new(parse(&input(opts)?, read_lie)?)?;
            check_n(opts, psi.config().max_degree())?;
            emit(opts, &tder_to_text(&rho(&psi)?))?;
        }
        Command::Theta { bar } => {
            let g = parse(&input(opts)?, read_autarrows)?;
            check_n(opts, g.config().max_degree())?;
            let e = if *bar { theta_bar(&g)? } else { theta(&g)? };
            emit(opts, &krv_to_text(&e))?;
        }
        Command::ThetaInv => {
            let e = parse(&input(opts)?, read_krv)?;
            check_n(opts, e.config().max_degree())?;
            emit(opts, &autarrows_to_text(&theta_inv(&e)?))?;
        }
        Command::Bubble { omit } => {
            let psi = GrtCandidate::new(parse(&input(opts)?, read_lie)?)?;
            check_n(opts, psi.config().max_degree())?;
            let omit = match omit {
                Some(k @ 1..=4) => Some(k - 1),
                Some(k) => return Err(Failure::Input(format!("--omit {k} is not in 1..=4"))),
                None => None,
            };
            return verdict(&bubble_identity_with(&psi, BubbleOrientation::Inverted, omit)?, "");
        }
        Command::WdCompose { with, slot } => {
            let a = WiringDiagram::parse(&input(opts)?)?;
            let b = WiringDiagram::parse(&read(with)?)?;
            emit(opts, &format!("{}\n", a.compose_at(*slot, &b)?))?;
        }
        Command::Job => unreachable!("handled by the job runner"),
    }
    Ok(true)
}
