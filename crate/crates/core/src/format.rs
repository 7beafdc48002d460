//! Line-oriented text formats for automata and certificates.
//!
//! ```text
//! NBA v1
//! alphabet 2
//! states 2
//! start 0
//! final 1
//! trans 0 0 0
//! ```
//!
//! `#` starts a comment; blank lines are ignored.

use std::fmt::Write as _;

use crate::automata::{Alphabet, Nba, UpWord};
use crate::error::{Error, Result};
use crate::minimize::Certificate;

/// Meaningful lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let toks: Vec<&str> = l.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn num(line: usize, tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected a number, got {tok:?}")))
}

fn single(line: usize, toks: &[&str]) -> Result<usize> {
    match toks {
        [_, x] => num(line, x),
        _ => Err(Error::parse(
            line,
            format!("`{}` takes one argument", toks[0]),
        )),
    }
}

pub fn print_nba(a: &Nba) -> String {
    let mut s = String::from("NBA v1\n");
    let _ = writeln!(s, "alphabet {}", a.alphabet().size());
    let _ = writeln!(s, "states {}", a.num_states());
    let _ = writeln!(s, "start {}", a.start());
    s.push_str("final");
    for q in a.finals() {
        let _ = write!(s, " {q}");
    }
    s.push('\n');
    for &(p, l, q) in a.transitions() {
        let _ = writeln!(s, "trans {p} {l} {q}");
    }
    s
}

pub fn parse_nba(text: &str) -> Result<Nba> {
    let mut it = lines(text);
    match it.next() {
        Some((_, t)) if t == ["NBA", "v1"] => {}
        Some((l, _)) => return Err(Error::parse(l, "expected header `NBA v1`")),
        None => return Err(Error::parse(1, "empty input")),
    }
    let (mut alphabet, mut states, mut start, mut finals) = (None, None, None, None);
    let mut transitions = Vec::new();
    for (l, toks) in it {
        let dup = |seen: bool| {
            if seen {
                Err(Error::parse(l, format!("duplicate `{}`", toks[0])))
            } else {
                Ok(())
            }
        };
        match toks[0] {
            "alphabet" => {
                dup(alphabet.is_some())?;
                alphabet = Some(single(l, &toks)?);
            }
            "states" => {
                dup(states.is_some())?;
                states = Some(single(l, &toks)?);
            }
            "start" => {
                dup(start.is_some())?;
                start = Some(single(l, &toks)?);
            }
            "final" => {
                dup(finals.is_some())?;
                finals = Some(
                    toks[1..]
                        .iter()
                        .map(|t| num(l, t))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            "trans" => match toks[1..] {
                [p, a, q] => transitions.push((num(l, p)?, num(l, a)?, num(l, q)?)),
                _ => return Err(Error::parse(l, "`trans` takes three arguments")),
            },
            other => return Err(Error::parse(l, format!("unknown directive {other:?}"))),
        }
    }
    let missing = |what: &str| Error::parse(0, format!("missing `{what}` line"));
    let alphabet = Alphabet::new(alphabet.ok_or_else(|| missing("alphabet"))?)?;
    Nba::new(
        alphabet,
        states.ok_or_else(|| missing("states"))?,
        start.ok_or_else(|| missing("start"))?,
        finals.ok_or_else(|| missing("final"))?,
        transitions,
    )
}

pub fn print_certificate(c: &Certificate) -> String {
    let mut s = String::from("CERT v1\n");
    let _ = writeln!(s, "n {}", c.n_min);
    for w in &c.good {
        let _ = writeln!(s, "good {w}");
    }
    for w in &c.bad {
        let _ = writeln!(s, "bad {w}");
    }
    s
}

pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let mut it = lines(text);
    match it.next() {
        Some((_, t)) if t == ["CERT", "v1"] => {}
        Some((l, _)) => return Err(Error::parse(l, "expected header `CERT v1`")),
        None => return Err(Error::parse(1, "empty input")),
    }
    let mut n_min = None;
    let mut cert = Certificate {
        good: Default::default(),
        bad: Default::default(),
        n_min: 0,
    };
    for (l, toks) in it {
        let word = || -> Result<UpWord> {
            match toks[1..] {
                [w] => w.parse().map_err(|e: Error| Error::parse(l, e.to_string())),
                _ => Err(Error::parse(l, "expected one word")),
            }
        };
        match toks[0] {
            "n" if n_min.is_none() => n_min = Some(single(l, &toks)?),
            "good" => {
                cert.good.insert(word()?.canonicalize());
            }
            "bad" => {
                cert.bad.insert(word()?.canonicalize());
            }
            other => return Err(Error::parse(l, format!("unexpected {other:?}"))),
        }
    }
    cert.n_min = n_min.ok_or_else(|| Error::parse(0, "missing `n` line"))?;
    Ok(cert)
}
