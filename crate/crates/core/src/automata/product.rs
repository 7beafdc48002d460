use std::collections::HashMap;

use super::lasso::is_empty;
use super::nba::{Nba, State};
use super::word::UpWord;
use crate::error::{Error, Result};

/// Büchi intersection by the two-copy product.
///
/// Copy 0 waits for a final state of `a`, copy 1 for a final state of `b`;
/// accepting states are copy-0 states over a final state of `a`. Only the
/// reachable part is built, numbered in breadth-first order.
pub fn intersect(a: &Nba, b: &Nba) -> Result<Nba> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: a.alphabet().size(),
            right: b.alphabet().size(),
        });
    }
    let alphabet = a.alphabet();
    let mut index: HashMap<(State, State, u8), State> = HashMap::new();
    let mut states = vec![(a.start(), b.start(), 0u8)];
    index.insert(states[0], 0);
    let mut transitions = Vec::new();
    let mut next = 0;
    while next < states.len() {
        let (p, q, copy) = states[next];
        let copy_after = match copy {
            0 if a.is_final(p) => 1,
            1 if b.is_final(q) => 0,
            c => c,
        };
        for letter in alphabet.letters() {
            for &p2 in a.successors(p, letter) {
                for &q2 in b.successors(q, letter) {
                    let key = (p2, q2, copy_after);
                    let id = *index.entry(key).or_insert_with(|| {
                        states.push(key);
                        states.len() - 1
                    });
                    transitions.push((next, letter, id));
                }
            }
        }
        next += 1;
    }
    let finals = states
        .iter()
        .map(|&(p, _, copy)| copy == 0 && a.is_final(p))
        .collect();
    transitions.sort_unstable();
    transitions.dedup();
    Ok(Nba::from_parts(
        alphabet,
        states.len(),
        0,
        finals,
        transitions,
    ))
}

/// The deterministic lasso accepting exactly `stem · period^ω`; the period
/// states are final.
pub fn word_automaton(w: &UpWord, alphabet: super::nba::Alphabet) -> Result<Nba> {
    w.check_alphabet(alphabet)?;
    let u = w.stem().len();
    let v = w.period().len();
    let mut transitions: Vec<_> = w
        .stem()
        .iter()
        .enumerate()
        .map(|(i, &a)| (i, a, i + 1))
        .collect();
    transitions.extend(
        w.period()
            .iter()
            .enumerate()
            .map(|(k, &a)| (u + k, a, u + (k + 1) % v)),
    );
    transitions.sort_unstable();
    let finals = (0..u + v).map(|q| q >= u).collect();
    Ok(Nba::from_parts(alphabet, u + v, 0, finals, transitions))
}

/// `w ∈ L(a)`, decided as nonemptiness of `a ∩ {w}`.
pub fn member(a: &Nba, w: &UpWord) -> Result<bool> {
    let lasso = word_automaton(w, a.alphabet())?;
    Ok(!is_empty(&intersect(a, &lasso)?))
}
