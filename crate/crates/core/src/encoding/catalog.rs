use std::collections::HashMap;
use std::fmt;

use crate::automata::{Letter, State};

/// Interned finite word; variables refer to words by content through it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordId(u32);

/// The semantic SAT variables. State triples read left to right along a
/// path, e.g. `PathVia { from, via, to, .. }` is `from -a-> via -rest-> to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemanticVar {
    /// `f(i)`: state `i` is final.
    Final(State),
    /// `t(i,j,a)`: an `a`-edge from `i` to `j`.
    Trans {
        from: State,
        to: State,
        letter: Letter,
    },
    /// `d(i,j,w)`: `w` leads from `i` to `j`.
    Path {
        from: State,
        to: State,
        word: WordId,
    },
    /// `o(i,k,j,a,w)`: `i -a-> k -w-> j`.
    PathVia {
        from: State,
        via: State,
        to: State,
        letter: Letter,
        rest: WordId,
    },
    /// `x(w,i,j,m)`: `w^k` leads from `i` to `j` for some `1 ≤ k ≤ 2^m`.
    Repeat {
        word: WordId,
        from: State,
        to: State,
        level: u32,
    },
    /// `h(w,i,k,j,m)`: `i -w^l1-> k -w^l2-> j` with `1 ≤ l1, l2 ≤ 2^m`.
    RepeatVia {
        word: WordId,
        from: State,
        via: State,
        to: State,
        level: u32,
    },
    /// `D(i,j,w)`: `w` leads from `i` to `j` visiting a final state.
    FinalPath {
        from: State,
        to: State,
        word: WordId,
    },
    /// `O(i,k,j,a,w)`: `i -a-> k -w-> j` with a final visit somewhere.
    FinalPathVia {
        from: State,
        via: State,
        to: State,
        letter: Letter,
        rest: WordId,
    },
    /// `s(u,v,i,m)`: `u v^k` leads from the start to `i`, `1 ≤ k ≤ 2^m`.
    StemReach {
        stem: WordId,
        period: WordId,
        to: State,
        level: u32,
    },
    /// `u(u,v,i,j,m)`: start `-u-> i -v^k-> j`, `1 ≤ k ≤ 2^m`.
    StemVia {
        stem: WordId,
        period: WordId,
        via: State,
        to: State,
        level: u32,
    },
    /// `B(i,j,v,m)`: `i -v-> j` through a final state and `j -v^k-> i`.
    Loop {
        from: State,
        to: State,
        period: WordId,
        level: u32,
    },
    /// `L(i,v,m)`: some `B(i,j,v,m)` holds.
    LoopKnot {
        knot: State,
        period: WordId,
        level: u32,
    },
    /// `y(u,v,i)`: `u v^ω` is accepted with `i` as loop knot.
    Knot {
        stem: WordId,
        period: WordId,
        knot: State,
    },
    /// `z(u,v)`: `u v^ω` is accepted.
    Accepts { stem: WordId, period: WordId },
}

impl SemanticVar {
    /// Short family name as used in the variable table.
    pub fn family(&self) -> &'static str {
        match self {
            SemanticVar::Final(_) => "f",
            SemanticVar::Trans { .. } => "t",
            SemanticVar::Path { .. } => "d",
            SemanticVar::PathVia { .. } => "o",
            SemanticVar::Repeat { .. } => "x",
            SemanticVar::RepeatVia { .. } => "h",
            SemanticVar::FinalPath { .. } => "D",
            SemanticVar::FinalPathVia { .. } => "O",
            SemanticVar::StemReach { .. } => "s",
            SemanticVar::StemVia { .. } => "u",
            SemanticVar::Loop { .. } => "B",
            SemanticVar::LoopKnot { .. } => "L",
            SemanticVar::Knot { .. } => "y",
            SemanticVar::Accepts { .. } => "z",
        }
    }
}

/// Bijection between semantic variables and DIMACS indices `1..=len`.
#[derive(Debug, Clone, Default)]
pub struct VarCatalog {
    vars: Vec<SemanticVar>,
    index: HashMap<SemanticVar, u32>,
    words: Vec<Vec<Letter>>,
    word_index: HashMap<Vec<Letter>, WordId>,
}

impl VarCatalog {
    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn intern(&mut self, word: &[Letter]) -> WordId {
        if let Some(&id) = self.word_index.get(word) {
            return id;
        }
        let id = WordId(self.words.len() as u32);
        self.words.push(word.to_vec());
        self.word_index.insert(word.to_vec(), id);
        id
    }

    pub fn word(&self, id: WordId) -> &[Letter] {
        &self.words[id.0 as usize]
    }

    pub fn word_id(&self, word: &[Letter]) -> Option<WordId> {
        self.word_index.get(word).copied()
    }

    /// Existing index of `v`, or a fresh one; the flag tells which.
    pub(crate) fn get_or_insert(&mut self, v: SemanticVar) -> (u32, bool) {
        if let Some(&i) = self.index.get(&v) {
            return (i, false);
        }
        self.vars.push(v);
        let i = self.vars.len() as u32;
        self.index.insert(v, i);
        (i, true)
    }

    /// DIMACS index of `v`, if it was instantiated.
    pub fn lookup(&self, v: &SemanticVar) -> Option<u32> {
        self.index.get(v).copied()
    }

    /// Variable behind DIMACS index `i` (1-based).
    pub fn var(&self, i: u32) -> &SemanticVar {
        &self.vars[i as usize - 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &SemanticVar)> {
        self.vars.iter().enumerate().map(|(i, v)| (i as u32 + 1, v))
    }

    /// Number of instantiated variables per family.
    pub fn family_counts(&self) -> Vec<(&'static str, usize)> {
        let mut counts: Vec<(&'static str, usize)> = Vec::new();
        for v in &self.vars {
            match counts.iter_mut().find(|(f, _)| *f == v.family()) {
                Some((_, c)) => *c += 1,
                None => counts.push((v.family(), 1)),
            }
        }
        counts
    }

    pub fn display<'a>(&'a self, v: &'a SemanticVar) -> impl fmt::Display + 'a {
        Described {
            catalog: self,
            var: v,
        }
    }
}

struct Described<'a> {
    catalog: &'a VarCatalog,
    var: &'a SemanticVar,
}

impl fmt::Display for Described<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = |id: WordId| -> String {
            let letters: Vec<String> = self
                .catalog
                .word(id)
                .iter()
                .map(|a| a.to_string())
                .collect();
            format!("\"{}\"", letters.join(","))
        };
        use SemanticVar::*;
        match *self.var {
            Final(i) => write!(f, "f({i})"),
            Trans { from, to, letter } => write!(f, "t({from},{to},{letter})"),
            Path { from, to, word } => write!(f, "d({from},{to},{})", w(word)),
            PathVia {
                from,
                via,
                to,
                letter,
                rest,
            } => {
                write!(f, "o({from},{to},{via},{letter},{})", w(rest))
            }
            Repeat {
                word,
                from,
                to,
                level,
            } => write!(f, "x({},{from},{to},{level})", w(word)),
            RepeatVia {
                word,
                from,
                via,
                to,
                level,
            } => {
                write!(f, "h({},{from},{via},{to},{level})", w(word))
            }
            FinalPath { from, to, word } => write!(f, "D({from},{to},{})", w(word)),
            FinalPathVia {
                from,
                via,
                to,
                letter,
                rest,
            } => {
                write!(f, "O({from},{to},{via},{letter},{})", w(rest))
            }
            StemReach {
                stem,
                period,
                to,
                level,
            } => {
                write!(f, "s({},{},{to},{level})", w(stem), w(period))
            }
            StemVia {
                stem,
                period,
                via,
                to,
                level,
            } => {
                write!(f, "u({},{},{via},{to},{level})", w(stem), w(period))
            }
            Loop {
                from,
                to,
                period,
                level,
            } => write!(f, "B({from},{to},{},{level})", w(period)),
            LoopKnot {
                knot,
                period,
                level,
            } => write!(f, "L({knot},{},{level})", w(period)),
            Knot { stem, period, knot } => write!(f, "y({},{},{knot})", w(stem), w(period)),
            Accepts { stem, period } => write!(f, "z({},{})", w(stem), w(period)),
        }
    }
}
