//! SAT encoding of "some `n`-state NBA accepts every good word and rejects
//! every bad word", and decoding of models back into automata.

mod builder;
mod catalog;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::automata::{member, Alphabet, Letter, Nba, UpWord};
use crate::error::{Error, Result};
use crate::sat::{Budget, Cnf, Model, SatOutcome, SolverChoice};

pub use builder::repetition_levels;
pub use catalog::{SemanticVar, VarCatalog, WordId};

/// Disjoint sets of canonical good and bad example words.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSets {
    good: BTreeSet<UpWord>,
    bad: BTreeSet<UpWord>,
}

impl SampleSets {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts the canonical form of `w`; `Ok(false)` if already present.
    pub fn insert_good(&mut self, w: &UpWord) -> Result<bool> {
        let w = w.canonicalize();
        if self.bad.contains(&w) {
            return Err(Error::ConflictingSample {
                word: w.to_string(),
            });
        }
        Ok(self.good.insert(w))
    }

    pub fn insert_bad(&mut self, w: &UpWord) -> Result<bool> {
        let w = w.canonicalize();
        if self.good.contains(&w) {
            return Err(Error::ConflictingSample {
                word: w.to_string(),
            });
        }
        Ok(self.bad.insert(w))
    }

    pub fn good(&self) -> impl Iterator<Item = &UpWord> + '_ {
        self.good.iter()
    }

    pub fn bad(&self) -> impl Iterator<Item = &UpWord> + '_ {
        self.bad.iter()
    }

    pub fn contains(&self, w: &UpWord) -> bool {
        let w = w.canonicalize();
        self.good.contains(&w) || self.bad.contains(&w)
    }

    pub fn len(&self) -> usize {
        self.good.len() + self.bad.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Optional constraints added to the plain encoding.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CandidateOptions {
    /// Every state `j > 0` has an incoming edge from a state `i < j`.
    pub symmetry_breaking: bool,
    /// Letters no accepted word starts with: the start state gets no
    /// outgoing edges labelled with them.
    pub forbidden_start_letters: Vec<Letter>,
}

#[derive(Debug, Clone, Copy)]
pub struct CandidateQuery<'a> {
    pub n: usize,
    pub alphabet: Alphabet,
    pub samples: &'a SampleSets,
    pub options: &'a CandidateOptions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct EncodingStats {
    /// Number of example words.
    pub num_words: usize,
    /// Summed stem and period lengths of the example words.
    pub total_word_length: usize,
    pub alphabet_size: usize,
    pub states: usize,
    pub variable_count: usize,
    pub clause_count: usize,
}

/// Builds the CNF whose models are exactly the separating `n`-state NBAs.
pub fn build_encoding(q: &CandidateQuery<'_>) -> Result<(Cnf, VarCatalog, EncodingStats)> {
    if q.n == 0 {
        return Err(Error::InvalidAutomaton(
            "candidates need at least one state".into(),
        ));
    }
    for w in q.samples.good().chain(q.samples.bad()) {
        w.check_alphabet(q.alphabet)?;
    }
    for &a in &q.options.forbidden_start_letters {
        q.alphabet.check(a)?;
    }
    Ok(builder::build(q))
}

/// Reads the automaton off the `t` and `f` variables; start state 0.
pub fn decode_model(
    model: &Model,
    catalog: &VarCatalog,
    n: usize,
    alphabet: Alphabet,
) -> Result<Nba> {
    if model.num_vars() < catalog.len() {
        return Err(Error::IncompleteModel {
            expected: catalog.len(),
            got: model.num_vars(),
        });
    }
    let value = |v: SemanticVar| catalog.lookup(&v).is_some_and(|i| model.value(i as usize));
    let finals: Vec<usize> = (0..n).filter(|&i| value(SemanticVar::Final(i))).collect();
    let mut transitions = Vec::new();
    for from in 0..n {
        for letter in alphabet.letters() {
            for to in 0..n {
                if value(SemanticVar::Trans { from, to, letter }) {
                    transitions.push((from, letter, to));
                }
            }
        }
    }
    Nba::new(alphabet, n, 0, finals, transitions)
}

/// Checks that `a` accepts all good and rejects all bad words.
pub fn separates(a: &Nba, samples: &SampleSets) -> Result<Option<UpWord>> {
    for w in samples.good() {
        if !member(a, w)? {
            return Ok(Some(w.clone()));
        }
    }
    for w in samples.bad() {
        if member(a, w)? {
            return Ok(Some(w.clone()));
        }
    }
    Ok(None)
}

/// An `n`-state separating automaton, or `None` when none exists, together
/// with the size of the formula that decided it.
///
/// The decoded candidate is re-checked word by word before it is returned.
pub fn solve_candidate(
    q: &CandidateQuery<'_>,
    solver: &SolverChoice,
    budget: &Budget,
) -> Result<(Option<Nba>, EncodingStats)> {
    let (cnf, catalog, stats) = build_encoding(q)?;
    match solver.solve(&cnf, budget)? {
        SatOutcome::Unsat => Ok((None, stats)),
        SatOutcome::Sat(model) => {
            let a = decode_model(&model, &catalog, q.n, q.alphabet)?;
            if let Some(w) = separates(&a, q.samples)? {
                return Err(Error::UnsoundCandidate {
                    word: w.to_string(),
                });
            }
            Ok((Some(a), stats))
        }
    }
}
