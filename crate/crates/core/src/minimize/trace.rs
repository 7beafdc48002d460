use serde::{Deserialize, Serialize};

use crate::automata::UpWord;
use crate::encoding::SampleSets;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WordKind {
    Good,
    Bad,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    /// Initial example word.
    Seed {
        kind: WordKind,
        word: UpWord,
    },
    /// The solver found an `n`-state candidate.
    Candidate {
        n: usize,
        transitions: usize,
        variables: usize,
        clauses: usize,
    },
    /// No `n`-state automaton separates the current examples.
    NoCandidate {
        n: usize,
        variables: usize,
        clauses: usize,
    },
    /// The candidate misclassified `word`.
    Counterexample {
        kind: WordKind,
        word: UpWord,
    },
    /// Word added after the search so that the examples alone rule out
    /// smaller automata.
    CertificateWord {
        kind: WordKind,
        word: UpWord,
    },
    SizeIncreased {
        n: usize,
    },
    /// Search ended with an `n`-state automaton; `input` is set when the
    /// reduced input itself was returned.
    Finished {
        n: usize,
        input: bool,
    },
}

/// Ordered event log of one minimization run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub events: Vec<TraceEvent>,
}

impl Trace {
    pub(crate) fn push(&mut self, e: TraceEvent) {
        self.events.push(e);
    }

    /// Number of candidates the teacher looked at.
    pub fn iterations(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, TraceEvent::Candidate { .. }))
            .count()
    }

    /// Rebuilds the example sets and the final size from the events.
    pub fn replay(&self) -> Result<(SampleSets, usize)> {
        let mut samples = SampleSets::new();
        let mut n = 1;
        for e in &self.events {
            match e {
                TraceEvent::Seed { kind, word }
                | TraceEvent::Counterexample { kind, word }
                | TraceEvent::CertificateWord { kind, word } => {
                    match kind {
                        WordKind::Good => samples.insert_good(word)?,
                        WordKind::Bad => samples.insert_bad(word)?,
                    };
                }
                TraceEvent::SizeIncreased { n: m } | TraceEvent::Finished { n: m, .. } => n = *m,
                _ => {}
            }
        }
        Ok((samples, n))
    }
}
