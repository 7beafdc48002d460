use super::nba::{Alphabet, Letter, State};
use super::word::UpWord;
use crate::error::{Error, Result};

/// Deterministic parity automaton with state priorities.
///
/// A run is accepting iff the least priority seen infinitely often is even.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dpa {
    alphabet: Alphabet,
    start: State,
    // delta[q * sigma + a]
    delta: Vec<State>,
    priority: Vec<u32>,
}

impl Dpa {
    pub fn new(
        alphabet: Alphabet,
        start: State,
        delta: Vec<State>,
        priority: Vec<u32>,
    ) -> Result<Self> {
        let n = priority.len();
        if n == 0 || start >= n {
            return Err(Error::InvalidAutomaton("bad DPA start state".into()));
        }
        if delta.len() != n * alphabet.size() {
            return Err(Error::InvalidAutomaton(
                "DPA transition table is not total".into(),
            ));
        }
        if let Some(&q) = delta.iter().find(|&&q| q >= n) {
            return Err(Error::InvalidAutomaton(format!(
                "DPA transition to unknown state {q}"
            )));
        }
        Ok(Dpa {
            alphabet,
            start,
            delta,
            priority,
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.priority.len()
    }

    pub fn start(&self) -> State {
        self.start
    }

    pub fn next(&self, q: State, a: Letter) -> State {
        self.delta[q * self.alphabet.size() + a]
    }

    pub fn priority(&self, q: State) -> u32 {
        self.priority[q]
    }

    pub fn priorities(&self) -> &[u32] {
        &self.priority
    }

    /// Same transition structure, every priority shifted by `by`.
    pub(crate) fn shifted(&self, by: u32) -> Dpa {
        Dpa {
            priority: self.priority.iter().map(|p| p + by).collect(),
            ..self.clone()
        }
    }

    /// Decides `w ∈ L(self)` by running the automaton until the state at a
    /// period boundary repeats.
    pub fn accepts(&self, w: &UpWord) -> Result<bool> {
        w.check_alphabet(self.alphabet)?;
        let mut q = self.start;
        for &a in w.stem() {
            q = self.next(q, a);
        }
        let mut boundary_seen = vec![usize::MAX; self.num_states()];
        let mut boundaries = Vec::new();
        loop {
            if boundary_seen[q] != usize::MAX {
                break;
            }
            boundary_seen[q] = boundaries.len();
            boundaries.push(q);
            for &a in w.period() {
                q = self.next(q, a);
            }
        }
        // the run cycles through the period blocks starting at boundary q
        let mut min = u32::MAX;
        let cycle_len = boundaries.len() - boundary_seen[q];
        for _ in 0..cycle_len {
            for &a in w.period() {
                q = self.next(q, a);
                min = min.min(self.priority[q]);
            }
        }
        Ok(min % 2 == 0)
    }
}
