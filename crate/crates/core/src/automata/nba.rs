use std::ops::Range;

use crate::error::{Error, Result};

pub type State = usize;
pub type Letter = usize;

/// A finite alphabet `{0, ..., size - 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet(usize);

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidAutomaton("alphabet must be nonempty".into()));
        }
        Ok(Alphabet(size))
    }

    pub fn size(self) -> usize {
        self.0
    }

    pub fn letters(self) -> Range<Letter> {
        0..self.0
    }

    pub fn check(self, letter: Letter) -> Result<()> {
        if letter < self.0 {
            Ok(())
        } else {
            Err(Error::LetterOutOfRange {
                letter,
                size: self.0,
            })
        }
    }
}

/// Nondeterministic Büchi automaton with state-based acceptance.
///
/// Transitions are kept sorted by `(from, letter, to)` and free of duplicates,
/// so two automata with the same structure compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Nba {
    alphabet: Alphabet,
    num_states: usize,
    start: State,
    finals: Vec<bool>,
    transitions: Vec<(State, Letter, State)>,
    // successors of (q, a) live at succ[q * sigma + a]
    succ: Vec<Vec<State>>,
}

impl Nba {
    pub fn new(
        alphabet: Alphabet,
        num_states: usize,
        start: State,
        finals: impl IntoIterator<Item = State>,
        transitions: impl IntoIterator<Item = (State, Letter, State)>,
    ) -> Result<Self> {
        if num_states == 0 {
            return Err(Error::InvalidAutomaton("an automaton needs a state".into()));
        }
        if start >= num_states {
            return Err(Error::InvalidAutomaton(format!(
                "start state {start} out of range"
            )));
        }
        let mut final_flags = vec![false; num_states];
        for q in finals {
            if q >= num_states {
                return Err(Error::InvalidAutomaton(format!(
                    "final state {q} out of range"
                )));
            }
            final_flags[q] = true;
        }
        let mut transitions: Vec<_> = transitions.into_iter().collect();
        for &(p, a, q) in &transitions {
            if p >= num_states || q >= num_states {
                return Err(Error::InvalidAutomaton(format!(
                    "transition {p} {a} {q} uses an unknown state"
                )));
            }
            alphabet.check(a)?;
        }
        transitions.sort_unstable();
        transitions.dedup();
        Ok(Self::from_parts(
            alphabet,
            num_states,
            start,
            final_flags,
            transitions,
        ))
    }

    /// Builds from already validated, sorted, deduplicated parts.
    pub(crate) fn from_parts(
        alphabet: Alphabet,
        num_states: usize,
        start: State,
        finals: Vec<bool>,
        transitions: Vec<(State, Letter, State)>,
    ) -> Self {
        debug_assert!(transitions.windows(2).all(|w| w[0] < w[1]));
        let sigma = alphabet.size();
        let mut succ = vec![Vec::new(); num_states * sigma];
        for &(p, a, q) in &transitions {
            succ[p * sigma + a].push(q);
        }
        Nba {
            alphabet,
            num_states,
            start,
            finals,
            transitions,
            succ,
        }
    }

    /// One final state looping on every letter: accepts `Σ^ω`.
    pub fn universal(alphabet: Alphabet) -> Self {
        let transitions = alphabet.letters().map(|a| (0, a, 0)).collect();
        Self::from_parts(alphabet, 1, 0, vec![true], transitions)
    }

    /// One non-final state without transitions: accepts nothing.
    pub fn empty(alphabet: Alphabet) -> Self {
        Self::from_parts(alphabet, 1, 0, vec![false], Vec::new())
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn start(&self) -> State {
        self.start
    }

    pub fn is_final(&self, q: State) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = State> + '_ {
        (0..self.num_states).filter(|&q| self.finals[q])
    }

    pub fn final_flags(&self) -> &[bool] {
        &self.finals
    }

    pub fn transitions(&self) -> &[(State, Letter, State)] {
        &self.transitions
    }

    pub fn successors(&self, q: State, a: Letter) -> &[State] {
        &self.succ[q * self.alphabet.size() + a]
    }

    /// All `(letter, target)` pairs leaving `q`, in sorted order.
    pub fn outgoing(&self, q: State) -> impl Iterator<Item = (Letter, State)> + '_ {
        self.alphabet
            .letters()
            .flat_map(move |a| self.successors(q, a).iter().map(move |&t| (a, t)))
    }

    /// Letter-agnostic successor lists.
    pub fn graph(&self) -> Vec<Vec<State>> {
        let mut adj = vec![Vec::new(); self.num_states];
        for &(p, _, q) in &self.transitions {
            if adj[p].last() != Some(&q) && !adj[p].contains(&q) {
                adj[p].push(q);
            }
        }
        adj
    }

    /// States reachable from the start state.
    pub fn reachable(&self) -> Vec<bool> {
        let adj = self.graph();
        let mut seen = vec![false; self.num_states];
        let mut stack = vec![self.start];
        seen[self.start] = true;
        while let Some(p) = stack.pop() {
            for &q in &adj[p] {
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        seen
    }

    /// Keeps the states flagged in `keep`, preserving their relative order.
    /// The start state must be kept.
    pub(crate) fn restrict(&self, keep: &[bool]) -> Nba {
        debug_assert!(keep[self.start]);
        let mut new_id = vec![usize::MAX; self.num_states];
        let mut count = 0;
        for q in 0..self.num_states {
            if keep[q] {
                new_id[q] = count;
                count += 1;
            }
        }
        let finals = (0..self.num_states)
            .filter(|&q| keep[q])
            .map(|q| self.finals[q])
            .collect();
        let transitions = self
            .transitions
            .iter()
            .filter(|&&(p, _, q)| keep[p] && keep[q])
            .map(|&(p, a, q)| (new_id[p], a, new_id[q]))
            .collect();
        Nba::from_parts(
            self.alphabet,
            count,
            new_id[self.start],
            finals,
            transitions,
        )
    }
}
