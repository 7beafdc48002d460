//! Emptiness checking and extraction of accepted lasso words.

use std::collections::VecDeque;

use super::nba::{Letter, Nba, State};
use super::scc::SccPartition;
use super::word::UpWord;

/// Final states lying on a cycle that is reachable from the start state.
fn accepting_knots(a: &Nba) -> (SccPartition, Vec<State>) {
    let reach = a.reachable();
    let sccs = SccPartition::of_graph(&a.graph());
    let knots = a
        .finals()
        .filter(|&q| reach[q] && sccs.is_nontrivial(sccs.component(q)))
        .collect();
    (sccs, knots)
}

/// `L(a) = ∅`
pub fn is_empty(a: &Nba) -> bool {
    accepting_knots(a).1.is_empty()
}

/// Breadth-first search from `from`, restricted to states accepted by
/// `allowed`; returns predecessor links `(state, letter)`.
fn bfs_tree(a: &Nba, from: State, allowed: impl Fn(State) -> bool) -> Vec<Option<(State, Letter)>> {
    let mut pred = vec![None; a.num_states()];
    let mut seen = vec![false; a.num_states()];
    let mut queue = VecDeque::new();
    seen[from] = true;
    queue.push_back(from);
    while let Some(p) = queue.pop_front() {
        for (letter, q) in a.outgoing(p) {
            if !seen[q] && allowed(q) {
                seen[q] = true;
                pred[q] = Some((p, letter));
                queue.push_back(q);
            }
        }
    }
    pred
}

fn path_to(pred: &[Option<(State, Letter)>], from: State, to: State) -> Option<Vec<Letter>> {
    let mut letters = Vec::new();
    let mut q = to;
    while q != from {
        let (p, letter) = pred[q]?;
        letters.push(letter);
        q = p;
    }
    letters.reverse();
    Some(letters)
}

/// Shortest nonempty cycle through `knot` inside its component.
fn shortest_cycle(a: &Nba, sccs: &SccPartition, knot: State) -> Option<Vec<Letter>> {
    let comp = sccs.component(knot);
    let pred = bfs_tree(a, knot, |q| sccs.component(q) == comp);
    // close the cycle with the cheapest edge back into the knot
    let mut best: Option<Vec<Letter>> = None;
    for p in sccs.members(comp) {
        let Some(prefix) = (if p == knot {
            Some(Vec::new())
        } else if pred[p].is_some() {
            path_to(&pred, knot, p)
        } else {
            None
        }) else {
            continue;
        };
        if best.as_ref().is_some_and(|b| b.len() <= prefix.len() + 1) {
            continue;
        }
        if let Some((letter, _)) = a.outgoing(p).find(|&(_, q)| q == knot) {
            let mut cycle = prefix;
            cycle.push(letter);
            best = Some(cycle);
        }
    }
    best
}

/// Some canonical `u·v^ω ∈ L(a)`, or `None` iff the language is empty.
///
/// Among all final states on a reachable cycle, picks the one minimizing
/// shortest stem plus shortest cycle length.
pub fn find_accepted_word(a: &Nba) -> Option<UpWord> {
    let (sccs, knots) = accepting_knots(a);
    if knots.is_empty() {
        return None;
    }
    let from_start = bfs_tree(a, a.start(), |_| true);
    let mut best: Option<(Vec<Letter>, Vec<Letter>)> = None;
    for knot in knots {
        let stem = path_to(&from_start, a.start(), knot).expect("knot is reachable");
        if let Some((u, v)) = &best {
            if u.len() + v.len() <= stem.len() + 1 {
                continue;
            }
        }
        let cycle = shortest_cycle(a, &sccs, knot).expect("knot lies on a cycle");
        let better = match &best {
            None => true,
            Some((u, v)) => (stem.len() + cycle.len(), cycle.len()) < (u.len() + v.len(), v.len()),
        };
        if better {
            best = Some((stem, cycle));
        }
    }
    let (stem, period) = best?;
    Some(
        UpWord::new(stem, period)
            .expect("cycle is nonempty")
            .canonicalize(),
    )
}
