//! Linear-time, language-preserving size reductions.

use super::nba::{Nba, State};
use super::scc::SccPartition;

/// Applies the reductions until nothing changes:
///
/// 1. drop states unreachable from the start;
/// 2. drop states with no accepting continuation;
/// 3. merge the greatest set of final states that can always stay inside
///    the set into one universal sink;
/// 4. drop every `a`-successor of a state that also has the sink as
///    `a`-successor.
pub fn reduce(a: &Nba) -> Nba {
    let mut current = a.clone();
    loop {
        let next = reduce_step(&current);
        if next == current {
            return current;
        }
        current = next;
    }
}

fn reduce_step(a: &Nba) -> Nba {
    let reach = a.reachable();
    let a = if reach.iter().all(|&r| r) {
        a.clone()
    } else {
        a.restrict(&reach)
    };

    let live = live_states(&a);
    if !live[a.start()] {
        return Nba::empty(a.alphabet());
    }
    let a = if live.iter().all(|&l| l) {
        a
    } else {
        a.restrict(&live)
    };

    let universal = universal_states(&a);
    match universal.iter().position(|&u| u) {
        Some(sink) => merge_into_sink(&a, &universal, sink),
        None => a,
    }
}

/// States from which some word is accepted.
pub(crate) fn live_states(a: &Nba) -> Vec<bool> {
    let adj = a.graph();
    let sccs = SccPartition::of_graph(&adj);
    let mut radj = vec![Vec::new(); a.num_states()];
    for (p, succs) in adj.iter().enumerate() {
        for &q in succs {
            radj[q].push(p);
        }
    }
    let mut live = vec![false; a.num_states()];
    let mut stack: Vec<State> = a
        .finals()
        .filter(|&q| sccs.is_nontrivial(sccs.component(q)))
        .collect();
    for &q in &stack {
        live[q] = true;
    }
    while let Some(q) = stack.pop() {
        for &p in &radj[q] {
            if !live[p] {
                live[p] = true;
                stack.push(p);
            }
        }
    }
    live
}

/// Greatest set `S` of final states such that every state of `S` has, for
/// every letter, a successor in `S`.
pub(crate) fn universal_states(a: &Nba) -> Vec<bool> {
    let mut in_set: Vec<bool> = a.final_flags().to_vec();
    loop {
        let mut changed = false;
        for q in 0..a.num_states() {
            if in_set[q]
                && a.alphabet()
                    .letters()
                    .any(|l| !a.successors(q, l).iter().any(|&t| in_set[t]))
            {
                in_set[q] = false;
                changed = true;
            }
        }
        if !changed {
            return in_set;
        }
    }
}

fn merge_into_sink(a: &Nba, universal: &[bool], sink: State) -> Nba {
    if universal[a.start()] {
        return Nba::universal(a.alphabet());
    }
    let mut transitions = Vec::new();
    for p in (0..a.num_states()).filter(|&p| !universal[p]) {
        for letter in a.alphabet().letters() {
            let succ = a.successors(p, letter);
            if succ.iter().any(|&q| universal[q]) {
                transitions.push((p, letter, sink));
            } else {
                transitions.extend(succ.iter().map(|&q| (p, letter, q)));
            }
        }
    }
    transitions.extend(a.alphabet().letters().map(|letter| (sink, letter, sink)));
    transitions.sort_unstable();
    let merged = Nba::from_parts(
        a.alphabet(),
        a.num_states(),
        a.start(),
        a.final_flags().to_vec(),
        transitions,
    );
    let keep: Vec<bool> = (0..a.num_states())
        .map(|q| !universal[q] || q == sink)
        .collect();
    merged.restrict(&keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{member, Alphabet};

    fn ab() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    #[test]
    fn drops_unreachable_state() {
        let a = Nba::new(ab(), 3, 0, [0, 2], [(0, 0, 0), (2, 1, 0)]).unwrap();
        let r = reduce(&a);
        assert_eq!(r, Nba::new(ab(), 1, 0, [0], [(0, 0, 0)]).unwrap());
    }

    #[test]
    fn merges_universal_pair() {
        let t = [
            (0, 0, 0),
            (0, 1, 0),
            (1, 0, 1),
            (1, 1, 1),
            (0, 0, 1),
            (1, 1, 0),
        ];
        let a = Nba::new(ab(), 2, 0, [0, 1], t).unwrap();
        assert_eq!(reduce(&a), Nba::universal(ab()));
    }

    #[test]
    fn empty_language_collapses() {
        let a = Nba::new(ab(), 2, 0, [1], [(0, 0, 1), (0, 1, 0)]).unwrap();
        assert_eq!(reduce(&a), Nba::empty(ab()));
    }

    #[test]
    fn prunes_transitions_next_to_the_sink() {
        // 0 -a-> {1, 2}; 1 is a universal final state; 2 loops on 0 and is final
        let t = [
            (0, 0, 1),
            (0, 0, 2),
            (1, 0, 1),
            (1, 1, 1),
            (2, 0, 2),
            (0, 1, 2),
        ];
        let a = Nba::new(ab(), 3, 0, [1, 2], t).unwrap();
        let r = reduce(&a);
        assert_eq!(r.successors(0, 0), &[1]);
        assert_eq!(r.num_states(), 3);
        for w in [":0", "1:0", ":1", "0:1", "1:1"] {
            let w = w.parse().unwrap();
            assert_eq!(member(&a, &w).unwrap(), member(&r, &w).unwrap(), "{w}");
        }
    }
}
