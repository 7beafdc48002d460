//! Complementation of Büchi automata through deterministic parity automata.

mod history;

use std::collections::HashMap;

use crate::automata::{reduce, Dpa, Nba, State};
use crate::error::{Error, Result};

use history::HistoryTree;

/// Default cap on the number of DPA states built by determinization.
pub const DEFAULT_DPA_LIMIT: usize = 100_000;

/// Safra–Piterman determinization with the default state cap.
pub fn nba_to_dpa(a: &Nba) -> Result<Dpa> {
    nba_to_dpa_with_limit(a, DEFAULT_DPA_LIMIT)
}

/// Determinizes `a` into a min-even parity automaton.
///
/// DPA states are history trees paired with the priority of the step that
/// produced them. A step emits `2i + 1` when the node of age rank `i` dies
/// (or is renamed because an older node died) and `2i + 2` when it turns
/// green, i.e. its children cover its whole label; the smallest such value
/// wins.
pub fn nba_to_dpa_with_limit(a: &Nba, limit: usize) -> Result<Dpa> {
    let alphabet = a.alphabet();
    let neutral = HistoryTree::neutral_priority(a);
    let mut index: HashMap<(HistoryTree, u32), State> = HashMap::new();
    let mut states = vec![(HistoryTree::initial(a), neutral)];
    index.insert(states[0].clone(), 0);
    let mut delta = Vec::new();
    let mut next = 0;
    while next < states.len() {
        let tree = states[next].0.clone();
        for letter in alphabet.letters() {
            let step = tree.step(a, letter);
            let key = (step.tree, step.priority);
            let id = match index.get(&key) {
                Some(&id) => id,
                None => {
                    if states.len() >= limit {
                        return Err(Error::DeterminizationLimit { limit });
                    }
                    states.push(key.clone());
                    index.insert(key, states.len() - 1);
                    states.len() - 1
                }
            };
            delta.push(id);
        }
        next += 1;
    }
    let priority = states.iter().map(|(_, p)| *p).collect();
    Dpa::new(alphabet, 0, delta, priority)
}

/// Parity complement: every priority moves up by one.
pub fn complement_dpa(d: &Dpa) -> Dpa {
    d.shifted(1)
}

/// Büchi automaton for a min-even parity automaton.
///
/// A waiting copy follows the DPA and may at any step commit to an even
/// priority `p`; the committed copy only visits states of priority at least
/// `p` and is accepting on states of priority exactly `p`.
pub fn dpa_to_nba(d: &Dpa) -> Nba {
    let alphabet = d.alphabet();
    let mut evens: Vec<u32> = d
        .priorities()
        .iter()
        .copied()
        .filter(|p| p % 2 == 0)
        .collect();
    evens.sort_unstable();
    evens.dedup();

    // (dpa state, committed priority); u32::MAX marks the waiting copy
    const WAITING: u32 = u32::MAX;
    let mut index: HashMap<(State, u32), State> = HashMap::new();
    let mut states = vec![(d.start(), WAITING)];
    index.insert(states[0], 0);
    let mut transitions = Vec::new();
    let mut next = 0;
    while next < states.len() {
        let (q, committed) = states[next];
        for letter in alphabet.letters() {
            let q2 = d.next(q, letter);
            let pr = d.priority(q2);
            let mut targets = Vec::new();
            if committed == WAITING {
                targets.push((q2, WAITING));
                targets.extend(evens.iter().filter(|&&p| pr >= p).map(|&p| (q2, p)));
            } else if pr >= committed {
                targets.push((q2, committed));
            }
            for key in targets {
                let id = *index.entry(key).or_insert_with(|| {
                    states.push(key);
                    states.len() - 1
                });
                transitions.push((next, letter, id));
            }
        }
        next += 1;
    }
    let finals = states
        .iter()
        .enumerate()
        .filter(|(_, &(q, c))| c != WAITING && d.priority(q) == c)
        .map(|(i, _)| i);
    Nba::new(alphabet, states.len(), 0, finals, transitions).expect("indices are in range")
}

/// `Σ^ω \ L(a)` with the default determinization cap.
pub fn complement_nba(a: &Nba) -> Result<Nba> {
    complement_nba_with_limit(a, DEFAULT_DPA_LIMIT)
}

pub fn complement_nba_with_limit(a: &Nba, limit: usize) -> Result<Nba> {
    let dpa = nba_to_dpa_with_limit(&reduce(a), limit)?;
    Ok(reduce(&dpa_to_nba(&complement_dpa(&dpa))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{Alphabet, UpWord};

    fn ab() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    fn eventually_zero() -> Nba {
        Nba::new(
            ab(),
            2,
            0,
            [1],
            [(0, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 1)],
        )
        .unwrap()
    }

    fn w(s: &str) -> UpWord {
        s.parse().unwrap()
    }

    #[test]
    fn universal_determinizes_to_accept_all() {
        let d = nba_to_dpa(&Nba::universal(ab())).unwrap();
        for s in [":0", ":1", "0:1,0", "1,1:0,0,1"] {
            assert!(d.accepts(&w(s)).unwrap());
        }
    }

    #[test]
    fn no_finals_rejects_everything() {
        let a = Nba::new(ab(), 1, 0, [], [(0, 0, 0), (0, 1, 0)]).unwrap();
        let d = nba_to_dpa(&a).unwrap();
        for s in [":0", ":1", "0:1,0"] {
            assert!(!d.accepts(&w(s)).unwrap());
        }
    }

    #[test]
    fn eventually_zero_complement() {
        let c = complement_nba(&eventually_zero()).unwrap();
        assert!(crate::automata::member(&c, &w(":0,1")).unwrap());
        assert!(!crate::automata::member(&c, &w(":0")).unwrap());
    }

    #[test]
    fn complement_of_universal_is_empty() {
        let c = complement_nba(&Nba::universal(ab())).unwrap();
        assert!(crate::automata::is_empty(&c));
    }

    #[test]
    fn priority_shift() {
        let d = Dpa::new(Alphabet::new(1).unwrap(), 0, vec![0], vec![0]).unwrap();
        assert!(d.accepts(&w(":0")).unwrap());
        let c = complement_dpa(&d);
        assert_eq!(c.priorities(), &[1]);
        assert!(!c.accepts(&w(":0")).unwrap());
        assert!(crate::automata::is_empty(&dpa_to_nba(&c)));
        assert!(!crate::automata::is_empty(&dpa_to_nba(&d)));
    }

    #[test]
    fn limit_is_enforced() {
        let err = nba_to_dpa_with_limit(&eventually_zero(), 1).unwrap_err();
        assert!(matches!(err, Error::DeterminizationLimit { limit: 1 }));
    }

    #[test]
    fn trees_keep_their_shape() {
        use crate::automata::{random_nba, RandomNbaParams};
        let mut automata = vec![eventually_zero()];
        for seed in 0..20 {
            let params = RandomNbaParams::new(4, Alphabet::new(2).unwrap());
            automata.extend(random_nba(&params, seed));
        }
        for a in automata {
            let start = vec![a.start()];
            let mut frontier = vec![(HistoryTree::initial(&a), start)];
            let mut seen = std::collections::HashSet::new();
            while let Some((t, subset)) = frontier.pop() {
                if !seen.insert(t.clone()) {
                    continue;
                }
                if t.len() > 0 {
                    t.check_invariants().unwrap();
                    assert_eq!(t.root_label(), &subset[..]);
                } else {
                    assert!(subset.is_empty());
                }
                for letter in 0..2 {
                    let mut next: Vec<State> = subset
                        .iter()
                        .flat_map(|&q| a.successors(q, letter).to_vec())
                        .collect();
                    next.sort_unstable();
                    next.dedup();
                    frontier.push((t.step(&a, letter).tree, next));
                }
            }
        }
    }
}
