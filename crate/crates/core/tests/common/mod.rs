#![allow(dead_code)]

use std::collections::BTreeSet;

use nbamin::{random_nba, Alphabet, Nba, RandomNbaParams, UpWord};
use proptest::prelude::*;

pub fn ab(n: usize) -> Alphabet {
    Alphabet::new(n).unwrap()
}

pub fn w(s: &str) -> UpWord {
    s.parse().unwrap()
}

pub fn eventually_zero() -> Nba {
    Nba::new(
        ab(2),
        2,
        0,
        vec![1],
        vec![(0, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 1)],
    )
    .unwrap()
}

fn all_words(sigma: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..sigma).map(move |a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    out
}

/// Distinct canonical words `u v^ω` with `|u| ≤ max_stem`, `1 ≤ |v| ≤ max_period`.
pub fn bounded_words(sigma: usize, max_stem: usize, max_period: usize) -> Vec<UpWord> {
    let mut set = BTreeSet::new();
    for s in 0..=max_stem {
        for stem in all_words(sigma, s) {
            for p in 1..=max_period {
                for period in all_words(sigma, p) {
                    set.insert(UpWord::new(stem.clone(), period).unwrap().canonicalize());
                }
            }
        }
    }
    set.into_iter().collect()
}

/// Membership by brute force on the graph of (state, word position),
/// without the product and lasso machinery of the library.
pub fn oracle_member(a: &Nba, word: &UpWord) -> bool {
    let (u, v) = (word.stem(), word.period());
    let len = u.len() + v.len();
    let letter = |p: usize| if p < u.len() { u[p] } else { v[p - u.len()] };
    let next_pos = |p: usize| if p + 1 == len { u.len() } else { p + 1 };
    let n = a.num_states();
    let id = |q: usize, p: usize| q * len + p;
    let mut adj = vec![Vec::new(); n * len];
    for q in 0..n {
        for p in 0..len {
            for &r in a.successors(q, letter(p)) {
                adj[id(q, p)].push(id(r, next_pos(p)));
            }
        }
    }
    let reach = |from: usize| {
        let mut seen = vec![false; n * len];
        let mut stack = adj[from].clone();
        while let Some(x) = stack.pop() {
            if !seen[x] {
                seen[x] = true;
                stack.extend(adj[x].iter().copied());
            }
        }
        seen
    };
    let mut from_start = reach(id(a.start(), 0));
    from_start[id(a.start(), 0)] = true;
    (0..n * len).any(|x| from_start[x] && a.is_final(x / len) && reach(x)[x])
}

/// Mutual reachability by transitive closure.
pub fn closure(a: &Nba) -> Vec<Vec<bool>> {
    let n = a.num_states();
    let mut r = vec![vec![false; n]; n];
    for &(p, _, q) in a.transitions() {
        r[p][q] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

/// Every NBA with `n` states, start 0, over `sigma` letters.
pub fn all_nbas(n: usize, sigma: usize) -> impl Iterator<Item = Nba> {
    let tbits = n * n * sigma;
    (0u64..1 << (tbits + n))
        .map(move |id| nbamin::census::enumerated_nba(n, ab(sigma), id).unwrap())
}

/// Random trim automaton with up to `max_states` states.
pub fn arb_nba(max_states: usize, sigma: usize) -> impl Strategy<Value = Nba> {
    (1..=max_states, any::<u64>()).prop_filter_map("no trim sample", move |(n, seed)| {
        let mut params = RandomNbaParams::new(n, ab(sigma));
        params.p_trans = 0.3;
        params.max_attempts = 10_000;
        random_nba(&params, seed)
    })
}

/// Arbitrary automaton, trim or not.
pub fn arb_raw_nba(max_states: usize, sigma: usize) -> impl Strategy<Value = Nba> {
    (1..=max_states).prop_flat_map(move |n| {
        (
            proptest::collection::vec(any::<bool>(), n),
            proptest::collection::vec(proptest::bool::weighted(0.25), n * n * sigma),
            0..n,
        )
            .prop_map(move |(finals, trans, start)| {
                let f: Vec<usize> = (0..n).filter(|&i| finals[i]).collect();
                let t: Vec<(usize, usize, usize)> = (0..n * n * sigma)
                    .filter(|&k| trans[k])
                    .map(|k| (k / (n * sigma), (k / n) % sigma, k % n))
                    .collect();
                Nba::new(ab(sigma), n, start, f, t).unwrap()
            })
    })
}

pub fn arb_word(sigma: usize, max_stem: usize, max_period: usize) -> impl Strategy<Value = UpWord> {
    (
        proptest::collection::vec(0..sigma, 0..=max_stem),
        proptest::collection::vec(0..sigma, 1..=max_period),
    )
        .prop_map(|(u, v)| UpWord::new(u, v).unwrap())
}

/// Agreement of two automata on every bounded word; the first difference.
pub fn bounded_difference(a: &Nba, b: &Nba, words: &[UpWord]) -> Option<UpWord> {
    words
        .iter()
        .find(|x| oracle_member(a, x) != oracle_member(b, x))
        .cloned()
}
