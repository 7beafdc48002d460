mod common;

use common::*;
use nbamin::encoding::{repetition_levels, separates, SemanticVar};
use nbamin::minimize::forbidden_start_letters;
use nbamin::sat::{read_dimacs, write_dimacs, CdclSolver, SatOutcome};
use nbamin::{
    build_encoding, decode_model, member, solve_candidate, Budget, CandidateOptions,
    CandidateQuery, Nba, SampleSets, SolverChoice,
};
use proptest::prelude::*;

fn samples(good: &[&str], bad: &[&str]) -> SampleSets {
    let mut s = SampleSets::new();
    for g in good {
        s.insert_good(&w(g)).unwrap();
    }
    for b in bad {
        s.insert_bad(&w(b)).unwrap();
    }
    s
}

fn classified(a: &Nba, words: &[nbamin::UpWord]) -> SampleSets {
    let mut s = SampleSets::new();
    for x in words {
        if oracle_member(a, x) {
            s.insert_good(x).unwrap();
        } else {
            s.insert_bad(x).unwrap();
        }
    }
    s
}

fn solve(n: usize, sigma: usize, s: &SampleSets, options: &CandidateOptions) -> Option<Nba> {
    let q = CandidateQuery {
        n,
        alphabet: ab(sigma),
        samples: s,
        options,
    };
    solve_candidate(&q, &SolverChoice::Internal, &Budget::unlimited())
        .unwrap()
        .0
}

fn min_n(sigma: usize, s: &SampleSets, options: &CandidateOptions) -> usize {
    (1..)
        .find(|&n| solve(n, sigma, s, options).is_some())
        .unwrap()
}

fn brute_min_n(sigma: usize, s: &SampleSets, max: usize) -> Option<usize> {
    (1..=max).find(|&n| {
        all_nbas(n, sigma).any(|a| {
            s.good().all(|x| oracle_member(&a, x)) && s.bad().all(|x| !oracle_member(&a, x))
        })
    })
}

#[test]
fn reference_example_has_26_variables() {
    let s = samples(&[":1"], &[":0"]);
    let options = CandidateOptions::default();
    let q = CandidateQuery {
        n: 1,
        alphabet: ab(2),
        samples: &s,
        options: &options,
    };
    let (cnf, catalog, stats) = build_encoding(&q).unwrap();
    assert_eq!(catalog.len(), 26);
    assert_eq!(stats.variable_count, 26);
    assert_eq!(cnf.num_vars(), 26);
    assert_eq!(repetition_levels(1), 1);
    let mut solver = CdclSolver::new(&cnf);
    let SatOutcome::Sat(model) = solver.solve(&Budget::unlimited()).unwrap() else {
        panic!("expected SAT");
    };
    let a = decode_model(&model, &catalog, 1, ab(2)).unwrap();
    assert_eq!(a.num_states(), 1);
    assert_eq!(a.finals().collect::<Vec<_>>(), vec![0]);
    assert_eq!(a.transitions(), &[(0, 1, 0)]);
    let families: Vec<&str> = catalog.family_counts().iter().map(|(f, _)| *f).collect();
    for f in ["f", "t", "d", "x", "h", "D", "s", "u", "B", "L", "y", "z"] {
        assert!(families.contains(&f), "{f} missing from {families:?}");
    }
    assert!(catalog.lookup(&SemanticVar::Final(0)).is_some());
}

#[test]
fn sample_sets_reject_conflicts() {
    let mut s = SampleSets::new();
    s.insert_good(&w("0:0,0")).unwrap();
    assert!(s.insert_bad(&w(":0")).is_err());
    assert!(!s.insert_good(&w(":0")).unwrap());
    assert_eq!(s.len(), 1);
}

#[test]
fn minimal_sizes_for_small_sample_sets() {
    let plain = CandidateOptions::default();
    let sym = CandidateOptions {
        symmetry_breaking: true,
        ..Default::default()
    };
    let cases = [
        samples(&[":1"], &[":0"]),
        samples(&[":0", ":1"], &[":0,1"]),
        samples(&[":0,1"], &[":0", ":1"]),
    ];
    let got: Vec<usize> = cases.iter().map(|s| min_n(2, s, &plain)).collect();
    assert_eq!(&got[..2], &[1, 2]);
    for (s, &n) in cases.iter().zip(&got) {
        assert_eq!(min_n(2, s, &sym), n);
        assert_eq!(brute_min_n(2, s, 2), Some(n).filter(|&n| n <= 2));
    }
}

#[test]
fn complete_for_all_small_automata() {
    let words = bounded_words(2, 1, 2);
    let options_for = |a: &Nba, sym: bool| CandidateOptions {
        symmetry_breaking: sym,
        forbidden_start_letters: forbidden_start_letters(a),
    };
    for n in 1..=2 {
        for a in all_nbas(n, 2) {
            let s = classified(&a, &words);
            for sym in [false, true] {
                let options = options_for(&a, sym);
                let found = solve(n, 2, &s, &options);
                // with an empty language every start edge is forbidden, so
                // no state can be reached from the start at all
                if sym && n > 1 && options.forbidden_start_letters.len() == 2 {
                    assert!(found.is_none());
                    continue;
                }
                let c = found.unwrap_or_else(|| panic!("no candidate although {a:?} separates"));
                assert_eq!(separates(&c, &s).unwrap(), None);
            }
        }
    }
}

#[test]
fn model_decoding_requires_full_model() {
    let s = samples(&[":1"], &[":0"]);
    let options = CandidateOptions::default();
    let q = CandidateQuery {
        n: 1,
        alphabet: ab(2),
        samples: &s,
        options: &options,
    };
    let (_, catalog, _) = build_encoding(&q).unwrap();
    let short = nbamin::sat::Model::new(vec![true; 3]);
    assert!(decode_model(&short, &catalog, 1, ab(2)).is_err());
}

#[test]
fn zero_states_is_rejected() {
    let s = SampleSets::new();
    let options = CandidateOptions::default();
    let q = CandidateQuery {
        n: 0,
        alphabet: ab(2),
        samples: &s,
        options: &options,
    };
    assert!(build_encoding(&q).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn complete_for_random_three_state_automata(a in arb_nba(3, 2)) {
        let words = bounded_words(2, 2, 2);
        let s = classified(&a, &words);
        let options = CandidateOptions {
            symmetry_breaking: true,
            forbidden_start_letters: forbidden_start_letters(&a),
        };
        let c = solve(a.num_states(), 2, &s, &options);
        prop_assert!(c.is_some());
        let c = c.unwrap();
        for x in s.good() {
            prop_assert!(member(&c, x).unwrap());
        }
        for x in s.bad() {
            prop_assert!(!member(&c, x).unwrap());
        }
    }

    #[test]
    fn symmetry_breaking_keeps_the_minimum(a in arb_nba(3, 2)) {
        let words = bounded_words(2, 1, 2);
        let s = classified(&a, &words);
        let plain = min_n(2, &s, &CandidateOptions::default());
        let sym = CandidateOptions {
            symmetry_breaking: true,
            ..Default::default()
        };
        prop_assert_eq!(min_n(2, &s, &sym), plain);
        // forbidden letters only exclude automata that differ from `a`
        let all = CandidateOptions {
            symmetry_breaking: true,
            forbidden_start_letters: forbidden_start_letters(&a),
        };
        let constrained = min_n(2, &s, &all);
        prop_assert!(plain <= constrained && constrained <= a.num_states());
    }

    #[test]
    fn dimacs_round_trip_of_encodings(a in arb_nba(3, 2), n in 1usize..4) {
        let s = classified(&a, &bounded_words(2, 1, 2));
        let options = CandidateOptions::default();
        let q = CandidateQuery { n, alphabet: ab(2), samples: &s, options: &options };
        let (cnf, _, _) = build_encoding(&q).unwrap();
        let back = read_dimacs(&write_dimacs(&cnf)).unwrap();
        prop_assert_eq!(back.clauses(), cnf.clauses());
        prop_assert_eq!(back.num_vars(), cnf.num_vars());
    }
}

#[test]
fn variable_count_grows_cubically() {
    let s = samples(&[":0,1", "1:0", "0,0:1,1,0"], &[":0", "1:1,0,0"]);
    let rho: usize = s.good().chain(s.bad()).map(|x| x.len()).sum();
    let options = CandidateOptions::default();
    let mut last = 0;
    for n in 1..=8 {
        let q = CandidateQuery {
            n,
            alphabet: ab(2),
            samples: &s,
            options: &options,
        };
        let v = build_encoding(&q).unwrap().2.variable_count;
        assert!(v > last, "n={n}: {v} variables, {last} before");
        // n^3 (rho + log n) up to a constant; the constant is 4.9 at n = 1
        // and shrinks towards 2 as n grows
        let levels = (n as f64).log2().ceil() as usize + 1;
        assert!(v <= 5 * n * n * n * (rho + levels), "n={n}: {v} variables");
        last = v;
    }
}
