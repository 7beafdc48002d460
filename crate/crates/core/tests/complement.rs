mod common;

use common::*;
use nbamin::{
    complement_dpa, complement_nba, dpa_to_nba, intersect, is_empty, member, nba_to_dpa, Dpa, Nba,
    UpWord,
};
use proptest::prelude::*;

/// Direct run of a DPA on `u v^ω`: follow the period until a state at a
/// period boundary repeats, then take the least priority on the cycle.
fn oracle_dpa(d: &Dpa, x: &UpWord) -> bool {
    let mut q = d.start();
    for &a in x.stem() {
        q = d.next(q, a);
    }
    let mut boundary = vec![q];
    loop {
        for &a in x.period() {
            q = d.next(q, a);
        }
        if let Some(i) = boundary.iter().position(|&b| b == q) {
            // replay the cycle from boundary[i]
            let mut p = boundary[i];
            let mut min = u32::MAX;
            for _ in i..boundary.len() {
                for &a in x.period() {
                    p = d.next(p, a);
                    min = min.min(d.priority(p));
                }
            }
            return min % 2 == 0;
        }
        boundary.push(q);
    }
}

fn arb_dpa(max_states: usize, sigma: usize) -> impl Strategy<Value = Dpa> {
    (1..=max_states).prop_flat_map(move |n| {
        (
            proptest::collection::vec(0..n, n * sigma),
            proptest::collection::vec(0u32..5, n),
        )
            .prop_map(move |(delta, prio)| Dpa::new(ab(sigma), 0, delta, prio).unwrap())
    })
}

fn all_letters_priority(p: u32) -> Dpa {
    Dpa::new(ab(2), 0, vec![0, 0], vec![p]).unwrap()
}

#[test]
fn trivial_determinizations() {
    let words = bounded_words(2, 2, 3);
    let u = nba_to_dpa(&Nba::universal(ab(2))).unwrap();
    let e =
        nba_to_dpa(&Nba::new(ab(2), 2, 0, vec![], vec![(0, 0, 1), (1, 1, 0)]).unwrap()).unwrap();
    for x in &words {
        assert!(u.accepts(x).unwrap());
        assert!(!e.accepts(x).unwrap());
    }
}

#[test]
fn eventually_zero_determinization_matches_bounded_oracle() {
    let d = nba_to_dpa(&eventually_zero()).unwrap();
    for x in bounded_words(2, 3, 3) {
        assert_eq!(
            d.accepts(&x).unwrap(),
            oracle_member(&eventually_zero(), &x),
            "{x}"
        );
        assert_eq!(
            oracle_dpa(&d, &x),
            oracle_member(&eventually_zero(), &x),
            "{x}"
        );
    }
}

#[test]
fn constant_priority_automata() {
    let words = bounded_words(2, 2, 3);
    let all = all_letters_priority(0);
    let none = complement_dpa(&all);
    assert_eq!(none.priorities(), &[1]);
    let all_nba = dpa_to_nba(&all);
    let none_nba = dpa_to_nba(&none);
    assert!(is_empty(&none_nba));
    for x in &words {
        assert!(member(&all_nba, x).unwrap());
    }
}

#[test]
fn eventually_zero_complement() {
    let c = complement_nba(&eventually_zero()).unwrap();
    assert!(member(&c, &w(":0,1")).unwrap());
    assert!(member(&c, &w(":1")).unwrap());
    assert!(!member(&c, &w(":0")).unwrap());
    assert!(!member(&c, &w("1,1:0")).unwrap());
}

#[test]
fn universal_complement_is_empty() {
    for sigma in 1..4 {
        assert!(is_empty(
            &complement_nba(&Nba::universal(ab(sigma))).unwrap()
        ));
        let e = complement_nba(&Nba::empty(ab(sigma))).unwrap();
        for x in bounded_words(sigma, 2, 2) {
            assert!(member(&e, &x).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn complement_partitions_words(a in arb_raw_nba(6, 2)) {
        let c = complement_nba(&a).unwrap();
        prop_assert!(is_empty(&intersect(&a, &c).unwrap()));
        for x in bounded_words(2, 2, 3) {
            prop_assert!(oracle_member(&a, &x) ^ oracle_member(&c, &x), "{}", x);
        }
    }

    #[test]
    fn determinization_is_total_and_faithful(a in arb_raw_nba(5, 2)) {
        let d = nba_to_dpa(&a).unwrap();
        for q in 0..d.num_states() {
            for l in 0..2 {
                prop_assert!(d.next(q, l) < d.num_states());
            }
        }
        for x in bounded_words(2, 2, 3) {
            prop_assert_eq!(oracle_dpa(&d, &x), oracle_member(&a, &x), "{}", x);
        }
    }

    #[test]
    fn parity_complement_flips(d in arb_dpa(6, 2), x in arb_word(2, 3, 4)) {
        let c = complement_dpa(&d);
        prop_assert_eq!(c.accepts(&x).unwrap(), !oracle_dpa(&d, &x));
        prop_assert_eq!(complement_dpa(&c).accepts(&x).unwrap(), oracle_dpa(&d, &x));
        prop_assert_eq!(d.accepts(&x).unwrap(), oracle_dpa(&d, &x));
    }

    #[test]
    fn parity_to_buchi(d in arb_dpa(6, 2)) {
        let b = dpa_to_nba(&d);
        for x in bounded_words(2, 3, 3) {
            prop_assert_eq!(oracle_member(&b, &x), oracle_dpa(&d, &x), "{}", x);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn double_complement(a in arb_raw_nba(4, 2), x in arb_word(2, 3, 4)) {
        let cc = complement_nba(&complement_nba(&a).unwrap()).unwrap();
        prop_assert_eq!(member(&cc, &x).unwrap(), oracle_member(&a, &x));
    }
}
