use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::nba::{Alphabet, Nba};
use super::reduce::live_states;

/// Parameters of the random automaton generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomNbaParams {
    pub states: usize,
    pub alphabet: Alphabet,
    /// Probability that a state is final.
    pub p_final: f64,
    /// Probability of each individual transition `(i, a, j)`.
    pub p_trans: f64,
    /// Samples drawn before giving up.
    pub max_attempts: usize,
}

impl RandomNbaParams {
    pub fn new(states: usize, alphabet: Alphabet) -> Self {
        RandomNbaParams {
            states,
            alphabet,
            p_final: 0.5,
            p_trans: 0.15,
            max_attempts: 1_000_000,
        }
    }
}

/// One sample without any filtering.
pub fn sample_nba(params: &RandomNbaParams, rng: &mut impl Rng) -> Nba {
    let n = params.states.max(1);
    let finals: Vec<usize> = (0..n).filter(|_| rng.gen_bool(params.p_final)).collect();
    let mut transitions = Vec::new();
    for i in 0..n {
        for a in params.alphabet.letters() {
            for j in 0..n {
                if rng.gen_bool(params.p_trans) {
                    transitions.push((i, a, j));
                }
            }
        }
    }
    Nba::new(params.alphabet, n, 0, finals, transitions).expect("indices are in range")
}

/// Every state is reachable and can still accept some word.
pub fn is_trim(a: &Nba) -> bool {
    a.reachable().iter().all(|&r| r) && live_states(a).iter().all(|&l| l)
}

/// Draws samples from a generator seeded with `seed` until one is trim.
pub fn random_nba(params: &RandomNbaParams, seed: u64) -> Option<Nba> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..params.max_attempts)
        .map(|_| sample_nba(params, &mut rng))
        .find(is_trim)
}
