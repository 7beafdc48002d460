//! Benchmark fixtures.

use nbamin::{random_nba, Alphabet, Nba, RandomNbaParams};

/// Trim random automata with the given size, one per seed.
pub fn random_suite(states: usize, sigma: usize, seeds: std::ops::Range<u64>) -> Vec<Nba> {
    let params = RandomNbaParams::new(states, Alphabet::new(sigma).expect("nonempty alphabet"));
    seeds.filter_map(|s| random_nba(&params, s)).collect()
}
