//! Exhaustive minimization of all small automata.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::automata::{is_trim, Alphabet, Nba};
use crate::complement::complement_nba_with_limit;
use crate::error::{Error, Result};
use crate::minimize::{minimize_with_complement, verify_certificate, MinimizationConfig};
use crate::sat::Budget;

/// Which enumerated automata take part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CensusFilter {
    /// Start 0, any final set but the empty one.
    #[default]
    AtLeastOneFinal,
    All,
    /// Every state reachable and able to reach an accepting cycle.
    ReachableLive,
}

impl CensusFilter {
    pub fn name(self) -> &'static str {
        match self {
            CensusFilter::AtLeastOneFinal => "at-least-one-final",
            CensusFilter::All => "all",
            CensusFilter::ReachableLive => "reachable-live",
        }
    }

    pub fn admits(self, a: &Nba) -> bool {
        match self {
            CensusFilter::All => true,
            CensusFilter::AtLeastOneFinal => a.finals().next().is_some(),
            CensusFilter::ReachableLive => is_trim(a),
        }
    }
}

impl std::str::FromStr for CensusFilter {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [
            CensusFilter::AtLeastOneFinal,
            CensusFilter::All,
            CensusFilter::ReachableLive,
        ]
        .into_iter()
        .find(|f| f.name() == s)
        .ok_or_else(|| format!("unknown filter {s:?}"))
    }
}

/// Number of raw automata with `states` states and start 0.
pub fn enumeration_size(states: usize, alphabet: usize) -> Option<u64> {
    let bits = states
        .checked_mul(states)?
        .checked_mul(alphabet)?
        .checked_add(states)?;
    1u64.checked_shl(u32::try_from(bits).ok()?)
        .filter(|_| bits < 64)
}

/// The automaton with index `id`: the low `n·n·σ` bits select transitions
/// in `(from, letter, to)` order, the remaining bits the final states.
pub fn enumerated_nba(states: usize, alphabet: Alphabet, id: u64) -> Result<Nba> {
    let sigma = alphabet.size();
    let tbits = states * states * sigma;
    let mut transitions = Vec::new();
    let mut bit = 0;
    for p in 0..states {
        for a in 0..sigma {
            for q in 0..states {
                if id >> bit & 1 == 1 {
                    transitions.push((p, a, q));
                }
                bit += 1;
            }
        }
    }
    let finals: Vec<usize> = (0..states)
        .filter(|&q| id >> (tbits + q) & 1 == 1)
        .collect();
    Nba::new(alphabet, states, 0, finals, transitions)
}

#[derive(Debug, Clone)]
pub struct CensusConfig {
    pub states: usize,
    pub alphabet: usize,
    pub filter: CensusFilter,
    /// Worker threads; `None` uses all cores.
    pub jobs: Option<usize>,
    pub minimize: MinimizationConfig,
    /// Re-check the certificate of every minimized complement.
    pub verify: bool,
    /// Append-only record of finished entries, reused on restart.
    pub checkpoint: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub id: u64,
    pub min_size: usize,
    pub complement_size: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub states: usize,
    pub alphabet: usize,
    pub filter: CensusFilter,
    /// Automata admitted by the filter.
    pub total: u64,
    pub completed: u64,
    pub min_sizes: BTreeMap<usize, u64>,
    pub complement_sizes: BTreeMap<usize, u64>,
    pub max_complement: usize,
    /// Complement certificates checked (and found valid).
    pub verified: u64,
    pub failures: Vec<(u64, String)>,
}

impl CensusReport {
    fn record(&mut self, e: &CensusEntry) {
        self.completed += 1;
        *self.min_sizes.entry(e.min_size).or_default() += 1;
        *self.complement_sizes.entry(e.complement_size).or_default() += 1;
        self.max_complement = self.max_complement.max(e.complement_size);
    }
}

/// Minimal sizes of `a` and of its complement, plus whether the
/// complement's certificate was verified.
pub fn census_entry(
    a: &Nba,
    cfg: &MinimizationConfig,
    verify: bool,
) -> Result<(usize, usize, bool)> {
    let neg = complement_nba_with_limit(a, cfg.dpa_limit)?;
    let m = minimize_with_complement(a, &neg, cfg)?;
    let mc = minimize_with_complement(&neg, a, cfg)?;
    let checked = if verify {
        let budget = Budget::timeout(cfg.timeout);
        if !verify_certificate(&neg, &mc.certificate, &cfg.solver, &budget)? {
            return Err(Error::InvalidAutomaton(
                "complement certificate failed verification".into(),
            ));
        }
        true
    } else {
        false
    };
    Ok((m.automaton.num_states(), mc.automaton.num_states(), checked))
}

fn header(cfg: &CensusConfig) -> String {
    format!(
        "CENSUS v1 states {} alphabet {} filter {}",
        cfg.states,
        cfg.alphabet,
        cfg.filter.name()
    )
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Entries already present in a checkpoint file.
pub fn read_checkpoint(path: &Path, cfg: &CensusConfig) -> Result<Vec<CensusEntry>> {
    let file = File::open(path).map_err(io_err(path))?;
    let mut entries = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        if i == 0 {
            if line != header(cfg) {
                return Err(Error::parse(1, format!("checkpoint is for `{line}`")));
            }
            continue;
        }
        let nums: Vec<u64> = line
            .split_whitespace()
            .map(|t| t.parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::parse(i + 1, "malformed checkpoint entry"))?;
        match nums[..] {
            [id, m, c] => entries.push(CensusEntry {
                id,
                min_size: m as usize,
                complement_size: c as usize,
            }),
            // a torn final line from an interrupted run
            _ => {}
        }
    }
    Ok(entries)
}

pub fn run_census(cfg: &CensusConfig) -> Result<CensusReport> {
    let alphabet = Alphabet::new(cfg.alphabet)?;
    let size = enumeration_size(cfg.states, cfg.alphabet)
        .ok_or_else(|| Error::InvalidAutomaton("census too large to enumerate".into()))?;
    let mut report = CensusReport {
        states: cfg.states,
        alphabet: cfg.alphabet,
        filter: cfg.filter,
        ..Default::default()
    };

    let mut done = BTreeSet::new();
    let mut writer = None;
    if let Some(path) = &cfg.checkpoint {
        let resumed = path.exists() && std::fs::metadata(path).map_err(io_err(path))?.len() > 0;
        if resumed {
            for e in read_checkpoint(path, cfg)? {
                if done.insert(e.id) {
                    report.record(&e);
                }
            }
        }
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(io_err(path))?;
        if !resumed {
            writeln!(f, "{}", header(cfg)).map_err(io_err(path))?;
        }
        writer = Some(f);
    }

    let mut todo = Vec::new();
    for id in 0..size {
        let a = enumerated_nba(cfg.states, alphabet, id)?;
        if cfg.filter.admits(&a) {
            report.total += 1;
            if !done.contains(&id) {
                todo.push(id);
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::InvalidAutomaton(format!("thread pool: {e}")))?;
    let (tx, rx) = mpsc::channel::<(u64, Result<(usize, usize, bool)>)>();
    let mut io_error = None;
    std::thread::scope(|s| {
        s.spawn(move || {
            pool.install(|| {
                todo.par_iter().for_each_with(tx, |tx, &id| {
                    let res = enumerated_nba(cfg.states, alphabet, id)
                        .and_then(|a| census_entry(&a, &cfg.minimize, cfg.verify));
                    let _ = tx.send((id, res));
                });
            });
        });
        // single writer for the report and the checkpoint
        for (id, res) in rx {
            match res {
                Ok((m, c, checked)) => {
                    let e = CensusEntry {
                        id,
                        min_size: m,
                        complement_size: c,
                    };
                    report.record(&e);
                    report.verified += u64::from(checked);
                    if let (Some(f), None) = (writer.as_mut(), io_error.as_ref()) {
                        if let Err(err) = writeln!(f, "{id} {m} {c}") {
                            io_error = Some(err);
                        }
                    }
                }
                Err(e) => report.failures.push((id, e.to_string())),
            }
        }
    });
    if let (Some(err), Some(path)) = (io_error, &cfg.checkpoint) {
        return Err(io_err(path)(err));
    }
    report.failures.sort();
    Ok(report)
}
