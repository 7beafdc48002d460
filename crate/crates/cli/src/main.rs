use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use nbamin::census::{run_census, CensusConfig, CensusFilter, CensusReport};
use nbamin::format::{parse_certificate, parse_nba, print_certificate, print_nba};
use nbamin::{
    complement_nba, member, minimize, random_nba, reduce, verify_certificate, Alphabet, Budget,
    Error, MinimizationConfig, RandomNbaParams, SatError, SolverChoice, UpWord,
};

/// Exact minimization of nondeterministic Büchi automata.
#[derive(Parser)]
#[command(name = "nbamin", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Smallest equivalent automaton.
    Minimize {
        input: PathBuf,
        #[command(flatten)]
        opts: SearchOpts,
        /// Write the automaton here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// JSON lines event log.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Minimize every small automaton and its complement.
    Census {
        #[arg(long)]
        states: usize,
        #[arg(long)]
        alphabet: usize,
        #[arg(long, default_value = "at-least-one-final")]
        filter: CensusFilter,
        #[arg(long)]
        jobs: Option<usize>,
        /// Checkpoint file; finished entries in it are skipped.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Re-check every complement certificate.
        #[arg(long)]
        verify: bool,
        /// Write the report as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        opts: SearchOpts,
    },
    Complement {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prints `true` or `false`.
    Member { input: PathBuf, word: String },
    Reduce {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Random {
        #[arg(long)]
        states: usize,
        #[arg(long)]
        alphabet: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        p_final: f64,
        #[arg(long, default_value_t = 0.15)]
        p_trans: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prints `true` or `false`; exit 2 if the solver ran out of time.
    VerifyCertificate {
        input: PathBuf,
        certificate: PathBuf,
        #[arg(long, default_value = "internal")]
        solver: SolverChoice,
        #[arg(long, default_value_t = 600)]
        timeout_secs: u64,
    },
}

#[derive(Args)]
struct SearchOpts {
    /// `internal` or `external:<path>`.
    #[arg(long, default_value = "internal")]
    solver: SolverChoice,
    #[arg(long, default_value_t = 600)]
    timeout_secs: u64,
    #[arg(long)]
    no_seed_words: bool,
    #[arg(long)]
    no_symmetry: bool,
    #[arg(long)]
    no_extra_constraints: bool,
    /// Stop once more states than this are needed.
    #[arg(long)]
    max_n: Option<usize>,
}

impl SearchOpts {
    fn config(&self) -> anyhow::Result<MinimizationConfig> {
        if self.timeout_secs == 0 {
            bail!("--timeout-secs must be positive");
        }
        Ok(MinimizationConfig {
            solver: self.solver.clone(),
            timeout: Duration::from_secs(self.timeout_secs),
            seed_words: !self.no_seed_words,
            symmetry_breaking: !self.no_symmetry,
            extra_knowledge: !self.no_extra_constraints,
            max_n: self.max_n,
            ..Default::default()
        })
    }
}

const EXIT_TIMEOUT: u8 = 2;

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_nba(path: &Path) -> anyhow::Result<nbamin::Nba> {
    parse_nba(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn write_trace(path: &Path, trace: &nbamin::Trace) -> anyhow::Result<()> {
    let mut s = String::new();
    for e in &trace.events {
        s.push_str(&serde_json::to_string(e)?);
        s.push('\n');
    }
    fs::write(path, s).with_context(|| format!("writing {}", path.display()))
}

fn print_report(r: &CensusReport) {
    println!("automata {} (filter {})", r.total, r.filter.name());
    println!("completed {}", r.completed);
    let hist = |m: &std::collections::BTreeMap<usize, u64>| {
        m.iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!("minimal sizes {}", hist(&r.min_sizes));
    println!("complement sizes {}", hist(&r.complement_sizes));
    println!("max complement {}", r.max_complement);
    if r.verified > 0 {
        println!("verified certificates {}", r.verified);
    }
    for (id, e) in &r.failures {
        println!("failed {id}: {e}");
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Minimize {
            input,
            opts,
            out,
            certificate,
            trace,
        } => {
            let a = load_nba(&input)?;
            match minimize(&a, &opts.config()?) {
                Ok(m) => {
                    emit(&print_nba(&m.automaton), out.as_deref())?;
                    if let Some(p) = certificate {
                        fs::write(&p, print_certificate(&m.certificate))
                            .with_context(|| format!("writing {}", p.display()))?;
                    }
                    if let Some(p) = trace {
                        write_trace(&p, &m.trace)?;
                    }
                    eprintln!(
                        "size {} iterations {}",
                        m.automaton.num_states(),
                        m.trace.iterations()
                    );
                    Ok(ExitCode::SUCCESS)
                }
                Err(Error::Timeout(p)) => {
                    if let Some(path) = trace {
                        write_trace(&path, &p.trace)?;
                    }
                    eprintln!("timeout: at least {} states", p.lower_bound);
                    Ok(ExitCode::from(EXIT_TIMEOUT))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Census {
            states,
            alphabet,
            filter,
            jobs,
            resume,
            verify,
            out,
            opts,
        } => {
            let report = run_census(&CensusConfig {
                states,
                alphabet,
                filter,
                jobs,
                minimize: opts.config()?,
                verify,
                checkpoint: resume,
            })?;
            print_report(&report);
            if let Some(p) = out {
                fs::write(&p, serde_json::to_string_pretty(&report)?)
                    .with_context(|| format!("writing {}", p.display()))?;
            }
            Ok(if report.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_TIMEOUT)
            })
        }
        Command::Complement { input, out } => {
            let a = load_nba(&input)?;
            emit(&print_nba(&complement_nba(&a)?), out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Member { input, word } => {
            let a = load_nba(&input)?;
            let w: UpWord = word.parse()?;
            println!("{}", member(&a, &w)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce { input, out } => {
            let a = load_nba(&input)?;
            emit(&print_nba(&reduce(&a)), out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Random {
            states,
            alphabet,
            seed,
            p_final,
            p_trans,
            out,
        } => {
            if states == 0 {
                bail!("--states must be positive");
            }
            for p in [p_final, p_trans] {
                if !(0.0..=1.0).contains(&p) {
                    bail!("probabilities must lie in [0, 1]");
                }
            }
            let params = RandomNbaParams {
                p_final,
                p_trans,
                ..RandomNbaParams::new(states, Alphabet::new(alphabet)?)
            };
            let a = random_nba(&params, seed)
                .context("no trim automaton found within the attempt limit")?;
            emit(&print_nba(&a), out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyCertificate {
            input,
            certificate,
            solver,
            timeout_secs,
        } => {
            let a = load_nba(&input)?;
            let cert = parse_certificate(&read(&certificate)?)
                .with_context(|| format!("parsing {}", certificate.display()))?;
            let budget = Budget::timeout(Duration::from_secs(timeout_secs));
            match verify_certificate(&a, &cert, &solver, &budget) {
                Ok(ok) => {
                    println!("{ok}");
                    Ok(ExitCode::SUCCESS)
                }
                Err(Error::Sat(SatError::Timeout)) => {
                    println!("indeterminate");
                    Ok(ExitCode::from(EXIT_TIMEOUT))
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
