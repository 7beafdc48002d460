//! Adapter for external DIMACS solvers invoked as `<solver> <in.cnf> <out>`.

use std::fs;
use std::path::Path;
use std::process::{Command, Stdio};
use std::thread;
use std::time::Duration;

use super::cnf::{Cnf, Model};
use super::dimacs::write_dimacs;
use super::{Budget, SatOutcome};
use crate::error::SatError;

/// Runs the external solver and verifies any model it reports.
pub fn external_solve(cnf: &Cnf, solver: &Path, budget: &Budget) -> Result<SatOutcome, SatError> {
    let dir = tempfile::tempdir()
        .map_err(|e| SatError::ProcessFailure(format!("temporary directory: {e}")))?;
    let input = dir.path().join("query.cnf");
    let output = dir.path().join("query.result");
    fs::write(&input, write_dimacs(cnf))
        .map_err(|e| SatError::ProcessFailure(format!("writing {}: {e}", input.display())))?;

    let mut child = Command::new(solver)
        .arg(&input)
        .arg(&output)
        .stdin(Stdio::null())
        .stdout(Stdio::null())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| SatError::ProcessFailure(format!("{}: {e}", solver.display())))?;

    let status = loop {
        match child.try_wait() {
            Ok(Some(status)) => break status,
            Ok(None) => {
                if budget.expired() {
                    let _ = child.kill();
                    let _ = child.wait();
                    return Err(SatError::Timeout);
                }
                thread::sleep(Duration::from_millis(2));
            }
            Err(e) => return Err(SatError::ProcessFailure(e.to_string())),
        }
    };

    // minisat-style solvers exit with 10/20, so the result file decides
    let text = match fs::read_to_string(&output) {
        Ok(text) => text,
        Err(e) => {
            return Err(SatError::ProcessFailure(format!(
                "no result file ({e}); solver exited with {status}"
            )))
        }
    };
    let outcome = parse_result(&text, cnf.num_vars())?;
    if let SatOutcome::Sat(model) = &outcome {
        model.check(cnf)?;
    }
    Ok(outcome)
}

/// Parses a result file: `SAT` followed by a 0-terminated literal list, or
/// `UNSAT`. Variables the solver leaves out are set to false.
pub fn parse_result(text: &str, num_vars: usize) -> Result<SatOutcome, SatError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let first = lines
        .next()
        .ok_or_else(|| SatError::BadOutput("empty result file".into()))?;
    match first {
        "UNSAT" | "UNSATISFIABLE" => Ok(SatOutcome::Unsat),
        "SAT" | "SATISFIABLE" => {
            let mut values = vec![false; num_vars];
            let mut terminated = false;
            'lines: for line in lines {
                for token in line.split_whitespace() {
                    let token = token.strip_prefix('v').unwrap_or(token);
                    if token.is_empty() {
                        continue;
                    }
                    let lit: i64 = token
                        .parse()
                        .map_err(|_| SatError::BadOutput(format!("bad literal {token:?}")))?;
                    if lit == 0 {
                        terminated = true;
                        break 'lines;
                    }
                    let v = lit.unsigned_abs() as usize;
                    if v > num_vars {
                        return Err(SatError::BadOutput(format!("unknown variable {v}")));
                    }
                    values[v - 1] = lit > 0;
                }
            }
            if !terminated {
                return Err(SatError::BadOutput("model is not 0-terminated".into()));
            }
            Ok(SatOutcome::Sat(Model::new(values)))
        }
        other => Err(SatError::BadOutput(format!("unexpected status {other:?}"))),
    }
}
