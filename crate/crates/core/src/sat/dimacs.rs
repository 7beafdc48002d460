use std::fmt::Write as _;

use super::cnf::Cnf;
use crate::error::SatError;

/// Standard DIMACS CNF: `p cnf <vars> <clauses>` then one 0-terminated
/// clause per line.
pub fn write_dimacs(cnf: &Cnf) -> String {
    let mut out = String::new();
    writeln!(out, "p cnf {} {}", cnf.num_vars(), cnf.clauses().len()).unwrap();
    for clause in cnf.clauses() {
        for lit in clause {
            write!(out, "{lit} ").unwrap();
        }
        out.push_str("0\n");
    }
    out
}

/// Parses DIMACS CNF. Comment lines start with `c`; clauses may span lines.
pub fn read_dimacs(text: &str) -> Result<Cnf, SatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                ["p", "cnf", vars, count] => {
                    let vars = vars
                        .parse()
                        .map_err(|_| SatError::InvalidCnf(format!("bad header {line:?}")))?;
                    let count = count
                        .parse()
                        .map_err(|_| SatError::InvalidCnf(format!("bad header {line:?}")))?;
                    header = Some((vars, count));
                }
                _ => return Err(SatError::InvalidCnf(format!("bad header {line:?}"))),
            }
            continue;
        }
        if header.is_none() {
            return Err(SatError::InvalidCnf("clause before header".into()));
        }
        for token in line.split_whitespace() {
            let lit: i32 = token
                .parse()
                .map_err(|_| SatError::InvalidCnf(format!("bad literal {token:?}")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    let (vars, count) = header.ok_or_else(|| SatError::InvalidCnf("missing header".into()))?;
    if count != clauses.len() {
        return Err(SatError::InvalidCnf(format!(
            "header announces {count} clauses, found {}",
            clauses.len()
        )));
    }
    Cnf::from_clauses(vars, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_unit() {
        let cnf = Cnf::from_clauses(1, vec![vec![1]]).unwrap();
        assert_eq!(write_dimacs(&cnf), "p cnf 1 1\n1 0\n");
    }

    #[test]
    fn two_clauses() {
        let cnf = Cnf::from_clauses(2, vec![vec![1, -2], vec![2]]).unwrap();
        assert_eq!(write_dimacs(&cnf), "p cnf 2 2\n1 -2 0\n2 0\n");
    }

    #[test]
    fn rejects_garbage() {
        assert!(read_dimacs("1 2 0\n").is_err());
        assert!(read_dimacs("p cnf 1 1\n2 0\n").is_err());
        assert!(read_dimacs("p cnf 2 2\n1 0\n").is_err());
    }

    proptest! {
        #[test]
        fn round_trip(vars in 1usize..20, raw in prop::collection::vec(prop::collection::vec((1i32..20, any::<bool>()), 1..5), 0..30)) {
            let clauses: Vec<Vec<i32>> = raw
                .into_iter()
                .map(|c| c.into_iter().map(|(v, s)| {
                    let v = (v - 1) % vars as i32 + 1;
                    if s { v } else { -v }
                }).collect())
                .collect();
            let cnf = Cnf::from_clauses(vars, clauses).unwrap();
            prop_assert_eq!(read_dimacs(&write_dimacs(&cnf)).unwrap(), cnf);
        }
    }
}
