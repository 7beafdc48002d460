//! Reference SAT solver for the external backend, called as
//! `nbamin-refsat <in.cnf> <out.result>`. Wraps varisat so that the embedded
//! solver can be checked against an independent implementation.

use std::process::ExitCode;

use varisat::dimacs::DimacsParser;
use varisat::Solver;

fn run(input: &str, output: &str) -> anyhow::Result<()> {
    let text = std::fs::read(input)?;
    let formula = DimacsParser::parse(&text[..])?;
    let mut solver = Solver::new();
    solver.add_formula(&formula);
    let out = if solver.solve()? {
        // the header may declare variables no clause mentions
        let declared = String::from_utf8_lossy(&text)
            .lines()
            .find_map(|l| {
                l.strip_prefix("p cnf ")?
                    .split_whitespace()
                    .next()?
                    .parse::<usize>()
                    .ok()
            })
            .unwrap_or(0);
        let mut values = vec![false; declared.max(formula.var_count())];
        for lit in solver.model().unwrap_or_default() {
            values[lit.index()] = lit.is_positive();
        }
        let mut text = String::from("SAT\n");
        for (i, v) in values.iter().enumerate() {
            let var = i as i64 + 1;
            text.push_str(&format!("{} ", if *v { var } else { -var }));
        }
        text.push_str("0\n");
        text
    } else {
        "UNSAT\n".to_string()
    };
    std::fs::write(output, out)?;
    Ok(())
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    if args.len() != 3 {
        eprintln!("usage: {} <in.cnf> <out.result>", args[0]);
        return ExitCode::FAILURE;
    }
    match run(&args[1], &args[2]) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e:#}");
            ExitCode::FAILURE
        }
    }
}
