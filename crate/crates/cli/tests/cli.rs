use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn nbamin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nbamin"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn member_prints_booleans() {
    let eventually_zero = data("eventually-zero.nba");
    let o = nbamin(&["member", path(&eventually_zero), ":0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "true\n");
    let o = nbamin(&["member", path(&eventually_zero), ":0,1"]);
    assert_eq!(stdout(&o), "false\n");
    let o = nbamin(&["member", path(&eventually_zero), ":3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = nbamin(&["member", path(&eventually_zero), "0:"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn minimize_writes_all_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let (out, cert, trace) = (
        dir.path().join("m.nba"),
        dir.path().join("c"),
        dir.path().join("t"),
    );
    let eventually_zero = data("eventually-zero.nba");
    let o = nbamin(&[
        "minimize",
        path(&eventually_zero),
        "--out",
        path(&out),
        "--certificate",
        path(&cert),
        "--trace",
        path(&trace),
    ]);
    assert!(o.status.success(), "{o:?}");
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("\nstates 2\n"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("size 2 iterations"));
    assert!(std::fs::read_to_string(&cert)
        .unwrap()
        .starts_with("CERT v1\nn 2\n"));
    for line in std::fs::read_to_string(&trace).unwrap().lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["event"].is_string());
    }
    let o = nbamin(&["verify-certificate", path(&eventually_zero), path(&cert)]);
    assert_eq!(stdout(&o), "true\n");

    // the minimized automaton accepts the same words
    for (word, want) in [(":0", "true\n"), ("1,0:1", "false\n"), ("0,1:0", "true\n")] {
        assert_eq!(stdout(&nbamin(&["member", path(&out), word])), want);
    }
}

#[test]
fn universal_collapses_to_one_state() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("u.nba");
    std::fs::write(
        &input,
        "NBA v1\nalphabet 2\nstates 2\nstart 0\nfinal 0 1\ntrans 0 0 1\ntrans 0 1 1\ntrans 1 0 0\ntrans 1 1 0\n",
    )
    .unwrap();
    let o = nbamin(&["minimize", path(&input)]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\nstates 1\n"));
}

#[test]
fn timeout_exit_code_and_lower_bound() {
    let o = nbamin(&[
        "minimize",
        path(&data("michel1-complement.nba")),
        "--max-n",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("at least 3 states"));
    let o = nbamin(&[
        "minimize",
        path(&data("eventually-zero.nba")),
        "--timeout-secs",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn parse_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.nba");
    std::fs::write(
        &bad,
        "NBA v1\nalphabet 2\nstates 1\nstart 0\nfinal\ntrans 0 5 0\n",
    )
    .unwrap();
    for cmd in ["minimize", "complement", "reduce"] {
        let o = nbamin(&[cmd, path(&bad)]);
        assert_eq!(o.status.code(), Some(1));
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    }
    let o = nbamin(&["reduce", path(&dir.path().join("missing.nba"))]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn random_is_deterministic() {
    let args = ["random", "--states", "10", "--alphabet", "2", "--seed", "7"];
    let a = nbamin(&args);
    let b = nbamin(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("\nstates 10\n"));
    let c = nbamin(&["random", "--states", "10", "--alphabet", "2", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
    let o = nbamin(&[
        "random",
        "--states",
        "3",
        "--alphabet",
        "2",
        "--p-final",
        "1.5",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn complement_and_reduce_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.nba");
    let o = nbamin(&[
        "complement",
        path(&data("eventually-zero.nba")),
        "--out",
        path(&c),
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&nbamin(&["member", path(&c), ":0,1"])), "true\n");
    assert_eq!(stdout(&nbamin(&["member", path(&c), "1:0"])), "false\n");
    let r = nbamin(&["reduce", path(&c)]);
    let r2 = dir.path().join("r.nba");
    std::fs::write(&r2, &r.stdout).unwrap();
    assert_eq!(nbamin(&["reduce", path(&r2)]).stdout, r.stdout);
}

#[test]
fn census_with_resume() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ck");
    let json = dir.path().join("r.json");
    let args = [
        "census",
        "--states",
        "1",
        "--alphabet",
        "2",
        "--jobs",
        "1",
        "--verify",
        "--resume",
        path(&ck),
        "--out",
        path(&json),
    ];
    let first = nbamin(&args);
    assert!(first.status.success(), "{first:?}");
    let text = stdout(&first);
    assert!(
        text.starts_with("automata 4 (filter at-least-one-final)\n"),
        "{text}"
    );
    let second = nbamin(&args);
    assert!(second.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["total"], 4);
    assert_eq!(report["completed"], 4);
    let sum: u64 = report["complement_sizes"]
        .as_object()
        .unwrap()
        .values()
        .map(|v| v.as_u64().unwrap())
        .sum();
    assert_eq!(sum, 4);
}

#[test]
fn external_solver_gives_the_same_result() {
    let solver = format!("external:{}", env!("CARGO_BIN_EXE_nbamin-refsat"));
    let internal = nbamin(&["minimize", path(&data("eventually-zero.nba"))]);
    let external = nbamin(&[
        "minimize",
        path(&data("eventually-zero.nba")),
        "--solver",
        &solver,
    ]);
    assert!(external.status.success(), "{external:?}");
    assert!(stdout(&internal).contains("\nstates 2\n"));
    assert!(stdout(&external).contains("\nstates 2\n"));
    let o = nbamin(&[
        "minimize",
        path(&data("eventually-zero.nba")),
        "--solver",
        "minisat",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = nbamin(&[
        "minimize",
        path(&data("eventually-zero.nba")),
        "--solver",
        "external:/nonexistent/solver",
    ]);
    assert_eq!(o.status.code(), Some(1));
}
