use std::path::Path;
use std::process::{Command, Output};

use remus_core::generate::to_dimacs;
use remus_core::reference::random_unsat_cnf;

const EXAMPLE_CNF: &str = "p cnf 2 4\n1 0\n-1 0\n2 0\n-1 -2 0\n";

fn remus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_remus"))
        .args(args)
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn summary_field<'a>(summary: &'a str, key: &str) -> &'a str {
    summary
        .split_whitespace()
        .find_map(|kv| kv.strip_prefix(key).and_then(|v| v.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key} in {summary:?}"))
}

#[test]
fn example_file_both_algorithms() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "ex.cnf", EXAMPLE_CNF);
    for algorithm in ["remus", "marco"] {
        let out = remus(&["run", &input, "--algorithm", algorithm]);
        assert_eq!(out.status.code(), Some(0));
        let stdout = String::from_utf8(out.stdout).unwrap();
        let lines: Vec<&str> = stdout.lines().collect();
        assert_eq!(lines.len(), 3, "{stdout}");
        let mut bodies: Vec<&str> = lines[..2]
            .iter()
            .map(|l| l.split_once(": ").unwrap().1)
            .collect();
        bodies.sort();
        assert_eq!(bodies, vec!["1 2", "1 3 4"]);
        assert!(lines[0].starts_with("MUS 1: ") && lines[1].starts_with("MUS 2: "));
        assert_eq!(summary_field(lines[2], "found"), "2");
        assert_eq!(summary_field(lines[2], "complete"), "yes");
        assert!(summary_field(lines[2], "elapsed").ends_with('s'));
    }
}

#[test]
fn mus_limit_is_a_clean_stop() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "ex.cnf", EXAMPLE_CNF);
    let stats = dir.path().join("stats.csv");
    let out = remus(&[
        "run",
        &input,
        "--mus-limit",
        "1",
        "--stats",
        stats.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().filter(|l| l.starts_with("MUS ")).count(), 1);
    assert!(stdout.trim_end().ends_with("complete=no"));
    let csv = std::fs::read_to_string(&stats).unwrap();
    assert_eq!(csv.lines().count(), 2);
}

#[test]
fn satisfiable_input_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "sat.cnf", "p cnf 2 2\n1 0\n2 0\n");
    let out = remus(&["run", &input]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("instance is satisfiable"));
}

#[test]
fn malformed_input_exits_2_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "bad.cnf", "p cnf 2 3\n1 0\n-1 0\n");
    let out = remus(&["run", &input]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let input = write(dir.path(), "empty.cnf", "p cnf 0 0\n");
    assert_eq!(remus(&["run", &input]).status.code(), Some(2));
    assert_eq!(
        remus(&["run", &input, "--reduction-factor", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn unwritable_stats_path_fails() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "ex.cnf", EXAMPLE_CNF);
    let out = remus(&["run", &input, "--stats", "/nonexistent/dir/stats.csv"]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn quiet_prints_only_summary() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "ex.cnf", EXAMPLE_CNF);
    let out = remus(&["run", &input, "--quiet", "--no-shrink-feed"]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 1);
    assert!(stdout.starts_with("found=2 "));
}

/// CSV rows reconcile with the summary, counters never decrease, and a
/// completed run on an unsatisfiable instance always has a row.
#[test]
fn stats_csv_reconciles_with_summary() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..15u64 {
        let (vars, clauses) = random_unsat_cnf(seed, 12, 6).unwrap();
        let input = write(
            dir.path(),
            &format!("r{seed}.cnf"),
            &to_dimacs(vars, &clauses, None),
        );
        let stats = dir.path().join(format!("r{seed}.csv"));
        for algorithm in ["remus", "marco"] {
            let out = remus(&[
                "run",
                &input,
                "--algorithm",
                algorithm,
                "--stats",
                stats.to_str().unwrap(),
            ]);
            assert_eq!(out.status.code(), Some(0));
            let stdout = String::from_utf8(out.stdout).unwrap();
            let summary = stdout.lines().last().unwrap();
            let mut reader = csv::Reader::from_path(&stats).unwrap();
            assert_eq!(
                reader.headers().unwrap(),
                vec![
                    "mus_index",
                    "elapsed_s",
                    "oracle_checks",
                    "map_solver_calls",
                    "depth"
                ]
            );
            let rows: Vec<Vec<f64>> = reader
                .records()
                .map(|r| r.unwrap().iter().map(|f| f.parse().unwrap()).collect())
                .collect();
            assert!(!rows.is_empty());
            assert_eq!(rows.len().to_string(), summary_field(summary, "found"));
            for (i, w) in rows.windows(2).enumerate() {
                assert_eq!(w[0][0] as usize, i + 1);
                assert!(
                    w[1][1..4].iter().zip(&w[0][1..4]).all(|(b, a)| b >= a),
                    "counter decreased"
                );
            }
            let total_checks: f64 = summary_field(summary, "oracle_checks").parse().unwrap();
            let total_calls: f64 = summary_field(summary, "map_calls").parse().unwrap();
            let last = rows.last().unwrap();
            assert!(last[2] <= total_checks && last[3] <= total_calls);
        }
    }
}

#[test]
fn gen_writes_parsable_instances() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.cnf");
    let args = [
        "gen",
        "--vars",
        "9",
        "--clauses",
        "40",
        "--seed",
        "4",
        "--out",
        path.to_str().unwrap(),
    ];
    assert_eq!(remus(&args).status.code(), Some(0));
    let first = std::fs::read_to_string(&path).unwrap();
    assert_eq!(remus(&args).status.code(), Some(0));
    assert_eq!(first, std::fs::read_to_string(&path).unwrap());
    let oracle = remus_core::parse_dimacs(first.as_bytes()).unwrap();
    assert_eq!(oracle.clauses().len(), 40);
}
