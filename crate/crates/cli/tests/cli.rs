//! End-to-end runs of the binary against committed fixture files, pinned to
//! exact stdout and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latpoly")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn solve_reports_the_full_solution_set() {
    let out = run(&["solve", "--problem", &fixture("chain4.txt")]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(
        stdout(&out),
        "feasible\n\
         intervals:\n\
         \x20 [] in [0, 1]\n\
         \x20 [1] in [2, 3]\n\
         p0:\n\
         \x20 [] -> 1\n\
         \x20 [1] -> 2\n\
         solutions: 4\n"
    );
}

#[test]
fn solve_reports_monotonicity_witnesses() {
    let out = run(&["solve", "--problem", &fixture("swap_f.txt")]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "infeasible: not monotone: f([]) = 2 !<= f([1]) = 1\n");
}

#[test]
fn solve_reports_star_witnesses() {
    let out = run(&["solve", "--problem", &fixture("jump_g.txt")]);
    assert_eq!(code(&out), 1);
    assert_eq!(
        stdout(&out),
        "infeasible: condition (*) fails at I = [1], k = 1 (upper): 3 !<= 2\n"
    );
}

#[test]
fn solve_keeps_exit_zero_when_only_the_count_is_refused() {
    let out = run(&["solve", "--cap", "2", "--problem", &fixture("chain4.txt")]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out)
        .contains("solutions: not counted (4 interval combinations exceed the cap 2)"));
}

#[test]
fn enumerate_lists_solutions_in_canonical_order() {
    let out = run(&["enumerate", "--problem", &fixture("chain4.txt")]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "4 solutions\n\
         [] -> 0; [1] -> 2\n\
         [] -> 0; [1] -> 3\n\
         [] -> 1; [1] -> 2\n\
         [] -> 1; [1] -> 3\n"
    );
}

#[test]
fn oracle_and_enumerate_print_identical_function_sets() {
    let enumerate = run(&["enumerate", "--problem", &fixture("chain4.txt")]);
    let oracle = run(&["oracle", "--problem", &fixture("chain4.txt")]);
    assert_eq!(code(&enumerate), 0);
    assert_eq!(code(&oracle), 0);
    let etables: Vec<String> = stdout(&enumerate).lines().skip(1).map(str::to_string).collect();
    let otables: Vec<String> = stdout(&oracle).lines().skip(1).map(str::to_string).collect();
    assert_eq!(stdout(&oracle).lines().next(), Some("4 interpolants"));
    assert_eq!(etables, otables);
}

#[test]
fn oracle_finds_nothing_through_incomparable_swapped_values() {
    let out = run(&["oracle", "--problem", &fixture("diamond_incomparable.txt")]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "0 interpolants\n");
}

#[test]
fn the_diamond_pair_splits_solve_and_the_separation_criterion() {
    // f: the separation criterion passes (exit 0), yet solve is infeasible.
    let rg_f = run(&["rg", "--problem", &fixture("diamond_f.txt")]);
    assert_eq!(code(&rg_f), 0);
    assert_eq!(stdout(&rg_f), "RG condition: holds\n");
    let solve_f = run(&["solve", "--problem", &fixture("diamond_f.txt")]);
    assert_eq!(code(&solve_f), 1);
    assert_eq!(stdout(&solve_f), "infeasible: not monotone: f([]) = b !<= f([1]) = a\n");

    // g: the criterion is violated (exit 1), yet x v a interpolates.
    let rg_g = run(&["rg", "--problem", &fixture("diamond_g.txt")]);
    assert_eq!(code(&rg_g), 1);
    assert_eq!(
        stdout(&rg_g),
        "RG condition: violated at x = (0), y = (b): f(x) = a < f(y) = 1 \
         but no coordinate i has x_i <= f(x) and f(y) <= y_i\n"
    );
    let solve_g = run(&["solve", "--problem", &fixture("diamond_g.txt")]);
    assert_eq!(code(&solve_g), 0);
    assert!(stdout(&solve_g).contains("solutions: 1\n"));
    let enumerate_g = run(&["enumerate", "--problem", &fixture("diamond_g.txt")]);
    assert_eq!(stdout(&enumerate_g), "1 solutions\n[] -> a; [1] -> 1\n");
}

#[test]
fn goodstein_interpolates_full_tables_uniquely() {
    let out = run(&["goodstein", "--problem", &fixture("goodstein_diamond.txt")]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(
        stdout(&out),
        "unique interpolant:\n\
         [] -> 0\n\
         [1] -> a\n\
         [2] -> b\n\
         [1,2] -> 1\n"
    );

    let bad = run(&["goodstein", "--problem", &fixture("goodstein_bad.txt")]);
    assert_eq!(code(&bad), 1);
    assert_eq!(stdout(&bad), "not monotone: f([]) = a !<= f([1]) = 0\n");
}

#[test]
fn eval_echoes_the_value_table_for_the_canonical_solution() {
    let out = run(&[
        "eval",
        "--problem",
        &fixture("chain4.txt"),
        "--coeffs",
        &fixture("p0_chain4.txt"),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "(1) -> 1\n(2) -> 2\n");
}

#[test]
fn from_utility_emits_a_solvable_problem_file() {
    let out = run(&["from-utility", "--problem", &fixture("utility.txt")]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(
        stdout(&out),
        "LATTICE\n\
         boolean 2\n\
         labels 0 a b 1\n\
         \n\
         BOUNDS\n\
         0 a\n\
         0 b\n\
         \n\
         VALUES\n\
         [] 0\n\
         [1] a\n\
         [2] b\n\
         [1,2] 1\n"
    );

    // The emitted text pipes straight into solve.
    let tmp = std::env::temp_dir().join(format!("latpoly-utility-{}.txt", std::process::id()));
    std::fs::write(&tmp, stdout(&out)).unwrap();
    let solve = run(&["solve", "--problem", tmp.to_str().unwrap()]);
    std::fs::remove_file(&tmp).ok();
    assert_eq!(code(&solve), 0);
    assert!(stdout(&solve).starts_with("feasible\n"));

    let degenerate = run(&["from-utility", "--problem", &fixture("utility_degenerate.txt")]);
    assert_eq!(code(&degenerate), 2);
    assert!(stderr(&degenerate).contains("coordinate 1 is degenerate"));
}

#[test]
fn input_errors_exit_two_with_the_offending_token() {
    let out = run(&["solve", "--problem", &fixture("bad_label.txt")]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).is_empty());
    let err = stderr(&out);
    assert!(err.starts_with("error: "), "{err}");
    assert!(err.contains("line 5"), "{err}");
    assert!(err.contains("unknown element label '5'"), "{err}");

    let missing = run(&["solve", "--problem", "/nonexistent/file.txt"]);
    assert_eq!(code(&missing), 2);
    assert!(stderr(&missing).contains("cannot read"));
}

#[test]
fn cap_blowouts_exit_three() {
    let out = run(&["enumerate", "--cap", "2", "--problem", &fixture("chain4.txt")]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("4 interval combinations exceed the cap 2"));

    let oracle = run(&["oracle", "--cap", "2", "--problem", &fixture("chain4.txt")]);
    assert_eq!(code(&oracle), 3);
    assert!(stderr(&oracle).contains("exceed the cap 2"));
}

#[test]
fn an_external_lattice_file_fills_in_the_missing_section() {
    let out = run(&[
        "solve",
        "--lattice",
        &fixture("lattice_chain4.txt"),
        "--problem",
        &fixture("no_lattice.txt"),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("solutions: 4\n"));

    // Conflicting sources are refused rather than silently resolved.
    let conflict = run(&[
        "solve",
        "--lattice",
        &fixture("lattice_chain4.txt"),
        "--problem",
        &fixture("chain4.txt"),
    ]);
    assert_eq!(code(&conflict), 2);
    assert!(stderr(&conflict).contains("already provided externally"));
}

#[test]
fn machine_format_emits_one_json_record_per_line() {
    let out = run(&["solve", "--format", "machine", "--problem", &fixture("chain4.txt")]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let record: serde_json::Value = serde_json::from_str(text.trim()).expect("valid json");
    assert_eq!(record["command"], "solve");
    assert_eq!(record["feasible"], true);
    assert_eq!(record["solutions"], 4);
    assert_eq!(record["canonical"]["[]"], "1");
    assert_eq!(record["canonical"]["[1]"], "2");
    assert_eq!(record["intervals"][1]["lo"], "2");
    assert_eq!(record["intervals"][1]["hi"], "3");
    assert_eq!(record["refused"], serde_json::Value::Null);

    let enumerate = run(&["enumerate", "--format", "machine", "--problem", &fixture("chain4.txt")]);
    let lines: Vec<serde_json::Value> = stdout(&enumerate)
        .lines()
        .map(|l| serde_json::from_str(l).expect("valid json"))
        .collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0]["command"], "enumerate");
    assert_eq!(lines[0]["count"], 4);
    assert_eq!(lines[1]["coeffs"]["[]"], "0");
    assert_eq!(lines[4]["coeffs"]["[1]"], "3");

    let infeasible = run(&["solve", "--format", "machine", "--problem", &fixture("swap_f.txt")]);
    assert_eq!(code(&infeasible), 1);
    let record: serde_json::Value = serde_json::from_str(stdout(&infeasible).trim()).unwrap();
    assert_eq!(record["feasible"], false);
    assert_eq!(record["reason"]["kind"], "not-monotone");
    assert_eq!(record["reason"]["f_lo"], "2");
    assert_eq!(record["reason"]["f_hi"], "1");
}

#[cfg(unix)]
#[test]
fn a_closed_pipe_ends_enumeration_quietly() {
    use std::io::Read;
    use std::os::unix::process::ExitStatusExt;
    use std::process::Stdio;

    let mut child = Command::new(env!("CARGO_BIN_EXE_latpoly"))
        .args(["enumerate", "--problem", &fixture("chain21_wide.txt")])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    let mut head = [0u8; 64];
    let mut out = child.stdout.take().expect("stdout piped");
    out.read_exact(&mut head).expect("first bytes arrive");
    drop(out); // the reader hangs up mid-stream
    let result = child.wait_with_output().expect("child finishes");
    // The solution listing cannot fit the pipe buffer, so a write after the
    // hangup is guaranteed; it must end the process silently, not panic.
    assert_eq!(result.status.signal(), Some(libc::SIGPIPE));
    assert!(
        result.stderr.is_empty(),
        "stderr: {}",
        String::from_utf8_lossy(&result.stderr)
    );
}
