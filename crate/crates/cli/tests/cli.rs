mod common;

use std::io::Write;
use std::process::{Command, Output, Stdio};

use symbreak_core::instances;
use symbreak_core::oracle::{answer_sets, check_soundness};
use symbreak_core::{parse_program, program_to_string};

fn symbreak(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_symbreak"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn filter_mode_keeps_answer_sets_up_to_symmetry() {
    let p = instances::p1();
    let out = symbreak(&[], &program_to_string(&p));
    assert!(out.status.success(), "{}", stderr(&out));
    let broken = parse_program(&stdout(&out)).unwrap();
    assert_eq!(answer_sets(&broken).unwrap().len(), 3);
    assert_eq!(&broken.rules[..p.rules.len()], &p.rules[..]);
}

#[test]
fn stats_go_to_stderr() {
    let out = symbreak(&["--stats"], &program_to_string(&instances::p1()));
    assert!(out.status.success());
    let err = stderr(&out);
    let keys: Vec<&str> = err
        .trim()
        .split(' ')
        .map(|kv| kv.split('=').next().unwrap())
        .collect();
    assert_eq!(
        keys,
        ["generators", "rules", "aux", "seconds", "rows", "binpairs"]
    );
    assert!(parse_program(&stdout(&out)).is_ok());
}

#[test]
fn files_in_and_out() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.sm");
    let output = dir.path().join("out.sm");
    std::fs::write(&input, program_to_string(&instances::pigeonhole(3, 2))).unwrap();
    let out = symbreak(
        &[input.to_str().unwrap(), "-o", output.to_str().unwrap()],
        "",
    );
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
    let broken = parse_program(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert!(answer_sets(&broken).unwrap().is_empty());
}

#[test]
fn detect_lists_cycles() {
    let out = symbreak(
        &["--mode", "detect"],
        &program_to_string(&instances::pigeonhole(3, 2)),
    );
    assert!(out.status.success());
    let lines: Vec<String> = stdout(&out).lines().map(str::to_owned).collect();
    assert!(!lines.is_empty());
    assert!(lines.iter().all(|l| l.starts_with('(') && l.ends_with(')')));
}

#[test]
fn verify_reports_on_every_corpus_file() {
    for (name, text) in common::corpus() {
        let out = symbreak(&["--mode", "verify"], &text);
        assert!(out.status.success(), "{name}: {}", stderr(&out));
        let report = stdout(&out);
        assert!(report.contains("every orbit represented: yes"), "{name}");
        assert!(report.contains("no new answer sets: yes"), "{name}");
    }
}

#[test]
fn library_and_binary_agree() {
    for (name, p) in common::corpus_programs() {
        let lib = symbreak_core::run(&p, &Default::default()).unwrap();
        let out = symbreak(&[], &program_to_string(&p));
        assert_eq!(stdout(&out), program_to_string(&lib.program), "{name}");
        let v = check_soundness(&p, &lib.symmetries, &lib.program).unwrap();
        assert!(v.holds(), "{name}");
    }
}

#[test]
fn malformed_input_exits_1() {
    let out = symbreak(&[], "1 1 2 0\n");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("error"));
}

#[test]
fn invalid_program_exits_1() {
    let out = symbreak(&[], "1 1 0 0\n0\n1 a\n2 a\n0\nB+\n0\nB-\n0\n1\n");
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
}

#[test]
fn oracle_budget_exits_2() {
    let text = program_to_string(&instances::free_choice_grid(4, 2));
    let out = symbreak(&["--mode", "verify", "--oracle-budget", "4"], &text);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn missing_file_exits_3() {
    let out = symbreak(&["/nonexistent/input.sm"], "");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn aux_limit_zero_adds_no_atoms_beyond_falsum() {
    let p = instances::pigeonhole(3, 3);
    let out = symbreak(&["--limit", "0"], &program_to_string(&p));
    let broken = parse_program(&stdout(&out)).unwrap();
    assert!(broken.max_atom <= p.max_atom + 1);
}
