use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ciu::matrix::{build_matrix, materialize, GenericMatrix};
use ciu::Limits;

fn ciu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ciu"))
        .args(args)
        .env_remove("CIU_MAX_EVALS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join(name)
}

fn write_matrix(dir: &Path, name: &str, m: &GenericMatrix) -> String {
    let path = dir.join(name);
    std::fs::write(&path, m.to_json()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn gen_table_matches_golden() {
    let o = ciu(&["gen", "2", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0));
    let golden = std::fs::read_to_string(fixture("golden/m2_table.txt")).unwrap();
    assert_eq!(stdout(&o), golden);
}

#[test]
fn gen_json_is_byte_stable() {
    let a = ciu(&["gen", "0", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(
        stdout(&a),
        "{\"n\":0,\"values\":[[0],[1]],\"designated\":[1],\"neg\":[1,0],\"imp\":[[1,1],[0,1]]}\n"
    );
    let b = ciu(&["gen", "3"]);
    let c = ciu(&["gen", "3"]);
    assert_eq!(b.stdout, c.stdout);
    assert!(!stdout(&b).lines().any(|l| l.ends_with(' ')));
}

#[test]
fn gen_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m1.json");
    let o = ciu(&["gen", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let m = GenericMatrix::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(m.size(), 3);
}

#[test]
fn gen_over_limit() {
    let o = ciu(&["gen", "40"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("fib(43) = 433494437"), "{err}");
}

#[test]
fn entails_exit_codes() {
    let o = ciu(&["entails", "1", "p, ~p |- q"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("p = (1,1)\nq = (0,1)\n"), "{text}");

    assert_eq!(ciu(&["entails", "0", "p, ~p |- q"]).status.code(), Some(0));

    let o = ciu(&["entails", "2", "|- p -> p", "--oracle", "both"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("oracles agree"));

    let o = ciu(&["entails", "2", "p |- ~~p", "--oracle", "bival"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("p = (1,1,0)"));

    assert_eq!(ciu(&["entails", "1", "p |- q |- r"]).status.code(), Some(2));
    assert_eq!(ciu(&["entails", "1", "p -> "]).status.code(), Some(2));
}

#[test]
fn entails_level_zero_prints_bare_bits() {
    let o = ciu(&["entails", "0", "p |- q"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("p = 1\nq = 0\n"), "{}", stdout(&o));
}

#[test]
fn max_evals_env_and_flag() {
    let o = Command::new(env!("CARGO_BIN_EXE_ciu"))
        .args(["entails", "3", "p, q |- p"])
        .env("CIU_MAX_EVALS", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = ciu(&["--max-evals", "10", "entails", "3", "p, q |- p"]);
    assert_eq!(o.status.code(), Some(3));
    let o = ciu(&["--max-evals", "64", "entails", "3", "p, q |- p"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn jobs_do_not_change_output() {
    let serial = ciu(&["entails", "3", "p, ~q, q -> ~p |- ~~(p -> q)"]);
    let parallel = ciu(&[
        "--jobs",
        "4",
        "entails",
        "3",
        "p, ~q, q -> ~p |- ~~(p -> q)",
    ]);
    assert_eq!(serial.stdout, parallel.stdout);
    assert_eq!(serial.status.code(), parallel.status.code());
}

#[test]
fn taut_command() {
    assert_eq!(ciu(&["taut", "5", "p -> p"]).status.code(), Some(0));
    assert_eq!(ciu(&["taut", "1", "p -> ~~p"]).status.code(), Some(1));
    assert_eq!(ciu(&["taut", "0", "p -> ~~p"]).status.code(), Some(0));
}

#[test]
fn report_command() {
    let o = ciu(&["report", "3", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0));
    let sizes: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().nth(1).unwrap().to_string())
        .collect();
    assert_eq!(sizes, ["2", "3", "5", "8"]);

    let o = ciu(&["report", "0", "--format", "table"]);
    assert_eq!(stdout(&o).lines().count(), 2);

    let o = ciu(&["report", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows[10]["support"], 233);
    assert_eq!(rows[10]["explosion"], false);
}

#[test]
fn iso_command() {
    let dir = tempfile::tempdir().unwrap();
    let l = Limits::default();
    let m0 = materialize(&build_matrix(0, &l).unwrap(), &l).unwrap();
    let m1 = materialize(&build_matrix(1, &l).unwrap(), &l).unwrap();
    let m2 = materialize(&build_matrix(2, &l).unwrap(), &l).unwrap();
    let permuted = m1.relabel(&[2, 0, 1]).unwrap();

    let a = write_matrix(dir.path(), "m1.json", &m1);
    let b = write_matrix(dir.path(), "m1p.json", &permuted);
    let o = ciu(&["iso", &a, &b]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "isomorphic\n(0,1) -> (0,1)\n(1,0) -> (1,0)\n(1,1) -> (1,1)\n"
    );

    let z = write_matrix(dir.path(), "m0.json", &m0);
    let o = ciu(&["iso", &z, &a]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "not isomorphic\n");

    let d = write_matrix(dir.path(), "m2.json", &m2);
    let fixture = fixture("fixtures/m2_tables.json");
    let o = ciu(&["iso", &d, fixture.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("isomorphic (identity)\n"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"n\": 1}").unwrap();
    assert_eq!(
        ciu(&["iso", &a, bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        ciu(&["iso", &a, "/nonexistent.json"]).status.code(),
        Some(2)
    );

    let m4 = materialize(&build_matrix(4, &l).unwrap(), &l).unwrap();
    let big = write_matrix(dir.path(), "m4.json", &m4);
    assert_eq!(ciu(&["iso", &big, &big]).status.code(), Some(3));
}

#[test]
fn fib_commands() {
    let o = ciu(&["fib", "7"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "13\n".to_string()));
    let o = ciu(&["fib-word", "5"]);
    assert_eq!(
        (o.status.code(), stdout(&o)),
        (Some(0), "10110\n".to_string())
    );
    assert_eq!(ciu(&["fib", "0"]).status.code(), Some(2));
    assert_eq!(ciu(&["fib-word", "0"]).status.code(), Some(2));
}

#[test]
fn equiv_check_command() {
    let o = ciu(&["equiv-check", "2", "--samples", "50", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.contains("seed = 3") && text.contains("0 disagreements"),
        "{text}"
    );
    let again = ciu(&["equiv-check", "2", "--samples", "50", "--seed", "3"]);
    assert_eq!(o.stdout, again.stdout);
}
