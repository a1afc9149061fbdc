use std::process::{Command, Output};

fn quartic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quartic")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn phi_cyclic_49() {
    let o = quartic(&["phi", "--cubic", "x^3-x^2-2x+1", "--bound", "13"]);
    assert!(o.status.success());
    let s = stdout(&o);
    for line in [r#"{"n":1,"coeff":"1/3"}"#, r#"{"n":8,"coeff":"1"}"#, r#"{"n":13,"coeff":"1"}"#] {
        assert!(s.lines().any(|l| l == line), "missing {line}");
    }
}

#[test]
fn phi_csv_148_and_charsum() {
    let o = quartic(&["--format", "csv", "phi", "--cubic", "x^3-x^2-3x+1", "--bound", "8"]);
    let s = stdout(&o);
    assert!(s.starts_with("n,coeff\n"));
    for line in ["1,1", "2,1", "8,2"] {
        assert!(s.lines().any(|l| l == line));
    }
    let c = quartic(&["--format", "csv", "phi", "--cubic", "x^3-x^2-3x+1", "--bound", "8", "--charsum"]);
    assert_eq!(stdout(&c), s);
}

#[test]
fn phi_signed_469_two_part() {
    let o = quartic(&["phi", "--signed", "--cubic", "x^3-x^2-5x+4", "--bound", "16"]);
    let s = stdout(&o);
    for (n, c) in [(1, "1"), (2, "0"), (4, "0"), (8, "0"), (16, "1")] {
        assert!(s.contains(&format!(r#"{{"n":{n},"coeff":"{c}"}}"#)), "n = {n}");
    }
}

#[test]
fn enumerate_examples() {
    let o = quartic(&["enumerate", "--degree", "3", "--disc", "49"]);
    assert_eq!(stdout(&o).lines().count(), 1);
    let o = quartic(&["enumerate", "--degree", "4", "--disc", "14656", "--totally-real"]);
    assert_eq!(stdout(&o).lines().count(), 1);
    let o = quartic(&["enumerate", "--degree", "4", "--disc", "26569", "--resolvent", "x^3-x^2-54x+169"]);
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 1);
    assert!(s.contains(r#""galois":"A4""#) && s.contains(r#""f":"1""#));
}

#[test]
fn resolvent_command() {
    let o = quartic(&["resolvent", "--quartic", "x^4-x-1"]);
    assert!(stdout(&o).contains(r#""resolvent_cubic":["-1","4","0","1"]"#));
    let o = quartic(&["resolvent", "--alpha", "x^3-35x^2+179x-81"]);
    assert!(stdout(&o).contains(r#""quartic":["509","-72","-70","0","1"]"#));
    let o = quartic(&["resolvent", "--alpha", "x^3-1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(quartic(&["phi", "--cubic", "x^3-x", "--bound", "5"]).status.code(), Some(2));
    assert_eq!(quartic(&["phi", "--cubic", "x^3+", "--bound", "5"]).status.code(), Some(2));
    let o = quartic(&["--max-disc", "100", "enumerate", "--degree", "4", "--disc-bound", "5000"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_quartic"))
        .args(["enumerate", "--degree", "4", "--disc-bound", "5000"])
        .env("QUARTIC_MAX_DISC", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_tables_and_corrupted_fixture() {
    let o = quartic(&["verify", "--suite", "tables"]);
    assert_eq!(o.status.code(), Some(0));
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/corrupted_table.json");
    let o = quartic(&["verify", "--suite", "tables", "--table", fixture]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["status"], "fail");
    assert!(v[0]["witness"].as_str().unwrap().contains("in L"));
}

#[test]
fn output_is_deterministic() {
    let a = quartic(&["--jobs", "1", "enumerate", "--degree", "4", "--disc-bound", "1200"]);
    let b = quartic(&["--jobs", "0", "enumerate", "--degree", "4", "--disc-bound", "1200"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}
