use std::process::{Command, Output};

use qformlab::quadforms::{compare_tables, load_tables, parse_tables};
use qformlab::Rational;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qformlab")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn rep_count_oracle() {
    assert_eq!(stdout(&["rep-count", "--form", "1,1,1,1,1,1", "--n", "1", "--oracle"]), "12\n");
}

#[test]
fn rep_count_both_sides_agree() {
    let text = stdout(&["rep-count", "--form", "1,1,1,1,3,3", "--n", "10", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["oracle"], 496);
    assert_eq!(v["formula"], "496");
    assert_eq!(stdout(&["rep-count", "--form", "1,1,1,1,3,3", "--n", "10", "--formula"]), "496\n");
    // A form without a derived formula still has an oracle count.
    assert_eq!(stdout(&["rep-count", "--form", "1,1,5", "--n", "5"]), "10\n");
    assert_eq!(code(&["rep-count", "--form", "1,1,5", "--n", "5", "--formula"]), 2);
}

#[test]
fn derive_table_matches_fixture() {
    let text = stdout(&["derive-table", "--char", "-4"]);
    let rows = parse_tables(&text).unwrap();
    assert_eq!(rows.len(), 24);
    let fixture: Vec<_> = load_tables().unwrap().into_iter().filter(|r| r.character == rows[0].character).collect();
    assert!(compare_tables(&rows, &fixture).unwrap().is_empty());
}

#[test]
fn json_rationals_round_trip() {
    let text = stdout(&["derive-table", "--char", "-24", "--json"]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&text).unwrap();
    assert_eq!(rows.len(), 20);
    let mut seen = 0;
    for row in &rows {
        for key in ["eisenstein_coeffs", "cusp_coeffs"] {
            for cell in row[key].as_array().unwrap() {
                let s = cell.as_str().unwrap();
                let q: Rational = s.parse().unwrap();
                assert_eq!(q.to_string(), s);
                seen += 1;
            }
        }
    }
    assert_eq!(seen, 200);
}

#[test]
fn eta_expand_starts_at_q() {
    let text = stdout(&["eta-expand", "eta24[0,3,0,-4,-5,2,16,-6]", "--precision", "5"]);
    assert_eq!(text.lines().next(), Some("1 1"));
    assert!(text.lines().all(|l| l.split(' ').next().unwrap().parse::<i64>().unwrap() <= 5));
    let grade = stdout(&["eta-expand", "eta1[1]", "--precision", "2"]);
    assert_eq!(grade, "1 1\n25 -1\n49 -1\n");
}

#[test]
fn output_is_deterministic() {
    let args = ["census", "--char", "-24"];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    assert!(first.ends_with("members 2424\neisenstein-expressible 0\n"));
}

#[test]
fn census_emits_members_to_file() {
    let path = std::env::temp_dir().join(format!("qformlab-census-{}.txt", std::process::id()));
    let summary = stdout(&["census", "--char", "-8", "--emit", path.to_str().unwrap()]);
    assert_eq!(summary, "members 2424\neisenstein-expressible 4\n");
    let members = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(members.lines().count(), 2424);
    assert!(members.lines().all(|l| l.starts_with("eta24[")));
}

#[test]
fn basis_commands() {
    let dump = stdout(&["basis", "dump", "--char", "-3"]);
    assert_eq!(dump.lines().count(), 12);
    assert_eq!(dump.lines().next(), Some("E3[-3,1,1]"));
    assert!(stdout(&["basis", "verify", "--char", "-8"]).ends_with("PASS\n"));
}

#[test]
fn verification_commands_pass() {
    assert!(stdout(&["verify-tables"]).contains("84 rows compared, 0 discrepancies"));
    let remarks = stdout(&["verify-remarks"]);
    assert_eq!(remarks.lines().filter(|l| l.starts_with("PASS")).count(), 9);
    assert!(stdout(&["verify-newforms", "--index", "1"]).contains("PASS"));
}

#[test]
fn ligozat_report_and_failure() {
    let text = stdout(&["ligozat-check", "eta3[-3,9]"]);
    assert!(text.contains("weight 3\n") && text.contains("character -3\n"));
    assert_eq!(code(&["ligozat-check", "eta2[1,1]"]), 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&["census", "--char", "5"]), 2);
    assert_eq!(code(&["census", "--char", "8"]), 2);
    assert_eq!(code(&["verify-remarks", "--precision", "12"]), 2);
    assert_eq!(code(&["eta-expand", "eta24[1,2]"]), 2);
    assert_eq!(code(&["verify-newforms", "--index", "6"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
}
