//! End-to-end runs of the binary: exit codes, output shapes, round trips.

use std::path::PathBuf;
use std::process::{Command, Output};

fn binary() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_hopfcat"))
}

fn run(args: &[&str]) -> Output {
    Command::new(binary()).args(args).output().expect("binary runs")
}

fn stdout_lines(out: &Output) -> Vec<String> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| l.to_owned()).collect()
}

#[test]
fn torsor_rank_one_prints_sixteen_lines_with_even_split() {
    let out = run(&["torsor", "--n", "1", "--pretty"]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 16);
    let integral = lines.iter().filter(|l| l.starts_with("(1,1,2,2) integral")).count();
    let non = lines.iter().filter(|l| l.starts_with("(1,1,2*sqrt2) non-integral")).count();
    assert_eq!((integral, non), (8, 8), "{lines:#?}");
}

#[test]
fn torsor_rank_zero_json_lines_parse_with_schema_tag() {
    let out = run(&["torsor", "--n", "0"]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 16);
    for line in &lines {
        let doc: serde_json::Value = serde_json::from_str(line).expect("line is JSON");
        assert_eq!(doc["schema"], "hopfcat-inv-1");
        assert!(doc["shape"].as_str().unwrap().starts_with('('));
    }
}

#[test]
fn bgroup_lists_all_sixteen_charges() {
    let out = run(&["bgroup"]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 16);
    let mut charges = Vec::new();
    for line in &lines {
        let doc: serde_json::Value = serde_json::from_str(line).expect("line is JSON");
        assert_eq!(doc["schema"], "hopfcat-mg-1");
        charges.push(doc["charge"].as_u64().unwrap());
    }
    assert_eq!(charges, (0..16).collect::<Vec<u64>>());
}

#[test]
fn nichols_round_trips_through_check_hopf() {
    let dir = std::env::temp_dir().join("hopfcat-cli-roundtrip");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("h2.json");
    let export = run(&["nichols", "--n", "2", "--export", file.to_str().unwrap()]);
    assert!(export.status.success());
    let check = run(&["check-hopf", "--input", file.to_str().unwrap()]);
    assert!(check.status.success(), "{}", String::from_utf8_lossy(&check.stdout));
    let lines = stdout_lines(&check);
    assert!(lines.iter().all(|l| {
        let doc: serde_json::Value = serde_json::from_str(l).expect("line is JSON");
        doc["status"] == "pass"
    }));
}

#[test]
fn corrupted_document_fails_verification_with_exit_one() {
    let dir = std::env::temp_dir().join("hopfcat-cli-corrupt");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("h1.json");
    let export = run(&["nichols", "--n", "1", "--export", file.to_str().unwrap()]);
    assert!(export.status.success());

    // flip the first nonzero antipode coordinate: axioms must fail, exit 1
    let text = std::fs::read_to_string(&file).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let mut flipped_one = false;
    'rows: for row in doc["antipode"].as_array_mut().unwrap() {
        for cell in row.as_array_mut().unwrap() {
            for coord in cell.as_array_mut().unwrap() {
                let old = coord.as_str().unwrap();
                if old != "0" {
                    *coord = serde_json::Value::String(format!("-{}", old));
                    flipped_one = true;
                    break 'rows;
                }
            }
        }
    }
    assert!(flipped_one, "antipode has a nonzero entry");
    std::fs::write(&file, serde_json::to_string(&doc).unwrap()).unwrap();

    let check = run(&["check-hopf", "--input", file.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(1), "{}", String::from_utf8_lossy(&check.stdout));
}

#[test]
fn usage_and_input_errors_exit_two() {
    let missing = run(&["check-hopf", "--input", "/nonexistent/path.json"]);
    assert_eq!(missing.status.code(), Some(2));
    let bad_suite = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(bad_suite.status.code(), Some(2));
    let bad_rank = run(&["torsor", "--n", "9"]);
    assert_eq!(bad_rank.status.code(), Some(2));
    let unknown_flag = run(&["torsor", "--frequency", "3"]);
    assert_eq!(unknown_flag.status.code(), Some(2));
}

#[test]
fn verify_writes_a_report_documenting_every_check() {
    let dir = std::env::temp_dir().join("hopfcat-cli-report");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("report.json");
    let out = run(&["verify", "--suite", "bgroup", "--report", file.to_str().unwrap()]);
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(doc["schema"], "hopfcat-report-1");
    assert_eq!(doc["overall"], true);
    let entries = doc["entries"].as_array().unwrap();
    assert!(!entries.is_empty());
    for e in entries {
        assert!(e["check_id"].as_str().unwrap().starts_with("bgroup."));
        assert!(!e["claim"].as_str().unwrap().is_empty());
        assert_eq!(e["status"], "pass");
    }
}

#[test]
fn appendix_suite_reports_eight_sextuplets() {
    let out = run(&["appendix"]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    let sextuplets = lines
        .iter()
        .filter(|l| l.contains("appendix.sextuplet.") && !l.contains("beta-mutation"))
        .count();
    assert_eq!(sextuplets, 8);
    // invariant table rows follow the report lines
    let invariants = lines.iter().filter(|l| l.contains("\"beta\":")).count();
    assert_eq!(invariants, 8);
}

#[test]
fn inventory_of_the_rank_zero_double_is_the_toric_shape() {
    let out = run(&["inventory", "--n", "0"]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 1);
    let doc: serde_json::Value = serde_json::from_str(&lines[0]).unwrap();
    assert_eq!(doc["shape"], "(1,1,1,1)");
    assert_eq!(doc["integral"], true);
    assert_eq!(doc["simples"].as_array().unwrap().len(), 4);
}
