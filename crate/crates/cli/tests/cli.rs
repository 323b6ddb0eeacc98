use std::process::{Command, Output};

use nullity::report::OracleRecord;
use serde_json::Value;

fn nullity(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nullity"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn oracle_f7_s3_json_record() {
    let out = nullity(&["oracle", "--coeff", "F:7", "--group", "S3", "--side", "left", "--format", "json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rec = OracleRecord::from_json(&stdout(&out)).unwrap();
    assert_eq!(rec.counts, vec![72576, 24192, 15840, 4608, 420, 12, 1]);
    assert_eq!(rec.ann_sizes, vec![1, 7, 49, 343, 2401, 16807, 117649]);
    assert_eq!(rec.probability.num, "560911");
    assert_eq!(rec.probability.den, "1977326743");
    assert!(rec.elapsed_ms.is_some());
    assert_eq!(rec.recomputed_probability(), rec.probability().unwrap());
}

#[test]
fn oracle_text_mirrors_gap_record() {
    let out = nullity(&["oracle", "--coeff", "F:7", "--group", "C6", "--omit-timing"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("rec(Size := [ 46656, 46656, 19440, 4320, 540, 36, 1 ],"), "{text}");
    assert!(text.contains("|ann_l| := [ 1, 7, 49, 343, 2401, 16807, 117649 ], group := \"C6\", p := 4826809/13841287201)"));
}

#[test]
fn json_round_trip_for_every_side_and_ring_kind() {
    for (coeff, group) in [("F:3", "S3"), ("F:4", "C3"), ("Z:4", "C2"), ("Z:6", "C2")] {
        for side in ["left", "right", "twosided"] {
            let out = nullity(&["oracle", "--coeff", coeff, "--group", group, "--side", side, "--format", "json"]);
            assert!(out.status.success(), "{coeff} {group}: {}", stderr(&out));
            let rec = OracleRecord::from_json(&stdout(&out)).unwrap();
            assert_eq!(rec.recomputed_probability(), rec.probability().unwrap(), "{coeff} {group} {side}");
        }
    }
}

#[test]
fn worker_count_does_not_change_output() {
    let run = |w: &str| {
        let out = nullity(&["oracle", "--coeff", "F:3", "--group", "S3", "--side", "twosided", "--format", "json", "--omit-timing", "--workers", w]);
        assert!(out.status.success());
        out.stdout
    };
    let one = run("1");
    assert_eq!(one, run("3"));
    assert_eq!(one, run("8"));
}

#[test]
fn formula_f2_c3() {
    let out = nullity(&["formula", "--coeff", "F:2", "--group", "C:3"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("21/64"), "{}", stdout(&out));
}

#[test]
fn formula_variants_of_c5() {
    let both = nullity(&["formula", "--coeff", "F:5", "--group", "C5", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&both)).unwrap();
    let forms = v["formulas"].as_array().unwrap();
    assert_eq!(forms.len(), 2);
    assert_eq!(forms[0]["value"]["num"], "66229");
    assert_eq!(forms[1]["value"]["den"], "625");
    let derived = nullity(&["formula", "--coeff", "F:5", "--group", "C5", "--variant", "derived"]);
    assert!(stdout(&derived).starts_with("1/625"));
    assert_eq!(stdout(&derived).lines().count(), 1);
}

#[test]
fn compare_flags_printed_c5_case1() {
    let out = nullity(&["compare", "--coeff", "F:5", "--group", "C:5", "--format", "json"]);
    assert!(out.status.success(), "known errata must not fail the run");
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let report = &v["report"];
    assert_eq!(report["oracle"]["num"], "1");
    assert_eq!(report["oracle"]["den"], "625");
    let forms = report["formulas"].as_array().unwrap();
    let printed = forms.iter().find(|f| f["variant"] == "printed").unwrap();
    assert_eq!(printed["value"]["num"], "66229");
    assert_eq!(printed["value"]["den"], "1953125");
    assert_eq!(printed["matches_oracle"], false);
    assert_eq!(printed["erratum"], "c5-case1");
    let derived = forms.iter().find(|f| f["variant"] == "derived").unwrap();
    assert_eq!(derived["matches_oracle"], true);
    assert_eq!(v["unexpected_mismatches"], 0);
}

#[test]
fn table1_statuses() {
    let out = nullity(&["table1", "--format", "json"]);
    assert!(out.status.success());
    let rows: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 11);
    let status = |i: usize| rows[i]["status"].as_str().unwrap().to_string();
    assert_eq!(status(4), "paper-typo");
    assert_eq!(status(10), "convention-note");
    assert!((0..11).filter(|&i| i != 4 && i != 10).all(|i| status(i) == "match"));
    for row in rows {
        assert!(row["oracle_left"]["num"].is_string());
    }
}

#[test]
fn catalog_quarter_threshold() {
    let out = nullity(&["catalog", "--threshold", "1/4", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["selected"], serde_json::json!(["F:2[C2]", "F:2[C3]", "F:3[C2]"]));
    assert_eq!(v["classification"]["skipped"].as_array().unwrap().len(), 0);
    let one = nullity(&["catalog", "--threshold", "1", "--format", "json", "--max-size", "64"]);
    let v: Value = serde_json::from_str(&stdout(&one)).unwrap();
    assert_eq!(v["selected"].as_array().unwrap().len(), 0);
}

#[test]
fn errors_are_single_line_with_exit_code_2() {
    for args in [
        vec!["oracle", "--coeff", "F:6", "--group", "S3"],
        vec!["oracle", "--coeff", "F:2", "--group", "D4"],
        vec!["oracle", "--coeff", "F:2", "--group", "C3", "--side", "up"],
        vec!["oracle", "--coeff", "F:2", "--group", "C24", "--max-elements", "1000"],
        vec!["oracle", "--coeff", "Z:4", "--group", "C8", "--max-pairs", "1000"],
        vec!["oracle", "--coeff", "F:2", "--group", "@/nonexistent/table.json"],
        vec!["formula", "--coeff", "F:2", "--group", "C2xC2"],
    ] {
        let out = nullity(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = stderr(&out);
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
        assert!(stdout(&out).is_empty());
    }
    let capped = nullity(&["oracle", "--coeff", "F:2", "--group", "C24", "--max-elements", "1000"]);
    assert!(stderr(&capped).contains("16777216"), "{}", stderr(&capped));
}

#[test]
fn custom_group_table_from_json() {
    let dir = std::env::temp_dir().join(format!("nullity-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c3.json");
    std::fs::write(&path, "[[0,1,2],[1,2,0],[2,0,1]]").unwrap();
    let group = format!("@{}", path.display());
    let out = nullity(&["oracle", "--coeff", "F:2", "--group", &group, "--format", "json", "--omit-timing"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rec = OracleRecord::from_json(&stdout(&out)).unwrap();
    assert_eq!(rec.probability().unwrap().to_string(), "21/64");
    std::fs::remove_dir_all(&dir).unwrap();
}
