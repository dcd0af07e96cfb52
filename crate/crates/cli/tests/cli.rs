use std::io::Write;
use std::process::{Command, Output};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;
use zf_cli::report::{BatchReport, ComponentsReport, EnumerateReport, FamilyReport, InvariantsReport};
use zf_core::FiniteGroup;

fn zf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zf"))
        .args(args)
        .env_remove("ZF_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = zf(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

/// parse(emit(report)) == report, checked at the level of JSON values.
fn round_trips<T: Serialize + DeserializeOwned>(v: &Value) {
    let typed: T = serde_json::from_value(v.clone()).expect("document parses into its type");
    assert_eq!(&serde_json::to_value(&typed).unwrap(), v);
}

fn stderr_line(out: &Output) -> String {
    let s = String::from_utf8_lossy(&out.stderr).into_owned();
    assert_eq!(s.trim_end().lines().count(), 1, "expected one line, got {s:?}");
    s
}

#[test]
fn components_report() {
    let v = json(&["components", "--group", "Z2^3", "--tau1", "2^6", "--tau2", "2^6", "--format", "json"]);
    for field in ["group", "tau1", "tau2", "h", "completeness", "convention"] {
        assert!(v.get(field).is_some(), "missing {field}");
    }
    assert_eq!(v["schema"], 1);
    assert_eq!(v["h"], 1);
    assert_eq!(v["completeness"], "exact");
    assert_eq!(v["convention"]["swap_identified"], true);
    round_trips::<ComponentsReport>(&v);

    let keyed = json(&["components", "--group", "Z2^3", "--tau1", "2^6", "--tau2", "2^7", "--keys"]);
    assert_eq!(keyed["h"], 2);
    assert_eq!(keyed["keys"].as_array().unwrap().len(), 2);
    round_trips::<ComponentsReport>(&keyed);
}

#[test]
fn invariants_report() {
    let v = json(&["invariants", "--ksq", "8", "--c2", "4", "--m", "2"]);
    assert_eq!(
        (&v["d"], &v["n"], &v["c"], &v["g"], &v["nu"], &v["chisini_ok"]),
        (&Value::from(112), &Value::from(5340), &Value::from(540), &Value::from(225), &Value::from(32), &Value::from(true))
    );
    assert_eq!(v["chisini_threshold"]["exact"], "112/29");
    round_trips::<InvariantsReport>(&v);

    let with_bounds = json(&["invariants", "--ksq", "4096", "--c2", "2048", "--chi", "512", "--epsilon", "1"]);
    assert_eq!(with_bounds["bounds"]["log2_lower_thm_main"]["exact"], 32);
    assert_eq!(with_bounds["plurigenus"], 512 + 4096);
    round_trips::<InvariantsReport>(&with_bounds);

    let from_types = json(&["invariants", "--group", "Z2^3", "--tau1", "2^12", "--tau2", "2^36"]);
    assert_eq!(from_types["surface"]["chi"], 128);
    assert_eq!(from_types["d"], 14 * 1024);
    round_trips::<InvariantsReport>(&from_types);
}

#[test]
fn family_and_batch_reports() {
    let v = json(&["family", "--k", "3", "--l", "7"]);
    assert_eq!(v["report"]["h"], 2130);
    assert_eq!(v["report"]["witness"], "found");
    round_trips::<FamilyReport>(&v);

    let out = zf(&["family", "--k", "3", "--l", "7", "--format", "table"]);
    assert!(out.status.success());
    let table = String::from_utf8(out.stdout).unwrap();
    for field in ["report.h", "report.curve.d", "report.bounds.log2_lower_eq15.decimal", "report.chisini.ok"] {
        assert!(table.lines().any(|l| l.starts_with(field)), "table lacks {field}");
    }

    let batch = json(&["report", "--k", "2..3", "--l", "5..7"]);
    let rows = batch["rows"].as_array().unwrap();
    let kl: Vec<(u64, u64)> = rows
        .iter()
        .map(|r| (r["params"]["k"].as_u64().unwrap(), r["params"]["l"].as_u64().unwrap()))
        .collect();
    assert_eq!(kl, vec![(2, 5), (2, 6), (2, 7), (3, 7)]);
    round_trips::<BatchReport>(&batch);
}

#[test]
fn enumerate_report() {
    let v = json(&["enumerate", "--group", "Z2^2", "--tau", "2^4", "--limit", "5"]);
    assert_eq!(v["count"], 18);
    assert_eq!(v["multiset_classes"], 3);
    assert_eq!(v["systems"].as_array().unwrap().len(), 5);
    round_trips::<EnumerateReport>(&v);

    let m = json(&["enumerate", "--group", "Z2^2", "--tau", "2^4", "--mode", "multiset"]);
    assert_eq!(m["count"], 3);
}

#[test]
fn csv_carries_the_json_values() {
    let args = ["invariants", "--ksq", "8", "--c2", "4"];
    let v = json(&args);
    let out = zf(&[&args[..], &["--format", "csv"]].concat());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    for (k, cell) in header.iter().zip(&row) {
        let mut node = &v;
        for part in k.split('.') {
            node = &node[part];
        }
        let want = match node {
            Value::Null => String::new(),
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        assert_eq!(*cell, want, "column {k}");
    }
}

#[test]
fn group_files() {
    let d4 = FiniteGroup::dihedral(4).unwrap();
    let mut file = tempfile::Builder::new().suffix(".txt").tempfile().unwrap();
    writeln!(file, "16").unwrap();
    for x in 0..16u32 {
        let row: Vec<String> = (0..16u32)
            .map(|y| (d4.mul(x / 2, y / 2) * 2 + ((x % 2) ^ (y % 2))).to_string())
            .collect();
        writeln!(file, "{}", row.join(" ")).unwrap();
    }
    let path = file.path().to_str().unwrap();
    let v = json(&["components", "--group", path, "--tau1", "2^6", "--tau2", "2^3,4"]);
    assert_eq!(v["h"], 1);
    assert_eq!(v["convention"]["label"], "components or conjugate-component pairs");

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "2\n0 1\n1 1").unwrap();
    let out = zf(&["components", "--group", bad.path().to_str().unwrap(), "--tau1", "2^3", "--tau2", "2^3"]);
    assert_eq!(out.status.code(), Some(2));
    stderr_line(&out);
}

#[test]
fn input_errors_exit_two_with_one_line() {
    let cases: [&[&str]; 7] = [
        &["components", "--group", "Z2^3", "--tau1", "2^x", "--tau2", "2^6"],
        &["components", "--group", "no/such/file", "--tau1", "2^6", "--tau2", "2^6"],
        &["components", "--group", "Z2^3", "--tau1", "2^6"],
        &["family", "--k", "3", "--l", "5"],
        &["invariants", "--ksq", "8", "--c2", "4", "--m", "1"],
        &["invariants", "--ksq", "8", "--c2", "4", "--bogus"],
        &["report", "--k", "3", "--l", "9..7"],
    ];
    for args in cases {
        let out = zf(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(stderr_line(&out).starts_with("error: "), "{args:?}");
    }
    assert_eq!(zf(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_exhaustion_exits_one_with_flagged_output() {
    let args = ["components", "--group", "Z2^4", "--tau1", "2^40", "--tau2", "2^40"];
    let out = zf(&[&args[..], &["--budget", "1000"]].concat());
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["completeness"], "budget-limited");
    assert!(v["h"].is_null());
    round_trips::<ComponentsReport>(&v);

    let env = Command::new(env!("CARGO_BIN_EXE_zf"))
        .args(args)
        .env("ZF_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(1));
    assert_eq!(env.stdout, out.stdout);

    let orbit = zf(&["components", "--group", "D8", "--tau1", "2^6", "--tau2", "2^6", "--orbit-budget", "10"]);
    assert_eq!(orbit.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&orbit.stdout).unwrap();
    assert_eq!(v["completeness"], "budget-limited");
}
