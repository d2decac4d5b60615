use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cascade-lab")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, String) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = run(&a);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let s = String::from_utf8(out.stdout).unwrap();
    (serde_json::from_str(&s).unwrap(), s)
}

#[test]
fn certify_example() {
    let (v, _) = json(&["certify", "--type", "A2", "--parabolic", "2", "--degree", "1"]);
    assert_eq!(v["lhs"], 1);
    assert_eq!(v["td_card"], 1);
    assert_eq!(v["inequality_ok"], true);
    assert_eq!(v["dim_moduli"], 5);
}

#[test]
fn count_greedy_defaults_to_dx() {
    let (v, _) = json(&["count-greedy", "--type", "D6"]);
    assert_eq!(v["degrees"][0]["count"], "30");
    let text = String::from_utf8(run(&["count-greedy", "--type", "D6"]).stdout).unwrap();
    assert!(text.contains("2,2,4,4,3,3  30"));
}

#[test]
fn usage_errors_exit_2_and_name_the_flag() {
    let cases: &[(&[&str], &str)] = &[
        (&["verify", "--type", "Z9"], "--type"),
        (&["dx", "--type", "A3", "--parabolic", "4"], "--parabolic"),
        (&["dx", "--type", "A3", "--parabolic", "x"], "--parabolic"),
        (&["greedy", "--type", "A3", "--degree", "1,2"], "--degree"),
        (&["greedy", "--type", "A3", "--degree", "a,b,c"], "--degree"),
        (&["verify", "--type", "A2", "--checks", "nope"], "--checks"),
        (&["roots"], "--type"),
    ];
    for (args, flag) in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains(flag), "{args:?}");
    }
}

#[test]
fn json_output_round_trips() {
    let cases: &[&[&str]] = &[
        &["roots", "--type", "G2"],
        &["weyl", "--type", "B3", "--parabolic", "1"],
        &["greedy", "--type", "A3", "--parabolic", "2", "--degree", "all"],
        &["count-greedy", "--type", "D4", "--degree", "all"],
        &["minimal", "--type", "A3", "--parabolic", "1"],
        &["dx", "--type", "E6", "--parabolic", "1"],
        &["lift", "--type", "C3", "--parabolic", "3", "--degree", "all"],
        &["cascade", "--type", "B3"],
        &["certify", "--type", "A3", "--parabolic", "1", "--degree", "all"],
        &["verify", "--type", "A2"],
        &["golden"],
    ];
    for args in cases {
        let (v, s) = json(args);
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", s, "{args:?}");
    }
}

#[test]
fn text_values_appear_in_json() {
    let args = ["minimal", "--type", "A3", "--parabolic", "1"];
    let text = String::from_utf8(run(&args).stdout).unwrap();
    let (v, _) = json(&args);
    for row in v["minimal_degrees"].as_array().unwrap() {
        for key in ["degree", "z", "lifting"] {
            assert!(text.contains(row[key].as_str().unwrap()), "{key}");
        }
    }
}

#[test]
fn verify_writes_report_and_exits_zero() {
    let dir = std::env::temp_dir().join(format!("cascade-lab-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&["verify", "--type", "B2", "--jobs", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["summary"]["ok"], true);
    assert!(report["results"].as_array().unwrap().len() > 20);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn weyl_cap_breach_is_reported() {
    let out = Command::new(env!("CARGO_BIN_EXE_cascade-lab"))
        .args(["verify", "--type", "A3", "--format", "json"])
        .env("CASCADE_LAB_WCAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"][0]["status"], "skipped");
}

#[test]
fn cascade_reports_checks() {
    let (v, _) = json(&["cascade", "--type", "D4"]);
    let c = &v["cascades"][0];
    assert_eq!(c["cascade"].as_array().unwrap().len(), 4);
    assert!(c["checks"].as_array().unwrap().iter().all(|x| x["status"] == "pass"));
}

#[test]
fn weyl_reports_dimension_of_g_mod_p() {
    let (v, _) = json(&["weyl", "--type", "A3", "--parabolic", "1"]);
    assert_eq!(v["dim"], 5);
    assert_eq!(v["w_o_length"], 6);
    let (v, _) = json(&["weyl", "--type", "E8"]);
    assert_eq!(v["weyl_order"], "696729600");
    assert_eq!(v["dim"], 120);
}
