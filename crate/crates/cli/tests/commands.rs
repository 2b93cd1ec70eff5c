use serde_json::Value;
use stable_cantor::arith::Rat;
use stable_cantor::recurrence::oracle::{oracle_recurrence, OracleOptions};
use std::process::{Command, Output};

const TERNARY: &str = r#"{"kind":"middle","p":"3"}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stable-cantor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn constants_table_rows() {
    let o = run(&["constants"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row = |id: &str| text.lines().find(|l| l.starts_with(&format!("{id} "))).unwrap().to_string();
    assert!(row("s2").contains("1.1580329"));
    assert!(row("s_hi").contains("1.1713761"));
    assert!(row("p31_q40").trim_end().ends_with("yes"));
    let j = json(&run(&["constants", "--json"]));
    assert_eq!(j.as_array().unwrap().len(), 29);
}

#[test]
fn analyze_reports() {
    let o = run(&["--digits", "9", "analyze"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("Newhouse test: inconclusive (0.980062299 < 1)"), "{text}");
    assert!(text.contains("Omega member: true"));

    let k = r#"{"kind":"middle","p":"2.5"}"#;
    let text = stdout(&run(&["analyze", k, k]));
    assert!(text.contains("Newhouse test: stable intersection (linked, product 4"), "{text}");

    let far = r#"{"kind":"middle","p":"3","offset":"5"}"#;
    let text = stdout(&run(&["analyze", TERNARY, far]));
    assert!(text.contains("linked: false"));
    assert!(text.contains("criterion III (generic, dimension sum > 1): not satisfied"));
}

#[test]
fn analyze_reads_spec_files() {
    let dir = std::env::temp_dir().join(format!("stable-cantor-spec-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k.json");
    std::fs::write(&path, TERNARY).unwrap();
    let p = path.to_str().unwrap();
    let j = json(&run(&["analyze", p, p, "--json"]));
    assert_eq!(j["linked"], Value::Bool(true));
    assert_eq!(j["tau_product"], Value::from("1.00000000000"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn malformed_spec_is_a_usage_error() {
    let o = run(&["analyze", r#"{"kind":"middle","p":"3.5x"}"#]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parse error at byte 25"));
}

#[test]
fn digits_range_is_enforced() {
    assert_eq!(run(&["--digits", "5", "constants"]).status.code(), Some(2));
    assert_eq!(run(&["--digits", "51", "constants"]).status.code(), Some(2));
    assert_eq!(run(&["--digits", "50", "constants"]).status.code(), Some(0));
}

#[test]
fn verify_passes_with_named_entries() {
    let o = run(&["verify", "--grid", "16", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let j = json(&o);
    let entries = j["entries"].as_array().unwrap();
    assert!(entries.len() >= 200, "{} entries", entries.len());
    assert!(entries.iter().all(|e| e["verdict"] == "pass"));
    for key in ["id", "description", "paper_value", "enclosure_lo", "enclosure_hi", "verdict"] {
        assert!(entries[0].get(key).is_some(), "{key}");
    }
}

#[test]
fn verify_fault_fails_with_entry_id() {
    let o = run(&["verify", "--grid", "8", "--fault-delta1", "1/100"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("failed entries:"));
    assert!(err.contains("lemma1.delta_window"), "{err}");
}

#[test]
fn verify_writes_identical_files() {
    let dir = std::env::temp_dir().join(format!("stable-cantor-cert-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    for p in [&a, &b] {
        let o = run(&["verify", "--grid", "4", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn difference_of_ternary_sets_is_one_interval() {
    let o = run(&["difference", TERNARY, TERNARY, "--level", "10", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let j = json(&o);
    let ivs = j["intervals"].as_array().unwrap();
    assert_eq!(ivs.len(), 1);
    let num = |v: &Value| stable_cantor::arith::parse_rational(v.as_str().unwrap()).unwrap();
    assert_eq!(num(&ivs[0][0]), Rat::from_int(-1));
    assert_eq!(num(&ivs[0][1]), Rat::one());
}

#[test]
fn difference_rejects_zero_lambda() {
    let o = run(&["difference", "--lambda", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn difference_of_theorem_pair() {
    let one = json(&run(&["difference", "--level", "8", "--json", "--digits", "30"]));
    assert!(one["largest"].as_str().unwrap().parse::<f64>().unwrap() > 0.0);
    // K' is symmetric, so K + K' is K - K' moved right by one
    let neg = json(&run(&["difference", "--level", "8", "--lambda", "-1", "--json", "--digits", "30"]));
    let a = one["intervals"].as_array().unwrap();
    let b = neg["intervals"].as_array().unwrap();
    assert_eq!(a.len(), b.len());
    let num = |v: &Value| stable_cantor::arith::parse_rational(v.as_str().unwrap()).unwrap();
    let tol = Rat::ratio(1, 1_000_000_000);
    for (x, y) in a.iter().zip(b) {
        for k in 0..2 {
            let d = &(&num(&y[k]) - &num(&x[k])) - &Rat::one();
            assert!(d.abs() < tol);
        }
    }
}

#[test]
fn steer_interior_point_needs_no_word() {
    let o = run(&["steer", "1.14", "0.1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("word_K: \"\""));
    assert!(text.contains("in interior: true"));
}

#[test]
fn steer_far_point_fails() {
    let o = run(&["steer", "0.01", "1000"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("warning"));
    assert!(stderr(&o).contains("no word found"));
}

#[test]
fn steer_matches_oracle_words() {
    let report = oracle_recurrence(&OracleOptions {
        s_points: 3,
        t_points: 3,
        ..OracleOptions::default()
    });
    for o in &report.outcomes {
        let out = run(&["steer", &o.s, &o.t, "--min-cycles", "1", "--json"]);
        assert_eq!(out.status.code(), Some(0));
        let j = json(&out);
        assert_eq!(j["word_k"], Value::from(o.word_k.as_str()));
        assert_eq!(j["word_kp"], Value::from(o.word_kp.as_str()));
    }
}

#[test]
fn steer_accepts_named_scales() {
    let o = run(&["steer", "s_lo", "0", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["lattice_move"], serde_json::json!([7, 9]));
}

#[test]
fn plot_region_polylines_are_closed() {
    let o = run(&["plot-data", "region"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    for name in ["outer", "delta1", "delta2"] {
        let poly: Vec<&Vec<&str>> = rows.iter().filter(|r| r[0] == name).collect();
        assert!(poly.len() >= 4, "{name}");
        assert_eq!(poly[0][2..], poly[poly.len() - 1][2..]);
    }
}

#[test]
fn plot_intervals_and_squares() {
    let o = run(&["plot-data", "intervals", "--s", "s1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);
    let o = run(&["plot-data", "intervals", "--grid", "9"]);
    assert_eq!(stdout(&o).lines().count(), 10);
    let o = run(&["plot-data", "squares", "--s", "1.146"]);
    assert_eq!(stdout(&o).lines().count(), 15);
    let o = run(&["plot-data", "squares"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--mode", "exhaustive"]).status.code(), Some(2));
}
