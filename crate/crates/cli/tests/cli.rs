use std::process::{Command, Output};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_delannoy-lab"))
        .args(args)
        .env_remove("DELANNOY_LAB_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn poly_prints_delannoy_polynomial() {
    let o = lab(&["poly", "--family", "D", "--n", "2", "--h", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 + 6*x + 6*x^2");
}

#[test]
fn poly_json_lists_decimal_strings() {
    let o = lab(&["poly", "--family", "S", "--n", "2", "--h", "2", "--json"]);
    assert_eq!(stdout(&o).trim(), r#"["1","9","4"]"#);
}

#[test]
fn verify_sweep_emits_one_line_per_spec() {
    let o = lab(&["verify", "--theorem", "2.1", "--n", "1..10", "--h", "1..2", "--m", "1..2", "--a", "1..2", "--eps", "both", "--format", "jsonl"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10 * 2 * 2 * 2 * 2);
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["check"], "thm-2.1");
        assert_eq!(v["pass"], true);
        assert!(v["modulus"].is_string());
        assert!(v["witness"].is_null());
        for key in ["family", "n", "h", "m", "a", "eps"] {
            assert!(v["params"].get(key).is_some(), "{key}");
        }
    }
}

#[test]
fn lemma_sweep_passes() {
    let o = lab(&["lemma", "--id", "3.5", "--J", "1..32"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 32);
}

#[test]
fn output_is_identical_for_any_worker_count() {
    let args = ["verify", "--theorem", "3.1", "--n", "1..12", "--format", "csv"];
    let one = lab(&[&["--jobs", "1"], &args[..]].concat());
    let many = lab(&[&["--jobs", "7"], &args[..]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&many));

    let lemma = ["lemma", "--id", "2.6", "--M", "1..2", "--n", "1..3"];
    let env_one = Command::new(env!("CARGO_BIN_EXE_delannoy-lab")).args(lemma).env("DELANNOY_LAB_JOBS", "1").output().unwrap();
    let env_many = Command::new(env!("CARGO_BIN_EXE_delannoy-lab")).args(lemma).env("DELANNOY_LAB_JOBS", "5").output().unwrap();
    assert_eq!(env_one.status.code(), Some(0));
    assert_eq!(env_one.stdout, env_many.stdout);
}

#[test]
fn probe_reports_the_dropped_gcd_witness() {
    let o = lab(&["probe", "--theorem", "2.1", "--n", "2", "--h", "1", "--m", "1", "--a", "1", "--eps", "plus"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["pass"], false);
    assert_eq!(v["modulus"], "24");
    assert_eq!(v["witness"]["index"], "0");
    assert_eq!(v["witness"]["value"], "36");
}

#[test]
fn coeff_dumps_tables() {
    assert_eq!(stdout(&lab(&["coeff", "--kind", "C", "--l", "1", "--a", "2"])), "u=0 4\nu=1 8\nu=2 1\n");
    assert_eq!(stdout(&lab(&["coeff", "--kind", "b", "--i", "1", "--h", "2"])), "t=1 1\nt=2 2\n");
    assert_eq!(stdout(&lab(&["coeff", "--kind", "Apair", "--i", "3", "--j", "3", "--l", "3"])).trim(), "5");
    assert_eq!(stdout(&lab(&["coeff", "--kind", "Bmulti", "--indices", "1,1,0", "--l", "2"])).trim(), "4");
}

#[test]
fn usage_and_domain_errors_exit_2() {
    for args in [
        &["verify", "--theorem", "9.9"][..],
        &["verify", "--theorem", "2.1", "--n", "3..1"],
        &["verify", "--theorem", "2.1", "--n", "0..3"],
        &["verify", "--theorem", "2.2", "--eps", "plus"],
        &["lemma", "--id", "3.5", "--J", "0"],
        &["lemma", "--id", "nope"],
        &["coeff", "--kind", "C", "--l", "1"],
        &["--jobs", "0", "poly", "--family", "D", "--n", "1", "--h", "1"],
    ] {
        let o = lab(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn formats_agree_on_record_count() {
    let base = ["verify", "--theorem", "2.2", "--n", "1..4", "--h", "1", "--m", "1..2", "--a", "1"];
    let csv = stdout(&lab(&[&base[..], &["--format", "csv"]].concat()));
    let pretty = stdout(&lab(&[&base[..], &["--format", "pretty"]].concat()));
    assert_eq!(csv.lines().count(), 1 + 8);
    assert_eq!(pretty.lines().count(), 1 + 8 + 1);
    assert!(pretty.trim_end().ends_with("8 checks, 0 failed"));
}
