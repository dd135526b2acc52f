use std::process::{Command, Output};

use serde_json::Value;

use penney::automaton::{parse_dot, PrefixPairAutomaton};
use penney::words::make_word;

fn penney(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_penney"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn error(out: &Output) -> Value {
    let text = String::from_utf8(out.stderr.clone()).unwrap();
    assert_eq!(text.lines().count(), 1, "{text}");
    serde_json::from_str(&text).unwrap()
}

fn validator() -> jsonschema::Validator {
    let text = include_str!("../schema/output.schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).unwrap()
}

#[test]
fn win_worked_example() {
    let out = penney(&["win", "1101110", "0110", "--at", "1/2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["kind"], "win");
    assert_eq!(v["value"], "5/72");
    assert_eq!(v["win"]["text"], "(1 + 1p^1 - 1p^2)·p^4 / (1 + 1p^3)");
    assert_eq!(v["win"]["num"], serde_json::json!(["0", "0", "0", "0", "1", "1", "-1"]));
    assert_eq!(v["limit_at_zero"], "0");
}

#[test]
fn decimals_are_exact() {
    let v = json(&penney(&["win", "1100", "1010", "--at", "0.45"]));
    assert_eq!(v["at"], "9/20");
    let w = json(&penney(&["win", "1100", "1010", "--at", "9/20"]));
    assert_eq!(v["value"], w["value"]);
}

#[test]
fn check_r_example() {
    let out = penney(&["check", "r", "000100", "001110"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["holds"], true);
    assert_eq!(json(&penney(&["check", "r", "1000", "0110"]))["holds"], false);
}

#[test]
fn identical_words_exit_one() {
    let out = penney(&["win", "11", "11"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let e = error(&out);
    assert_eq!(e["error"], "identical words");
    assert_eq!(e["category"], "domain");
}

#[test]
fn boundary_biases_are_rejected() {
    for at in ["0", "1", "1/1", "0.0", "3/2", "-1/4", "x"] {
        let out = penney(&["win", "10", "01", "--at", at]);
        assert_eq!(out.status.code(), Some(1), "--at {at}");
        assert!(error(&out)["error"].as_str().unwrap().contains("--at"), "--at {at}");
    }
}

#[test]
fn domain_and_usage_errors_exit_one() {
    let cases: [&[&str]; 6] = [
        &["win", "1012", "01"],
        &["win", "0110", "10110"],
        &["check", "r", "100", "0110"],
        &["search", "density", "--n", "13"],
        &["census", "--n", "4", "--format", "dot"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = penney(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        error(&out);
    }
}

#[test]
fn failed_verification_exits_two() {
    // No split of this pair witnesses property E, so there is no map.
    let out = penney(&["check", "phi", "1000", "0110"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["holds"], false);
    assert!(v["witness"].is_null());
}

#[test]
fn phi_bijection_on_minimal_pair() {
    let out = penney(&["check", "phi", "01100101", "01010110", "--max-len", "16"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["witness"]["a"], "0110");
    assert_eq!(v["witness"]["b"], "0101");
    assert_eq!(v["report"]["omega_v"], v["report"]["omega_w"]);
}

#[test]
fn graph_dot_matches_library() {
    let out = penney(&["graph", "1100", "1010"]);
    assert!(out.status.success());
    let g = PrefixPairAutomaton::build(&make_word("1100").unwrap(), &make_word("1010").unwrap()).unwrap();
    assert_eq!(stdout(&out), g.to_dot());
    let parsed = parse_dot(&stdout(&out)).unwrap();
    assert_eq!(parsed.nodes.len(), g.len());
}

#[test]
fn graph_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.dot");
    let out = penney(&["graph", "0110", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let single = PrefixPairAutomaton::build_single(&make_word("0110").unwrap()).unwrap();
    assert_eq!(std::fs::read_to_string(path).unwrap(), single.to_dot());
}

#[test]
fn oracle_agrees_with_conway() {
    let v = json(&penney(&["oracle", "1101110", "0110", "--at", "1/2"]));
    assert_eq!(v["absorption_win"], "5/72");
    assert_eq!(v["agrees"], true);
    // E tau for 0110 at p = 1/2 is 2^4 + 2 = 18.
    let t = json(&penney(&["oracle", "0110"]));
    assert_eq!(t["expected_time"], "18");
}

#[test]
fn curve_csv_header_and_seeded_reproducibility() {
    let exhaustive = stdout(&penney(&["search", "curve", "--max-len", "5", "--format", "csv"]));
    let mut lines = exhaustive.lines();
    assert_eq!(lines.next(), Some("p,proportion,ci_half_width,n_pairs"));
    assert_eq!(lines.count(), 9);
    let args = ["search", "curve", "--max-len", "12", "--samples", "1000", "--seed", "5", "--format", "csv"];
    let a = stdout(&penney(&args));
    assert_eq!(a, stdout(&penney(&args)));
    let mut other = args;
    other[7] = "6";
    assert_ne!(a, stdout(&penney(&other)));
}

#[test]
fn census_csv_rows() {
    let text = stdout(&penney(&["census", "--n", "4", "--format", "csv"]));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("v,w,label,property_r,property_e,bitflip,equal_ones"));
    assert!(text.contains("\n1100,1010,even,"));
    assert!(lines.all(|l| l.split(',').count() == 7));
}

#[test]
fn output_does_not_depend_on_threads() {
    let strip = |out: &Output| {
        let mut v = json(out);
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    for args in [["census", "--n", "6"], ["search", "longer-by-one", "--n"]] {
        let mut args: Vec<&str> = args.to_vec();
        if args[0] == "search" {
            args.push("6");
        }
        let one = strip(&penney(&[&["--threads", "1"], &args[..]].concat()));
        let three = strip(&penney(&[&["--threads", "3"], &args[..]].concat()));
        assert_eq!(one, three, "{args:?}");
    }
}

#[test]
fn density_checkpoint_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ckpt");
    let p = path.to_str().unwrap();
    let first = json(&penney(&["search", "density", "--n", "7", "--checkpoint", p]));
    let second = json(&penney(&["search", "density", "--n", "7", "--checkpoint", p]));
    assert_eq!(first["values"], second["values"]);
    assert_eq!(second["counts"]["shards_resumed"], second["counts"]["shards"]);
}

#[test]
fn human_format_is_flat() {
    let text = stdout(&penney(&["win", "1000", "0110", "--format", "human"]));
    assert!(text.contains("symmetry.label: odd\n"));
    assert!(text.lines().all(|l| l.contains(": ")));
}

#[test]
fn every_json_output_validates() {
    let schema = validator();
    let runs: Vec<Vec<&str>> = vec![
        vec!["win", "1101110", "0110", "--at", "1/2"],
        vec!["win", "1100", "1010"],
        vec!["corr", "1101110", "0110"],
        vec!["corr", "11", "11"],
        vec!["check", "r", "000100", "001110"],
        vec!["check", "e", "01100101", "01010110"],
        vec!["check", "e", "1000", "0110", "--strict"],
        vec!["check", "phi", "01100101", "01010110", "--max-len", "12"],
        vec!["check", "phi", "1000", "0110"],
        vec!["graph", "1100", "1010", "--format", "json"],
        vec!["graph", "0110", "--format", "json"],
        vec!["oracle", "1100", "1010", "--at", "1/3"],
        vec!["oracle", "0110"],
        vec!["search", "longer-by-one", "--n", "5"],
        vec!["search", "gap-bound", "--n", "5", "--k", "2"],
        vec!["search", "argmax", "--n", "5", "--k", "1", "--at", "1/4"],
        vec!["search", "argmax", "--n", "5", "--k", "0", "--at", "1/2"],
        vec!["search", "threshold", "--k", "2"],
        vec!["search", "bounds", "--k", "1", "--at", "0.45"],
        vec!["search", "curve", "--max-len", "5"],
        vec!["search", "curve", "--max-len", "10", "--samples", "1000", "--seed", "1"],
        vec!["search", "density", "--n", "6"],
        vec!["search", "crossover", "--n", "5", "--k", "2"],
        vec!["census", "--n", "4"],
    ];
    for args in runs {
        let out = penney(&args);
        assert!(out.status.code().unwrap() != 1, "{args:?}");
        let v = json(&out);
        let errors: Vec<String> = schema.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
    for args in [&["win", "11", "11"][..], &["win", "1", "0", "--at", "2"], &["nope"]] {
        let e = error(&penney(args));
        assert!(schema.is_valid(&e), "{args:?}");
    }
}

#[test]
fn schema_rejects_malformed_output() {
    let schema = validator();
    let mut v = json(&penney(&["win", "1100", "1010", "--at", "1/3"]));
    assert!(schema.is_valid(&v));
    v["value"] = Value::from(0.5);
    assert!(!schema.is_valid(&v));
    v.as_object_mut().unwrap().remove("kind");
    assert!(!schema.is_valid(&v));
}
