use serde_json::Value;

use dgex::exec::Execution;
use dgex::families::AlphaCutoff;
use dgex::harness::{parse_cutoff, run, HarnessConfig, EXIT_FAIL, EXIT_INPUT, EXIT_PASS, EXIT_USAGE, VERBS};
use dgex::presentation::builtin;
use dgex::Field;

fn quick() -> HarnessConfig {
    HarnessConfig {
        samples: 20,
        ..HarnessConfig::default()
    }
}

fn sections(text: &str) -> Vec<Value> {
    let v: Value = serde_json::from_str(text).unwrap();
    v["sections"].as_array().unwrap().clone()
}

#[test]
fn laws_all_on_the_point_passes_and_is_reproducible() {
    let cat = builtin("point", Field::Rational).unwrap();
    let config = HarnessConfig::default();
    let (a, code) = run("laws-all", &cat, &config);
    assert_eq!(code, EXIT_PASS, "{a}");
    let (b, _) = run("laws-all", &cat, &config);
    assert_eq!(a, b);
    let names: Vec<String> = sections(&a).iter().map(|s| s["name"].as_str().unwrap().to_string()).collect();
    for prefix in ["validate", "h0", "path/", "pretr/", "fam-laws/", "exact-check", "ex-complete", "dalpha-check"] {
        assert!(names.iter().any(|n| n.starts_with(prefix)), "{prefix} missing from {names:?}");
    }
}

#[test]
fn execution_mode_does_not_change_reports() {
    let cat = builtin("morphism", Field::Prime(3)).unwrap();
    for verb in ["validate", "path", "exact-check", "dalpha-check"] {
        let par = run(verb, &cat, &quick());
        let seq = run(
            verb,
            &cat,
            &HarnessConfig {
                exec: Execution::Sequential,
                ..quick()
            },
        );
        assert_eq!(par, seq, "{verb}");
    }
}

#[test]
fn path_on_the_morphism_category() {
    let cat = builtin("morphism", Field::Rational).unwrap();
    let (text, code) = run("path", &cat, &quick());
    assert_eq!(code, EXIT_PASS, "{text}");
    let s = sections(&text);
    let laws: Vec<&str> = s[0]["checks"].as_array().unwrap().iter().map(|c| c["law"].as_str().unwrap()).collect();
    assert!(laws.contains(&"q-after-i-is-diagonal"));
    assert!(laws.iter().any(|l| l.starts_with("i/")));
    assert!(laws.iter().any(|l| l.starts_with("q/")));
    assert!(laws.iter().any(|l| l.starts_with("terminal/")));
}

#[test]
fn finite_cutoff_overflows() {
    let cat = builtin("point", Field::Rational).unwrap();
    let config = HarnessConfig {
        cutoff: AlphaCutoff::Finite(3),
        ..quick()
    };
    let (text, code) = run("fam-laws", &cat, &config);
    assert_eq!(code, EXIT_FAIL);
    let regularity = sections(&text).into_iter().find(|s| s["name"] == "fam-laws/regularity").unwrap();
    let failure = regularity["checks"].as_array().unwrap().iter().find(|c| c["pass"] == false).unwrap().clone();
    assert!(failure["witness"].as_str().unwrap().contains("not regular"));
}

#[test]
fn starved_completion_fails() {
    let cat = builtin("morphism", Field::Rational).unwrap();
    let (text, code) = run(
        "ex-complete",
        &cat,
        &HarnessConfig {
            budget: 0,
            ..quick()
        },
    );
    assert_eq!(code, EXIT_FAIL);
    let s = &sections(&text)[0];
    assert!(s["data"]["deficiencies"].as_array().unwrap().iter().any(|d| d["kind"] == "cone"));
}

#[test]
fn every_verb_runs_on_the_cone_category() {
    let cat = builtin("cone", Field::Prime(5)).unwrap();
    for verb in VERBS.iter().filter(|v| **v != "laws-all") {
        let (text, code) = run(verb, &cat, &HarnessConfig { samples: 8, ..quick() });
        assert_eq!(code, EXIT_PASS, "{verb}: {text}");
    }
}

#[test]
fn usage_and_input_errors() {
    let cat = builtin("point", Field::Rational).unwrap();
    let (text, code) = run("frobnicate", &cat, &quick());
    assert_eq!(code, EXIT_USAGE);
    assert!(text.starts_with("usage:"));
    let (_, code) = run("validate", &cat, &HarnessConfig { samples: 0, ..quick() });
    assert_eq!(code, EXIT_INPUT);
    assert_eq!(parse_cutoff("finite:3").unwrap(), AlphaCutoff::Finite(3));
    assert_eq!(parse_cutoff("countable").unwrap(), AlphaCutoff::Countable);
    assert!(parse_cutoff("finite:0").is_err());
}
