use std::process::{Command, Output};

fn dgex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgex")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("dgex-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn export_then_validate_a_file() {
    let doc = scratch("morphism.json");
    let out = dgex(&["export", "builtin:morphism", "--out", doc.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&doc).unwrap();
    let again = dgex(&["export", doc.to_str().unwrap()]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), text);
    let out = dgex(&["validate", doc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("\"passed\": true"));
}

#[test]
fn laws_all_is_deterministic() {
    let a = dgex(&["laws-all", "builtin:point", "--seed", "42"]);
    let b = dgex(&["laws-all", "builtin:point", "--seed", "42"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(dgex(&["fam-laws", "builtin:point", "--cutoff", "finite:3", "--samples", "30"]).status.code(), Some(1));
    assert_eq!(dgex(&["nonsense", "builtin:point"]).status.code(), Some(64));
    assert_eq!(dgex(&["validate"]).status.code(), Some(64));
    assert_eq!(dgex(&["validate", "builtin:nothing"]).status.code(), Some(2));
    assert_eq!(dgex(&["validate", "builtin:point", "--field", "Fp:6"]).status.code(), Some(2));

    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"field": "Q", "objects": ["A"], "homs": [], "comp": [], "ids": {}}"#).unwrap();
    let out = dgex(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("ids.A"));
}

#[test]
fn prime_field_builtins() {
    let out = dgex(&["h0", "builtin:cone", "--field", "Fp:3", "--samples", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("\"field\": \"Fp:3\""));
}
