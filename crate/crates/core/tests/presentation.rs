use proptest::prelude::*;

use dgex::dgcat::validate::validate_dgcat;
use dgex::presentation::{builtin, from_document, parse, serialize, to_document, BUILTINS};
use dgex::twisted::generators::codiscrete;
use dgex::{Error, Field};

fn location(e: Error) -> String {
    match e {
        Error::Parse { location, .. } => location,
        other => panic!("expected a located error, got {other}"),
    }
}

#[test]
fn builtins_round_trip_byte_for_byte() {
    for field in [Field::Rational, Field::Prime(5)] {
        for name in BUILTINS {
            let cat = builtin(name, field).unwrap();
            let text = serialize(&cat);
            let back = parse(&text).unwrap();
            assert_eq!(back.table_difference(&cat), None, "{name}");
            assert_eq!(serialize(&back), text, "{name}");
        }
    }
}

#[test]
fn morphism_document_is_a_dg_category() {
    let text = serialize(&builtin("morphism", Field::Rational).unwrap());
    let cat = parse(&text).unwrap();
    assert_eq!(cat.len(), 2);
    assert!(validate_dgcat(&cat, &[0, 1]).passed());
    assert!(text.contains("\"field\": \"Q\""));
}

#[test]
fn prime_residues_are_integers_and_rationals_strings() {
    let q = to_document(&builtin("point", Field::Rational).unwrap());
    assert!(q["ids"].as_object().unwrap().values().all(|v| v[0].is_string()));
    let p = to_document(&builtin("point", Field::Prime(7)).unwrap());
    assert!(p["ids"].as_object().unwrap().values().all(|v| v[0].is_u64()));
}

const LINE: &str = r#"{
  "field": "Q",
  "objects": ["A", "B"],
  "homs": [
    {"source": "A", "target": "A", "dims": {"0": 1}},
    {"source": "B", "target": "B", "dims": {"0": 1}},
    {"source": "A", "target": "B", "dims": {"-1": 1, "0": 1}, "d": {"-1": [["1/2"]]}}
  ],
  "comp": [
    {"objects": ["A", "A", "A"], "degrees": [0, 0], "g": 0, "f": 0, "value": ["1"]},
    {"objects": ["B", "B", "B"], "degrees": [0, 0], "g": 0, "f": 0, "value": ["1"]},
    {"objects": ["A", "B", "B"], "degrees": [0, -1], "g": 0, "f": 0, "value": ["1"]},
    {"objects": ["A", "B", "B"], "degrees": [0, 0], "g": 0, "f": 0, "value": ["1"]},
    {"objects": ["A", "A", "B"], "degrees": [-1, 0], "g": 0, "f": 0, "value": ["1"]},
    {"objects": ["A", "A", "B"], "degrees": [0, 0], "g": 0, "f": 0, "value": ["1"]}
  ],
  "ids": {"A": ["1"], "B": ["1"]}
}"#;

#[test]
fn hand_written_document_parses() {
    let cat = parse(LINE).unwrap();
    assert_eq!(cat.hom_complex(0, 1).betti().values().sum::<usize>(), 0);
    let again = parse(&serialize(&cat)).unwrap();
    assert_eq!(again.table_difference(&cat), None);
}

#[test]
fn errors_are_located() {
    let bad_comp = LINE.replace(r#""degrees": [0, -1], "g": 0, "f": 0, "value": ["1"]"#, r#""degrees": [0, -1], "g": 0, "f": 0, "value": ["1", "0"]"#);
    let loc = location(parse(&bad_comp).unwrap_err());
    assert!(loc.starts_with("comp[2]") && loc.contains("A, B, B") && loc.contains("degrees 0, -1"), "{loc}");

    let out_of_range = LINE.replace(r#""degrees": [0, -1], "g": 0, "f": 0"#, r#""degrees": [0, -1], "g": 1, "f": 0"#);
    assert!(location(parse(&out_of_range).unwrap_err()).starts_with("comp[2]"));

    let bad_d = LINE.replace(r#"[["1/2"]]"#, r#"[["1", "2"]]"#);
    assert_eq!(location(parse(&bad_d).unwrap_err()), "homs[2].d.-1[0]");

    let unknown = LINE.replace(r#"{"source": "B", "target": "B""#, r#"{"source": "C", "target": "B""#);
    assert_eq!(location(parse(&unknown).unwrap_err()), "homs[1].source");

    let bad_scalar = LINE.replace(r#""ids": {"A": ["1"]"#, r#""ids": {"A": ["x"]"#);
    assert_eq!(location(parse(&bad_scalar).unwrap_err()), "ids.A[0]");

    let not_unital = LINE.replace(r#""ids": {"A": ["1"]"#, r#""ids": {"A": ["2"]"#);
    let loc = location(parse(&not_unital).unwrap_err());
    assert!(loc.contains('A'), "{loc}");

    let syntax = location(parse("{\"field\": ").unwrap_err());
    assert!(syntax.starts_with("line 1"), "{syntax}");

    let bad_field = LINE.replace(r#""field": "Q""#, r#""field": "Fp:4""#);
    assert_eq!(location(parse(&bad_field).unwrap_err()), "field");
}

#[test]
fn structural_parse_accepts_unvalidated_data() {
    let not_unital = LINE.replace(r#""ids": {"A": ["1"]"#, r#""ids": {"A": ["2"]"#);
    let doc: serde_json::Value = serde_json::from_str(&not_unital).unwrap();
    let cat = from_document(&doc).unwrap();
    assert!(!validate_dgcat(&cat, &[0, 1]).passed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn codiscrete_categories_round_trip(n in 1usize..=3, p in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
        let names = ["U", "V", "W"];
        let cat = (*codiscrete(Field::Prime(p), &names[..n]).cat).clone();
        let text = serialize(&cat);
        let back = parse(&text).unwrap();
        prop_assert_eq!(serialize(&back), text);
        prop_assert_eq!(back.table_difference(&cat), None);
    }
}
