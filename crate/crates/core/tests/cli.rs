use std::path::PathBuf;

use serde_json::Value;
use stagger::cli::run;

fn stagger(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("stagger").chain(args.iter().copied());
    let code = run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out) = stagger(args);
    assert_eq!(code, 0, "{out}");
    serde_json::from_str(&out).unwrap()
}

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    std::fs::read_to_string(p).unwrap()
}

const GOLDEN: &[(&str, &[&str])] = &[
    ("sigma", &["sigma", "--site", "X", "--le", "0", "F(1)"]),
    ("jh", &["jh", "--perversity", "0,1", "F(1)"]),
    (
        "decompose",
        &["decompose", r#"{"generators":[0,1],"relations":[[{"c":"-1","k":0}],[{"c":"1","k":1}]]}"#],
    ),
    ("member", &["member", "--ge", "0", "F(-2) + T(-2,1)"]),
    ("step", &["step", "--site", "Z", "V(3)"]),
    ("tensor", &["tensor", "F(1) + V(2)", "T(0,3)"]),
    ("chom", &["chom", "T(-1,1)", "F(-2)"]),
    ("dual", &["dual", "T(0,1) + F(2)[1]"]),
    ("li", &["li", "--n", "2", "T(1,2)"]),
    ("riflat", &["riflat", "--n", "1", "F(-2)"]),
    ("gammaz", &["gammaz", "F(0) + T(2,3)[-1]"]),
    ("trunc", &["trunc", "--n", "0", "F(2)"]),
    ("heart", &["heart", "--shift", "0", "V(2)[1]"]),
    ("simples", &["simples", "--n", "2"]),
    ("ic", &["ic", "Z:3"]),
    ("geometry", &["geometry", "--json"]),
    ("validate-p", &["validate-p", "--json"]),
    ("flag-verify", &["flag-verify", "--json"]),
    ("tsuite", &["tsuite", "--seed", "3", "--samples", "4", "--json"]),
    ("axioms", &["axioms", "--seed", "3", "--samples", "2", "--json"]),
];

#[test]
fn json_output_matches_golden_files() {
    for (name, args) in GOLDEN {
        let (code, out) = stagger(args);
        assert_eq!(code, 0, "{name}: {out}");
        assert_eq!(out, golden(name), "{name}");
    }
}

#[test]
fn json_keys_are_sorted() {
    fn sorted(v: &Value) -> bool {
        match v {
            Value::Object(m) => {
                let keys: Vec<&String> = m.keys().collect();
                keys.windows(2).all(|w| w[0] < w[1]) && m.values().all(sorted)
            }
            Value::Array(a) => a.iter().all(sorted),
            _ => true,
        }
    }
    for (name, _) in GOLDEN {
        let text = golden(name);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert!(sorted(&v), "{name}");
        // Keys also appear in sorted order in the text itself.
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text, "{name}");
    }
}

#[test]
fn sigma_example() {
    let v = json(&["sigma", "--site", "X", "--le", "0", "F(1)"]);
    assert_eq!(v["sub"], "F(0)");
    assert_eq!(v["quotient"], "T(1,1)");
}

#[test]
fn jh_example() {
    let v = json(&["jh", "--perversity", "0,1", "F(1)"]);
    assert_eq!(v["factors"], serde_json::json!(["OX", "SZ(1)"]));
    assert_eq!(v["audit"], Value::Null);
}

#[test]
fn axioms_example_exits_zero() {
    let (code, out) = stagger(&["axioms", "--z-mode", "weight", "--seed", "1", "--samples", "200"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("axioms seed=1 samples=200"));
    assert!(out.contains("violations: 0"));
}

#[test]
fn printed_modules_reparse() {
    for (name, _) in GOLDEN {
        let v: Value = serde_json::from_str(&golden(name)).unwrap();
        for key in ["sub", "quotient", "module", "tensor", "internal_hom", "input"] {
            if let Some(s) = v.get(key).and_then(Value::as_str) {
                let back = stagger::derived::FormalObject::parse(s).unwrap();
                assert_eq!(back.to_string(), s, "{name}.{key}");
            }
        }
    }
}

#[test]
fn parse_errors_exit_one_with_a_caret() {
    let (code, out) = stagger(&["decompose", "F(1) + T(2,"]);
    assert_eq!(code, 1);
    assert!(out.contains("position 11"), "{out}");
    assert!(out.contains("\n             ^"), "{out}");
}

#[test]
fn input_errors_exit_one() {
    for args in [
        &["bogus"][..],
        &["member", "F(0)"],
        &["sigma", "--le", "0", "--ge", "1", "F(0)"],
        &["tensor", "F(0)"],
        &["member", "--site", "Q", "--le", "0", "F(0)"],
        &["member", "--site", "Z", "--le", "0", "F(0)"],
        &["step", "--z-mode", "odd", "F(0)"],
        &["heart", "--perversity", "0;1", "F(0)"],
        &["jh", "F(2)"],
        &["simples", "--perversity", "0,0"],
        &["li", "--n", "0", "F(0)"],
        &["validate-p", "--perversity", "0,3"],
        &["tsuite", "--perversity", "1,0"],
        &["decompose", r#"{"generators":[0,1],"relations":[[{"c":"1","k":0}],[{"c":"1","k":0}]]}"#],
    ] {
        let (code, out) = stagger(args);
        assert_eq!(code, 1, "{args:?}: {out}");
    }
}

#[test]
fn oracle_flag_runs_both_paths() {
    for args in [
        &["sigma", "--le", "0", "--oracle", "F(1) + T(3,2)"][..],
        &["sigma", "--ge", "1", "--oracle", "F(1) + T(3,2)"],
        &["member", "--le", "-1", "--oracle", "F(-1)"],
        &["step", "--oracle", "T(2,2) + F(0)"],
        &["decompose", "--oracle", "F(1) + T(0,2)"],
        &["tensor", "--oracle", "F(1) + T(0,2)", "T(3,3)"],
        &["chom", "--oracle", "F(1) + T(0,2)", "T(3,3)"],
        &["dual", "--oracle", "T(0,1)[1] + F(2)"],
        &["li", "--n", "3", "--oracle", "T(0,4) + F(1)[-1]"],
        &["riflat", "--n", "2", "--oracle", "T(0,4) + F(1)[-1]"],
        &["gammaz", "--oracle", "T(0,4) + F(1)[-1]"],
        &["heart", "--oracle", "F(1)"],
        &["trunc", "--n", "1", "--oracle", "F(3) + T(2,2)[-1]"],
        &["simples", "--n", "1", "--oracle"],
        &["ic", "--oracle", "U:2"],
    ] {
        let v = json(args);
        assert_eq!(v["oracle"]["agree"], true, "{args:?}");
    }
}

#[test]
fn suites_embed_the_seed_and_honour_the_env_fallback() {
    let v = json(&["tsuite", "--seed", "11", "--samples", "2", "--json"]);
    assert_eq!(v["seed"], 11);
    std::env::set_var("STAGGER_SEED", "9");
    let v = json(&["axioms", "--samples", "1", "--json"]);
    assert_eq!(v["seed"], 9);
    let v = json(&["axioms", "--samples", "1", "--seed", "4", "--json"]);
    assert_eq!(v["seed"], 4);
    std::env::remove_var("STAGGER_SEED");
}

#[test]
fn suite_oracle_adds_the_agreement_report() {
    let v = json(&["axioms", "--samples", "3", "--oracle", "--json"]);
    let suites: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["suite"].as_str().unwrap()).collect();
    assert_eq!(suites, ["axioms", "oracle-agreement"]);
}

#[test]
fn output_is_deterministic() {
    let a = stagger(&["tsuite", "--z-mode", "trivial", "--seed", "5", "--samples", "10"]);
    let b = stagger(&["tsuite", "--z-mode", "trivial", "--seed", "5", "--samples", "10"]);
    assert_eq!(a, b);
}

#[test]
fn out_file_receives_the_report() {
    let path = std::env::temp_dir().join(format!("stagger-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out) = stagger(&["geometry", "--json", "--out", p]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), out);
    std::fs::remove_file(path).unwrap();
}
