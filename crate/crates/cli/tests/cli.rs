use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_secant-forge");

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let d = std::env::temp_dir().join(format!("secant-forge-cli-{tag}-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&d);
        std::fs::create_dir_all(&d).unwrap();
        Scratch(d)
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(BIN).args(args).current_dir(&self.0).output().unwrap()
    }

    /// Run expecting success and return trimmed stdout.
    fn ok(&self, args: &[&str]) -> String {
        let out = self.run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        String::from_utf8(out.stdout).unwrap().trim().to_string()
    }

    fn json(&self, args: &[&str]) -> Value {
        let mut a = vec!["--json"];
        a.extend_from_slice(args);
        serde_json::from_str(&self.ok(&a)).unwrap()
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn code(out: &Output) -> Option<i32> {
    out.status.code()
}

#[test]
fn family_then_classify_reports_minimal_degree() {
    let s = Scratch::new("classify");
    let file = s.ok(&["family", "rnc", "--d", "6"]);
    assert_eq!(file, "rnc-6.ideal");
    assert!(Path::new(&s.path("rnc-6.ideal.param")).exists());
    let env = s.json(&["--seed", "7", "classify", "--q", "2", &file]);
    assert_eq!(env["schema"], "report-v1");
    assert_eq!(env["prime"], 32003);
    assert_eq!(env["seed"], 7);
    assert_eq!(env["ok"], true);
    let r = &env["result"]["report"];
    assert_eq!(r["verdicts"]["is_minimal_degree"], true);
    assert_eq!(r["e"], 3);
    assert_eq!(r["degree"], 10);
    assert!(env["result"]["equivalences"].as_array().unwrap().iter().all(|e| e["agreed"] == true));
}

#[test]
fn classify_accepts_family_specs_and_runs_properties() {
    let s = Scratch::new("props");
    let env = s.json(&["--seed", "2", "classify", "--q", "2", "--properties", "rnc:5"]);
    let props = env["result"]["properties"].as_array().unwrap();
    assert!(!props.is_empty());
    assert!(props.iter().all(|p| p["ok"] != false));
    assert_eq!(env["result"]["gbcwf"]["lhs"], env["result"]["gbcwf"]["rhs"]);
}

#[test]
fn trigonal_pei_at_a_point_of_the_curve() {
    let s = Scratch::new("trigonal");
    let c = s.ok(&["--seed", "7", "family", "trigonal-g3"]);
    let sec = s.ok(&["--seed", "7", "secant", "--q", "2", &c]);
    let inv = s.json(&["invariants", &sec]);
    assert_eq!((inv["result"]["codim"].as_i64(), inv["result"]["degree"].as_i64()), (Some(1), Some(12)));
    let pei = s.json(&["--seed", "7", "pei", "--point", "auto", &sec]);
    assert_eq!(pei["result"]["s"], 6);
    assert_eq!(pei["result"]["deg_pi"], 6);
    assert_eq!(pei["result"]["top_x0_degree"], 6);
}

#[test]
fn pei_with_secgenus_on_a_cubic() {
    let s = Scratch::new("pei");
    let c = s.ok(&["family", "rnc", "--d", "4"]);
    let sec = s.ok(&["secant", "--q", "2", "--method", "elim", &c]);
    let env = s.json(&["--seed", "1", "pei", "--verify-secgenus", &sec]);
    let r = &env["result"];
    assert_eq!(env["ok"], true);
    // the curve is double on its secant cubic, so one step suffices
    assert_eq!(r["top_x0_degree"], 1);
    assert_eq!(r["s"], 1);
    assert_eq!(r["dims"].as_array().unwrap().len(), r["chain"].as_array().unwrap().len());
    assert_eq!(r["secgenus"]["degree_formula"], true);
    assert!(!r["k_inf"].as_array().unwrap().is_empty());
}

#[test]
fn invariants_and_betti_of_the_twisted_quartic() {
    let s = Scratch::new("betti");
    let c = s.ok(&["family", "rnc", "--d", "4"]);
    let inv = s.json(&["invariants", &c])["result"].clone();
    assert_eq!(inv["dim"], 1);
    assert_eq!(inv["degree"], 4);
    assert_eq!(inv["sectional_genus"], 0);
    let b = s.json(&["betti", "--rows", "0..1", "--cols", "0..3", &c])["result"].clone();
    let nz: Vec<(u64, u64, u64)> = b["nonzero"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t[0].as_u64().unwrap(), t[1].as_u64().unwrap(), t[2].as_u64().unwrap()))
        .collect();
    assert_eq!(nz, vec![(0, 0, 1), (1, 1, 6), (2, 1, 8), (3, 1, 3)]);
    let text = s.ok(&["betti", &c]);
    assert!(text.lines().next().unwrap().ends_with("0 1 2 3"), "{text}");
    assert!(text.contains("1: - 6 8 3"), "{text}");
}

#[test]
fn projections_drop_degree_as_expected() {
    let s = Scratch::new("project");
    let c = s.ok(&["family", "rnc", "--d", "6"]);
    let inner = s.ok(&["--seed", "3", "project", "--inner", "auto", &c]);
    assert_eq!(s.json(&["invariants", &inner])["result"]["degree"], 5);
    let tan = s.ok(&["--seed", "3", "project", "--tangential", "auto", "--out", "t.ideal", &c]);
    assert_eq!(tan, "t.ideal");
    assert_eq!(s.json(&["invariants", &tan])["result"]["degree"], 4);
    std::fs::write(s.path("pts"), "1:0:0:0:0:0:0\n0:0:0:0:0:0:1\n").unwrap();
    let sp = s.ok(&["project", "--space", "pts", &c]);
    assert_eq!(s.json(&["invariants", &sp])["result"]["codim"], 3);
}

#[test]
fn char2_secant_is_a_quartic() {
    let s = Scratch::new("char2");
    let c = s.ok(&["family", "char2"]);
    let sec = s.ok(&["secant", "--method", "elim", "--q", "2", &c]);
    let inv = s.json(&["invariants", &sec]);
    assert_eq!(inv["prime"], 2);
    assert_eq!(inv["result"]["codim"], 1);
    assert_eq!(inv["result"]["degree"], 4);
}

#[test]
fn verify_formulas_is_reproducible() {
    let s = Scratch::new("verify");
    assert!(s.ok(&["verify", "--suite", "formulas"]).starts_with("[formulas] pass 7 fail 0"));
    let a = s.json(&["--seed", "4", "verify", "--suite", "formulas,kp1", "--filter", "rnc-5 q=2"]);
    let b = s.json(&["--seed", "4", "verify", "--suite", "kp1,formulas", "--filter", "rnc-5 q=2", "--seeds", "3"]);
    assert_eq!(a["ok"], true);
    assert!(a["result"]["cases"][0].get("millis").is_none());
    let names = |v: &Value| v["result"]["suites"].as_array().unwrap().iter().map(|s| s["suite"].clone()).collect::<Vec<_>>();
    assert_eq!(names(&a).len(), 2);
    let c = s.json(&["--seed", "4", "verify", "--suite", "formulas,kp1", "--filter", "rnc-5 q=2"]);
    assert_eq!(a["result"], c["result"]);
    assert_eq!(a["result"]["cases"], b["result"]["cases"]);
}

#[test]
fn exit_codes() {
    let s = Scratch::new("exit");
    assert_eq!(code(&s.run(&["bogus"])), Some(3));
    assert_eq!(code(&s.run(&["--help"])), Some(0));
    assert_eq!(code(&s.run(&["verify", "--suite", "nope"])), Some(3));
    assert_eq!(code(&s.run(&["classify", "--q", "2", "no-such-thing"])), Some(3));
    let c = s.ok(&["family", "char2"]);
    assert_eq!(code(&s.run(&["--prime", "7", "invariants", &c])), Some(3));
    let r = s.ok(&["family", "rnc", "--d", "6"]);
    assert_eq!(code(&s.run(&["project", "--inner", "1:2:3:4:5:6:7", &r])), Some(3));
    assert_eq!(code(&s.run(&["--max-degree", "2", "classify", "--q", "2", &r])), Some(1));
    assert_eq!(code(&s.run(&["--max-matrix", "100", "classify", "--q", "2", &r])), Some(1));
    let err = String::from_utf8(s.run(&["--max-matrix", "100", "classify", "--q", "2", &r]).stderr).unwrap();
    assert!(err.contains("too large"), "{err}");
}

fn object_keys(v: &Value, out: &mut std::collections::BTreeSet<String>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                out.insert(k.clone());
                object_keys(x, out);
            }
        }
        Value::Array(a) => a.iter().for_each(|x| object_keys(x, out)),
        _ => {}
    }
}

fn schema_properties(v: &Value, out: &mut std::collections::BTreeSet<String>) {
    match v {
        Value::Object(m) => {
            if let Some(Value::Object(p)) = m.get("properties") {
                out.extend(p.keys().cloned());
            }
            m.values().for_each(|x| schema_properties(x, out));
        }
        Value::Array(a) => a.iter().for_each(|x| schema_properties(x, out)),
        _ => {}
    }
}

#[test]
fn every_emitted_field_is_in_the_schema() {
    let schema: Value =
        serde_json::from_str(include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/report-v1.schema.json")))
            .unwrap();
    let mut documented = std::collections::BTreeSet::new();
    schema_properties(&schema, &mut documented);
    let s = Scratch::new("schema");
    let c = s.ok(&["family", "rnc", "--d", "4"]);
    let sec = s.ok(&["secant", "--q", "2", &c]);
    let mut outputs = vec![
        s.json(&["family", "rnc", "--d", "5"]),
        s.json(&["family", "project", "--base", "rnc:5", "--center", "outer", "--out", "p.ideal"]),
        s.json(&["secant", "--q", "2", "--out", "x.ideal", &c]),
        s.json(&["project", "--inner", "auto", &c]),
        s.json(&["pei", "--verify-secgenus", &sec]),
        s.json(&["invariants", &c]),
        s.json(&["betti", &c]),
        s.json(&["--seed", "1", "classify", "--q", "2", "--properties", &c]),
        s.json(&["verify", "--suite", "formulas,engine", "--filter", "rnc-4 q=2"]),
    ];
    outputs.push(s.json(&["classify", "--given-secant", "--q", "2", &sec]));
    for out in &outputs {
        let mut keys = std::collections::BTreeSet::new();
        object_keys(out, &mut keys);
        // timings_ms entries are step names, not fields
        for k in keys.iter().filter(|k| !out["timings_ms"].as_object().unwrap().contains_key(*k)) {
            assert!(documented.contains(k), "field {k:?} of {:?} is not in the schema", out["command"]);
        }
    }
}
