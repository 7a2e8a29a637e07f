use std::ffi::OsString;
use std::io::Write as _;

use clonekit::cli::run_with;
use clonekit::clones::all_named;
use serde_json::{json, Value};

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn call(args: &[&str]) -> Outcome {
    let mut argv: Vec<OsString> = vec!["clonekit".into()];
    argv.extend(args.iter().map(OsString::from));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(argv, &mut out, &mut err);
    Outcome {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn json_ok(args: &[&str]) -> Value {
    let o = call(args);
    assert_eq!(o.code, 0, "{args:?}: {} {}", o.out, o.err);
    serde_json::from_str(&o.out).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", o.out))
}

fn temp_file(name: &str, content: &str) -> String {
    let dir = std::env::temp_dir().join(format!("clonekit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::File::create(&path).unwrap().write_all(content.as_bytes()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn exit_codes_and_error_shape() {
    let o = call(&["classify", "--problem", "NOPE", "--basis", "and"]);
    assert_eq!(o.code, 1);
    let v: Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v["error"]["code"], "UNKNOWN_PROBLEM");
    assert!(v["error"]["message"].is_string());
    let usage = call(&["bogus"]);
    assert_eq!(usage.code, 2);
    assert!(usage.out.is_empty() && !usage.err.is_empty());
    assert_eq!(call(&["--help"]).code, 0);
    assert_eq!(call(&["--version"]).code, 0);
}

#[test]
fn clone_commands() {
    assert_eq!(json_ok(&["clone", "id", "--basis", "and,or"]), json!({"clone": {"family": "M2"}}));
    assert_eq!(json_ok(&["clone", "leq", "--left", "and", "--right", "and,or"]), json!({"leq": true}));
    assert_eq!(json_ok(&["clone", "member", "--function", "2:8", "--basis", "and"]), json!({"member": true}));
    assert_eq!(json_ok(&["clone", "member", "--function", "2:6", "--basis", "and"]), json!({"member": false}));
}

#[test]
fn clone_base_round_trips_through_identification() {
    for c in all_named(4) {
        let base = json_ok(&["clone", "base", "--clone", &c.to_string()]);
        let names: Vec<&str> = base["basis"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
        let id = json_ok(&["clone", "id", "--basis", &names.join(",")]);
        assert_eq!(id["clone"], base["clone"], "{c}");
    }
}

#[test]
fn lattice_dot_is_deterministic() {
    let a = call(&["clone", "lattice-dot"]);
    let b = call(&["clone", "lattice-dot"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.out, b.out);
    assert!(a.out.starts_with("digraph"));
    assert!(a.out.contains("\"BF\" -> \"R0\""));
}

#[test]
fn classify_single_and_batch() {
    let v = json_ok(&["classify", "--problem", "SAT", "--basis", "nimp"]);
    assert_eq!(v["class"], "NP");
    assert_eq!(v["completeness"], "complete");
    assert!(v["citation"].is_string());
    let v = json_ok(&["classify", "--problem", "MODAL_CONSISTENCY", "--basis", "and", "--modal", "dia,box"]);
    assert_eq!(v["class"], "coNP");
    let path = temp_file(
        "batch.json",
        r#"[{"problem":"SAT","basis":"nimp"},{"problem":"TAUT","basis":"imp"},{"problem":"NOPE","basis":"and"}]"#,
    );
    let v = json_ok(&["classify", "--batch", &path]);
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 3);
    assert_eq!(arr[0]["class"], "NP");
    assert_eq!(arr[1]["class"], "coNP");
    assert_eq!(arr[2]["error"]["code"], "UNKNOWN_PROBLEM");
}

#[test]
fn formula_commands() {
    let v = json_ok(&["sat", "--formula", "p&!q"]);
    assert_eq!(v["status"], "satisfiable");
    assert_eq!(v["witness"], json!({"p": true, "q": false}));
    assert_eq!(json_ok(&["sat", "--formula", "p&!p"])["status"], "unsatisfiable");
    assert_eq!(json_ok(&["count", "--formula", "p|q"])["count"], 3);
    assert_eq!(json_ok(&["count", "--formula", "p", "--prop", "p,q,r"])["count"], 4);
    assert_eq!(json_ok(&["express", "--formula", "p^q", "--basis", "xor"]), json!({"expressible": true}));
    assert_eq!(json_ok(&["express", "--formula", "p&q", "--basis", "xor"]), json!({"expressible": false}));
    assert_eq!(json_ok(&["measure", "--formula", "(p^q)^(p^q)"]), json!({"dag": 4, "tree": 7}));
}

#[test]
fn modal_commands() {
    let model = temp_file("model.json", r#"{"worlds":["a","b"],"rel":[["a","b"]],"val":{"b":["p"]},"point":"a"}"#);
    assert_eq!(
        json_ok(&["modal", "mc", "--model", &model, "--formula", "<>p"]),
        json!({"holds": true, "world": "a"})
    );
    assert_eq!(json_ok(&["modal", "mc", "--model", &model, "--formula", "[]p", "--world", "b"])["holds"], true);
    assert_eq!(
        json_ok(&["modal", "clos", "--logic", "K", "--modal", "dia", "--clone", "E2"])["clos"],
        json!({"exact": "E2"})
    );
    assert_eq!(
        json_ok(&["modal", "leq", "--logic", "K", "--modal", "dia", "--left", "or,top", "--right", "or"]),
        json!({"leq": false})
    );
    assert_eq!(
        json_ok(&["modal", "complete", "--logic", "K", "--modal", "dia", "--basis", "and,not"]),
        json!({"complete": "Yes"})
    );
    let gl = call(&["modal", "leq", "--logic", "GL", "--modal", "dia", "--left", "or", "--right", "or"]);
    assert_eq!(gl.code, 1);
}

#[test]
fn teach_make_feeds_teach_verify() {
    let made = call(&["teach", "make", "--formula", "p&q", "--basis", "and,or", "--prop", "p,q"]);
    assert_eq!(made.code, 0);
    let set: Value = serde_json::from_str(&made.out).unwrap();
    assert_eq!(set["examples"].as_array().unwrap().len(), 3);
    let path = temp_file("examples.json", &made.out);
    let v = json_ok(&["teach", "verify", "--formula", "p&q", "--basis", "and,or", "--prop", "p,q", "--examples", &path]);
    assert_eq!(v["result"], "unique");
    let partial = temp_file("partial.json", r#"[{"assignment":{"p":1,"q":1},"label":1}]"#);
    let v = json_ok(&["teach", "verify", "--formula", "p&q", "--basis", "and,or", "--prop", "p,q", "--examples", &partial]);
    assert_eq!(v["result"], "ambiguous");

    let made = call(&["teach", "make", "--modal", "--formula", "<>p", "--prop", "p"]);
    assert_eq!(made.code, 0);
    let path = temp_file("modal-examples.json", &made.out);
    let v = json_ok(&["teach", "verify", "--modal", "--formula", "<>p", "--prop", "p", "--examples", &path, "--bound", "2"]);
    assert_eq!(v["result"], "unique_up_to_bound");
}

#[test]
fn learn_and_reduce() {
    let oracle = temp_file("oracle.txt", "4:8000\n");
    let v = json_ok(&["learn", "--basis", "and", "--prop", "p,q,r,s", "--oracle-file", &oracle]);
    assert_eq!(v["family"], "conjunction");
    assert_eq!(v["queries"], 5);
    assert_eq!(v["table"], "4:8000");
    let v = json_ok(&["reduce", "make", "--kind", "aimp", "--formula", "p&q"]);
    assert_eq!(v["kind"], "aimp");
    assert_eq!(v["guard"], "w");
    let v = json_ok(&["reduce", "verify", "--kind", "aimp", "--n", "2", "--k", "3"]);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["condition1"], true);
    assert_eq!(v["condition2"], true);
}

#[test]
fn pretty_output_and_config_file() {
    let o = call(&["--pretty", "clone", "id", "--basis", "and"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.out, "clone:\n  family: E2\n");
    let cfg = temp_file("config.json", r#"{"arity_cap": 2}"#);
    let o = call(&["--config", &cfg, "clone", "id", "--basis", "maj"]);
    assert_eq!(o.code, 1, "{}", o.out);
    let o = call(&["--arity-cap", "2", "clone", "id", "--basis", "maj"]);
    assert_eq!(o.code, 1, "{}", o.out);
}
