use lbrep_cli::{dispatch, schema, Outcome};
use serde_json::Value;

fn run(args: &[&str]) -> Outcome {
    let mut argv = vec!["lbrep"];
    argv.extend_from_slice(args);
    dispatch(&argv)
}

fn json(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}\n{}", out.stdout, out.stderr))
}

fn assert_valid(command: &str, report: &Value) {
    let schema: Value = serde_json::from_str(schema(command).unwrap()).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).unwrap();
    let msgs: Vec<String> = match compiled.validate(report) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{e} at {}", e.instance_path)).collect(),
    };
    panic!("{command} report violates its schema: {msgs:?}");
}

#[test]
fn affine_representation_does_not_factor_over_symmetric_group() {
    let out = run(&["check-relations", "--rep", "affine", "--m", "5", "--t", "2", "--n", "3", "--variant", "SLB"]);
    assert_eq!(out.code, 1);
    let v = json(&out);
    assert_valid("check-relations", &v);
    let failed: Vec<&str> = v["report"]["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["ok"] == false)
        .map(|r| r["label"].as_str().unwrap())
        .collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|l| *l == "L3"));
    let out = run(&["check-relations", "--rep", "affine", "--m", "5", "--t", "2", "--n", "3", "--variant", "LB"]);
    assert_eq!(out.code, 0);
}

#[test]
fn tau_relations_in_both_forms() {
    let out = run(&["check-relations", "--rep", "tau", "--N", "2", "--x", "7/2", "--n", "3", "--variant", "SLB"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_valid("check-relations", &json(&out));
    let out = run(&["--ring", "laurent", "check-relations", "--rep", "tau", "--N", "2", "--n", "3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(json(&out)["manifest"]["ring"], "laurent");
}

#[test]
fn small_affine_image() {
    let out = run(&["affine-image", "--m", "3", "--t", "2", "--n", "2"]);
    assert_eq!(out.code, 0);
    let v = json(&out);
    assert_valid("affine-image", &v);
    assert_eq!(v["order"], 6);
    assert_eq!(v["expected_order"], 6);
    assert_eq!(v["complete"], true);
    assert_eq!(v["surjective_predicted"], true);
    assert!(v.get("elements").is_none());
    let listed = json(&run(&["affine-image", "--m", "3", "--t", "2", "--n", "2", "--emit-elements"]));
    assert_valid("affine-image", &listed);
    assert_eq!(listed["elements"].as_array().unwrap().len(), 6);
}

#[test]
fn decomposition_lists_the_two_one_module() {
    let out = run(&["decompose", "--N", "3", "--n", "3", "--x", "2", "--basis"]);
    assert_eq!(out.code, 0);
    let v = json(&out);
    assert_valid("decompose", &v);
    let hit = v["modules"].as_array().unwrap().iter().any(|m| m["lambda"] == serde_json::json!([2, 1]) && m["dim"] == 3);
    assert!(hit);
    assert_eq!(v["total_dim"], "27");
    let modular = run(&["--ring", "zp", "--prime", "101", "decompose", "--N", "3", "--n", "3"]);
    assert_eq!(json(&modular)["manifest"]["ring"], "zp:101");
    assert_eq!(run(&["--ring", "laurent", "decompose", "--N", "3", "--n", "3"]).code, 2);
}

#[test]
fn ybe_and_drinfeld() {
    let out = run(&["ybe", "--m", "5", "--t", "2"]);
    assert_eq!(out.code, 0);
    let v = json(&out);
    assert_valid("ybe", &v);
    assert_eq!(v["d"], 5);
    assert_eq!(v["drinfeld"]["matches_leg_transpose"], true);
}

#[test]
fn bvs_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("flip.json");
    let c = serde_json::json!([
        ["1", "0", "0", "0"],
        ["0", "0", "1", "0"],
        ["0", "1", "0", "0"],
        ["0", "0", "0", "1"]
    ]);
    std::fs::write(&path, serde_json::json!({ "d": 2, "ring": "rational", "c": c }).to_string()).unwrap();
    let p = path.to_str().unwrap();
    let out = run(&["ybe", "--bvs", p]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_valid("ybe", &json(&out));
    let out = run(&["check-relations", "--rep", "bvs", "--bvs", p, "--n", "3", "--variant", "SLB"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    std::fs::write(&path, "{\"d\": 2}").unwrap();
    assert_eq!(run(&["ybe", "--bvs", p]).code, 2);
}

#[test]
fn branch_graph_outputs() {
    let out = run(&["branch", "--N", "2", "--nmax", "2"]);
    assert_eq!(out.code, 0);
    let v = json(&out);
    assert_valid("branch", &v);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 4);
    assert_eq!(v["edges"].as_array().unwrap().len(), 3);
    let dot = run(&["branch", "--N", "3", "--nmax", "3", "--dot"]);
    assert!(dot.stdout.starts_with("digraph harmonic {"));
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.dot");
    let out = run(&["branch", "--N", "2", "--nmax", "3", "--dot", file.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(std::fs::read_to_string(&file).unwrap().contains("->"));
    assert_valid("branch", &json(&out));
}

#[test]
fn irreducibility_reports() {
    let out = run(&["irreducible", "--N", "2", "--n", "4", "--x", "3"]);
    assert_eq!(out.code, 0);
    assert_valid("irreducible", &json(&out));
    let out = run(&["irreducible", "--N", "2", "--n", "3", "--x", "-1"]);
    assert_eq!(out.code, 1);
    let v = json(&out);
    assert_valid("irreducible", &v);
    let reducible: Vec<&str> = v["modules"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|m| m["irreducible"] == false)
        .map(|m| m["label"].as_str().unwrap())
        .collect();
    assert_eq!(reducible, vec!["Y_(2,1)"]);
    let modular = run(&["--ring", "zp", "irreducible", "--N", "2", "--n", "3"]);
    assert_eq!(modular.code, 0, "{}", modular.stderr);
    assert!(json(&modular)["manifest"]["ring"].as_str().unwrap().starts_with("zp:"));
}

#[test]
fn bmw_reports() {
    let two = run(&["bmw-check", "--N", "2"]);
    assert_eq!(two.code, 0);
    assert_valid("bmw-check", &json(&two));
    let three = run(&["bmw-check", "--N", "3"]);
    assert_eq!(three.code, 1);
    assert_valid("bmw-check", &json(&three));
}

#[test]
fn semisimple_and_localize() {
    let out = run(&["semisimple", "--N", "2", "--n", "3", "--triangle"]);
    assert_eq!(out.code, 0);
    let v = json(&out);
    assert_valid("semisimple", &v);
    assert_eq!(v["radical_dim"], 0);
    assert_eq!(v["triangle"]["holds"], true);
    assert_eq!(run(&["--ring", "zp", "semisimple", "--N", "2", "--n", "3"]).code, 2);
    let out = run(&["localize", "--N", "3", "--n", "4"]);
    assert_eq!(out.code, 0);
    assert_valid("localize", &json(&out));
}

#[test]
fn reports_are_reproducible() {
    let args = ["decompose", "--N", "2", "--n", "4", "--basis"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let timed = run(&["--timing", "affine-image", "--m", "3", "--t", "2", "--n", "2"]);
    assert!(json(&timed)["manifest"]["wall_time_us"].is_u64());
    assert_valid("affine-image", &json(&timed));
}
