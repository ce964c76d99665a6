use std::process::{Command, Output};

use serde_json::Value;

fn qsw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsw")).args(args).env_remove("QSW_LOG").output().expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = qsw(&a);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn schema(verb: &str) -> jsonschema::Validator {
    let path = format!("{}/schemas/{verb}.json", env!("CARGO_MANIFEST_DIR"));
    let s: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&s).unwrap()
}

#[test]
fn dims_footer() {
    let o = qsw(&["dims", "--multiindex", "3,2,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sum (s+1) D = 36, prod (s_i+1) = 36"));
    let j = json(&["dims", "--multiindex", "3,2,2"]);
    assert_eq!(j["sum_weighted"], 36);
    assert_eq!(j["module_dim"], 36);
}

#[test]
fn duality_report() {
    let j = json(&["duality", "--multiindex", "1,1,1", "--q", "rational:2/1"]);
    assert_eq!(j["flags"]["faithful"], true);
    assert_eq!(j["dims"]["tl"], 5);
    assert_eq!(j["dims"]["uq_commutant"], 5);
    let plain = stdout(&qsw(&["duality", "--multiindex", "1,1,1", "--q", "rational:2/1"]));
    assert!(plain.contains("faithful           true"));

    let j = json(&["duality", "--multiindex", "2,1"]);
    assert_eq!(j["commutant_q"], "rational:2");
    assert!(j["notes"][0].as_str().unwrap().contains("rational:2/1"));
}

#[test]
fn jw_check() {
    let o = qsw(&["jw", "--size", "3", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("P1 (idempotent)         pass"));
    assert!(out.contains("pass") && !out.contains("fail"));
}

#[test]
fn patterns_and_words() {
    let j = json(&["patterns", "--pattern", "(())||"]);
    assert_eq!(j["links"], serde_json::json!([[1, 4], [2, 3]]));
    assert_eq!(j["defects"], serde_json::json!([5, 6]));
    let o = qsw(&["patterns", "--pattern", "(|)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("defect at positive depth"));

    let a = json(&["eval", "--size", "3", "--expr", "U1*U2*U1"]);
    let b = json(&["eval", "--size", "3", "--expr", "U1"]);
    assert_eq!(a["terms"], b["terms"]);
    let j = json(&["eval", "--size", "2", "--expr", "(i*v)*U1 + 1"]);
    assert_eq!(j["terms"][0]["c"], "i*v");
}

#[test]
fn csv_cells_are_scalars() {
    let o = qsw(&["gram", "--multiindex", "1,1,1,1", "--defects", "0", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("pattern,()(),(())"));
    assert!(lines.next().unwrap().starts_with("()(),"));
}

#[test]
fn exit_codes() {
    assert_eq!(qsw(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qsw(&["dims"]).status.code(), Some(2));
    assert_eq!(qsw(&["dims", "--multiindex", "1,x"]).status.code(), Some(2));
    assert_eq!(qsw(&["jw", "--size", "3", "--q", "root:1:3"]).status.code(), Some(2));
    assert_eq!(qsw(&["qi", "--q", "rational:2/1"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_qsw")).args(["qi"]).env("QSW_LOG", "loud").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    // radicals at q = e^(i pi/3) hold, so the report succeeds
    assert_eq!(qsw(&["radical", "--multiindex", "1,1,1", "--q", "root:1:3"]).status.code(), Some(0));
}

#[test]
fn out_file_and_determinism() {
    let dir = std::env::temp_dir().join(format!("qsw-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let p = path.to_str().unwrap();
    let args = ["hwv", "--multiindex", "2,1,1", "--defects", "2", "--format", "json", "--out", p];
    assert_eq!(qsw(&args).status.code(), Some(0));
    let first = std::fs::read(&path).unwrap();
    qsw(&args);
    assert_eq!(first, std::fs::read(&path).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_matches_schemas() {
    let runs: &[(&str, &[&str])] = &[
        ("dims", &["--multiindex", "2,1,1"]),
        ("walks", &["--multiindex", "2,1,1"]),
        ("patterns", &["--multiindex", "1,1,1,1"]),
        ("patterns", &["--pattern", "()|"]),
        ("jw", &["--size", "3", "--check"]),
        ("eval", &["--size", "2", "--expr", "U1*U1"]),
        ("eval", &["--size", "2", "--expr", "U1", "--pattern", "()"]),
        ("gram", &["--multiindex", "1,1,1", "--defects", "1"]),
        ("hwv", &["--multiindex", "2,1", "--defects", "1"]),
        ("coblo", &["--multiindex", "1,1,1", "--walk", "1,0,1"]),
        ("pairing", &["--multiindex", "2,1,1", "--defects", "0"]),
        ("duality", &["--multiindex", "1,2"]),
        ("radical", &["--multiindex", "1,1,1", "--q", "root:1:3"]),
        ("classical", &["--multiindex", "1,1"]),
        ("qi", &[]),
    ];
    for (verb, rest) in runs {
        let mut args = vec![*verb];
        args.extend_from_slice(rest);
        let j = json(&args);
        let v = schema(verb);
        let errs: Vec<String> = v.iter_errors(&j).map(|e| e.to_string()).collect();
        assert!(errs.is_empty(), "{verb} {rest:?}: {errs:?}");
    }
}
