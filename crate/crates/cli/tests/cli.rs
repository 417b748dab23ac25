use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbt-schur")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> Option<i32> {
    run(args).status.code()
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn trees_listing() {
    assert_eq!(stdout(&["trees", "-n", "2"]), "{0,1}\n{0,2}\n");
    assert_eq!(stdout(&["trees", "-n", "0"]), "{}\n");
    assert_eq!(stdout(&["trees", "-n", "4", "--count"]), "14\n");
    let lines = stdout(&["--json", "trees", "-n", "3"]);
    assert_eq!(lines.lines().count(), 5);
    for line in lines.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["nodes"], 3);
    }
    assert_eq!(code(&["trees", "-n", "13"]), Some(2));
    assert_eq!(stdout(&["--unsafe-no-guard", "trees", "-n", "13", "--count"]), "742900\n");
}

#[test]
fn apply_operators() {
    let four = stdout(&["apply", "-o", "U", "-i", "3", "-t", "{0}"]);
    let terms: Vec<&str> = four.trim().split(" + ").collect();
    assert_eq!(terms.len(), 4);
    assert!(terms.iter().all(|t| t.starts_with('{')));
    assert!(terms.contains(&"{0,1,11,111}"));
    assert_eq!(stdout(&["apply", "-o", "D", "-i", "1", "-t", "{0,1,12}"]), "{0,2}\n");
    assert_eq!(stdout(&["apply", "-o", "D", "-i", "2", "-t", "{0}"]), "0\n");
    assert_eq!(stdout(&["apply", "-o", "D*", "-i", "1", "-t", "{0}"]), "{0,1} + {0,2}\n");
    let json: serde_json::Value = serde_json::from_str(&stdout(&["--json", "apply", "-o", "U'", "-i", "2", "-t", "{0}"])).unwrap();
    assert_eq!(json["terms"].as_array().unwrap().len(), 3);
    assert_eq!(code(&["apply", "-o", "D", "-i", "1", "-t", "{12}"]), Some(2));
    assert_eq!(code(&["apply", "-o", "Q", "-i", "1", "-t", "{0}"]), Some(2));
    assert_eq!(code(&["apply", "-o", "U", "-i", "6", "-t", "{0}"]), Some(2));
}

#[test]
fn verify_reports() {
    let out = stdout(&["--json", "verify", "commutation", "--max-nodes", "4", "--max-deg", "2"]);
    let report: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(report["status"], "pass");
    assert!(report["counterexamples"].as_array().unwrap().is_empty());
    assert!(report["bounds"].is_object());
    assert!(report["identity"].is_string());
    for target in [
        vec!["verify", "dual-graph", "--max-nodes", "5"],
        vec!["verify", "dual-commutation", "--max-nodes", "3", "--max-deg", "2"],
        vec!["verify", "bijection", "--family", "U'", "--max-nodes", "3", "--max-deg", "2"],
        vec!["verify", "labelling-sum", "--max-nodes", "3", "--vars", "3"],
        vec!["verify", "cauchy", "--family", "U", "--vars", "2", "2", "--max-degree", "4"],
        vec!["verify", "rsk", "--vars", "2", "2", "--max-total", "3"],
    ] {
        assert_eq!(code(&target), Some(0), "{target:?}");
    }
    assert_eq!(code(&["verify", "commutation", "--max-nodes", "9"]), Some(2));
    assert_eq!(code(&["verify", "commutation", "--max-deg", "6"]), Some(2));
    assert_eq!(code(&["verify", "nonsense"]), Some(2));
}

#[test]
fn polynomials() {
    assert_eq!(stdout(&["poly", "-s", "D", "-t", "{0,1,12}", "--vars", "2"]), "t1 t2^2\n");
    assert_eq!(stdout(&["poly", "-s", "U", "-t", "{0,1}", "--vars", "2"]), "t1^2 + t1 t2 + t2^2\n");
    assert_eq!(stdout(&["poly", "-s", "D", "-t", "{}", "--vars", "3"]), "1\n");
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["--json", "poly", "-s", "D", "-t", "{0,1,12}", "--vars", "2"])).unwrap();
    assert_eq!(json["terms"], serde_json::json!([{ "exponents": [1, 2], "coeff": 1 }]));
}

#[test]
fn rsk_round_trip() {
    let one = temp_file("1\n");
    let forward: serde_json::Value = serde_json::from_str(&stdout(&["rsk", one.path().to_str().unwrap()])).unwrap();
    assert_eq!(forward["P"], serde_json::json!(["{}", "{0}"]));
    assert_eq!(forward["Q"], serde_json::json!(["{}", "{0}"]));
    assert_eq!(forward["shape"], "{0}");

    let zero = temp_file("0,0\n0,0\n");
    let forward: serde_json::Value = serde_json::from_str(&stdout(&["rsk", zero.path().to_str().unwrap()])).unwrap();
    assert_eq!(forward["P"], serde_json::json!(["{}", "{}", "{}"]));

    let two = temp_file("2\n");
    assert_eq!(code(&["rsk", "--family", "U'", two.path().to_str().unwrap()]), Some(2));

    let m = temp_file("1,0,2\n0,1,1\n");
    let paths = stdout(&["--json", "rsk", m.path().to_str().unwrap(), "--diagram"]);
    let parsed: serde_json::Value = serde_json::from_str(&paths).unwrap();
    assert_eq!(parsed["diagram"].as_array().unwrap().len(), 4);
    let paths_file = temp_file(&paths);
    assert_eq!(stdout(&["rsk", "--direction", "inverse", paths_file.path().to_str().unwrap()]), "1,0,2\n0,1,1\n");

    let mismatch = temp_file(r#"{"P": ["{}", "{0}"], "Q": ["{}", "{0,1}"]}"#);
    assert_eq!(code(&["rsk", "--direction", "inverse", mismatch.path().to_str().unwrap()]), Some(1));
    let malformed = temp_file("1,x\n");
    assert_eq!(code(&["rsk", malformed.path().to_str().unwrap()]), Some(2));
    assert_eq!(code(&["rsk", "/nonexistent/matrix.csv"]), Some(2));
}

#[test]
fn graph_export() {
    let dot = stdout(&["graph", "-f", "D", "-i", "1", "-n", "3"]);
    let vertices = dot.lines().filter(|l| l.trim_start().starts_with('"') && !l.contains("->")).count();
    assert_eq!(vertices, 1 + 1 + 2 + 5);
    assert_eq!(stdout(&["--json", "graph", "-f", "U", "-i", "1", "-n", "1"]), "{\"from\":\"{}\",\"to\":\"{0}\",\"family\":\"U\",\"degree\":1}\n");
    let edges = |f: &str| -> Vec<String> {
        stdout(&["graph", "-f", f, "-i", "1", "-n", "3"]).lines().filter(|l| l.contains("->")).map(str::to_string).collect()
    };
    assert_eq!(edges("U"), edges("U'"));
    assert_eq!(code(&["graph", "-f", "U", "-i", "1", "-n", "9"]), Some(2));
}

#[test]
fn labellings_listing() {
    assert_eq!(
        stdout(&["labellings", "-t", "{0,1}", "-k", "right-strict", "-m", "2"]),
        "right-strict; {0:1, 1:1}\nright-strict; {0:1, 1:2}\nright-strict; {0:2, 1:2}\n"
    );
    assert_eq!(stdout(&["labellings", "-t", "{0,2}", "-k", "right-strict", "-m", "2"]).lines().count(), 1);
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "verify", "bijection", "--max-nodes", "3", "--max-deg", "2"];
    assert_eq!(stdout(&args), stdout(&args));
    let args = ["graph", "-f", "U'", "-i", "2", "-n", "5"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&[]), Some(2));
    assert_eq!(code(&["trees"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["--help"]), Some(0));
}
