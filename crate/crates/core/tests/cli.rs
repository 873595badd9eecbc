use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn wlp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wlp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.extend(["--output", "json"]);
    let o = wlp(&full);
    let v = serde_json::from_slice(&o.stdout).expect("stdout is one JSON document");
    (v, o.status.code().expect("exit code"))
}

fn temp_file(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("wlp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::File::create(&path)
        .and_then(|mut f| f.write_all(body.as_bytes()))
        .unwrap();
    path
}

#[test]
fn indpoly_lollipop() {
    let o = wlp(&["indpoly", "--lollipop", "4", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("1 + 13*t + 63*t^2 + 140*t^3 + 140*t^4 + 51*t^5 + 3*t^6"));
    assert!(text.contains("mode: 3"));

    let (v, code) = json(&["indpoly", "--lollipop", "4", "9"]);
    assert_eq!(code, 0);
    assert_eq!(v["polynomial"], serde_json::json!(["1", "13", "63", "140", "140", "51", "3"]));
    assert_eq!(v["is_unimodal"], true);
    assert_eq!(v["mode"], 3);
}

#[test]
fn indpoly_small_graphs() {
    let (v, _) = json(&["indpoly", "--path", "1"]);
    assert_eq!(v["polynomial"], serde_json::json!(["1", "1"]));
    // a tie between t^0 and t^1 resolves to the first index
    assert_eq!(v["mode"], 0);

    let empty = temp_file("empty.txt", "n 0\n");
    let o = wlp(&["indpoly", "--graph-file", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().next().unwrap().ends_with("= 1"));

    let triangle = temp_file("triangle.txt", "# K3\nn 3\n0 1\n1 2\n0 2\n");
    let (v, _) = json(&["indpoly", "--graph-file", triangle.to_str().unwrap()]);
    assert_eq!(v["polynomial"], serde_json::json!(["1", "3"]));
}

#[test]
fn wlp_exit_codes() {
    assert_eq!(wlp(&["wlp", "--path", "13"]).status.code(), Some(0));
    assert_eq!(wlp(&["wlp", "--lollipop", "3", "2"]).status.code(), Some(1));
    assert_eq!(wlp(&["wlp", "--complete", "6"]).status.code(), Some(0));
    assert!(stdout(&wlp(&["wlp", "--path", "13"])).contains("WLP: yes"));
    assert!(stdout(&wlp(&["wlp", "--lollipop", "3", "2"])).contains("WLP: no"));

    for bad in [
        vec!["wlp"],
        vec!["wlp", "--path", "0"],
        vec!["wlp", "--path", "3", "--complete", "3"],
        vec!["wlp", "--graph-file", "/nonexistent/graph.txt"],
        vec!["wlp", "--path", "4", "--form", "1,0"],
        vec!["frobnicate"],
    ] {
        let o = wlp(&bad);
        assert_eq!(o.status.code(), Some(2), "{bad:?}");
        assert!(o.stdout.is_empty(), "{bad:?} wrote to stdout");
        assert!(!o.stderr.is_empty(), "{bad:?} left no diagnostic");
    }
}

#[test]
fn wlp_json_schema() {
    let (v, code) = json(&["wlp", "--path", "8"]);
    assert_eq!(code, 1);
    assert_eq!(
        v["hilbert"],
        serde_json::json!(["1", "8", "21", "20", "5"])
    );
    assert_eq!(v["socle_degree"], 4);
    assert_eq!(v["wlp"], false);
    let verdicts = v["verdicts"].as_array().unwrap();
    assert_eq!(verdicts.len(), 5);
    for (i, d) in verdicts.iter().enumerate() {
        assert_eq!(d["degree"], i);
        for key in ["h_i", "h_next", "rank", "injective", "surjective"] {
            assert!(!d[key].is_null(), "verdict missing {key}");
        }
    }
    assert_eq!(
        v["failing"],
        serde_json::json!([{"degree": 2, "kind": "surjectivity"}])
    );
}

#[test]
fn generators_and_custom_forms() {
    let gens = temp_file("cube.txt", "y1^2\ny2^2  # comment\ny3^2\n");
    let g = gens.to_str().unwrap();
    let (v, code) = json(&["hilbert", "--generators", g]);
    assert_eq!(code, 0);
    assert_eq!(v["hilbert"], serde_json::json!(["1", "3", "3", "1"]));

    // y1 alone kills y2 y3 in degree 2 -> degree 3 only through y1
    let (v, _) = json(&["wlp", "--generators", g, "--form", "1,0,0"]);
    assert_eq!(v["wlp"], false);
    let (v, _) = json(&["wlp", "--generators", g, "--form", "1,2,3"]);
    assert_eq!(v["wlp"], true);

    let not_artinian = temp_file("bad.txt", "y1^2\ny1 y2\n");
    assert_eq!(
        wlp(&["hilbert", "--generators", not_artinian.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn blockcheck_reports() {
    let gens = temp_file("square.txt", "y1^2\ny2^2\n");
    let (v, code) = json(&["blockcheck", "--generators", gens.to_str().unwrap(), "--block", "2"]);
    assert_eq!(code, 0);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 3);
    for r in reports {
        for key in ["degree", "predicted", "direct", "agree"] {
            assert!(!r[key].is_null(), "report missing {key}");
        }
        assert_eq!(r["agree"], true);
    }
    let (v, _) = json(&["blockcheck", "--path", "4", "--degree", "1"]);
    assert_eq!(v["reports"].as_array().unwrap().len(), 1);
}

#[test]
fn classify_small_grids() {
    let o = wlp(&["classify", "--m", "3..3", "--n", "7..7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("agreements 1/1"));

    // L(1, n) is the path on n + 1 vertices
    let (v, code) = json(&["classify", "--m", "1..1", "--n", "1..19"]);
    assert_eq!(code, 0);
    let cells = v["cells"].as_array().unwrap();
    for cell in cells {
        let n = cell["n"].as_u64().unwrap() as usize;
        let p = wlp(&["wlp", "--path", &(n + 1).to_string()]);
        assert_eq!(cell["computed"], p.status.code() == Some(0), "n = {n}");
        assert_eq!(cell["agree"], true);
    }
    assert_eq!(v["agreements"], 19);

    assert_eq!(wlp(&["classify", "--m", "3..2", "--n", "1..2"]).status.code(), Some(2));
    assert_eq!(wlp(&["classify", "--m", "x", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn verify_paper_small_grid() {
    let args = ["verify-paper", "--m", "1..3", "--n", "1..8"];
    let o = wlp(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().filter(|l| l.starts_with("PASS ")).count() >= 8);
    assert!(!text.contains("FAIL "));

    let mut json_args = args.to_vec();
    json_args.extend(["--output", "json"]);
    let v: Value = serde_json::from_slice(&wlp(&json_args).stdout).unwrap();
    let checks = v.as_array().unwrap();
    assert!(checks.iter().all(|c| c["passed"] == true && c["name"].is_string()));
}

#[test]
fn verify_paper_negative_control() {
    let corrupted = "0,1,1,1,2,2,2,2,3,3,3,4,4,4,4,5,5,5,5,7";
    let o = wlp(&["verify-paper", "--m", "1..1", "--n", "1..3", "--lambda-table", corrupted]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("FAIL path-modes")));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["wlp", "--lollipop", "4", "9"],
        vec!["verify-paper", "--m", "1..2", "--n", "1..6"],
        vec!["classify", "--m", "1..3", "--n", "1..9", "--jobs", "3"],
    ] {
        let a = wlp(&args);
        let b = wlp(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
