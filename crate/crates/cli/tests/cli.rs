//! End-to-end tests driving the compiled binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn write(dir: &std::path::Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn bmatch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bmatch"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

const C4: &str = r#"{"vertices":["v1","v2","v3","v4"],"edges":[{"id":"e1","ends":["v1","v2"]},{"id":"e2","ends":["v2","v3"]},{"id":"e3","ends":["v3","v4"]},{"id":"e4","ends":["v4","v1"]}],"b":{"v1":"1","v2":"1","v3":"1","v4":"1"}}"#;
const P3_UNIT: &str = r#"{"vertices":["v1","v2","v3"],"edges":[{"id":"e1","ends":["v1","v2"]},{"id":"e2","ends":["v2","v3"]}],"b":{"v1":"1","v2":"1","v3":"1"}}"#;
const K3: &str = r#"{"vertices":["v1","v2","v3"],"edges":[{"id":"e1","ends":["v1","v2"]},{"id":"e2","ends":["v1","v3"]},{"id":"e3","ends":["v2","v3"]}],"b":{"v1":"1","v2":"1","v3":"1"}}"#;

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = std::env::temp_dir().join("bmatch-cli-determinism");
    std::fs::create_dir_all(&dir).unwrap();
    let c4 = write(&dir, "c4.json", C4);
    let path = c4.to_str().unwrap();
    for sub in [
        "vertices",
        "face-graphs",
        "face-lattice",
        "check-nonempty",
        "kernel-basis",
    ] {
        let first = bmatch(&[sub, path]);
        let second = bmatch(&[sub, path]);
        assert_eq!(first.stdout, second.stdout, "{sub} output must be stable");
    }
}

#[test]
fn exit_codes_follow_the_decision() {
    let dir = std::env::temp_dir().join("bmatch-cli-exits");
    std::fs::create_dir_all(&dir).unwrap();
    let c4 = write(&dir, "c4.json", C4);
    let p3 = write(&dir, "p3.json", P3_UNIT);

    let ok = bmatch(&["check-nonempty", c4.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("\"status\":\"ok\""));

    let infeasible = bmatch(&["check-nonempty", p3.to_str().unwrap()]);
    assert_eq!(infeasible.status.code(), Some(1));
    let doc = stdout(&infeasible);
    assert!(doc.contains("\"status\":\"infeasible\""));
    assert!(doc.contains(r#""partition":{"V1":["v2"],"V2":[],"V3":["v1","v3"]}"#));

    let missing = bmatch(&["check-nonempty", "/nonexistent/x.json"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stdout(&missing).contains("\"status\":\"error\""));
}

#[test]
fn vertices_round_trip_through_is_vertex() {
    let dir = std::env::temp_dir().join("bmatch-cli-roundtrip");
    std::fs::create_dir_all(&dir).unwrap();
    let c4 = write(&dir, "c4.json", C4);
    let listing = bmatch(&["vertices", c4.to_str().unwrap()]);
    assert_eq!(listing.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&listing)).unwrap();
    let vertices = doc["vertices"].as_array().unwrap();
    assert_eq!(vertices.len(), 2);
    for (i, vertex) in vertices.iter().enumerate() {
        let point = write(
            &dir,
            &format!("point{i}.json"),
            &serde_json::to_string(&vertex["point"]).unwrap(),
        );
        let check = bmatch(&[
            "is-vertex",
            c4.to_str().unwrap(),
            "--point",
            point.to_str().unwrap(),
        ]);
        assert_eq!(check.status.code(), Some(0), "vertex row {i} must pass");
        assert!(stdout(&check).contains("\"is_vertex\":true"));
    }
}

#[test]
fn is_edge_on_the_c4_matchings() {
    let dir = std::env::temp_dir().join("bmatch-cli-edge");
    std::fs::create_dir_all(&dir).unwrap();
    let c4 = write(&dir, "c4.json", C4);
    let m1 = write(&dir, "m1.json", r#"{"e1":"1","e2":"0","e3":"1","e4":"0"}"#);
    let m2 = write(&dir, "m2.json", r#"{"e1":"0","e2":"1","e3":"0","e4":"1"}"#);
    let out = bmatch(&[
        "is-edge",
        c4.to_str().unwrap(),
        "--point",
        m1.to_str().unwrap(),
        "--point",
        m2.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"is_edge\":true"));
}

#[test]
fn cap_errors_name_the_cap() {
    let dir = std::env::temp_dir().join("bmatch-cli-caps");
    std::fs::create_dir_all(&dir).unwrap();
    let c4 = write(&dir, "c4.json", C4);
    let out = bmatch(&["vertices", c4.to_str().unwrap(), "--max-edges", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = stdout(&out);
    assert!(doc.contains("edge cap exceeded"), "got: {doc}");
    assert!(doc.contains("max-edges"), "got: {doc}");

    let out = bmatch(&[
        "check-nonempty",
        c4.to_str().unwrap(),
        "--max-vertices",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("vertex cap exceeded"));
}

#[test]
fn solve_flow_reports_violations() {
    let dir = std::env::temp_dir().join("bmatch-cli-flow");
    std::fs::create_dir_all(&dir).unwrap();
    let p3 = write(&dir, "p3.json", P3_UNIT);
    let demands = write(&dir, "demands.json", r#"{"v1":"1","v2":"-3","v3":"1"}"#);

    // The graph's own b = (1,1,1) is unbalanced on the path, and so is (1,-3,1).
    let out = bmatch(&["solve-flow", p3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("\"violation\""));

    let out = bmatch(&[
        "solve-flow",
        p3.to_str().unwrap(),
        "--demands",
        demands.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));

    let balanced = write(&dir, "balanced.json", r#"{"v1":"-1","v2":"2","v3":"3"}"#);
    let out = bmatch(&[
        "solve-flow",
        p3.to_str().unwrap(),
        "--demands",
        balanced.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains(r#""x":{"e1":"-1","e2":"3"}"#));
}

#[test]
fn reduce_and_double_emit_canonical_graph_documents() {
    let dir = std::env::temp_dir().join("bmatch-cli-reduce");
    std::fs::create_dir_all(&dir).unwrap();
    let twin = write(
        &dir,
        "twin.json",
        r#"{"vertices":["v1","v2"],"edges":[{"id":"e1","ends":["v1","v2"]},{"id":"e2","ends":["v1","v2"]}],"b":{"v1":"1","v2":"1"}}"#,
    );
    let out = bmatch(&["reduce", twin.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["graph"]["edges"].as_array().unwrap().len(), 1);
    assert_eq!(doc["edge_map"]["e2"], "e1");

    let out = bmatch(&["double", twin.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["graph"]["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(doc["graph"]["edges"].as_array().unwrap().len(), 4);
}

#[test]
fn face_lattice_json_matches_the_documented_schema() {
    let dir = std::env::temp_dir().join("bmatch-cli-lattice");
    std::fs::create_dir_all(&dir).unwrap();
    let k3 = write(&dir, "k3.json", K3);
    let out = bmatch(&["face-lattice", k3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out).trim(),
        r#"{"status":"ok","faces":[{"edges":[],"dim":-1,"vertex_ids":[]},{"edges":["e1","e2","e3"],"dim":0,"vertex_ids":[0]}],"covers":[[0,1]]}"#
    );
}

#[test]
fn face_lattice_with_zero_b_is_the_trivial_lattice() {
    let dir = std::env::temp_dir().join("bmatch-cli-zerob");
    std::fs::create_dir_all(&dir).unwrap();
    let zero = write(
        &dir,
        "zero.json",
        r#"{"vertices":["v1","v2"],"edges":[{"id":"e1","ends":["v1","v2"]}]}"#,
    );
    let out = bmatch(&["face-lattice", zero.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["faces"].as_array().unwrap().len(), 2);
    assert_eq!(doc["faces"][1]["dim"], 0);
    assert_eq!(doc["covers"][0], serde_json::json!([0, 1]));

    // face-graphs itself requires nonzero b.
    let out = bmatch(&["face-graphs", zero.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("b must be nonzero"));
}

#[test]
fn oracle_audit_agrees_on_fixtures() {
    let dir = std::env::temp_dir().join("bmatch-cli-audit");
    std::fs::create_dir_all(&dir).unwrap();
    for (name, text) in [("c4.json", C4), ("k3.json", K3), ("p3.json", P3_UNIT)] {
        let path = write(&dir, name, text);
        let out = bmatch(&["oracle-audit", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert!(stdout(&out).contains("\"agree\":true"));
    }
}
