use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ctfuchs"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs")
}

/// Compares stdout with `tests/snapshots/<name>.txt`; set `UPDATE_SNAPSHOTS=1`
/// to rewrite the stored output.
fn snapshot(name: &str, args: &[&str], code: i32) {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(code),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let got = String::from_utf8(out.stdout).unwrap();
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/snapshots")
        .join(format!("{name}.txt"));
    if std::env::var_os("UPDATE_SNAPSHOTS").is_some() {
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing snapshot {}", path.display()));
    assert_eq!(got, want, "snapshot {name} differs");
}

#[test]
fn snapshots() {
    let cases: &[(&str, &[&str], i32)] = &[
        ("check_hermite", &["check", "fixtures/hermite_example.json"], 0),
        ("diffmatrix_hermite", &["diffmatrix", "fixtures/hermite_example.json"], 0),
        ("hermite_hermite", &["hermite", "fixtures/hermite_example.json"], 0),
        ("integrable_integrability", &["integrable", "fixtures/integrability.json"], 0),
        ("decompose_integrability", &["decompose", "fixtures/integrability.json"], 0),
        ("normalize_telescoping", &["normalize", "fixtures/telescoping.json"], 0),
        ("decompose_telescoping", &["decompose", "fixtures/telescoping.json"], 0),
        (
            "telescope_polyred_json",
            &["telescope", "--method", "polyred", "--json", "fixtures/telescoping.json"],
            0,
        ),
        (
            "telescope_certificate",
            &["telescope", "--certificate", "fixtures/telescoping_local.json"],
            0,
        ),
        (
            "telescope_manin",
            &["telescope", "--method", "canonical", "fixtures/manin.json"],
            0,
        ),
        (
            "telescope_manin_raw",
            &["telescope", "--method", "canonical", "--json", "fixtures/manin_raw.json"],
            3,
        ),
    ];
    for (name, args, code) in cases {
        snapshot(name, args, *code);
    }
}

#[test]
fn seed_does_not_change_output() {
    for file in ["fixtures/telescoping.json", "fixtures/manin.json"] {
        for method in ["polyred", "canonical"] {
            let a = run(&["telescope", "--json", "--method", method, "--seed", "1", file]);
            let b = run(&["telescope", "--json", "--method", method, "--seed", "987654321", file]);
            assert!(a.status.success());
            assert_eq!(a.stdout, b.stdout, "{file} {method}");
        }
    }
    let a = run(&["normalize", "--seed", "5", "fixtures/telescoping.json"]);
    let b = run(&["normalize", "--seed", "6", "fixtures/telescoping.json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_output_parses() {
    let out = run(&["telescope", "--json", "fixtures/telescoping.json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["telescoper"], serde_json::json!(["1", "-t", "t^2"]));
    assert_eq!(v["verified"], serde_json::json!(true));
}

#[test]
fn bad_input_exits_nonzero() {
    let dir = std::env::temp_dir().join(format!("ctfuchs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"name": "bad", "L": ["1", "x"], "W": [], "Vinf": []}"#,
    )
    .unwrap();
    let out = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid problem"));
    let out = run(&["check", "fixtures/does-not-exist.json"]);
    assert_eq!(out.status.code(), Some(2));
}
