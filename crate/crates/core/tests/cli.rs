use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latticeqre")).args(args).output().unwrap()
}

#[test]
fn full_text_summary() {
    let m = data("toy.json");
    let out = cli(&["full", "--manifest", m.to_str().unwrap(), "--epsilon-per-fu", "1.8e-3", "--truncation", "none", "--format", "text", "--verify"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("one-body 1.500000, two-body 0.250000"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("T gates:")));
    assert!(text.contains(" days"));
    assert!(text.contains("verification: ok"));
}

#[test]
fn json_output_is_deterministic_and_parses() {
    let dir = tempfile::tempdir().unwrap();
    let m = data("hubbard_ring.json");
    let mut outputs = Vec::new();
    for name in ["a.json", "b.json"] {
        let path = dir.path().join(name);
        let out = cli(&["full", "--manifest", m.to_str().unwrap(), "--phys-error-rate", "1e-3", "--phys-error-rate", "5e-4", "--out", path.to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let v: serde_json::Value = serde_json::from_slice(&outputs[0]).unwrap();
    assert_eq!(v["ftqc"].as_array().unwrap().len(), 2);
    assert_eq!(v["translational"]["one_body"], 0.0);
}

#[test]
fn subcommands_stop_at_their_stage() {
    let m = data("hubbard_ring.json");
    let m = m.to_str().unwrap();
    let json = |args: &[&str]| -> serde_json::Value {
        let out = cli(args);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        serde_json::from_slice(&out.stdout).unwrap()
    };
    let v = json(&["validate", "--manifest", m]);
    assert!(v["lcu"].is_null() && v["symmetry"]["passed"] == true);
    let v = json(&["estimate", "--manifest", m]);
    assert!(v["cost"].is_object() && v["ftqc"].as_array().unwrap().is_empty());
    let v = json(&["verify", "--manifest", m]);
    assert!(v["verification"]["passed"] == true && v["cost"].is_null());
}

#[test]
fn lcu_writes_term_dump() {
    let dir = tempfile::tempdir().unwrap();
    let terms = dir.path().join("terms.txt");
    let m = data("hubbard_ring.json");
    let out = cli(&["lcu", "--manifest", m.to_str().unwrap(), "--terms", terms.to_str().unwrap(), "--truncation", "fixed:1e-9"]);
    assert!(out.status.success());
    let dump = std::fs::read_to_string(terms).unwrap();
    assert!(dump.starts_with("# class p q r s weight sign"));
    assert_eq!(dump.lines().count(), 6);
}

#[test]
fn failures_exit_nonzero_with_stage() {
    let m = data("toy.json");
    let out = cli(&["full", "--manifest", m.to_str().unwrap(), "--factories", "/nonexistent/factories.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ftqc stage"));

    let out = cli(&["full", "--manifest", m.to_str().unwrap(), "--phys-error-rate", "0.02"]);
    assert_eq!(out.status.code(), Some(2));

    let out = cli(&["validate", "--manifest", "/nonexistent.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("load stage"));
}

#[test]
fn asymmetric_input_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("h.txt"), "0 1 1.0 0.0\n").unwrap();
    std::fs::write(dir.path().join("g.txt"), "").unwrap();
    let manifest = r#"{"format_version":1,"basis":"bloch","M":2,"N":[1,1,1],"H0":0.0,
        "n_formula_units":1,"value_type":"real","one_body":"h.txt","two_body":"g.txt"}"#;
    let m = dir.path().join("m.json");
    std::fs::write(&m, manifest).unwrap();
    let out = cli(&["validate", "--manifest", m.to_str().unwrap(), "--format", "text"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("symmetry: FAILED"));
}
