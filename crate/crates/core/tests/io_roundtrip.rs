use std::fs;
use std::path::Path;

use latticeqre::hamiltonian::{hash_inputs, load_system, synthetic, write_system, BasisKind, LoadOptions, ValueKind};
use latticeqre::pipeline::{self, RunConfig, TruncationMode};
use latticeqre::Hamiltonian;

fn load(path: &Path) -> Hamiltonian {
    load_system::<f64>(path, &LoadOptions::default()).unwrap().1
}

#[test]
fn complex_bloch_roundtrip_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let t = synthetic::random_instance::<f64>(&mut synthetic::rng(11), BasisKind::Bloch, 3, ValueKind::Complex);
    let path = dir.path().join("bloch.json");
    write_system(&path, &t).unwrap();
    let back = load(&path);
    assert_eq!(back.one_body, t.one_body);
    assert_eq!(back.two_body, t.two_body);
    assert_eq!(back.spec, t.spec);
}

#[test]
fn real_wannier_roundtrip_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let t = synthetic::random_wannier::<f64>(&mut synthetic::rng(12), 2, [2, 2, 1], 0.5);
    let path = dir.path().join("w.json");
    write_system(&path, &t).unwrap();
    let back = load(&path);
    assert_eq!(back.one_body, t.one_body);
    assert_eq!(back.two_body, t.two_body);
}

#[test]
fn empty_system_loads() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("h.txt"), "").unwrap();
    fs::write(dir.path().join("g.txt"), "# nothing\n").unwrap();
    let manifest = r#"{"format_version":1,"basis":"bloch","M":1,"N":[1,1,1],"H0":0.0,
        "n_formula_units":1,"value_type":"real","one_body":"h.txt","two_body":"g.txt"}"#;
    fs::write(dir.path().join("m.json"), manifest).unwrap();
    let (spec, t) = load_system::<f64>(&dir.path().join("m.json"), &LoadOptions::default()).unwrap();
    assert_eq!(spec.num_orbitals(), 1);
    assert!(t.one_body.is_empty() && t.two_body.is_empty());
}

#[test]
fn integral_floor_drops_small_records() {
    let dir = tempfile::tempdir().unwrap();
    let t = synthetic::random_instance::<f64>(&mut synthetic::rng(13), BasisKind::Bloch, 3, ValueKind::Real);
    let path = dir.path().join("s.json");
    write_system(&path, &t).unwrap();
    let floor = 0.3;
    let (_, cut) = load_system::<f64>(&path, &LoadOptions { zero_threshold: floor }).unwrap();
    assert!(cut.two_body.len() < t.two_body.len());
    assert!(cut.two_body.values().all(|v| v.norm() >= floor));
    let kept = t.two_body.values().filter(|v| v.norm() >= floor).count();
    assert_eq!(cut.two_body.len(), kept);
}

#[test]
fn hashes_track_file_contents() {
    let dir = tempfile::tempdir().unwrap();
    let t = synthetic::random_instance::<f64>(&mut synthetic::rng(14), BasisKind::Bloch, 2, ValueKind::Real);
    let path = dir.path().join("x.json");
    write_system(&path, &t).unwrap();
    let a = hash_inputs(&path).unwrap();
    assert_eq!(a, hash_inputs(&path).unwrap());
    assert_eq!(a.len(), 3);
    let two = dir.path().join("x.two_body.txt");
    let mut text = fs::read_to_string(&two).unwrap();
    text.push_str("# trailing comment\n");
    fs::write(&two, text).unwrap();
    let b = hash_inputs(&path).unwrap();
    assert_eq!(a["one_body"], b["one_body"]);
    assert_ne!(a["two_body"], b["two_body"]);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let t = synthetic::random_wannier::<f64>(&mut synthetic::rng(15), 1, [3, 1, 1], 0.8);
    let path = dir.path().join("r.json");
    write_system(&path, &t).unwrap();
    let mut cfg = RunConfig::new(&path);
    cfg.verify = true;
    for mode in [TruncationMode::L2Adaptive, TruncationMode::FixedThreshold(1e-2), TruncationMode::None] {
        cfg.truncation = mode;
        let a = pipeline::to_json(&pipeline::run(&cfg).unwrap());
        let b = pipeline::to_json(&pipeline::run(&cfg).unwrap());
        assert_eq!(a, b);
        let parsed: pipeline::Report = serde_json::from_str(&a).unwrap();
        assert_eq!(pipeline::to_json(&parsed), a);
    }
}
