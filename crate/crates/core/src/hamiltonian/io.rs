//! On-disk format: a JSON manifest naming two whitespace-separated text
//! files of one-body (`p q re im`) and two-body (`p q r s re im`) records.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{BasisKind, HamiltonianTensors, SystemSpec, ValueKind};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Values with magnitude below this are dropped at load time.
pub const DEFAULT_ZERO_THRESHOLD: f64 = 1e-16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub format_version: u32,
    pub basis: BasisKind,
    #[serde(rename = "M")]
    pub bands: usize,
    #[serde(rename = "N")]
    pub cells: [usize; 3],
    #[serde(rename = "H0")]
    pub nuclear_repulsion: f64,
    pub n_formula_units: usize,
    pub value_type: ValueKind,
    pub one_body: PathBuf,
    pub two_body: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoadOptions {
    /// Records with `|v|` below this are discarded after duplicate checks.
    pub zero_threshold: f64,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self {
            zero_threshold: DEFAULT_ZERO_THRESHOLD,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn open(path: &Path) -> Result<BufReader<fs::File>> {
    fs::File::open(path).map(BufReader::new).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn resolve(base: &Path, rel: &Path) -> PathBuf {
    if rel.is_absolute() {
        rel.to_path_buf()
    } else {
        base.parent().unwrap_or_else(|| Path::new(".")).join(rel)
    }
}

fn read_manifest(path: &Path) -> Result<Manifest> {
    let text = read(path)?;
    let manifest: Manifest = serde_json::from_str(&text).map_err(|e| Error::Manifest {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    if manifest.format_version != 1 {
        return Err(Error::Manifest {
            path: path.to_path_buf(),
            message: format!("unsupported format_version {}", manifest.format_version),
        });
    }
    Ok(manifest)
}

/// Loads a manifest and the integral files it references.
pub fn load_system<T: Real>(
    manifest_path: &Path,
    options: &LoadOptions,
) -> Result<(SystemSpec, HamiltonianTensors<T>)> {
    let manifest = read_manifest(manifest_path)?;
    let spec = SystemSpec::new(
        manifest.basis,
        manifest.bands,
        manifest.cells,
        manifest.nuclear_repulsion,
        manifest.n_formula_units,
        manifest.value_type,
    )
    .map_err(|e| Error::Manifest {
        path: manifest_path.to_path_buf(),
        message: e.to_string(),
    })?;

    let mut tensors = HamiltonianTensors::new(spec.clone());
    let p = spec.num_orbitals();
    let real = spec.value_kind == ValueKind::Real;

    let one_path = resolve(manifest_path, &manifest.one_body);
    for (key, v) in parse_records::<2>(&one_path, open(&one_path)?, p, real, options)? {
        tensors.one_body.insert(key, to_complex(v));
    }
    let two_path = resolve(manifest_path, &manifest.two_body);
    for (key, v) in parse_records::<4>(&two_path, open(&two_path)?, p, real, options)? {
        tensors.two_body.insert(key, to_complex(v));
    }
    Ok((spec, tensors))
}

fn to_complex<T: Real>(v: (f64, f64)) -> Complex<T> {
    Complex::new(T::lit(v.0), T::lit(v.1))
}

/// Streams records, keeping only those at or above the zero threshold.
/// Duplicate keys are detected among kept records.
fn parse_records<const K: usize>(
    path: &Path,
    reader: impl BufRead,
    num_orbitals: usize,
    real: bool,
    options: &LoadOptions,
) -> Result<BTreeMap<[usize; K], (f64, f64)>> {
    let err = |line: usize, message: String| Error::Record {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut out = BTreeMap::new();
    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != K + 2 {
            return Err(err(
                lineno,
                format!("expected {} fields, found {}", K + 2, fields.len()),
            ));
        }
        let mut key = [0usize; K];
        for (slot, tok) in key.iter_mut().zip(&fields[..K]) {
            let idx: usize = tok
                .parse()
                .map_err(|_| err(lineno, format!("malformed index {tok:?}")))?;
            if idx >= num_orbitals {
                return Err(err(
                    lineno,
                    format!("index {idx} out of range [0, {num_orbitals})"),
                ));
            }
            *slot = idx;
        }
        let parse_f = |tok: &str| -> Result<f64> {
            let v: f64 = tok
                .parse()
                .map_err(|_| err(lineno, format!("malformed value {tok:?}")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(err(lineno, format!("non-finite value {tok:?}")))
            }
        };
        let re = parse_f(fields[K])?;
        let im = parse_f(fields[K + 1])?;
        if real && im.abs() > options.zero_threshold {
            return Err(err(
                lineno,
                format!("complex value {re}+{im}i in a file declared real"),
            ));
        }
        let im = if real { 0.0 } else { im };
        if re.hypot(im) < options.zero_threshold {
            continue;
        }
        if out.insert(key, (re, im)).is_some() {
            return Err(err(lineno, format!("duplicate key {key:?}")));
        }
    }
    Ok(out)
}

/// Writes `tensors` as a manifest plus `<stem>.one_body.txt` and
/// `<stem>.two_body.txt` next to it. Values are printed with 17 significant
/// digits so that `f64` data round-trips exactly.
pub fn write_system<T: Real>(manifest_path: &Path, tensors: &HamiltonianTensors<T>) -> Result<()> {
    let stem = manifest_path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("system")
        .to_string();
    let one_name = PathBuf::from(format!("{stem}.one_body.txt"));
    let two_name = PathBuf::from(format!("{stem}.two_body.txt"));
    let spec = &tensors.spec;
    let manifest = Manifest {
        format_version: 1,
        basis: spec.basis,
        bands: spec.lattice.bands(),
        cells: spec.lattice.cells(),
        nuclear_repulsion: spec.nuclear_repulsion,
        n_formula_units: spec.formula_units,
        value_type: spec.value_kind,
        one_body: one_name.clone(),
        two_body: two_name.clone(),
    };

    let mut one = String::from("# p q re im\n");
    for (k, v) in &tensors.one_body {
        let _ = writeln!(one, "{} {} {:.16e} {:.16e}", k[0], k[1], v.re.to_f64_lossy(), v.im.to_f64_lossy());
    }
    let mut two = String::from("# p q r s re im\n");
    for (k, v) in &tensors.two_body {
        let _ = writeln!(
            two,
            "{} {} {} {} {:.16e} {:.16e}",
            k[0],
            k[1],
            k[2],
            k[3],
            v.re.to_f64_lossy(),
            v.im.to_f64_lossy()
        );
    }
    let write = |path: PathBuf, body: &str| {
        fs::write(&path, body).map_err(|source| Error::Io { path, source })
    };
    write(resolve(manifest_path, &one_name), &one)?;
    write(resolve(manifest_path, &two_name), &two)?;
    write(
        manifest_path.to_path_buf(),
        &(serde_json::to_string_pretty(&manifest)? + "\n"),
    )
}

/// SHA-256 digests of the manifest and both integral files, keyed by role.
pub fn hash_inputs(manifest_path: &Path) -> Result<BTreeMap<String, String>> {
    let manifest = read_manifest(manifest_path)?;
    let mut out = BTreeMap::new();
    for (role, path) in [
        ("manifest", manifest_path.to_path_buf()),
        ("one_body", resolve(manifest_path, &manifest.one_body)),
        ("two_body", resolve(manifest_path, &manifest.two_body)),
    ] {
        let mut hasher = Sha256::new();
        std::io::copy(&mut open(&path)?, &mut hasher).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })?;
        out.insert(role.to_string(), hex::encode(hasher.finalize()));
    }
    Ok(out)
}
