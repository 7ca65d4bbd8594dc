//! End-to-end orchestration: load, validate, decompose, truncate, cost,
//! map onto the surface code, and render the result.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::costing::{error_budget, total_cost, CostInputs, CostReport, DEFAULT_B_R};
use crate::error::Error;
use crate::ftqc::{self, FtqcConfig, FtqcReport};
use crate::hamiltonian::{
    hash_inputs, load_system, translational_symmetry_report, validate_symmetries, BasisKind, HamiltonianTensors,
    LoadOptions, SymmetryReport, TranslationalReport, ValueKind, DEFAULT_SYMMETRY_TOL, DEFAULT_ZERO_THRESHOLD,
};
use crate::lcu::{enumerate_terms, truncate_l2, truncate_threshold, EnumerateOptions, LambdaBreakdown, LcuTermSet};
use crate::verify::{run_circuit_suite, run_instance_checks, VerificationReport, MAX_ORACLE_QUBITS};

pub const TOOL_NAME: &str = env!("CARGO_PKG_NAME");
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Physical error rates used when none are given.
pub const DEFAULT_P_PHYS: [f64; 2] = [1e-3, 1e-4];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TruncationMode {
    /// Remove the smallest terms while their L2 norm stays below the
    /// truncation share of the error budget.
    L2Adaptive,
    /// Remove terms with weight below a fixed value in Hartree.
    FixedThreshold(f64),
    None,
}

impl FromStr for TruncationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "l2" => Ok(Self::L2Adaptive),
            "none" => Ok(Self::None),
            _ => {
                let bad = || Error::InvalidArgument(format!("truncation mode `{s}`: expected l2, none or fixed:<Ha>"));
                let v: f64 = s.strip_prefix("fixed:").ok_or_else(bad)?.parse().map_err(|_| bad())?;
                if !(v >= 0.0 && v.is_finite()) {
                    return Err(bad());
                }
                Ok(Self::FixedThreshold(v))
            }
        }
    }
}

impl fmt::Display for TruncationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::L2Adaptive => f.write_str("l2"),
            Self::FixedThreshold(v) => write!(f, "fixed:{v:e}"),
            Self::None => f.write_str("none"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub manifest: PathBuf,
    /// Target accuracy per formula unit, Hartree.
    pub eps_per_fu: f64,
    pub truncation: TruncationMode,
    pub p_phys: Vec<f64>,
    pub t_cycle_us: f64,
    pub factories: Option<PathBuf>,
    pub verify: bool,
    /// Integrals below this magnitude are never stored.
    pub integral_floor: f64,
    pub symmetry_tol: f64,
}

impl RunConfig {
    pub fn new(manifest: impl Into<PathBuf>) -> Self {
        Self {
            manifest: manifest.into(),
            eps_per_fu: 1.6e-3,
            truncation: TruncationMode::L2Adaptive,
            p_phys: DEFAULT_P_PHYS.to_vec(),
            t_cycle_us: 1.0,
            factories: None,
            verify: false,
            integral_floor: DEFAULT_ZERO_THRESHOLD,
            symmetry_tol: DEFAULT_SYMMETRY_TOL,
        }
    }

    fn validate(&self) -> Result<(), Error> {
        if !(self.eps_per_fu > 0.0 && self.eps_per_fu.is_finite()) {
            return Err(Error::InvalidArgument(format!("epsilon per formula unit must be positive, got {}", self.eps_per_fu)));
        }
        if !(self.t_cycle_us > 0.0 && self.t_cycle_us.is_finite()) {
            return Err(Error::InvalidArgument(format!("cycle time must be positive, got {} us", self.t_cycle_us)));
        }
        if !(self.integral_floor >= 0.0 && self.symmetry_tol >= 0.0) {
            return Err(Error::InvalidArgument("integral floor and symmetry tolerance must be nonnegative".into()));
        }
        Ok(())
    }
}

/// Pipeline stages, in execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Config,
    Load,
    Validate,
    Lcu,
    Truncate,
    Cost,
    Ftqc,
    Verify,
    Emit,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("stage serializes");
        f.write_str(s.as_str().unwrap_or("?"))
    }
}

#[derive(Debug, thiserror::Error)]
#[error("{stage} stage: {source}")]
pub struct StageError {
    pub stage: Stage,
    #[source]
    pub source: Error,
}

fn at<T>(stage: Stage, r: Result<T, Error>) -> Result<T, StageError> {
    r.map_err(|source| StageError { stage, source })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub manifest: String,
    pub eps_per_fu: f64,
    pub truncation: String,
    pub p_phys: Vec<f64>,
    pub t_cycle_us: f64,
    pub factories: Option<String>,
    pub verify: bool,
    pub integral_floor: f64,
    pub symmetry_tol: f64,
    pub last_stage: Stage,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemSummary {
    pub basis: BasisKind,
    pub value_kind: ValueKind,
    pub bands: usize,
    pub cells: [usize; 3],
    pub spatial_orbitals: usize,
    pub spin_orbitals: usize,
    pub formula_units: usize,
    pub nuclear_repulsion: f64,
    pub one_body_records: usize,
    pub two_body_records: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LcuSummary {
    /// Stored terms per family, after symmetry reduction.
    pub terms_by_class: BTreeMap<String, usize>,
    pub terms: usize,
    pub identity_coefficient: f64,
    pub lambda: LambdaBreakdown<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncationSummary {
    pub mode: String,
    /// L2 budget or fixed threshold actually applied, Hartree.
    pub threshold: Option<f64>,
    pub terms_before: usize,
    pub terms_after: usize,
    pub removed_norm: f64,
    pub lambda: LambdaBreakdown<f64>,
    pub d: usize,
    pub eta: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: ConfigEcho,
    pub input_hashes: BTreeMap<String, String>,
    pub system: SystemSummary,
    pub symmetry: SymmetryReport,
    pub translational: Option<TranslationalReport>,
    pub lcu: Option<LcuSummary>,
    pub truncation: Option<TruncationSummary>,
    pub cost: Option<CostReport>,
    pub ftqc: Vec<FtqcReport>,
    pub verification: Option<VerificationReport>,
    pub warnings: Vec<String>,
    /// All validations and checks within tolerance.
    pub passed: bool,
}

impl Report {
    /// Derived fields that disagree with the fields they derive from.
    pub fn consistency_errors(&self) -> Vec<String> {
        let mut errs = Vec::new();
        if let Some(c) = &self.cost {
            if c.toffoli_total != c.iterations * c.walk_toffolis {
                errs.push("toffoli_total != iterations * walk_toffolis".into());
            }
            if c.t_total != 4 * c.toffoli_total {
                errs.push("t_total != 4 * toffoli_total".into());
            }
            if c.walk_toffolis != c.walk.total() {
                errs.push("walk_toffolis != sum of walk items".into());
            }
            for f in &self.ftqc {
                let r = &f.resources;
                let d = f.code_distance as u64;
                if r.physical_qubits != r.total_tiles * 2 * d * d {
                    errs.push(format!("p={}: physical_qubits != total_tiles * 2d^2", f.p_phys));
                }
                if r.total_tiles != r.computational_tiles + r.factory_tiles + r.routing_tiles {
                    errs.push(format!("p={}: total_tiles != sum of tile counts", f.p_phys));
                }
                if f.logical_qubits_total != r.computational_tiles + r.factory_tiles {
                    errs.push(format!("p={}: logical total != computational + factory tiles", f.p_phys));
                }
                if f.runtime_seconds != ftqc::runtime_seconds(c.t_total, f.code_distance, f.t_cycle) {
                    errs.push(format!("p={}: runtime != t_total * d * t_cycle", f.p_phys));
                }
            }
        }
        if let (Some(t), Some(c)) = (&self.truncation, &self.cost) {
            if t.d as u64 != c.inputs.d || t.lambda.lambda != c.inputs.lambda {
                errs.push("cost inputs differ from the truncated term set".into());
            }
        }
        errs
    }
}

/// Rounds to hundredths of a day: `2.7e5 s` gives `"3.13 days"`.
pub fn format_days(seconds: f64) -> String {
    let days = seconds / 86_400.0;
    format!("{:.2} days", (days * 100.0).round() / 100.0)
}

fn lambda_f64<T: crate::Real>(l: &LambdaBreakdown<T>) -> LambdaBreakdown<f64> {
    LambdaBreakdown {
        lambda0: l.lambda0.to_f64_lossy(),
        lambda1: l.lambda1.to_f64_lossy(),
        lambda2: l.lambda2.to_f64_lossy(),
        lambda: l.lambda.to_f64_lossy(),
    }
}

fn summarize(t: &HamiltonianTensors<f64>) -> SystemSummary {
    let s = &t.spec;
    SystemSummary {
        basis: s.basis,
        value_kind: s.value_kind,
        bands: s.lattice.bands(),
        cells: s.lattice.cells(),
        spatial_orbitals: s.num_orbitals(),
        spin_orbitals: s.num_spin_orbitals(),
        formula_units: s.formula_units,
        nuclear_repulsion: s.nuclear_repulsion,
        one_body_records: t.one_body.len(),
        two_body_records: t.two_body.len(),
    }
}

/// Runs the full pipeline.
pub fn run(cfg: &RunConfig) -> Result<Report, StageError> {
    run_until(cfg, Stage::Verify)
}

/// Runs every stage up to and including `last`; past validation, the
/// verification suite runs when `cfg.verify` is set.
pub fn run_until(cfg: &RunConfig, last: Stage) -> Result<Report, StageError> {
    run_inner(cfg, last, cfg.verify).map(|(r, _)| r)
}

/// As [`run_until`], also returning the truncated term set when the
/// truncation stage ran.
pub fn run_with_terms(cfg: &RunConfig, last: Stage) -> Result<(Report, Option<LcuTermSet<f64>>), StageError> {
    run_inner(cfg, last, cfg.verify)
}

/// Load, validate, decompose and run the verification suite only.
pub fn run_verify(cfg: &RunConfig) -> Result<Report, StageError> {
    let (mut r, _) = run_inner(cfg, Stage::Truncate, true)?;
    r.config.last_stage = Stage::Verify;
    Ok(r)
}

fn run_inner(cfg: &RunConfig, last: Stage, verify: bool) -> Result<(Report, Option<LcuTermSet<f64>>), StageError> {
    at(Stage::Config, cfg.validate())?;
    let options = LoadOptions { zero_threshold: cfg.integral_floor };
    let (spec, tensors) = at(Stage::Load, load_system::<f64>(&cfg.manifest, &options))?;
    let input_hashes = at(Stage::Load, hash_inputs(&cfg.manifest))?;

    let mut warnings = Vec::new();
    let symmetry = validate_symmetries(&tensors, cfg.symmetry_tol);
    if !symmetry.passed {
        warnings.push(format!("symmetry validation failed at tolerance {:e}", cfg.symmetry_tol));
    }
    let translational = match spec.basis {
        BasisKind::Wannier => Some(at(Stage::Validate, translational_symmetry_report(&tensors))?),
        BasisKind::Bloch => None,
    };
    let mut passed = symmetry.passed;
    if let Some(tr) = &translational {
        let worst = tr.one_body.max(tr.two_body);
        if worst > cfg.symmetry_tol {
            passed = false;
            warnings.push(format!("translational symmetry error {worst:e} exceeds {:e}", cfg.symmetry_tol));
        }
    }

    let mut report = Report {
        tool: TOOL_NAME.to_string(),
        version: TOOL_VERSION.to_string(),
        config: ConfigEcho {
            manifest: cfg.manifest.display().to_string(),
            eps_per_fu: cfg.eps_per_fu,
            truncation: cfg.truncation.to_string(),
            p_phys: cfg.p_phys.clone(),
            t_cycle_us: cfg.t_cycle_us,
            factories: cfg.factories.as_ref().map(|p| p.display().to_string()),
            verify,
            integral_floor: cfg.integral_floor,
            symmetry_tol: cfg.symmetry_tol,
            last_stage: last,
        },
        input_hashes,
        system: summarize(&tensors),
        symmetry,
        translational,
        lcu: None,
        truncation: None,
        cost: None,
        ftqc: Vec::new(),
        verification: None,
        warnings: Vec::new(),
        passed,
    };
    if last <= Stage::Validate {
        report.warnings = warnings;
        return Ok((report, None));
    }

    let full = at(Stage::Lcu, enumerate_terms(&tensors, &EnumerateOptions::default()))?;
    report.lcu = Some(LcuSummary {
        terms_by_class: full.count_by_class().into_iter().map(|(c, n)| (c.label().to_string(), n)).collect(),
        terms: full.terms.len(),
        identity_coefficient: full.constant,
        lambda: lambda_f64(&full.lambda),
    });

    let budget = at(Stage::Truncate, error_budget(cfg.eps_per_fu, spec.formula_units))?;
    let (truncated, threshold, stats) = match cfg.truncation {
        TruncationMode::L2Adaptive => {
            let (s, st) = truncate_l2(&full, budget.truncation);
            (s, Some(budget.truncation), st)
        }
        TruncationMode::FixedThreshold(v) => {
            let (s, st) = truncate_threshold(&full, v);
            (s, Some(v), st)
        }
        TruncationMode::None => {
            let st = crate::lcu::TruncationStats { terms_before: full.terms.len(), terms_after: full.terms.len(), removed_norm: 0.0 };
            (full.clone(), None, st)
        }
    };
    if let TruncationMode::FixedThreshold(_) = cfg.truncation {
        if stats.removed_norm > budget.truncation {
            warnings.push(format!(
                "fixed truncation removed norm {:e} above the truncation budget {:e}",
                stats.removed_norm, budget.truncation
            ));
        }
    }
    report.truncation = Some(TruncationSummary {
        mode: cfg.truncation.to_string(),
        threshold,
        terms_before: stats.terms_before,
        terms_after: stats.terms_after,
        removed_norm: stats.removed_norm,
        lambda: lambda_f64(&truncated.lambda),
        d: truncated.d,
        eta: truncated.eta,
    });

    if last >= Stage::Cost {
        let cost = at(Stage::Cost, total_cost(&CostInputs::from_terms(&truncated), &budget, DEFAULT_B_R))?;
        warnings.extend(cost.warnings.iter().cloned());
        if last >= Stage::Ftqc {
            report.ftqc = at(Stage::Ftqc, surface_code(cfg, &cost))?;
        }
        report.cost = Some(cost);
    }

    if verify {
        let v = at(Stage::Verify, verification(&tensors, &full, &truncated))?;
        report.passed &= v.passed;
        report.verification = Some(v);
    }

    let inconsistent = report.consistency_errors();
    if !inconsistent.is_empty() {
        report.passed = false;
        warnings.extend(inconsistent.into_iter().map(|e| format!("inconsistent report: {e}")));
    }
    report.warnings = warnings;
    Ok((report, Some(truncated)))
}

fn surface_code(cfg: &RunConfig, cost: &CostReport) -> Result<Vec<FtqcReport>, Error> {
    let factories = match &cfg.factories {
        Some(path) => ftqc::load_factories(path)?,
        None => ftqc::default_factories(),
    };
    cfg.p_phys
        .iter()
        .map(|&p| {
            let mut c = FtqcConfig::new(p);
            c.t_cycle = cfg.t_cycle_us * 1e-6;
            c.factories = factories.clone();
            ftqc::estimate_ftqc(cost.t_total, cost.logical_qubits.total, &c)
        })
        .collect()
}

fn verification(
    t: &HamiltonianTensors<f64>,
    full: &LcuTermSet<f64>,
    truncated: &LcuTermSet<f64>,
) -> Result<VerificationReport, Error> {
    let (mut checks, mut skipped) = if t.spec.num_spin_orbitals() <= MAX_ORACLE_QUBITS {
        let tr = (truncated.terms.len() != full.terms.len()).then_some(truncated);
        run_instance_checks(t, full, tr)?
    } else {
        (Vec::new(), vec![format!("dense oracles: 2P = {} exceeds {MAX_ORACLE_QUBITS}", t.spec.num_spin_orbitals())])
    };
    let (c, s) = run_circuit_suite(t.spec.basis, t.spec.lattice.cells())?;
    checks.extend(c);
    skipped.extend(s);
    Ok(VerificationReport::new(checks, skipped))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "json" => Ok(Self::Json),
            "text" => Ok(Self::Text),
            _ => Err(Error::InvalidArgument(format!("format `{s}`: expected json or text"))),
        }
    }
}

pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// Human-readable summary of the headline numbers.
pub fn to_text(r: &Report) -> String {
    let mut o = String::new();
    let s = &r.system;
    let basis = match s.basis {
        BasisKind::Bloch => "Bloch",
        BasisKind::Wannier => "Wannier",
    };
    let kind = match s.value_kind {
        ValueKind::Real => "real",
        ValueKind::Complex => "complex",
    };
    let _ = writeln!(o, "{} {}", r.tool, r.version);
    let _ = writeln!(
        o,
        "system: {basis}, M={} N={:?}, {} spatial orbitals, {kind}, {} formula unit(s)",
        s.bands, s.cells, s.spatial_orbitals, s.formula_units
    );
    let sym = &r.symmetry;
    let _ = writeln!(
        o,
        "symmetry: {} (hermiticity {:.3e}, 4-fold {:.3e}, 8-fold {:.3e})",
        if sym.passed { "ok" } else { "FAILED" },
        sym.max_hermiticity_deviation,
        sym.max_four_fold_deviation,
        sym.max_eight_fold_deviation
    );
    if let Some(t) = &r.translational {
        let _ = writeln!(o, "translational error: one-body {:.3e}, two-body {:.3e}", t.one_body, t.two_body);
    }
    if let Some(l) = &r.lcu {
        let _ = writeln!(
            o,
            "lambda: {:.6} Ha (one-body {:.6}, two-body {:.6}, identity {:.6})",
            l.lambda.lambda, l.lambda.lambda1, l.lambda.lambda2, l.lambda.lambda0
        );
        let classes: Vec<String> = l.terms_by_class.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(o, "terms: {} [{}]", l.terms, classes.join(" "));
    }
    if let Some(t) = &r.truncation {
        let _ = writeln!(
            o,
            "truncation {}: {} -> {} terms, removed norm {:.3e}, lambda {:.6} Ha",
            t.mode, t.terms_before, t.terms_after, t.removed_norm, t.lambda.lambda
        );
    }
    if let Some(c) = &r.cost {
        let _ = writeln!(o, "keep bits: {}, word width: {}, kappa: ({}, {})", c.aleph, c.m, c.qroam.kappa1, c.qroam.kappa2);
        let _ = writeln!(o, "walk steps: {}", c.iterations);
        let _ = writeln!(o, "Toffolis: {} ({:.3e})", c.toffoli_total, c.toffoli_total as f64);
        let _ = writeln!(o, "T gates: {} ({:.3e})", c.t_total, c.t_total as f64);
        let _ = writeln!(o, "logical qubits: {}", c.logical_qubits.total);
    }
    for f in &r.ftqc {
        let _ = writeln!(
            o,
            "p={:e}: d={}, factory {} x{}, physical qubits {} ({:.3e}), runtime {:.3e} s = {}",
            f.p_phys,
            f.code_distance,
            f.factory.name,
            f.n_factories,
            f.resources.physical_qubits,
            f.resources.physical_qubits as f64,
            f.runtime_seconds,
            format_days(f.runtime_seconds)
        );
        if f.code_distance_per_cycle_model != f.code_distance {
            let _ = writeln!(o, "  note: per-cycle logical error model gives d={}", f.code_distance_per_cycle_model);
        }
    }
    if let Some(v) = &r.verification {
        let failed: Vec<&str> = v.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        let _ = writeln!(
            o,
            "verification: {} ({} checks, {} skipped{})",
            if v.passed { "ok" } else { "FAILED" },
            v.checks.len(),
            v.skipped.len(),
            if failed.is_empty() { String::new() } else { format!("; failed: {}", failed.join(", ")) }
        );
    }
    for w in &r.warnings {
        let _ = writeln!(o, "warning: {w}");
    }
    let _ = writeln!(o, "status: {}", if r.passed { "ok" } else { "FAILED" });
    o
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Text => to_text(report),
    }
}

/// Writes the rendered report to `out`, or stdout when `None`.
pub fn emit(report: &Report, format: Format, out: Option<&Path>) -> Result<(), StageError> {
    let text = render(report, format);
    let io = |path: &Path, source| StageError { stage: Stage::Emit, source: Error::Io { path: path.to_path_buf(), source } };
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| io(path, e)),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(|e| io(Path::new("<stdout>"), e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{write_system, SystemSpec};
    use num_complex::Complex;

    fn toy(dir: &Path) -> PathBuf {
        let spec = SystemSpec::new(BasisKind::Bloch, 1, [1, 1, 1], 0.0, 1, ValueKind::Real).unwrap();
        let mut t = HamiltonianTensors::<f64>::new(spec);
        t.set_h(0, 0, Complex::new(1.0, 0.0));
        t.set_g([0, 0, 0, 0], Complex::new(1.0, 0.0));
        let path = dir.join("toy.json");
        write_system(&path, &t).unwrap();
        path
    }

    #[test]
    fn truncation_mode_parsing() {
        assert_eq!("l2".parse::<TruncationMode>().unwrap(), TruncationMode::L2Adaptive);
        assert_eq!("none".parse::<TruncationMode>().unwrap(), TruncationMode::None);
        assert_eq!("fixed:1e-9".parse::<TruncationMode>().unwrap(), TruncationMode::FixedThreshold(1e-9));
        for bad in ["fixed:", "fixed:-1", "fixed:x", "L2", ""] {
            assert!(bad.parse::<TruncationMode>().is_err(), "{bad}");
        }
    }

    #[test]
    fn days_formatting() {
        assert_eq!(format_days(2.7e5), "3.13 days");
        assert_eq!(format_days(0.0), "0.00 days");
    }

    #[test]
    fn toy_pipeline() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = RunConfig::new(toy(dir.path()));
        cfg.eps_per_fu = 1.8e-3;
        cfg.truncation = TruncationMode::None;
        cfg.verify = true;
        let r = run(&cfg).unwrap();
        let l = r.truncation.as_ref().unwrap().lambda;
        assert!((l.lambda1 - 1.5).abs() < 1e-12 && (l.lambda2 - 0.25).abs() < 1e-12);
        assert!(r.passed, "{}", to_text(&r));
        assert!(r.consistency_errors().is_empty());
        assert_eq!(r.ftqc.len(), 2);
        let text = to_text(&r);
        assert!(text.lines().any(|l| l.starts_with("T gates:")));
        assert!(text.contains(" days"));
        let back: Report = serde_json::from_str(&to_json(&r)).unwrap();
        assert_eq!(back, r);
        assert_eq!(to_json(&run(&cfg).unwrap()), to_json(&r));
    }

    #[test]
    fn stage_attribution() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = RunConfig::new(toy(dir.path()));
        cfg.factories = Some(dir.path().join("missing.json"));
        assert_eq!(run(&cfg).unwrap_err().stage, Stage::Ftqc);
        // earlier stages do not need the factory file
        assert!(run_until(&cfg, Stage::Cost).is_ok());

        cfg.factories = None;
        cfg.p_phys = vec![0.02];
        assert_eq!(run(&cfg).unwrap_err().stage, Stage::Ftqc);

        let cfg = RunConfig::new(dir.path().join("nope.json"));
        assert_eq!(run(&cfg).unwrap_err().stage, Stage::Load);

        let mut cfg = RunConfig::new(toy(dir.path()));
        cfg.eps_per_fu = 0.0;
        assert_eq!(run(&cfg).unwrap_err().stage, Stage::Config);
    }

    #[test]
    fn partial_runs() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = RunConfig::new(toy(dir.path()));
        let r = run_until(&cfg, Stage::Validate).unwrap();
        assert!(r.lcu.is_none() && r.cost.is_none());
        let r = run_until(&cfg, Stage::Truncate).unwrap();
        assert!(r.truncation.is_some() && r.cost.is_none());
        let r = run_verify(&cfg).unwrap();
        assert!(r.verification.as_ref().unwrap().passed && r.cost.is_none());
    }
}
