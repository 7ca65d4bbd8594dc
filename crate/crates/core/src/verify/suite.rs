use serde::{Deserialize, Serialize};

use super::dense::{dense_hamiltonian, lcu_reconstruct, MAX_ORACLE_QUBITS};
use super::pauli::pauli_l1;
use super::restoration::{verify_majorana_restoration, verify_spin_restoration, verify_translational_restoration};
use crate::error::Result;
use crate::hamiltonian::{BasisKind, HamiltonianTensors};
use crate::lcu::{LcuTermSet, TermClass};
use crate::scalar::Real;

pub const ORACLE_TOL: f64 = 1e-10;
pub const CIRCUIT_TOL: f64 = 1e-12;
/// Largest `ΠNᵢ` for which the translational circuit is simulated.
pub const MAX_TRANSLATION_CELLS: usize = 64;
/// Largest register for which the spectrum is diagonalized.
const MAX_EIGEN_QUBITS: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    /// `None` for informational entries that do not gate `passed`.
    pub tolerance: Option<f64>,
    pub passed: bool,
}

impl Check {
    fn gated(name: impl Into<String>, value: f64, tol: f64) -> Self {
        Self { name: name.into(), value, tolerance: Some(tol), passed: value <= tol }
    }

    fn info(name: impl Into<String>, value: f64) -> Self {
        Self { name: name.into(), value, tolerance: None, passed: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub skipped: Vec<String>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn new(checks: Vec<Check>, skipped: Vec<String>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Self { checks, skipped, passed }
    }
}

/// Restoration-circuit checks for the families of `basis`, the spin circuit,
/// and the translational circuit for `cells` when the basis is Wannier.
pub fn run_circuit_suite(basis: BasisKind, cells: [usize; 3]) -> Result<(Vec<Check>, Vec<String>)> {
    let mut checks = Vec::new();
    let mut skipped = Vec::new();
    for class in TermClass::ALL {
        if basis == BasisKind::Wannier && !class.is_real_family() {
            continue;
        }
        let r = verify_majorana_restoration(class, basis)?;
        checks.push(Check::gated(format!("majorana_restoration.{class}"), r.max(), CIRCUIT_TOL));
    }
    checks.push(Check::gated("spin_restoration", verify_spin_restoration()?, CIRCUIT_TOL));
    if basis == BasisKind::Wannier {
        if cells.iter().product::<usize>() <= MAX_TRANSLATION_CELLS {
            checks.push(Check::gated("translational_restoration", verify_translational_restoration(cells)?, CIRCUIT_TOL));
        } else {
            skipped.push(format!("translational_restoration: {cells:?} exceeds {MAX_TRANSLATION_CELLS} cells"));
        }
    }
    Ok((checks, skipped))
}

/// Dense-oracle checks of one instance. `full` must be the untruncated term
/// set; `truncated`, when given, only feeds an informational spectrum
/// comparison.
pub fn run_instance_checks<T: Real>(
    t: &HamiltonianTensors<T>,
    full: &LcuTermSet<T>,
    truncated: Option<&LcuTermSet<T>>,
) -> Result<(Vec<Check>, Vec<String>)> {
    let modes = t.spec.num_spin_orbitals();
    if modes > MAX_ORACLE_QUBITS {
        return Ok((Vec::new(), vec![format!("dense oracles: {modes} spin orbitals exceed {MAX_ORACLE_QUBITS}")]));
    }
    let direct = dense_hamiltonian(t)?;
    let rebuilt = lcu_reconstruct(full)?;
    let mut checks = vec![
        Check::gated("oracle_equivalence", rebuilt.max_abs_diff(&direct), ORACLE_TOL),
        Check::gated(
            "lambda_equals_pauli_l1",
            (pauli_l1(t)? - full.lambda.lambda.to_f64_lossy()).abs(),
            ORACLE_TOL,
        ),
        Check::gated("dense_hermiticity", direct.hermiticity_deviation(), ORACLE_TOL),
    ];
    let mut skipped = Vec::new();
    if let Some(tr) = truncated {
        if modes <= MAX_EIGEN_QUBITS {
            let gap = (direct.min_eigenvalue() - lcu_reconstruct(tr)?.min_eigenvalue()).abs();
            checks.push(Check::info("truncated_ground_energy_shift", gap));
        } else {
            skipped.push(format!("truncated spectrum: {modes} spin orbitals exceed {MAX_EIGEN_QUBITS}"));
        }
    }
    Ok((checks, skipped))
}
