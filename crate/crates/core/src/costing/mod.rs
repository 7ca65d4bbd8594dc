//! Toffoli and logical-qubit costs of qubitized phase estimation with a
//! sparse, symmetry-restored PREPARE oracle.

mod qroam;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::BasisKind;
use crate::lcu::LcuTermSet;
use crate::scalar::Real;

pub use qroam::{qroam_plan, QroamPlan};

/// Bits of precision of the equal-superposition rotation.
pub const DEFAULT_B_R: u32 = 7;

/// `⌈log₂ x⌉`, zero for `x ≤ 1`.
pub fn clog2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// Ceiling that treats values within `1e-12` (relative) of an integer as
/// that integer, so that exact ratios are not pushed up by rounding.
pub(crate) fn snapped_ceil(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= 1e-12 * x.abs().max(1.0) {
        r
    } else {
        x.ceil()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorBudget {
    pub total: f64,
    pub qpe: f64,
    pub truncation: f64,
    pub preparation: f64,
}

/// `ε_total = ε_per_fu · n_fu`, split 10/16 to phase estimation and 3/16
/// each to truncation and state preparation.
pub fn error_budget(eps_per_fu: f64, n_fu: usize) -> Result<ErrorBudget> {
    if !(eps_per_fu > 0.0 && eps_per_fu.is_finite()) {
        return Err(Error::InvalidArgument(format!("error per formula unit must be positive, got {eps_per_fu}")));
    }
    if n_fu == 0 {
        return Err(Error::InvalidArgument("number of formula units must be at least 1".into()));
    }
    let total = eps_per_fu * n_fu as f64;
    Ok(ErrorBudget {
        total,
        qpe: total * 10.0 / 16.0,
        truncation: total * 3.0 / 16.0,
        preparation: total * 3.0 / 16.0,
    })
}

fn positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} must be positive and finite, got {x}")))
    }
}

/// Keep-register size `ℵ = ⌈log₂(λ / 2ε_prep)⌉`, at least 1.
pub fn keep_precision(lambda: f64, eps_prep: f64) -> Result<u32> {
    positive("lambda", lambda)?;
    positive("preparation error", eps_prep)?;
    let bits = snapped_ceil((lambda / (2.0 * eps_prep)).log2());
    Ok(bits.max(1.0) as u32)
}

/// Orbital-lattice shape relevant to the cost formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostShape {
    pub basis: BasisKind,
    pub bands: usize,
    pub cells: [usize; 3],
}

impl CostShape {
    pub fn orbitals(&self) -> u64 {
        (self.bands * self.cells.iter().product::<usize>()) as u64
    }

    fn cell_bits(&self) -> u32 {
        self.cells.iter().map(|&n| clog2(n as u64)).sum()
    }
}

/// Width `m` of each QROAM output word: keep value plus the "ind" and
/// "alt" index registers and flag qubits.
pub fn data_width(shape: &CostShape, aleph: u32) -> u32 {
    match shape.basis {
        BasisKind::Bloch => aleph + 2 * (4 * clog2(shape.orbitals()) + 6),
        BasisKind::Wannier => aleph + 2 * (4 * clog2(shape.bands as u64) + 3 * shape.cell_bits() + 4),
    }
}

/// Toffolis per walk step, itemized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkCost {
    pub equal_superposition: u64,
    pub qroam: u64,
    pub alias_sampling: u64,
    pub majorana_restore: u64,
    pub spin_restore: u64,
    pub translational_restore: u64,
    pub select: u64,
    pub reflection: u64,
    pub per_step_extra: u64,
}

impl WalkCost {
    pub fn items(&self) -> BTreeMap<&'static str, u64> {
        BTreeMap::from([
            ("equal_superposition", self.equal_superposition),
            ("qroam", self.qroam),
            ("alias_sampling", self.alias_sampling),
            ("majorana_restore", self.majorana_restore),
            ("spin_restore", self.spin_restore),
            ("translational_restore", self.translational_restore),
            ("select", self.select),
            ("reflection", self.reflection),
            ("per_step_extra", self.per_step_extra),
        ])
    }

    pub fn total(&self) -> u64 {
        self.items().values().sum()
    }
}

/// Per-step Toffoli items. The equal-superposition formula is asymptotic
/// and is clamped at zero for tiny `d`; a warning is returned then.
pub fn walk_cost(
    shape: &CostShape,
    d: u64,
    eta: u32,
    aleph: u32,
    m: u32,
    plan: &QroamPlan,
    b_r: u32,
) -> (WalkCost, Vec<String>) {
    let mut warnings = Vec::new();
    let log_d = clog2(d) as i64;
    let eq = 2 * (3 * log_d - 3 * eta as i64 + 2 * b_r as i64 - 9);
    if eq < 0 {
        warnings.push(format!("equal-superposition cost formula is negative ({eq}) for d={d}; clamped to 0"));
    }
    let p = shape.orbitals();
    let wannier = shape.basis == BasisKind::Wannier;
    let translational = if wannier {
        2 * shape.cells.iter().map(|&n| 3 * (clog2(n as u64) as u64).saturating_sub(1)).sum::<u64>()
    } else {
        0
    };
    let reflection = log_d as u64 + aleph as u64 + 5 + if wannier { shape.cell_bits() as u64 } else { 0 };
    let cost = WalkCost {
        equal_superposition: eq.max(0) as u64,
        qroam: plan.compute_cost + plan.uncompute_cost,
        alias_sampling: aleph as u64 + (m as u64 - aleph as u64 - 2) / 2,
        majorana_restore: if wannier { 2 * (1 + 7) } else { 2 * (5 + 25) },
        spin_restore: 0,
        translational_restore: translational,
        select: 2 * (4 * p - 2) + 2 * (4 * p - 1),
        reflection,
        per_step_extra: 2,
    };
    (cost, warnings)
}

/// Walk-operator repetitions `I = ⌈πλ / 2ε_QPE⌉`.
pub fn iteration_count(lambda: f64, eps_qpe: f64) -> Result<u64> {
    positive("lambda", lambda)?;
    positive("phase-estimation error", eps_qpe)?;
    let i = snapped_ceil(std::f64::consts::PI * lambda / (2.0 * eps_qpe));
    if i >= u64::MAX as f64 {
        return Err(Error::Overflow("iteration count"));
    }
    Ok((i as u64).max(1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitBreakdown {
    /// Phase-estimation control register plus unary-iteration ancillas.
    pub phase_estimation: u64,
    pub system: u64,
    pub qroam_input: u64,
    /// Keep register, comparator output, sign and the rotation bits.
    pub alias_sampling: u64,
    pub qroam_output: u64,
    pub total: u64,
}

pub fn logical_qubit_count(shape: &CostShape, d: u64, aleph: u32, m: u32, plan: &QroamPlan, iterations: u64, b_r: u32) -> QubitBreakdown {
    let phase_estimation = 2 * clog2(iterations + 1) as u64 - 1;
    let system = 2 * shape.orbitals();
    let qroam_input = clog2(d) as u64;
    let alias_sampling = (aleph + 2 + b_r) as u64;
    let qroam_output = plan.ancillas(m, d);
    QubitBreakdown {
        phase_estimation,
        system,
        qroam_input,
        alias_sampling,
        qroam_output,
        total: phase_estimation + system + qroam_input + alias_sampling + qroam_output,
    }
}

/// Parameters the cost model needs from a term set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostInputs {
    pub shape: CostShape,
    pub d: u64,
    pub eta: u32,
    pub lambda: f64,
}

impl CostInputs {
    pub fn from_terms<T: Real>(set: &LcuTermSet<T>) -> Self {
        Self {
            shape: CostShape { basis: set.basis, bands: set.lattice.bands(), cells: set.lattice.cells() },
            d: set.d as u64,
            eta: set.eta,
            lambda: set.lambda.lambda.to_f64_lossy(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostReport {
    pub inputs: CostInputs,
    pub budget: ErrorBudget,
    pub b_r: u32,
    pub aleph: u32,
    pub m: u32,
    pub qroam: QroamPlan,
    pub walk: WalkCost,
    pub walk_toffolis: u64,
    pub iterations: u64,
    /// `I · (⌈d/κ₁⌉ + m(κ₁ − 1))`, the data-loading share of the total.
    pub dominant_toffolis: u64,
    pub toffoli_total: u64,
    pub t_total: u64,
    pub logical_qubits: QubitBreakdown,
    pub warnings: Vec<String>,
}

/// Full cost of phase estimation to precision `ε_QPE`. Initial-state
/// preparation and the inverse QFT are not included.
pub fn total_cost(inputs: &CostInputs, budget: &ErrorBudget, b_r: u32) -> Result<CostReport> {
    if inputs.d == 0 {
        return Err(Error::InvalidArgument("no LCU terms remain to cost".into()));
    }
    let aleph = keep_precision(inputs.lambda, budget.preparation)?;
    let m = data_width(&inputs.shape, aleph);
    let plan = qroam_plan(inputs.d, m);
    let (walk, warnings) = walk_cost(&inputs.shape, inputs.d, inputs.eta, aleph, m, &plan, b_r);
    let iterations = iteration_count(inputs.lambda, budget.qpe)?;
    let walk_toffolis = walk.total();
    let toffoli_total = iterations.checked_mul(walk_toffolis).ok_or(Error::Overflow("Toffoli count"))?;
    let t_total = toffoli_total.checked_mul(4).ok_or(Error::Overflow("T count"))?;
    let dominant_toffolis = iterations.checked_mul(plan.compute_cost).ok_or(Error::Overflow("Toffoli count"))?;
    let logical_qubits = logical_qubit_count(&inputs.shape, inputs.d, aleph, m, &plan, iterations, b_r);
    Ok(CostReport {
        inputs: *inputs,
        budget: *budget,
        b_r,
        aleph,
        m,
        qroam: plan,
        walk,
        walk_toffolis,
        iterations,
        dominant_toffolis,
        toffoli_total,
        t_total,
        logical_qubits,
        warnings,
    })
}
