//! Gate-list circuits and an exact sparse statevector simulator.
//!
//! Qubit `i` of a circuit is bit `i` of a basis-state index. Registers are
//! little-endian lists of qubits.

use std::collections::BTreeMap;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Register width limit imposed by the `u64` basis-state index.
pub const MAX_SIM_QUBITS: usize = 64;

pub type StateVector = BTreeMap<u64, Complex<f64>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GateKind {
    H,
    X,
    Z,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gate {
    /// Single-qubit gate, applied when every `controls` qubit is 1 and every
    /// `anti_controls` qubit is 0.
    Single { kind: GateKind, target: usize, controls: Vec<usize>, anti_controls: Vec<usize> },
    /// Householder reflection taking `|0⟩` to the uniform superposition over
    /// the first `size` values of the register.
    Uniform { register: Vec<usize>, size: usize },
    /// `|a⟩|b⟩ → |a⟩|(a + b) mod n⟩` for `a, b < n`; identity elsewhere.
    ModAdd { src: Vec<usize>, dst: Vec<usize>, modulus: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitDescription {
    pub qubits: Vec<String>,
    pub gates: Vec<Gate>,
}

impl CircuitDescription {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_qubits<S: AsRef<str>>(labels: &[S]) -> Self {
        Self { qubits: labels.iter().map(|s| s.as_ref().to_string()).collect(), gates: Vec::new() }
    }

    pub fn add_qubit(&mut self, label: impl Into<String>) -> usize {
        self.qubits.push(label.into());
        self.qubits.len() - 1
    }

    pub fn qubit(&self, label: &str) -> Result<usize> {
        self.qubits
            .iter()
            .position(|q| q == label)
            .ok_or_else(|| Error::Circuit(format!("undeclared qubit `{label}`")))
    }

    /// Appends `kind` on each target, controlled on `controls` being 1 and
    /// `anti_controls` being 0.
    pub fn push(&mut self, kind: GateKind, targets: &[&str], controls: &[&str], anti_controls: &[&str]) -> Result<()> {
        let controls = controls.iter().map(|c| self.qubit(c)).collect::<Result<Vec<_>>>()?;
        let anti_controls = anti_controls.iter().map(|c| self.qubit(c)).collect::<Result<Vec<_>>>()?;
        for t in targets {
            let target = self.qubit(t)?;
            if controls.contains(&target) || anti_controls.contains(&target) {
                return Err(Error::Circuit(format!("qubit `{t}` is both target and control")));
            }
            self.gates.push(Gate::Single { kind, target, controls: controls.clone(), anti_controls: anti_controls.clone() });
        }
        Ok(())
    }

    /// The circuit with every Z-type gate removed.
    pub fn without_phase_gates(&self) -> Self {
        let gates = self
            .gates
            .iter()
            .filter(|g| !matches!(g, Gate::Single { kind: GateKind::Z, .. }))
            .cloned()
            .collect();
        Self { qubits: self.qubits.clone(), gates }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.qubits.len();
        if n > MAX_SIM_QUBITS {
            return Err(Error::TooLarge { modes: n, max: MAX_SIM_QUBITS });
        }
        let check = |q: &usize| if *q < n { Ok(()) } else { Err(Error::Circuit(format!("qubit index {q} not declared"))) };
        for g in &self.gates {
            match g {
                Gate::Single { target, controls, anti_controls, .. } => {
                    check(target)?;
                    controls.iter().chain(anti_controls).try_for_each(check)?;
                    if controls.contains(target) || anti_controls.contains(target) {
                        return Err(Error::Circuit("target used as control".into()));
                    }
                }
                Gate::Uniform { register, size } => {
                    register.iter().try_for_each(check)?;
                    if *size == 0 || (register.len() < 64 && *size > 1 << register.len()) {
                        return Err(Error::Circuit(format!("{size} values do not fit {} qubits", register.len())));
                    }
                }
                Gate::ModAdd { src, dst, modulus } => {
                    src.iter().chain(dst).try_for_each(check)?;
                    if src.iter().any(|q| dst.contains(q)) {
                        return Err(Error::Circuit("adder registers overlap".into()));
                    }
                    if *modulus == 0 {
                        return Err(Error::Circuit("zero modulus".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

fn read(state: u64, reg: &[usize]) -> u64 {
    reg.iter().enumerate().fold(0, |acc, (i, &q)| acc | (state >> q & 1) << i)
}

fn write(state: u64, reg: &[usize], value: u64) -> u64 {
    reg.iter().enumerate().fold(state, |s, (i, &q)| (s & !(1 << q)) | (value >> i & 1) << q)
}

fn apply(state: &StateVector, gate: &Gate) -> StateVector {
    let mut out = StateVector::new();
    let mut put = |k: u64, v: Complex<f64>| *out.entry(k).or_default() += v;
    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    for (&b, &amp) in state {
        match gate {
            Gate::Single { kind, target, controls, anti_controls } => {
                let fires = controls.iter().all(|&c| b >> c & 1 == 1) && anti_controls.iter().all(|&c| b >> c & 1 == 0);
                if !fires {
                    put(b, amp);
                    continue;
                }
                let bit = b >> target & 1;
                let flipped = b ^ (1 << target);
                match kind {
                    GateKind::X => put(flipped, amp),
                    GateKind::Z => put(b, if bit == 1 { -amp } else { amp }),
                    GateKind::H => {
                        let (zero, one) = if bit == 1 { (flipped, b) } else { (b, flipped) };
                        put(zero, amp * s2);
                        put(one, if bit == 1 { -amp * s2 } else { amp * s2 });
                    }
                }
            }
            Gate::Uniform { register, size } => {
                let n = *size as u64;
                let k = read(b, register);
                if n == 1 || k >= n {
                    put(b, amp);
                    continue;
                }
                // u ∝ |0⟩ − ψ, U = 1 − 2|u⟩⟨u|
                let a = 1.0 / (n as f64).sqrt();
                let norm = ((1.0 - a).powi(2) + (n - 1) as f64 * a * a).sqrt();
                let u = |j: u64| if j == 0 { (1.0 - a) / norm } else { -a / norm };
                let uk = u(k);
                for j in 0..n {
                    let delta = if j == k { 1.0 } else { 0.0 };
                    put(write(b, register, j), amp * (delta - 2.0 * uk * u(j)));
                }
            }
            Gate::ModAdd { src, dst, modulus } => {
                let n = *modulus as u64;
                let (x, y) = (read(b, src), read(b, dst));
                if x < n && y < n {
                    put(write(b, dst, (x + y) % n), amp);
                } else {
                    put(b, amp);
                }
            }
        }
    }
    out.retain(|_, v| v.norm() > 1e-15);
    out
}

/// Runs `c` on the basis state `input`.
pub fn simulate_basis(c: &CircuitDescription, input: u64) -> Result<StateVector> {
    c.validate()?;
    let mut state = StateVector::from([(input, Complex::new(1.0, 0.0))]);
    for g in &c.gates {
        state = apply(&state, g);
    }
    Ok(state)
}

/// Runs `c` on a basis state written as a bit string in declared qubit
/// order, e.g. `"10"` for qubit 0 set.
pub fn simulate(c: &CircuitDescription, label: &str) -> Result<StateVector> {
    if label.len() != c.qubits.len() {
        return Err(Error::Circuit(format!("label `{label}` does not match {} qubits", c.qubits.len())));
    }
    let mut input = 0u64;
    for (i, ch) in label.chars().enumerate() {
        match ch {
            '0' => {}
            '1' => input |= 1 << i,
            _ => return Err(Error::Circuit(format!("bad basis label `{label}`"))),
        }
    }
    simulate_basis(c, input)
}

pub fn norm(state: &StateVector) -> f64 {
    state.values().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest `|a_k − b_k|` over the union of supports.
pub fn max_deviation(a: &StateVector, b: &StateVector) -> f64 {
    a.keys()
        .chain(b.keys())
        .map(|k| (a.get(k).copied().unwrap_or_default() - b.get(k).copied().unwrap_or_default()).norm())
        .fold(0.0, f64::max)
}
