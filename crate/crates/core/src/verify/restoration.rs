//! Symmetry restoration circuits of the PREPARE oracle and their targets.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::circuit::{max_deviation, simulate_basis, CircuitDescription, Gate, GateKind, StateVector};
use crate::error::{Error, Result};
use crate::hamiltonian::BasisKind;
use crate::lcu::TermClass;

/// Majorana type restoration on `a, s₁, s₂, s₃, j₁…j₄`, gate for gate.
///
/// The Z on `j₁, j₄` in the F block is controlled on `s₃` both positively
/// and negatively and therefore never fires. It is kept as written: the F
/// family needs no type-dependent sign.
pub fn majorana_circuit_bloch() -> CircuitDescription {
    let mut c = CircuitDescription::with_qubits(&["a", "s1", "s2", "s3", "j1", "j2", "j3", "j4"]);
    let ops: &[GateRow] = &[
        (GateKind::H, &["j1"], &[], &[]),
        // one-body
        (GateKind::X, &["j2"], &[], &["a", "s1"]),
        (GateKind::X, &["j2"], &["j1"], &["a"]),
        (GateKind::Z, &["j1"], &[], &["a", "s1"]),
        // B
        (GateKind::X, &["j2", "j4"], &["a"], &["s1", "s2", "s3"]),
        (GateKind::X, &["j2"], &["j1", "a"], &["s1", "s2", "s3"]),
        (GateKind::H, &["j3"], &["a"], &["s1", "s2", "s3"]),
        (GateKind::X, &["j4"], &["j3", "a"], &["s1", "s2", "s3"]),
        (GateKind::Z, &["j1", "j4"], &["a"], &["s1", "s2", "s3"]),
        // F
        (GateKind::X, &["j2"], &["j1", "a", "s3"], &["s1", "s2"]),
        (GateKind::H, &["j3"], &["a", "s3"], &["s1", "s2"]),
        (GateKind::X, &["j4"], &["j3", "a", "s3"], &["s1", "s2"]),
        (GateKind::Z, &["j1", "j4"], &["a", "s3"], &["s1", "s2", "s3"]),
        // C
        (GateKind::X, &["j2"], &["a", "s2"], &["s3", "s1"]),
        (GateKind::X, &["j2"], &["j1", "a", "s2"], &["s3", "s1"]),
        (GateKind::H, &["j3"], &["a", "s2"], &["s3", "s1"]),
        (GateKind::X, &["j4"], &["j3", "a", "s2"], &["s3", "s1"]),
        (GateKind::Z, &["j1"], &["a", "s2"], &["s3", "s1"]),
        // F − B + B
        (GateKind::X, &["j3", "j4"], &["a", "s2", "s3"], &["s1"]),
        (GateKind::X, &["j2", "j3", "j4"], &["j1", "a", "s2", "s3"], &["s1"]),
        // F − F + F
        (GateKind::X, &["j2", "j3", "j4"], &["j1", "a", "s1"], &["s2", "s3"]),
        // C − C + C
        (GateKind::X, &["j2", "j3", "j4"], &["j1", "a", "s1", "s3"], &["s2"]),
        (GateKind::X, &["j1"], &["a", "s1", "s3"], &["s2"]),
        (GateKind::Z, &["j1"], &["a", "s1", "s3"], &["s2"]),
    ];
    for (kind, t, pos, neg) in ops {
        push_unchecked(&mut c, *kind, t, pos, neg);
    }
    c
}

/// Real-orbital variant: only the one-body, B and F − B + B blocks remain,
/// with `s₁ = 0` and `s₂ = s₃` folded in.
pub fn majorana_circuit_wannier() -> CircuitDescription {
    let mut c = CircuitDescription::with_qubits(&["a", "s3", "j1", "j2", "j3", "j4"]);
    let ops: &[GateRow] = &[
        (GateKind::H, &["j1"], &[], &[]),
        (GateKind::X, &["j2"], &[], &["a"]),
        (GateKind::X, &["j2"], &["j1"], &["a"]),
        (GateKind::Z, &["j1"], &[], &["a"]),
        (GateKind::X, &["j2", "j4"], &["a"], &["s3"]),
        (GateKind::X, &["j2"], &["j1", "a"], &["s3"]),
        (GateKind::H, &["j3"], &["a"], &["s3"]),
        (GateKind::X, &["j4"], &["j3", "a"], &["s3"]),
        (GateKind::Z, &["j1", "j4"], &["a"], &["s3"]),
        (GateKind::X, &["j3", "j4"], &["a", "s3"], &[]),
        (GateKind::X, &["j2", "j3", "j4"], &["j1", "a", "s3"], &[]),
    ];
    for (kind, t, pos, neg) in ops {
        push_unchecked(&mut c, *kind, t, pos, neg);
    }
    c
}

/// Gate kind, targets, positive controls, negative controls.
type GateRow<'a> = (GateKind, &'a [&'a str], &'a [&'a str], &'a [&'a str]);

fn push_unchecked(c: &mut CircuitDescription, kind: GateKind, t: &[&str], pos: &[&str], neg: &[&str]) {
    c.push(kind, t, pos, neg).expect("fixed circuit references declared qubits");
}

/// Normalized target state of the `j` register read off the family's type
/// sum: `Σ sign |j₁j₂j₃j₄⟩ / √(#patterns)`.
pub fn majorana_target(class: TermClass) -> Vec<([u8; 4], f64)> {
    let pats = class.type_patterns();
    let a = 1.0 / (pats.len() as f64).sqrt();
    pats.iter().map(|&(j, s)| (j, s as f64 * a)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RestorationCheck {
    /// Deviation of the PREPARE output from the signed target.
    pub prepare: f64,
    /// Deviation of the Z-free (UNPREPARE) output from the unsigned target.
    pub unprepare: f64,
}

impl RestorationCheck {
    pub fn max(&self) -> f64 {
        self.prepare.max(self.unprepare)
    }
}

pub fn verify_majorana_restoration(class: TermClass, basis: BasisKind) -> Result<RestorationCheck> {
    let [a, s1, s2, s3] = class.restoration_input();
    let (circ, input_bits): (_, Vec<u8>) = match basis {
        BasisKind::Bloch => (majorana_circuit_bloch(), vec![a, s1, s2, s3]),
        BasisKind::Wannier => {
            if !class.is_real_family() {
                return Err(Error::BasisMismatch(format!("{class} does not occur for real orbitals")));
            }
            (majorana_circuit_wannier(), vec![a, s3])
        }
    };
    let input = input_bits.iter().enumerate().fold(0u64, |acc, (i, &b)| acc | (b as u64) << i);
    let offset = input_bits.len();
    let expected = |signed: bool| -> StateVector {
        majorana_target(class)
            .into_iter()
            .map(|(j, amp)| {
                let bits = j.iter().enumerate().fold(input, |acc, (i, &b)| acc | (b as u64) << (offset + i));
                (bits, Complex::new(if signed { amp } else { amp.abs() }, 0.0))
            })
            .collect()
    };
    let prepare = max_deviation(&simulate_basis(&circ, input)?, &expected(true));
    let unprepare = max_deviation(&simulate_basis(&circ.without_phase_gates(), input)?, &expected(false));
    Ok(RestorationCheck { prepare, unprepare })
}

/// `H σ; CNOT σ → τ` on `(σ, τ)`.
pub fn spin_circuit() -> CircuitDescription {
    let mut c = CircuitDescription::with_qubits(&["sigma", "tau"]);
    push_unchecked(&mut c, GateKind::H, &["sigma"], &[], &[]);
    push_unchecked(&mut c, GateKind::X, &["tau"], &["sigma"], &[]);
    c
}

/// Max deviation over both loaded values of `τ`: `τ = 0` must give
/// `(|00⟩ + |11⟩)/√2`, `τ = 1` must give `(|01⟩ + |10⟩)/√2`.
pub fn verify_spin_restoration() -> Result<f64> {
    let c = spin_circuit();
    let h = Complex::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    // bit 0 = σ, bit 1 = τ
    let same = StateVector::from([(0b00, h), (0b11, h)]);
    let opposite = StateVector::from([(0b10, h), (0b01, h)]);
    let d0 = max_deviation(&simulate_basis(&c, 0b00)?, &same);
    let d1 = max_deviation(&simulate_basis(&c, 0b10)?, &opposite);
    Ok(d0.max(d1))
}

fn bits_for(n: usize) -> usize {
    (usize::BITS - (n.max(1) - 1).leading_zeros()) as usize
}

/// Layout of a translational restoration circuit: `cells[t][k]` is the
/// register of direction `k` of shifted cell index `t`; `shift[k]` that of
/// the added translation.
#[derive(Debug, Clone)]
pub struct TranslationalLayout {
    pub cells: Vec<[Vec<usize>; 3]>,
    pub shift: [Vec<usize>; 3],
}

/// Uniform superposition over the translation register, then modular
/// addition of it into each of `shifted` cell-index registers, per
/// direction.
pub fn translational_circuit(n: [usize; 3], shifted: usize) -> (CircuitDescription, TranslationalLayout) {
    let mut c = CircuitDescription::new();
    let reg = |c: &mut CircuitDescription, name: &str| -> [Vec<usize>; 3] {
        std::array::from_fn(|k| (0..bits_for(n[k])).map(|b| c.add_qubit(format!("{name}_{}_{b}", k + 1))).collect())
    };
    let cells: Vec<[Vec<usize>; 3]> = (0..shifted).map(|t| reg(&mut c, &format!("n{}", t + 1))).collect();
    let shift = reg(&mut c, &format!("n{}", shifted + 1));
    for k in 0..3 {
        if n[k] > 1 {
            c.gates.push(Gate::Uniform { register: shift[k].clone(), size: n[k] });
        }
    }
    for cell in &cells {
        for k in 0..3 {
            if n[k] > 1 {
                c.gates.push(Gate::ModAdd { src: shift[k].clone(), dst: cell[k].clone(), modulus: n[k] });
            }
        }
    }
    (c, TranslationalLayout { cells, shift })
}

fn put(state: u64, reg: &[usize], value: usize) -> u64 {
    reg.iter().enumerate().fold(state, |s, (i, &q)| s | ((value >> i & 1) as u64) << q)
}

/// Checks `|n₁…n_t⟩|0⟩ → N^{−½} Σ_v |n₁+v, …, n_t+v⟩|v⟩` for the given
/// starting cells.
pub fn check_translation(n: [usize; 3], start: &[[usize; 3]]) -> Result<f64> {
    let (c, layout) = translational_circuit(n, start.len());
    let encode = |cells: &[[usize; 3]], v: [usize; 3]| -> u64 {
        let mut s = 0u64;
        for (reg, cell) in layout.cells.iter().zip(cells) {
            for (r, &x) in reg.iter().zip(cell) {
                s = put(s, r, x);
            }
        }
        for (r, x) in layout.shift.iter().zip(v) {
            s = put(s, r, x);
        }
        s
    };
    let total: usize = n.iter().product();
    let amp = Complex::new(1.0 / (total as f64).sqrt(), 0.0);
    let mut expected = StateVector::new();
    for flat in 0..total {
        let v = [flat % n[0], flat / n[0] % n[1], flat / (n[0] * n[1])];
        let moved: Vec<[usize; 3]> = start.iter().map(|cell| std::array::from_fn(|k| (cell[k] + v[k]) % n[k])).collect();
        expected.insert(encode(&moved, v), amp);
    }
    let got = simulate_basis(&c, encode(start, [0, 0, 0]))?;
    Ok(max_deviation(&got, &expected))
}

/// Translational restoration for the one-body (one shifted index) and
/// two-body (three shifted indices) layouts over a set of starting cells
/// covering every cell in each slot.
pub fn verify_translational_restoration(n: [usize; 3]) -> Result<f64> {
    if n.contains(&0) {
        return Err(Error::InvalidArgument("cell counts must be positive".into()));
    }
    let total: usize = n.iter().product();
    let cell = |flat: usize| [flat % n[0], flat / n[0] % n[1], flat / (n[0] * n[1])];
    let mut worst = 0.0f64;
    for a in 0..total {
        worst = worst.max(check_translation(n, &[cell(a)])?);
        let b = (a * 7 + 3) % total;
        let c = (a * 5 + 1) % total;
        worst = worst.max(check_translation(n, &[cell(a), cell(b), cell(c)])?);
    }
    Ok(worst)
}
