use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex;

use super::majorana::{apply_word, mode, MajoranaString};
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianTensors;
use crate::lcu::{expand_translations, LcuTermSet, SpinPairing};
use crate::scalar::Real;

/// Largest register the oracles accept.
pub const MAX_ORACLE_QUBITS: usize = 14;

/// A `2ⁿ × 2ⁿ` complex matrix. Entries are kept in a sorted map since the
/// operators built here are sparse; absent entries are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    n_qubits: usize,
    entries: BTreeMap<(u64, u64), Complex<f64>>,
}

impl DenseOperator {
    pub fn zero(n_qubits: usize) -> Result<Self> {
        if n_qubits > MAX_ORACLE_QUBITS {
            return Err(Error::TooLarge { modes: n_qubits, max: MAX_ORACLE_QUBITS });
        }
        Ok(Self { n_qubits, entries: BTreeMap::new() })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> u64 {
        1u64 << self.n_qubits
    }

    pub fn get(&self, row: u64, col: u64) -> Complex<f64> {
        self.entries.get(&(row, col)).copied().unwrap_or_default()
    }

    pub fn add(&mut self, row: u64, col: u64, v: Complex<f64>) {
        *self.entries.entry((row, col)).or_default() += v;
    }

    pub fn add_identity(&mut self, c: f64) {
        if c != 0.0 {
            for i in 0..self.dim() {
                self.add(i, i, Complex::new(c, 0.0));
            }
        }
    }

    /// Largest entrywise `|self − other|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .keys()
            .chain(other.entries.keys())
            .map(|&(r, c)| (self.get(r, c) - other.get(r, c)).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        self.entries
            .iter()
            .map(|(&(r, c), v)| (v - self.get(c, r).conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn to_matrix(&self) -> DMatrix<Complex<f64>> {
        let n = self.dim() as usize;
        let mut m = DMatrix::zeros(n, n);
        for (&(r, c), v) in &self.entries {
            m[(r as usize, c as usize)] = *v;
        }
        m
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        let m = self.to_matrix();
        let h = (&m + m.adjoint()) * Complex::new(0.5, 0.0);
        h.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
    }

    fn add_majorana(&mut self, s: &MajoranaString, coeff: Complex<f64>) {
        for state in 0..self.dim() {
            let (out, amp) = s.apply(state);
            self.add(out, state, coeff * amp);
        }
    }
}

fn c64<T: Real>(v: Complex<T>) -> Complex<f64> {
    Complex::new(v.re.to_f64_lossy(), v.im.to_f64_lossy())
}

/// `H0 + Σ_{pqσ}(h_pq − ½Σ_r g_prrq) a†_pσ a_qσ
/// + ½Σ_{pqrs,στ} g_pqrs a†_pσ a_qσ a†_rτ a_sτ` built from ladder operators.
pub fn dense_hamiltonian<T: Real>(t: &HamiltonianTensors<T>) -> Result<DenseOperator> {
    let mut op = DenseOperator::zero(t.spec.num_spin_orbitals())?;
    op.add_identity(t.spec.nuclear_repulsion);

    let mut one: BTreeMap<[usize; 2], Complex<f64>> = t.one_body.iter().map(|(&k, &v)| (k, c64(v))).collect();
    for (&[p, r1, r2, q], &v) in &t.two_body {
        if r1 == r2 {
            *one.entry([p, q]).or_default() -= c64(v) * 0.5;
        }
    }
    for state in 0..op.dim() {
        for (&[p, q], &c) in &one {
            for sigma in 0..2 {
                let word = [(mode(p, sigma), true), (mode(q, sigma), false)];
                if let Some((out, sign)) = apply_word(state, &word) {
                    op.add(out, state, c * sign as f64);
                }
            }
        }
        for (&[p, q, r, s], &g) in &t.two_body {
            let c = c64(g) * 0.5;
            for sigma in 0..2 {
                for tau in 0..2 {
                    let word = [
                        (mode(p, sigma), true),
                        (mode(q, sigma), false),
                        (mode(r, tau), true),
                        (mode(s, tau), false),
                    ];
                    if let Some((out, sign)) = apply_word(state, &word) {
                        op.add(out, state, c * sign as f64);
                    }
                }
            }
        }
    }
    Ok(op)
}

/// Sums every Majorana string of the term set, with spin, type and
/// translation sums restored, plus the identity constant.
pub fn lcu_reconstruct<T: Real>(set: &LcuTermSet<T>) -> Result<DenseOperator> {
    let mut op = DenseOperator::zero(2 * set.lattice.num_orbitals())?;
    op.add_identity(set.constant.to_f64_lossy());
    for term in expand_translations(set) {
        let class = term.class;
        let pre: Complex<f64> = class.prefactor();
        let coeff = pre * term.signed_weight().to_f64_lossy();
        let [p, q, r, s] = term.indices;
        let spins: [(u8, u8); 2] = match class.spin_pairing() {
            SpinPairing::Equal => [(0, 0), (1, 1)],
            SpinPairing::Opposite => [(0, 1), (1, 0)],
        };
        for (sigma, tau) in spins {
            for &(j, sign) in class.type_patterns() {
                let factors = if class.is_one_body() {
                    vec![(p, sigma, j[0]), (q, sigma, j[1])]
                } else {
                    vec![(p, sigma, j[0]), (q, sigma, j[1]), (r, tau, j[2]), (s, tau, j[3])]
                };
                let string = MajoranaString::new(factors)?;
                op.add_majorana(&string, coeff * sign as f64);
            }
        }
    }
    Ok(op)
}
