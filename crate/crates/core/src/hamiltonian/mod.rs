//! Second-quantized Hamiltonian data for periodic solids.
//!
//! One-body elements `h[p,q]` and two-body elements `g[p,q,r,s]` are stored
//! sparsely over composite orbital indices. The two-body tensor follows the
//! chemist convention: `(p,q)` share the first electron coordinate, `(r,s)`
//! the second, so that
//! `H = H0 + Σ_{pqσ} (h_pq − ½Σ_r g_prrq) a†_pσ a_qσ + ½ Σ_{pqrs,στ} g_pqrs a†_pσ a_qσ a†_rτ a_sτ`.

mod io;
mod symmetry;
pub mod synthetic;

use std::collections::BTreeMap;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::Lattice;
use crate::scalar::{czero, Real};

pub use io::{hash_inputs, load_system, write_system, LoadOptions, Manifest, DEFAULT_ZERO_THRESHOLD};
pub use symmetry::{
    translational_symmetry_error, translational_symmetry_report, validate_symmetries, SymmetryReport,
    TranslationalReport, DEFAULT_SYMMETRY_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Bloch,
    Wannier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValueKind {
    Real,
    Complex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemSpec {
    pub basis: BasisKind,
    pub lattice: Lattice,
    /// Nuclear repulsion constant in Hartree.
    pub nuclear_repulsion: f64,
    pub formula_units: usize,
    pub value_kind: ValueKind,
}

impl SystemSpec {
    pub fn new(
        basis: BasisKind,
        bands: usize,
        cells: [usize; 3],
        nuclear_repulsion: f64,
        formula_units: usize,
        value_kind: ValueKind,
    ) -> Result<Self> {
        let spec = Self {
            basis,
            lattice: Lattice::new(bands, cells)?,
            nuclear_repulsion,
            formula_units,
            value_kind,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.basis == BasisKind::Wannier && self.value_kind != ValueKind::Real {
            return Err(Error::BasisMismatch(
                "a Wannier basis must declare real values".into(),
            ));
        }
        if self.formula_units == 0 {
            return Err(Error::InvalidSystem("n_formula_units must be at least 1".into()));
        }
        if !self.nuclear_repulsion.is_finite() {
            return Err(Error::InvalidSystem("H0 must be finite".into()));
        }
        Ok(())
    }

    pub fn num_orbitals(&self) -> usize {
        self.lattice.num_orbitals()
    }

    pub fn num_spin_orbitals(&self) -> usize {
        2 * self.num_orbitals()
    }
}

/// Sparse one- and two-body tensors. Absent keys are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianTensors<T: Real> {
    pub spec: SystemSpec,
    pub one_body: BTreeMap<[usize; 2], Complex<T>>,
    pub two_body: BTreeMap<[usize; 4], Complex<T>>,
}

impl<T: Real> HamiltonianTensors<T> {
    pub fn new(spec: SystemSpec) -> Self {
        Self {
            spec,
            one_body: BTreeMap::new(),
            two_body: BTreeMap::new(),
        }
    }

    pub fn num_orbitals(&self) -> usize {
        self.spec.num_orbitals()
    }

    pub fn h(&self, p: usize, q: usize) -> Complex<T> {
        self.one_body.get(&[p, q]).copied().unwrap_or_else(czero)
    }

    pub fn g(&self, p: usize, q: usize, r: usize, s: usize) -> Complex<T> {
        self.two_body.get(&[p, q, r, s]).copied().unwrap_or_else(czero)
    }

    pub fn nuclear_repulsion(&self) -> T {
        T::lit(self.spec.nuclear_repulsion)
    }

    /// Sets `h[p,q]`, removing the key when the value is exactly zero.
    pub fn set_h(&mut self, p: usize, q: usize, v: Complex<T>) {
        if v == czero() {
            self.one_body.remove(&[p, q]);
        } else {
            self.one_body.insert([p, q], v);
        }
    }

    pub fn set_g(&mut self, key: [usize; 4], v: Complex<T>) {
        if v == czero() {
            self.two_body.remove(&key);
        } else {
            self.two_body.insert(key, v);
        }
    }

    /// Returns a copy in which every stored value has been averaged with its
    /// symmetry images: Hermitian `h`, 4-fold `g`, and 8-fold `g` when the
    /// declared value kind is real. All images are written explicitly.
    pub fn symmetrized(&self) -> Self {
        let mut out = Self::new(self.spec.clone());
        let half = T::lit(0.5);
        for &[p, q] in self.one_body.keys() {
            let v = (self.h(p, q) + self.h(q, p).conj()) * half;
            out.set_h(p, q, v);
            out.set_h(q, p, v.conj());
        }
        let real = self.spec.value_kind == ValueKind::Real;
        for &key in self.two_body.keys() {
            let images = g_images(key, real);
            let n = T::from_usize(images.len()).unwrap();
            let mut acc = czero::<T>();
            for &(k, conj) in &images {
                let v = self.g(k[0], k[1], k[2], k[3]);
                acc += if conj { v.conj() } else { v };
            }
            let avg = acc / n;
            let avg = if real { Complex::new(avg.re, T::zero()) } else { avg };
            for &(k, conj) in &images {
                out.set_g(k, if conj { avg.conj() } else { avg });
            }
        }
        if real {
            for v in out.one_body.values_mut() {
                v.im = T::zero();
            }
        }
        out
    }
}

/// Symmetry images of a two-body key as `(key, conjugated)` pairs, including
/// the key itself first. 4-fold: `g_pqrs = g_rspq = g*_qpsr = g*_srqp`.
/// For real data the conjugations collapse and the 8-fold group applies.
pub(crate) fn g_images(key: [usize; 4], eight_fold: bool) -> Vec<([usize; 4], bool)> {
    let [p, q, r, s] = key;
    if eight_fold {
        vec![
            ([p, q, r, s], false),
            ([p, q, s, r], false),
            ([q, p, r, s], false),
            ([q, p, s, r], false),
            ([r, s, p, q], false),
            ([s, r, p, q], false),
            ([r, s, q, p], false),
            ([s, r, q, p], false),
        ]
    } else {
        vec![
            ([p, q, r, s], false),
            ([r, s, p, q], false),
            ([q, p, s, r], true),
            ([s, r, q, p], true),
        ]
    }
}
