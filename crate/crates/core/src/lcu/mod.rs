//! Majorana-string LCU of the Hamiltonian.
//!
//! With `γ₀ = a + a†` and `γ₁ = −i(a − a†)` per spin orbital, the Hamiltonian
//! becomes a constant plus eight families of Majorana strings. Each family
//! stores one real coefficient per restricted index tuple; spin sums,
//! Majorana type sums and (for Wannier data) lattice translations are
//! restored on the quantum computer and are expanded here only on demand.

mod enumerate;
mod tensors;
mod truncate;

use std::io::Write;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::hamiltonian::BasisKind;
use crate::index::Lattice;
use crate::scalar::Real;

pub use enumerate::{
    canonicalize, enumerate_restricted, enumerate_terms, expand_translations, EnumerateOptions,
};
pub use tensors::{bcf_tensors, constant_shift, effective_one_body, lambda0, BcfTensors};
pub use truncate::{l2_removal_count, truncate_l2, truncate_threshold, TruncationStats};

/// Which spin configurations a family sums over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpinPairing {
    /// `Σ_σ`, all four Majoranas share one spin.
    Equal,
    /// `Σ_{σ≠τ}`, the second pair has the opposite spin.
    Opposite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TermClass {
    OneBodyRe,
    OneBodyIm,
    B,
    F,
    C,
    Fbb,
    Fff,
    Ccc,
}

impl TermClass {
    pub const ALL: [TermClass; 8] = [
        TermClass::OneBodyRe,
        TermClass::OneBodyIm,
        TermClass::B,
        TermClass::F,
        TermClass::C,
        TermClass::Fbb,
        TermClass::Fff,
        TermClass::Ccc,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TermClass::OneBodyRe => "OneBodyRe",
            TermClass::OneBodyIm => "OneBodyIm",
            TermClass::B => "B",
            TermClass::F => "F",
            TermClass::C => "C",
            TermClass::Fbb => "FBB",
            TermClass::Fff => "FFF",
            TermClass::Ccc => "CCC",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.label() == s)
    }

    pub fn is_one_body(self) -> bool {
        matches!(self, TermClass::OneBodyRe | TermClass::OneBodyIm)
    }

    /// Families that survive for real orbitals.
    pub fn is_real_family(self) -> bool {
        matches!(self, TermClass::OneBodyRe | TermClass::B | TermClass::Fbb)
    }

    pub fn spin_pairing(self) -> SpinPairing {
        match self {
            TermClass::B | TermClass::F | TermClass::C => SpinPairing::Opposite,
            _ => SpinPairing::Equal,
        }
    }

    /// `i/2` for one-body strings, `1/4` for two-body strings.
    pub fn prefactor<T: Real>(self) -> Complex<T> {
        if self.is_one_body() {
            Complex::new(T::zero(), T::lit(0.5))
        } else {
            Complex::new(T::lit(0.25), T::zero())
        }
    }

    /// Majorana type assignments `(j₁, j₂, j₃, j₄)` with their signs.
    /// One-body families use `j₁, j₂` only.
    pub fn type_patterns(self) -> &'static [([u8; 4], i8)] {
        match self {
            TermClass::OneBodyRe => &[([0, 1, 0, 0], 1), ([1, 0, 0, 0], -1)],
            TermClass::OneBodyIm => &[([0, 0, 0, 0], 1), ([1, 1, 0, 0], 1)],
            TermClass::B => &[([0, 1, 0, 1], -1), ([0, 1, 1, 0], 1), ([1, 0, 0, 1], 1), ([1, 0, 1, 0], -1)],
            // No (−1)^{j+k} here: the dense oracle rejects it.
            TermClass::F => &[([0, 0, 0, 0], 1), ([0, 0, 1, 1], 1), ([1, 1, 0, 0], 1), ([1, 1, 1, 1], 1)],
            TermClass::C => &[([0, 1, 0, 0], 1), ([0, 1, 1, 1], 1), ([1, 0, 0, 0], -1), ([1, 0, 1, 1], -1)],
            TermClass::Fbb => &[([0, 0, 1, 1], 1), ([1, 1, 0, 0], 1)],
            TermClass::Fff => &[([0, 0, 0, 0], 1), ([1, 1, 1, 1], 1)],
            TermClass::Ccc => &[([0, 1, 1, 1], 1), ([1, 0, 0, 0], -1)],
        }
    }

    /// Input of the Majorana type restoration circuit as `(a, s₁, s₂, s₃)`,
    /// where `a` flags two-body terms.
    pub fn restoration_input(self) -> [u8; 4] {
        match self {
            TermClass::OneBodyRe => [0, 0, 0, 0],
            TermClass::OneBodyIm => [0, 1, 0, 0],
            TermClass::B => [1, 0, 0, 0],
            TermClass::F => [1, 0, 0, 1],
            TermClass::C => [1, 0, 1, 0],
            TermClass::Fbb => [1, 0, 1, 1],
            TermClass::Fff => [1, 1, 0, 0],
            TermClass::Ccc => [1, 1, 0, 1],
        }
    }

    /// Contribution to λ per unit weight: `|prefactor| · 2 spin
    /// configurations · number of type patterns`.
    pub fn lambda_factor(self) -> f64 {
        let pre = if self.is_one_body() { 0.5 } else { 0.25 };
        pre * 2.0 * self.type_patterns().len() as f64
    }

    /// Whether `idx` satisfies the family's restricted-sum ordering.
    pub fn admits(self, idx: [usize; 4]) -> bool {
        let [p, q, r, s] = idx;
        match self {
            TermClass::OneBodyRe => p <= q,
            TermClass::OneBodyIm => p < q,
            TermClass::B => p <= q && r <= s && (p, q) <= (r, s),
            TermClass::F | TermClass::Fbb => p < q && r < s && (p, q) <= (r, s),
            TermClass::C => p <= q && r < s,
            TermClass::Fff => p < q && q < r && r < s,
            TermClass::Ccc => q < r && r < s,
        }
    }

    pub fn arity(self) -> usize {
        if self.is_one_body() {
            2
        } else {
            4
        }
    }
}

impl std::fmt::Display for TermClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// One loaded coefficient. `indices[2..]` are zero for one-body terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LcuTerm<T> {
    pub class: TermClass,
    pub indices: [usize; 4],
    /// Magnitude loaded by QROAM, including the `(½)^δ` factors.
    pub weight: T,
    pub sign: i8,
    /// Number of distinct restricted terms this entry stands for (its
    /// translation orbit size for Wannier data, 1 otherwise).
    pub multiplicity: usize,
}

impl<T: Real> LcuTerm<T> {
    pub fn signed_weight(&self) -> T {
        if self.sign < 0 {
            -self.weight
        } else {
            self.weight
        }
    }

    /// This term's share of λ.
    pub fn lambda_contribution(&self) -> T {
        T::lit(self.class.lambda_factor()) * self.weight * T::from_usize(self.multiplicity).unwrap()
    }

    pub(crate) fn sort_key(&self) -> (TermClass, [usize; 4]) {
        (self.class, self.indices)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambdaBreakdown<T> {
    pub lambda0: T,
    pub lambda1: T,
    pub lambda2: T,
    pub lambda: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LcuTermSet<T> {
    pub basis: BasisKind,
    pub lattice: Lattice,
    pub terms: Vec<LcuTerm<T>>,
    pub d: usize,
    pub eta: u32,
    /// Identity coefficient `H0 + Σ_p h_pp + ¼Σ_pr(2g_pprr − g_prrp)`.
    pub constant: T,
    pub lambda: LambdaBreakdown<T>,
}

/// Largest `e` with `2^e | d`; zero for `d = 0`.
pub fn two_adic_order(d: usize) -> u32 {
    if d == 0 {
        0
    } else {
        d.trailing_zeros()
    }
}

impl<T: Real> LcuTermSet<T> {
    pub(crate) fn from_terms(
        basis: BasisKind,
        lattice: Lattice,
        mut terms: Vec<LcuTerm<T>>,
        constant: T,
    ) -> Self {
        terms.sort_by_key(|t| t.sort_key());
        let mut set = Self {
            basis,
            lattice,
            terms,
            d: 0,
            eta: 0,
            constant,
            lambda: LambdaBreakdown {
                lambda0: constant.abs(),
                lambda1: T::zero(),
                lambda2: T::zero(),
                lambda: T::zero(),
            },
        };
        set.refresh();
        set
    }

    /// Recomputes `d`, `η` and λ from the term list, in list order.
    pub(crate) fn refresh(&mut self) {
        let mut l1 = T::zero();
        let mut l2 = T::zero();
        for t in &self.terms {
            if t.class.is_one_body() {
                l1 += t.lambda_contribution();
            } else {
                l2 += t.lambda_contribution();
            }
        }
        self.d = self.terms.len();
        self.eta = two_adic_order(self.d);
        self.lambda = LambdaBreakdown {
            lambda0: self.constant.abs(),
            lambda1: l1,
            lambda2: l2,
            lambda: l1 + l2,
        };
    }

    pub fn count_by_class(&self) -> Vec<(TermClass, usize)> {
        TermClass::ALL
            .into_iter()
            .map(|c| (c, self.terms.iter().filter(|t| t.class == c).count()))
            .filter(|&(_, n)| n > 0)
            .collect()
    }

    /// Writes `class p q r s weight sign` records; one-body terms print `-`
    /// for `r s`.
    pub fn write_dump<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "# class p q r s weight sign")?;
        for t in &self.terms {
            let [p, q, r, s] = t.indices;
            let weight = t.weight.to_f64_lossy();
            if t.class.is_one_body() {
                writeln!(w, "{} {p} {q} - - {weight:.16e} {}", t.class, t.sign)?;
            } else {
                writeln!(w, "{} {p} {q} {r} {s} {weight:.16e} {}", t.class, t.sign)?;
            }
        }
        Ok(())
    }
}
