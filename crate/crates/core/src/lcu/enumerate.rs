use std::collections::{BTreeMap, BTreeSet};

use super::tensors::{constant_shift, effective_one_body, one_body_value, two_body_value, Bcf};
use super::{LcuTerm, LcuTermSet, TermClass};
use crate::error::{Error, Result};
use crate::hamiltonian::{BasisKind, HamiltonianTensors};
use crate::index::Lattice;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnumerateOptions {
    /// Wannier input is real; coefficients of the complex-only families up
    /// to this magnitude are treated as noise and dropped, larger ones are
    /// an error.
    pub nonreal_tolerance: f64,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        Self { nonreal_tolerance: 1e-8 }
    }
}

const TWO_BODY: [TermClass; 6] = [
    TermClass::B,
    TermClass::F,
    TermClass::C,
    TermClass::Fbb,
    TermClass::Fff,
    TermClass::Ccc,
];

fn permutations(k: [usize; 4]) -> impl Iterator<Item = [usize; 4]> {
    const P: [[usize; 4]; 24] = [
        [0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3], [0, 2, 3, 1], [0, 3, 1, 2], [0, 3, 2, 1],
        [1, 0, 2, 3], [1, 0, 3, 2], [1, 2, 0, 3], [1, 2, 3, 0], [1, 3, 0, 2], [1, 3, 2, 0],
        [2, 0, 1, 3], [2, 0, 3, 1], [2, 1, 0, 3], [2, 1, 3, 0], [2, 3, 0, 1], [2, 3, 1, 0],
        [3, 0, 1, 2], [3, 0, 2, 1], [3, 1, 0, 2], [3, 1, 2, 0], [3, 2, 0, 1], [3, 2, 1, 0],
    ];
    P.into_iter().map(move |p| p.map(|i| k[i]))
}

fn term<T: Real>(class: TermClass, indices: [usize; 4], value: T) -> LcuTerm<T> {
    LcuTerm {
        class,
        indices,
        weight: value.abs(),
        sign: if value < T::zero() { -1 } else { 1 },
        multiplicity: 1,
    }
}

/// Every nonzero restricted-sum coefficient of every family, without any
/// translational reduction, sorted by `(class, indices)`.
pub fn enumerate_restricted<T: Real>(t: &HamiltonianTensors<T>) -> Result<Vec<LcuTerm<T>>> {
    enumerate_restricted_with(t, &EnumerateOptions::default())
}

fn enumerate_restricted_with<T: Real>(
    t: &HamiltonianTensors<T>,
    opts: &EnumerateOptions,
) -> Result<Vec<LcuTerm<T>>> {
    t.spec.validate()?;
    let real_only = t.spec.basis == BasisKind::Wannier;
    let mut out = Vec::new();
    let mut keep = |class: TermClass, idx: [usize; 4], v: T| -> Result<()> {
        if v == T::zero() {
            return Ok(());
        }
        if real_only && !class.is_real_family() {
            let mag = v.abs().to_f64_lossy();
            if mag > opts.nonreal_tolerance {
                return Err(Error::BasisMismatch(format!(
                    "real Wannier data produced a {class} coefficient of {mag:e} at {idx:?}"
                )));
            }
            return Ok(());
        }
        out.push(term(class, idx, v));
        Ok(())
    };

    let teff = effective_one_body(t);
    let pairs: BTreeSet<[usize; 2]> = teff.keys().map(|&[p, q]| [p.min(q), p.max(q)]).collect();
    for class in [TermClass::OneBodyRe, TermClass::OneBodyIm] {
        for &[p, q] in &pairs {
            let idx = [p, q, 0, 0];
            if class.admits(idx) {
                keep(class, idx, one_body_value(&teff, class, p, q))?;
            }
        }
    }

    let candidates: BTreeSet<[usize; 4]> = t.two_body.keys().flat_map(|&k| permutations(k)).collect();
    let bcf = Bcf(t);
    for class in TWO_BODY {
        for &idx in &candidates {
            if class.admits(idx) {
                keep(class, idx, two_body_value(bcf, class, idx))?;
            }
        }
    }
    Ok(out)
}

/// The LCU term set. Bloch data yields one term per restricted coefficient.
/// Wannier data is reduced to one representative per translation orbit,
/// translated so that its last orbital lies in the origin cell.
pub fn enumerate_terms<T: Real>(t: &HamiltonianTensors<T>, opts: &EnumerateOptions) -> Result<LcuTermSet<T>> {
    let restricted = enumerate_restricted_with(t, opts)?;
    let constant = constant_shift(t);
    let lattice = t.spec.lattice;
    let terms = match t.spec.basis {
        BasisKind::Bloch => restricted,
        BasisKind::Wannier => reduce_translations(t, &lattice, &restricted),
    };
    Ok(LcuTermSet::from_terms(t.spec.basis, lattice, terms, constant))
}

/// Maps a raw index tuple onto the family's restricted ordering using the
/// coefficient symmetries, returning the restricted tuple and the sign
/// relating the two coefficients. `None` when the coefficient vanishes
/// identically at `idx`.
///
/// Defined for the real families; for the others only already restricted
/// tuples are accepted.
pub fn canonicalize(class: TermClass, idx: [usize; 4]) -> Option<([usize; 4], i8)> {
    let [p, q, r, s] = idx;
    match class {
        TermClass::OneBodyRe => Some(([p.min(q), p.max(q), 0, 0], 1)),
        TermClass::B => {
            let a = (p.min(q), p.max(q));
            let b = (r.min(s), r.max(s));
            let (x, y) = if a <= b { (a, b) } else { (b, a) };
            Some(([x.0, x.1, y.0, y.1], 1))
        }
        TermClass::Fbb => {
            if p == q || r == s {
                return None;
            }
            let mut eps = 1;
            let a = if p < q { (p, q) } else { eps = -eps; (q, p) };
            let b = if r < s { (r, s) } else { eps = -eps; (s, r) };
            let (x, y) = if a <= b { (a, b) } else { (b, a) };
            Some(([x.0, x.1, y.0, y.1], eps))
        }
        _ => class.admits(idx).then_some((idx, 1)),
    }
}

fn translate(lat: &Lattice, class: TermClass, idx: [usize; 4], shift: [usize; 3]) -> [usize; 4] {
    let mut out = idx;
    for slot in out.iter_mut().take(class.arity()) {
        *slot = lat.translate(*slot, shift);
    }
    out
}

/// Smallest restricted tuple over all translates of `idx`.
fn orbit_key(lat: &Lattice, class: TermClass, idx: [usize; 4]) -> Option<[usize; 4]> {
    lat.shifts()
        .filter_map(|v| canonicalize(class, translate(lat, class, idx, v)).map(|(k, _)| k))
        .min()
}

/// Distinct restricted tuples reached from `idx` by translation, with the
/// sign relating each to the raw tuple.
fn orbit(lat: &Lattice, class: TermClass, idx: [usize; 4]) -> BTreeMap<[usize; 4], i8> {
    let mut out = BTreeMap::new();
    for v in lat.shifts() {
        if let Some((k, eps)) = canonicalize(class, translate(lat, class, idx, v)) {
            out.entry(k).or_insert(eps);
        }
    }
    out
}

fn reduce_translations<T: Real>(t: &HamiltonianTensors<T>, lat: &Lattice, restricted: &[LcuTerm<T>]) -> Vec<LcuTerm<T>> {
    let teff = effective_one_body(t);
    let bcf = Bcf(t);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for term in restricted {
        let class = term.class;
        let Some(key) = orbit_key(lat, class, term.indices) else { continue };
        if !seen.insert((class, key)) {
            continue;
        }
        let last = key[class.arity() - 1];
        let rep = translate(lat, class, key, lat.inverse_shift(lat.unflatten(last).cell));
        let (canon, eps) = canonicalize(class, rep).expect("orbit key is a nonvanishing tuple");
        let value = if class.is_one_body() {
            one_body_value(&teff, class, canon[0], canon[1])
        } else {
            two_body_value(bcf, class, canon)
        };
        if value == T::zero() {
            continue;
        }
        let sign = if value < T::zero() { -eps } else { eps };
        out.push(LcuTerm {
            class,
            indices: rep,
            weight: value.abs(),
            sign,
            multiplicity: orbit(lat, class, rep).len(),
        });
    }
    out
}

/// Expands each term over all lattice translations into the distinct
/// restricted terms it represents. Bloch sets are returned unchanged.
pub fn expand_translations<T: Real>(set: &LcuTermSet<T>) -> Vec<LcuTerm<T>> {
    if set.basis == BasisKind::Bloch {
        return set.terms.clone();
    }
    let mut out = Vec::new();
    for term in &set.terms {
        for (k, eps) in orbit(&set.lattice, term.class, term.indices) {
            out.push(LcuTerm {
                class: term.class,
                indices: k,
                weight: term.weight,
                sign: term.sign * eps,
                multiplicity: 1,
            });
        }
    }
    out.sort_by_key(|t| t.sort_key());
    out
}

#[cfg(test)]
mod tests {
    use num_complex::Complex;

    use super::*;
    use crate::hamiltonian::{synthetic, SystemSpec, ValueKind};

    fn single_orbital() -> HamiltonianTensors<f64> {
        let spec = SystemSpec::new(BasisKind::Bloch, 1, [1, 1, 1], 0.0, 1, ValueKind::Real).unwrap();
        let mut t = HamiltonianTensors::new(spec);
        t.set_h(0, 0, Complex::new(1.0, 0.0));
        t.set_g([0, 0, 0, 0], Complex::new(1.0, 0.0));
        t
    }

    #[test]
    fn single_orbital_lambdas() {
        let set = enumerate_terms(&single_orbital(), &EnumerateOptions::default()).unwrap();
        assert_eq!(set.lambda.lambda1, 1.5);
        assert_eq!(set.lambda.lambda2, 0.25);
        assert_eq!(set.lambda.lambda, 1.75);
        assert_eq!(set.d, 2);
    }

    #[test]
    fn real_wannier_has_only_real_families() {
        let t = synthetic::random_wannier::<f64>(&mut synthetic::rng(8), 2, [2, 1, 1], 1.0);
        let set = enumerate_terms(&t, &EnumerateOptions::default()).unwrap();
        assert!(set.terms.iter().all(|t| t.class.is_real_family()));
        assert!(set.terms.iter().any(|t| t.class == TermClass::Fbb));
    }

    #[test]
    fn wannier_representatives_have_last_orbital_in_origin_cell() {
        let t = synthetic::random_wannier::<f64>(&mut synthetic::rng(12), 1, [3, 2, 1], 0.6);
        let set = enumerate_terms(&t, &EnumerateOptions::default()).unwrap();
        for term in &set.terms {
            let last = term.indices[term.class.arity() - 1];
            assert_eq!(set.lattice.unflatten(last).cell, [0, 0, 0]);
        }
    }

    #[test]
    fn nonreal_wannier_coefficients_are_rejected() {
        let spec = SystemSpec::new(BasisKind::Wannier, 2, [1, 1, 1], 0.0, 1, ValueKind::Real).unwrap();
        let mut t = HamiltonianTensors::<f64>::new(spec);
        // 4-fold but not 8-fold: F is nonzero.
        t.set_g([0, 1, 0, 1], Complex::new(0.5, 0.0));
        t.set_g([1, 0, 1, 0], Complex::new(0.5, 0.0));
        assert!(enumerate_terms(&t, &EnumerateOptions::default()).is_err());
        let loose = EnumerateOptions { nonreal_tolerance: 1.0 };
        assert!(enumerate_terms(&t, &loose).is_ok());
    }

    #[test]
    fn fbb_canonical_signs() {
        assert_eq!(canonicalize(TermClass::Fbb, [1, 0, 2, 3]), Some(([0, 1, 2, 3], -1)));
        assert_eq!(canonicalize(TermClass::Fbb, [3, 2, 1, 0]), Some(([0, 1, 2, 3], 1)));
        assert_eq!(canonicalize(TermClass::Fbb, [2, 3, 1, 0]), Some(([0, 1, 2, 3], -1)));
        assert_eq!(canonicalize(TermClass::Fbb, [1, 1, 2, 3]), None);
    }
}
