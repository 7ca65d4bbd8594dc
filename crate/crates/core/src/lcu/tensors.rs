use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_complex::Complex;

use super::TermClass;
use crate::hamiltonian::HamiltonianTensors;
use crate::scalar::{czero, Real};

/// Real coefficient tensors of the two-body Majorana expansion:
/// `B = Re(g_pqrs + g_pqsr)/2`, `C = Im(g_pqrs − g_pqsr)/2`,
/// `F = Re(g_pqrs − g_pqsr)/2`. Zero entries are not stored.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BcfTensors<T> {
    pub b: BTreeMap<[usize; 4], T>,
    pub c: BTreeMap<[usize; 4], T>,
    pub f: BTreeMap<[usize; 4], T>,
}

pub fn bcf_tensors<T: Real>(t: &HamiltonianTensors<T>) -> BcfTensors<T> {
    let mut out = BcfTensors { b: BTreeMap::new(), c: BTreeMap::new(), f: BTreeMap::new() };
    for &[p, q, r, s] in t.two_body.keys() {
        for key in [[p, q, r, s], [p, q, s, r]] {
            let v = Bcf(t);
            for (map, x) in [
                (&mut out.b, v.b(key)),
                (&mut out.c, v.c(key)),
                (&mut out.f, v.f(key)),
            ] {
                if x != T::zero() {
                    map.insert(key, x);
                }
            }
        }
    }
    out
}

/// On-the-fly view of `B`, `C`, `F` over the stored `g`.
#[derive(Clone, Copy)]
pub(crate) struct Bcf<'a, T: Real>(pub &'a HamiltonianTensors<T>);

impl<T: Real> Bcf<'_, T> {
    fn pair(&self, [p, q, r, s]: [usize; 4]) -> (Complex<T>, Complex<T>) {
        (self.0.g(p, q, r, s), self.0.g(p, q, s, r))
    }

    pub fn b(&self, k: [usize; 4]) -> T {
        let (x, y) = self.pair(k);
        (x.re + y.re) * T::lit(0.5)
    }

    pub fn c(&self, k: [usize; 4]) -> T {
        let (x, y) = self.pair(k);
        (x.im - y.im) * T::lit(0.5)
    }

    pub fn f(&self, k: [usize; 4]) -> T {
        let (x, y) = self.pair(k);
        (x.re - y.re) * T::lit(0.5)
    }
}

/// `T_pq = h_pq + ½Σ_r(2g_pqrr − g_prrq)`, sparse. Each entry sums its
/// contributions in value order, so translated copies of an exactly
/// periodic system get bit-identical results.
pub fn effective_one_body<T: Real>(t: &HamiltonianTensors<T>) -> BTreeMap<[usize; 2], Complex<T>> {
    let mut parts: BTreeMap<[usize; 2], Vec<Complex<T>>> = BTreeMap::new();
    for (&k, &v) in &t.one_body {
        parts.entry(k).or_default().push(v);
    }
    let half = T::lit(0.5);
    for (&[p, q, r, s], &v) in &t.two_body {
        if r == s {
            parts.entry([p, q]).or_default().push(v);
        }
        if q == r {
            parts.entry([p, s]).or_default().push(-v * half);
        }
    }
    parts
        .into_iter()
        .filter_map(|(k, mut vs)| {
            vs.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap_or(Ordering::Equal).then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal)));
            let v = vs.into_iter().fold(czero(), |acc, x| acc + x);
            (v != czero()).then_some((k, v))
        })
        .collect()
}

/// Identity coefficient `H0 + Σ_p h_pp + ¼Σ_pr(2g_pprr − g_prrp)`. The
/// imaginary part vanishes for Hermitian input and is discarded.
pub fn constant_shift<T: Real>(t: &HamiltonianTensors<T>) -> T {
    let mut c = t.nuclear_repulsion();
    for (&[p, q], v) in &t.one_body {
        if p == q {
            c += v.re;
        }
    }
    let quarter = T::lit(0.25);
    for (&[p, q, r, s], v) in &t.two_body {
        if p == q && r == s {
            c += T::lit(2.0) * quarter * v.re;
        }
        if q == r && p == s {
            c -= quarter * v.re;
        }
    }
    c
}

pub fn lambda0<T: Real>(t: &HamiltonianTensors<T>) -> T {
    constant_shift(t).abs()
}

fn half_if<T: Real>(cond: bool) -> T {
    if cond {
        T::lit(0.5)
    } else {
        T::one()
    }
}

/// Signed coefficient of a two-body family at a restricted index tuple,
/// `(½)^δ` factors included.
pub(crate) fn two_body_value<T: Real>(bcf: Bcf<'_, T>, class: TermClass, k: [usize; 4]) -> T {
    let [p, q, r, s] = k;
    let pair_eq = (p, q) == (r, s);
    match class {
        TermClass::B => bcf.b(k) * half_if::<T>(p == q) * half_if::<T>(r == s) * half_if::<T>(pair_eq),
        TermClass::F => bcf.f(k) * half_if::<T>(pair_eq),
        TermClass::C => -bcf.c(k) * half_if::<T>(p == q),
        TermClass::Fbb => {
            (bcf.f(k) + bcf.b([p, r, q, s]) - bcf.b([p, s, q, r])) * half_if::<T>(pair_eq)
        }
        TermClass::Fff => bcf.f(k) - bcf.f([p, r, q, s]) + bcf.f([p, s, q, r]),
        // Sign opposite to the textbook expression; fixed by the dense oracle.
        TermClass::Ccc => -(bcf.c(k) - bcf.c([p, r, q, s]) + bcf.c([p, s, q, r])),
        TermClass::OneBodyRe | TermClass::OneBodyIm => unreachable!("one-body family"),
    }
}

/// Signed coefficient of a one-body family at `p ≤ q` (`p < q` for the
/// imaginary family).
pub(crate) fn one_body_value<T: Real>(teff: &BTreeMap<[usize; 2], Complex<T>>, class: TermClass, p: usize, q: usize) -> T {
    let v = teff.get(&[p, q]).copied().unwrap_or_else(czero);
    match class {
        TermClass::OneBodyRe => v.re * half_if::<T>(p == q),
        TermClass::OneBodyIm => v.im,
        _ => unreachable!("two-body family"),
    }
}
