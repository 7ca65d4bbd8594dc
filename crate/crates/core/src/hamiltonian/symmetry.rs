use serde::{Deserialize, Serialize};

use super::{g_images, BasisKind, HamiltonianTensors, ValueKind};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default tolerance (Hartree) for hermiticity and permutational symmetry.
pub const DEFAULT_SYMMETRY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub max_hermiticity_deviation: f64,
    pub max_four_fold_deviation: f64,
    pub max_eight_fold_deviation: f64,
    pub tolerance: f64,
    /// 8-fold symmetry is only required of real-valued data.
    pub eight_fold_required: bool,
    pub passed: bool,
}

/// Maximum absolute deviation between each stored element and its symmetry
/// images (absent images count as zero).
pub fn validate_symmetries<T: Real>(t: &HamiltonianTensors<T>, tol: f64) -> SymmetryReport {
    let mut herm = 0.0f64;
    for (&[p, q], v) in &t.one_body {
        herm = herm.max((*v - t.h(q, p).conj()).norm().to_f64_lossy());
    }
    let mut four = 0.0f64;
    let mut eight = 0.0f64;
    for (&key, v) in &t.two_body {
        for (k, conj) in g_images(key, false) {
            let w = t.g(k[0], k[1], k[2], k[3]);
            let w = if conj { w.conj() } else { w };
            four = four.max((*v - w).norm().to_f64_lossy());
        }
        for (k, _) in g_images(key, true) {
            eight = eight.max((*v - t.g(k[0], k[1], k[2], k[3])).norm().to_f64_lossy());
        }
    }
    let eight_fold_required = t.spec.value_kind == ValueKind::Real;
    let passed = herm <= tol && four <= tol && (!eight_fold_required || eight <= tol);
    SymmetryReport {
        max_hermiticity_deviation: herm,
        max_four_fold_deviation: four,
        max_eight_fold_deviation: eight,
        tolerance: tol,
        eight_fold_required,
        passed,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranslationalReport {
    pub one_body: f64,
    pub two_body: f64,
}

/// `ε_t = max |h_{Ri,R'j} − h_{0i,(R'−R)j}|` over all cell pairs, with
/// cell differences taken modulo `(N₁,N₂,N₃)`.
pub fn translational_symmetry_error<T: Real>(t: &HamiltonianTensors<T>) -> Result<f64> {
    Ok(translational_symmetry_report(t)?.one_body)
}

/// One-body `ε_t` plus the analogous two-body metric
/// `max |g_{Ri,Tj,R'l,T'm} − g_{0i,(T−R)j,(R'−R)l,(T'−R)m}|`.
pub fn translational_symmetry_report<T: Real>(t: &HamiltonianTensors<T>) -> Result<TranslationalReport> {
    if t.spec.basis != BasisKind::Wannier {
        return Err(Error::BasisMismatch(
            "translational symmetry is defined for Wannier data only".into(),
        ));
    }
    let lat = t.spec.lattice;
    let to_origin = |key: &[usize]| -> Vec<usize> {
        let shift = lat.inverse_shift(lat.unflatten(key[0]).cell);
        key.iter().map(|&p| lat.translate(p, shift)).collect()
    };
    let is_origin = |p: usize| lat.unflatten(p).cell == [0, 0, 0];

    let mut one = 0.0f64;
    for (key, v) in &t.one_body {
        let o = to_origin(key);
        one = one.max((*v - t.h(o[0], o[1])).norm().to_f64_lossy());
    }
    // Origin-anchored elements whose translated copies are absent.
    for (key, v) in t.one_body.iter().filter(|(k, _)| is_origin(k[0])) {
        for shift in lat.shifts() {
            let k = [lat.translate(key[0], shift), lat.translate(key[1], shift)];
            if !t.one_body.contains_key(&k) {
                one = one.max(v.norm().to_f64_lossy());
            }
        }
    }

    let mut two = 0.0f64;
    for (key, v) in &t.two_body {
        let o = to_origin(key);
        two = two.max((*v - t.g(o[0], o[1], o[2], o[3])).norm().to_f64_lossy());
    }
    for (key, v) in t.two_body.iter().filter(|(k, _)| is_origin(k[0])) {
        for shift in lat.shifts() {
            let k = key.map(|p| lat.translate(p, shift));
            if !t.two_body.contains_key(&k) {
                two = two.max(v.norm().to_f64_lossy());
            }
        }
    }
    Ok(TranslationalReport { one_body: one, two_body: two })
}
