//! Seeded random Hamiltonians for tests, examples and the verification suite.

use std::collections::BTreeSet;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{g_images, BasisKind, HamiltonianTensors, SystemSpec, ValueKind};
use crate::scalar::Real;

pub type SynthRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SynthRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn draw<T: Real>(rng: &mut SynthRng, complex: bool) -> Complex<T> {
    let re = T::lit(rng.gen_range(-1.0..1.0));
    let im = if complex { T::lit(rng.gen_range(-1.0..1.0)) } else { T::zero() };
    Complex::new(re, im)
}

/// Dense random instance with `orbitals` spatial orbitals in a single cell,
/// made Hermitian and 4-fold (or 8-fold, for real values) symmetric by
/// averaging over symmetry images.
pub fn random_instance<T: Real>(
    rng: &mut SynthRng,
    basis: BasisKind,
    orbitals: usize,
    value_kind: ValueKind,
) -> HamiltonianTensors<T> {
    let h0 = rng.gen_range(-1.0..1.0);
    let spec = SystemSpec::new(basis, orbitals, [1, 1, 1], h0, 1, value_kind)
        .expect("synthetic system parameters are valid");
    let complex = value_kind == ValueKind::Complex;
    let mut t = HamiltonianTensors::new(spec);
    for p in 0..orbitals {
        for q in 0..orbitals {
            let v = draw(rng, complex);
            t.set_h(p, q, v);
        }
    }
    for p in 0..orbitals {
        for q in 0..orbitals {
            for r in 0..orbitals {
                for s in 0..orbitals {
                    let v = draw(rng, complex);
                    t.set_g([p, q, r, s], v);
                }
            }
        }
    }
    t.symmetrized()
}

/// Real Wannier instance that is exactly Hermitian, 8-fold symmetric and
/// translationally invariant. One value is drawn per orbit of the combined
/// permutation and translation group; `density` is the probability that an
/// orbit is nonzero.
pub fn random_wannier<T: Real>(
    rng: &mut SynthRng,
    bands: usize,
    cells: [usize; 3],
    density: f64,
) -> HamiltonianTensors<T> {
    let h0 = rng.gen_range(-1.0..1.0);
    let spec = SystemSpec::new(BasisKind::Wannier, bands, cells, h0, 1, ValueKind::Real)
        .expect("synthetic system parameters are valid");
    let lat = spec.lattice;
    let n = spec.num_orbitals();
    let mut t = HamiltonianTensors::new(spec);

    let mut seen = BTreeSet::new();
    for p in 0..n {
        for q in 0..n {
            if !seen.insert([p, q]) {
                continue;
            }
            let mut orbit = BTreeSet::new();
            for v in lat.shifts() {
                let (a, b) = (lat.translate(p, v), lat.translate(q, v));
                orbit.insert([a, b]);
                orbit.insert([b, a]);
            }
            seen.extend(orbit.iter().copied());
            if rng.gen_bool(density) {
                let v = draw::<T>(rng, false);
                for [a, b] in orbit {
                    t.set_h(a, b, v);
                }
            }
        }
    }

    let mut seen = BTreeSet::new();
    for key in (0..n.pow(4)).map(|x| [x / (n * n * n), x / (n * n) % n, x / n % n, x % n]) {
        if seen.contains(&key) {
            continue;
        }
        let mut orbit = BTreeSet::new();
        for v in lat.shifts() {
            let k = key.map(|p| lat.translate(p, v));
            for (img, _) in g_images(k, true) {
                orbit.insert(img);
            }
        }
        seen.extend(orbit.iter().copied());
        if rng.gen_bool(density) {
            let v = draw::<T>(rng, false);
            for k in orbit {
                t.set_g(k, v);
            }
        }
    }
    t
}
