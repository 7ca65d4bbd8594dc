//! Jordan–Wigner expansion into Pauli strings, independent of the Majorana
//! code path. A string is stored as bit masks `(x, z)` and denotes
//! `i^{|x∧z|} X^x Z^z`, so that `(1, 1)` is `Y`.

use std::collections::BTreeMap;

use num_complex::Complex;

use super::dense::{DenseOperator, MAX_ORACLE_QUBITS};
use super::majorana::mode;
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianTensors;
use crate::scalar::Real;

pub type PauliSum = BTreeMap<(u64, u64), Complex<f64>>;

const I_POW: [Complex<f64>; 4] = [
    Complex::new(1.0, 0.0),
    Complex::new(0.0, 1.0),
    Complex::new(-1.0, 0.0),
    Complex::new(0.0, -1.0),
];

fn mul_strings((x1, z1): (u64, u64), (x2, z2): (u64, u64)) -> ((u64, u64), Complex<f64>) {
    let (x, z) = (x1 ^ x2, z1 ^ z2);
    let e = (x1 & z1).count_ones() as i64 + (x2 & z2).count_ones() as i64 + 2 * (z1 & x2).count_ones() as i64
        - (x & z).count_ones() as i64;
    ((x, z), I_POW[e.rem_euclid(4) as usize])
}

fn mul(a: &PauliSum, b: &PauliSum) -> PauliSum {
    let mut out = PauliSum::new();
    for (&sa, &ca) in a {
        for (&sb, &cb) in b {
            let (s, ph) = mul_strings(sa, sb);
            *out.entry(s).or_default() += ca * cb * ph;
        }
    }
    out
}

/// `a_k` or `a†_k` as `Z_{<k}(X_k ± iY_k)/2`.
fn ladder(k: usize, dagger: bool) -> PauliSum {
    let below = (1u64 << k) - 1;
    let bit = 1u64 << k;
    let y = if dagger { -0.5 } else { 0.5 };
    PauliSum::from([((bit, below), Complex::new(0.5, 0.0)), ((bit, below | bit), Complex::new(0.0, y))])
}

fn accumulate(into: &mut PauliSum, term: PauliSum, c: Complex<f64>) {
    for (s, v) in term {
        *into.entry(s).or_default() += v * c;
    }
}

pub fn pauli_expansion<T: Real>(t: &HamiltonianTensors<T>) -> Result<PauliSum> {
    let n = t.spec.num_spin_orbitals();
    if n > MAX_ORACLE_QUBITS {
        return Err(Error::TooLarge { modes: n, max: MAX_ORACLE_QUBITS });
    }
    let c64 = |v: Complex<T>| Complex::new(v.re.to_f64_lossy(), v.im.to_f64_lossy());
    let mut out = PauliSum::from([((0, 0), Complex::new(t.spec.nuclear_repulsion, 0.0))]);

    let mut one: BTreeMap<[usize; 2], Complex<f64>> = t.one_body.iter().map(|(&k, &v)| (k, c64(v))).collect();
    for (&[p, r1, r2, q], &v) in &t.two_body {
        if r1 == r2 {
            *one.entry([p, q]).or_default() -= c64(v) * 0.5;
        }
    }
    let pair = |p: usize, q: usize, sigma: u8| mul(&ladder(mode(p, sigma), true), &ladder(mode(q, sigma), false));
    for (&[p, q], &c) in &one {
        for sigma in 0..2 {
            accumulate(&mut out, pair(p, q, sigma), c);
        }
    }
    for (&[p, q, r, s], &g) in &t.two_body {
        for sigma in 0..2 {
            for tau in 0..2 {
                accumulate(&mut out, mul(&pair(p, q, sigma), &pair(r, s, tau)), c64(g) * 0.5);
            }
        }
    }
    Ok(out)
}

/// `Σ|c|` over all non-identity Pauli strings of the Jordan–Wigner image.
pub fn pauli_l1<T: Real>(t: &HamiltonianTensors<T>) -> Result<f64> {
    Ok(pauli_expansion(t)?
        .iter()
        .filter(|(&s, _)| s != (0, 0))
        .map(|(_, c)| c.norm())
        .sum())
}

/// Matrix of a Pauli sum over `n` qubits.
pub fn pauli_matrix(sum: &PauliSum, n: usize) -> Result<DenseOperator> {
    let mut op = DenseOperator::zero(n)?;
    for (&(x, z), &c) in sum {
        let base = I_POW[((x & z).count_ones() % 4) as usize] * c;
        for col in 0..op.dim() {
            // X^x Z^z |col⟩ = (−1)^{|z∧col|} |col ⊕ x⟩
            let sign = if (z & col).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            op.add(col ^ x, col, base * sign);
        }
    }
    Ok(op)
}
