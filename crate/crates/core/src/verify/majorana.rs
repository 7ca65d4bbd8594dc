//! Fermionic ladder and Majorana operators acting on occupation-number basis
//! states under the Jordan–Wigner ordering `mode = 2p + σ`. Bit `k` of a
//! basis-state index is the occupation of mode `k`.

use num_complex::Complex;

use crate::error::{Error, Result};

pub fn mode(p: usize, sigma: u8) -> usize {
    2 * p + sigma as usize
}

fn parity_below(state: u64, k: usize) -> i8 {
    if (state & ((1u64 << k) - 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `a_k` (or `a†_k`) on a basis state: the image state and its sign, or
/// `None` when the result vanishes.
pub fn ladder(state: u64, k: usize, dagger: bool) -> Option<(u64, i8)> {
    let occupied = state >> k & 1 == 1;
    if occupied == dagger {
        return None;
    }
    Some((state ^ (1u64 << k), parity_below(state, k)))
}

/// Applies `ops[0] ops[1] … ops[n−1]` to `state` (rightmost first).
pub fn apply_word(mut state: u64, ops: &[(usize, bool)]) -> Option<(u64, i8)> {
    let mut sign = 1i8;
    for &(k, dagger) in ops.iter().rev() {
        let (s, sg) = ladder(state, k, dagger)?;
        state = s;
        sign *= sg;
    }
    Some((state, sign))
}

/// `γ_{k,0} = a + a†`, `γ_{k,1} = −i(a − a†)` on a basis state.
pub fn majorana(state: u64, k: usize, j: u8) -> (u64, Complex<f64>) {
    let occupied = state >> k & 1 == 1;
    let sign = parity_below(state, k) as f64;
    let phase = match (j, occupied) {
        (0, _) => Complex::new(sign, 0.0),
        (_, true) => Complex::new(0.0, -sign),
        (_, false) => Complex::new(0.0, sign),
    };
    (state ^ (1u64 << k), phase)
}

/// Ordered product of Majorana operators, each given as
/// `(orbital p, spin σ, type j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajoranaString {
    factors: Vec<(usize, u8, u8)>,
}

impl MajoranaString {
    pub fn new(factors: Vec<(usize, u8, u8)>) -> Result<Self> {
        if ![0, 2, 4].contains(&factors.len()) {
            return Err(Error::InvalidArgument(format!(
                "Majorana strings have length 0, 2 or 4, got {}",
                factors.len()
            )));
        }
        for (i, a) in factors.iter().enumerate() {
            if a.1 > 1 || a.2 > 1 {
                return Err(Error::InvalidArgument(format!("bad spin or type in {a:?}")));
            }
            if factors[..i].contains(a) {
                return Err(Error::InvalidArgument(format!("repeated Majorana factor {a:?}")));
            }
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[(usize, u8, u8)] {
        &self.factors
    }

    pub fn apply(&self, mut state: u64) -> (u64, Complex<f64>) {
        let mut amp = Complex::new(1.0, 0.0);
        for &(p, sigma, j) in self.factors.iter().rev() {
            let (s, ph) = majorana(state, mode(p, sigma), j);
            state = s;
            amp *= ph;
        }
        (state, amp)
    }
}
