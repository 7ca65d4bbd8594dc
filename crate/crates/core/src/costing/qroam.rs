use serde::{Deserialize, Serialize};

use super::clog2;

/// QROAM blocking factors and costs for loading `d` words of `m` bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QroamPlan {
    pub kappa1: u64,
    pub kappa2: u64,
    /// `⌈d/κ₁⌉ + m(κ₁ − 1)`.
    pub compute_cost: u64,
    /// `⌈d/κ₂⌉ + κ₂`.
    pub uncompute_cost: u64,
}

impl QroamPlan {
    /// Output and ancilla qubits `mκ₁ + ⌈log₂(d/κ₁)⌉`.
    pub fn ancillas(&self, m: u32, d: u64) -> u64 {
        m as u64 * self.kappa1 + (clog2(d) as u64).saturating_sub(self.kappa1.trailing_zeros() as u64)
    }
}

fn argmin_pow2(d: u64, cost: impl Fn(u64) -> u64) -> (u64, u64) {
    let mut best = (1, cost(1));
    let mut k = 2u64;
    while k <= d {
        let c = cost(k);
        if c < best.1 {
            best = (k, c);
        }
        k = match k.checked_mul(2) {
            Some(k) => k,
            None => break,
        };
    }
    best
}

/// Chooses `κ₁` and `κ₂` among powers of two `≤ d`, minimizing the compute
/// and uncompute Toffoli counts; ties go to the smaller `κ`.
pub fn qroam_plan(d: u64, m: u32) -> QroamPlan {
    let d = d.max(1);
    let m = m as u64;
    let (kappa1, compute_cost) = argmin_pow2(d, |k| d.div_ceil(k) + m * (k - 1));
    let (kappa2, uncompute_cost) = argmin_pow2(d, |k| d.div_ceil(k) + k);
    QroamPlan { kappa1, kappa2, compute_cost, uncompute_cost }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let p = qroam_plan(1024, 32);
        assert_eq!((p.kappa1, p.compute_cost, p.kappa2, p.uncompute_cost), (4, 352, 32, 64));
    }

    #[test]
    fn single_word() {
        let p = qroam_plan(1, 20);
        assert_eq!((p.kappa1, p.kappa2, p.compute_cost, p.uncompute_cost), (1, 1, 1, 2));
        assert_eq!(p.ancillas(20, 1), 20);
    }
}
