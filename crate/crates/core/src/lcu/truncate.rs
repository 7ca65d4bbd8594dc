use serde::{Deserialize, Serialize};

use super::{LcuTerm, LcuTermSet};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncationStats {
    pub terms_before: usize,
    pub terms_after: usize,
    /// `√Σ multiplicity·w²` over the removed terms.
    pub removed_norm: f64,
}

fn removal_order<T: Real>(terms: &[LcuTerm<T>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..terms.len()).collect();
    order.sort_by(|&a, &b| {
        let (x, y) = (&terms[a], &terms[b]);
        x.weight
            .partial_cmp(&y.weight)
            .expect("weights are finite")
            .then_with(|| x.sort_key().cmp(&y.sort_key()))
    });
    order
}

/// Number of leading `(weight, multiplicity)` entries, in the given order,
/// whose removal keeps `Σ multiplicity·w² < ε²`.
pub fn l2_removal_count<T: Real>(ordered: &[(T, usize)], eps: T) -> usize {
    let bound = eps * eps;
    let mut acc = T::zero();
    for (n, &(w, mult)) in ordered.iter().enumerate() {
        let next = acc + T::from_usize(mult).unwrap() * w * w;
        if next >= bound {
            return n;
        }
        acc = next;
    }
    ordered.len()
}

fn retain<T: Real>(set: &LcuTermSet<T>, remove: &[bool]) -> (LcuTermSet<T>, TruncationStats) {
    let mut out = set.clone();
    let mut removed = 0.0f64;
    out.terms = set
        .terms
        .iter()
        .zip(remove)
        .filter_map(|(t, &r)| {
            if r {
                removed += t.multiplicity as f64 * t.weight.to_f64_lossy().powi(2);
                None
            } else {
                Some(t.clone())
            }
        })
        .collect();
    out.refresh();
    let stats = TruncationStats {
        terms_before: set.terms.len(),
        terms_after: out.terms.len(),
        removed_norm: removed.sqrt(),
    };
    (out, stats)
}

/// Removes the largest prefix of terms, smallest weights first (ties in
/// `(class, indices)` order), whose multiplicity-weighted L2 norm stays
/// strictly below `eps`.
pub fn truncate_l2<T: Real>(set: &LcuTermSet<T>, eps: T) -> (LcuTermSet<T>, TruncationStats) {
    let order = removal_order(&set.terms);
    let ordered: Vec<(T, usize)> = order.iter().map(|&i| (set.terms[i].weight, set.terms[i].multiplicity)).collect();
    let n = l2_removal_count(&ordered, eps);
    let mut remove = vec![false; set.terms.len()];
    for &i in &order[..n] {
        remove[i] = true;
    }
    retain(set, &remove)
}

/// Drops every term with weight below `threshold`.
pub fn truncate_threshold<T: Real>(set: &LcuTermSet<T>, threshold: T) -> (LcuTermSet<T>, TruncationStats) {
    let remove: Vec<bool> = set.terms.iter().map(|t| t.weight < threshold).collect();
    retain(set, &remove)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::BasisKind;
    use crate::index::Lattice;
    use crate::lcu::TermClass;

    fn set_of(weights: &[f64]) -> LcuTermSet<f64> {
        let terms = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| LcuTerm { class: TermClass::B, indices: [0, 0, 0, i], weight: w, sign: 1, multiplicity: 1 })
            .collect();
        LcuTermSet::from_terms(BasisKind::Bloch, Lattice::new(1, [1, 1, 1]).unwrap(), terms, 0.0)
    }

    #[test]
    fn drops_only_what_fits() {
        let (out, stats) = truncate_l2(&set_of(&[0.1, 0.01, 0.001]), 0.0011);
        assert_eq!(out.d, 2);
        assert_eq!(stats.terms_before, 3);
        assert!((stats.removed_norm - 0.001).abs() < 1e-18);
        assert!(out.terms.iter().all(|t| t.weight != 0.001));
    }

    #[test]
    fn zero_epsilon_is_identity() {
        let s = set_of(&[0.1, 0.01, 0.001]);
        assert_eq!(truncate_l2(&s, 0.0).0, s);
    }

    #[test]
    fn large_epsilon_empties_the_set() {
        let (out, _) = truncate_l2(&set_of(&[0.1, 0.01, 0.001]), 1.0);
        assert_eq!(out.d, 0);
        assert_eq!(out.lambda.lambda, 0.0);
    }

    #[test]
    fn multiplicity_enters_the_norm() {
        let mut s = set_of(&[0.001, 0.5]);
        s.terms[0].multiplicity = 4;
        s.refresh();
        // 4 · 0.001² = 4e-6 ≥ 0.0015²
        assert_eq!(truncate_l2(&s, 0.0015).0.d, 2);
        assert_eq!(truncate_l2(&s, 0.0021).0.d, 1);
    }

    #[test]
    fn fixed_threshold() {
        let (out, stats) = truncate_threshold(&set_of(&[0.1, 0.01, 0.001]), 0.01);
        assert_eq!(out.d, 2);
        assert_eq!(stats.terms_after, 2);
    }
}
