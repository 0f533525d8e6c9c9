//! Integer partitions, the dominance order, and highest weights of `SO_n(ℂ)`
//! appearing in the coordinate ring of the Grassmannian.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts {0:?} are not weakly decreasing")]
    NotWeaklyDecreasing(Vec<u32>),
    #[error("need 1 <= k <= n/2, got k = {k}, n = {n}")]
    RankOutOfRange { k: u32, n: u32 },
    #[error("{coords:?} is not a highest weight of SO_{n}")]
    InvalidWeight { coords: Vec<i64>, n: u32 },
}

/// A weakly decreasing sequence of nonnegative integers.
///
/// Trailing zeros are not stored, so `(1, 0)` and `(1)` compare equal. The
/// derived ordering is lexicographic on the stored parts, which for two
/// partitions of the same size agrees with lexicographic order on any common
/// zero padding.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotWeaklyDecreasing(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    /// Sorts `parts` into weakly decreasing order first.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The staircase `δ_k = (k-1, ..., 1, 0)`.
    pub fn staircase(k: u32) -> Self {
        Partition::from_unsorted((0..k).rev().collect())
    }

    /// Nonzero parts.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// Parts padded with zeros (or truncated zeros) to `len` entries.
    pub fn padded(&self, len: usize) -> Vec<u32> {
        let mut v = self.parts.clone();
        v.resize(len.max(self.parts.len()), 0);
        v
    }

    /// Multiplies every part by `factor`.
    pub fn scaled(&self, factor: u32) -> Partition {
        Partition::from_unsorted(self.parts.iter().map(|&p| p * factor).collect())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

/// `lhs ⪰ rhs`: equal sizes and every prefix sum of `lhs` at least the
/// corresponding prefix sum of `rhs`.
pub fn dominates(lhs: &Partition, rhs: &Partition) -> bool {
    if lhs.size() != rhs.size() {
        return false;
    }
    let len = lhs.len().max(rhs.len());
    let (mut a, mut b) = (0u64, 0u64);
    for i in 0..len {
        a += u64::from(lhs.part(i));
        b += u64::from(rhs.part(i));
        if a < b {
            return false;
        }
    }
    true
}

/// All partitions of `total` with at most `max_parts` parts, in descending
/// lexicographic order (a linear extension of dominance).
pub fn partitions_of(total: u32, max_parts: usize) -> Vec<Partition> {
    fn go(rest: u32, cap: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=rest.min(cap)).rev() {
            // remaining slots must be able to absorb the rest
            if u64::from(p).saturating_mul(slots as u64) < u64::from(rest) {
                break;
            }
            prefix.push(p);
            go(rest - p, p, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(total, total, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `k(k-1)/2` with at most `k` parts lying below the staircase
/// `δ_k` in dominance order, i.e. every `λ` with `δ_k ⪰ λ`. These index the
/// terms of the degree sum; the staircase itself comes first.
pub fn enumerate_dominators(k: u32) -> Vec<Partition> {
    assert!(k >= 1, "k must be positive");
    let delta = Partition::staircase(k);
    partitions_of(k * (k - 1) / 2, k as usize)
        .into_iter()
        .filter(|lambda| dominates(&delta, lambda))
        .collect()
}

/// A highest weight of `SO_n(ℂ)`: `⌊n/2⌋` integers with
/// `c_0 ≥ … ≥ c_{m-2} ≥ |c_{m-1}|`, the last one negative only for even `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SoWeight {
    coords: Vec<i64>,
}

impl SoWeight {
    pub fn new(coords: Vec<i64>, n: u32) -> Result<Self, PartitionError> {
        let w = SoWeight { coords };
        if w.is_valid_for(n) {
            Ok(w)
        } else {
            Err(PartitionError::InvalidWeight { coords: w.coords, n })
        }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// `|λ|`: sum of absolute values (only the last entry can be negative).
    pub fn norm(&self) -> u64 {
        self.coords.iter().map(|c| c.unsigned_abs()).sum()
    }

    pub fn is_valid_for(&self, n: u32) -> bool {
        let m = (n / 2) as usize;
        let c = &self.coords;
        if c.len() != m {
            return false;
        }
        if m == 0 {
            return true;
        }
        if c[..m - 1].windows(2).any(|w| w[0] < w[1]) {
            return false;
        }
        if n % 2 == 1 {
            c[m - 1] >= 0 && (m < 2 || c[m - 2] >= c[m - 1])
        } else {
            m < 2 || c[m - 2] >= c[m - 1].abs()
        }
    }
}

impl fmt::Display for SoWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for SoWeight {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coords.serialize(serializer)
    }
}

/// Which lattice of weights to enumerate for `Λ_{k,n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightRule {
    /// First `k` coordinates even and weakly decreasing, rest zero; for
    /// `n = 2k` the last coordinate may take either sign. This is the weight
    /// set whose truncated dimension sums grow like the coordinate ring of
    /// the Grassmannian.
    #[default]
    Even,
    /// For `n = 2k`, also admit all-odd coordinate vectors. Counting with
    /// this rule doubles the leading coefficient of the dimension sum.
    SameParity,
}

/// All `λ ∈ Λ_{k,n}` with `|λ| ≤ 2·dmax`, ordered by `|λ|` and then
/// descending lexicographically. Each vector has `⌊n/2⌋` coordinates.
pub fn enumerate_weights(
    k: u32,
    n: u32,
    dmax: u32,
    rule: WeightRule,
) -> Result<Vec<SoWeight>, PartitionError> {
    if k == 0 || 2 * k > n {
        return Err(PartitionError::RankOutOfRange { k, n });
    }
    let m = (n / 2) as usize;
    let budget = 2 * i64::from(dmax);
    let ku = k as usize;
    let mut out = Vec::new();

    // Weakly decreasing nonnegative k-tuples with entries ≡ parity (mod 2)
    // and sum ≤ budget.
    fn tuples(
        len: usize,
        cap: i64,
        budget: i64,
        parity: i64,
        prefix: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        let mut v = parity;
        while v <= cap && v <= budget {
            prefix.push(v);
            tuples(len, v, budget - v, parity, prefix, out);
            prefix.pop();
            v += 2;
        }
    }

    let parities: &[i64] = if 2 * k == n && rule == WeightRule::SameParity {
        &[0, 1]
    } else {
        &[0]
    };
    for &parity in parities {
        let mut raw = Vec::new();
        tuples(ku, budget, budget, parity, &mut Vec::new(), &mut raw);
        for mut t in raw {
            let last = t[ku - 1];
            t.resize(m, 0);
            if 2 * k == n && last != 0 {
                let mut neg = t.clone();
                neg[m - 1] = -last;
                out.push(SoWeight { coords: neg });
            }
            out.push(SoWeight { coords: t });
        }
    }
    out.sort_by(|a, b| match a.norm().cmp(&b.norm()) {
        Ordering::Equal => b.coords.cmp(&a.coords),
        o => o,
    });
    debug_assert!(out.iter().all(|w| w.is_valid_for(n)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn coords(ws: &[SoWeight]) -> Vec<Vec<i64>> {
        ws.iter().map(|w| w.coords().to_vec()).collect()
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&p(&[2, 1]), &p(&[1, 1, 1])));
        assert!(!dominates(&p(&[1, 1, 1]), &p(&[2, 1])));
        assert!(dominates(&p(&[1, 0]), &p(&[1, 0])));
        assert!(!dominates(&p(&[3]), &p(&[1, 1])));
    }

    #[test]
    fn trailing_zeros_are_ignored() {
        assert_eq!(p(&[1, 0]), p(&[1]));
        assert_eq!(Partition::staircase(1), Partition::empty());
        assert_eq!(Partition::staircase(3).padded(3), vec![2, 1, 0]);
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn staircase_support_small_k() {
        assert_eq!(enumerate_dominators(1), vec![Partition::empty()]);
        assert_eq!(enumerate_dominators(2), vec![p(&[1])]);
        assert_eq!(enumerate_dominators(3), vec![p(&[2, 1]), p(&[1, 1, 1])]);
    }

    #[test]
    fn staircase_support_is_exactly_the_dominated_set() {
        for k in 1..=6u32 {
            let delta = Partition::staircase(k);
            let got = enumerate_dominators(k);
            // brute force over every partition of the size, any length
            let brute: Vec<_> = partitions_of(k * (k - 1) / 2, usize::MAX)
                .into_iter()
                .filter(|l| l.len() <= k as usize && dominates(&delta, l))
                .collect();
            assert_eq!(got, brute, "k = {k}");
            assert!(got.iter().all(|l| dominates(&delta, l)));
            assert_eq!(got[0], delta);
        }
    }

    #[test]
    fn partition_counts() {
        // p(10) = 42, p(10, <= 3 parts) = 14
        assert_eq!(partitions_of(10, usize::MAX).len(), 42);
        assert_eq!(partitions_of(10, 3).len(), 14);
        assert_eq!(partitions_of(0, 0), vec![Partition::empty()]);
        let all = partitions_of(8, 8);
        assert!(all.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn weight_examples() {
        let w = enumerate_weights(1, 3, 1, WeightRule::Even).unwrap();
        assert_eq!(coords(&w), vec![vec![0], vec![2]]);

        let w = enumerate_weights(2, 4, 1, WeightRule::SameParity).unwrap();
        assert_eq!(coords(&w), vec![vec![0, 0], vec![2, 0], vec![1, 1], vec![1, -1]]);

        let w = enumerate_weights(2, 4, 1, WeightRule::Even).unwrap();
        assert_eq!(coords(&w), vec![vec![0, 0], vec![2, 0]]);

        let w = enumerate_weights(2, 4, 2, WeightRule::Even).unwrap();
        assert_eq!(
            coords(&w),
            vec![vec![0, 0], vec![2, 0], vec![4, 0], vec![2, 2], vec![2, -2]]
        );

        let w = enumerate_weights(2, 6, 1, WeightRule::Even).unwrap();
        assert_eq!(coords(&w), vec![vec![0, 0, 0], vec![2, 0, 0]]);
    }

    #[test]
    fn weights_reject_large_rank() {
        assert_eq!(
            enumerate_weights(3, 5, 1, WeightRule::Even),
            Err(PartitionError::RankOutOfRange { k: 3, n: 5 })
        );
    }

    #[test]
    fn weight_validation() {
        assert!(SoWeight::new(vec![1, -1], 4).is_ok());
        assert!(SoWeight::new(vec![1, -1], 5).is_err());
        assert!(SoWeight::new(vec![1, 2], 5).is_err());
        assert!(SoWeight::new(vec![0, 0], 6).is_err());
    }

    fn partition_of(size: u32) -> impl Strategy<Value = Partition> {
        let all = partitions_of(size, usize::MAX);
        (0..all.len()).prop_map(move |i| all[i].clone())
    }

    proptest! {
        #[test]
        fn dominance_is_a_partial_order(
            (a, b, c) in (1u32..12).prop_flat_map(|s| (partition_of(s), partition_of(s), partition_of(s)))
        ) {
            prop_assert!(dominates(&a, &a));
            if dominates(&a, &b) && dominates(&b, &a) {
                prop_assert_eq!(&a, &b);
            }
            if dominates(&a, &b) && dominates(&b, &c) {
                prop_assert!(dominates(&a, &c));
            }
        }

        #[test]
        fn weights_grow_with_budget(k in 1u32..4, extra in 0u32..3, dmax in 0u32..5, same in any::<bool>()) {
            let n = 2 * k + extra;
            let rule = if same { WeightRule::SameParity } else { WeightRule::Even };
            let small = enumerate_weights(k, n, dmax, rule).unwrap();
            let large = enumerate_weights(k, n, dmax + 1, rule).unwrap();
            prop_assert!(small.len() <= large.len());
            prop_assert!(small.iter().all(|w| large.contains(w)));
            prop_assert!(small.iter().all(|w| w.norm() <= 2 * u64::from(dmax)));
            if extra == 0 {
                for w in &small {
                    let mut c = w.coords().to_vec();
                    let last = c.len() - 1;
                    c[last] = -c[last];
                    prop_assert!(small.contains(&SoWeight::new(c, n).unwrap()));
                }
            }
        }
    }
}
