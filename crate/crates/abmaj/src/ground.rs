//! Ground-set combinatorics: subsets as bitmasks, ordered disjoint pairs
//! (bisets), permutations, sign vectors, and the enumeration helpers the
//! rest of the crate is built on.
//!
//! Indices are 0-based internally and 1-based in all textual output.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Largest ground set supported for set-function work.
pub const MAX_SET_GROUND: usize = 16;
/// Largest ground set supported for biset-function work.
pub const MAX_BISET_GROUND: usize = 12;

/// The index set `{1, ..., n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_SET_GROUND {
            return Err(Error::GroundSetSize { n, max: MAX_SET_GROUND });
        }
        Ok(GroundSet { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The mask with every element present.
    pub fn full_mask(&self) -> Mask {
        Mask((1u32 << self.n) - 1)
    }

    /// All `2^n` subsets, in increasing mask order.
    pub fn subsets(&self) -> impl Iterator<Item = Mask> {
        (0..(1u32 << self.n)).map(Mask)
    }

    pub fn indices(&self) -> core::ops::Range<usize> {
        0..self.n
    }

    pub fn same_as(&self, other: &GroundSet) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::GroundSetMismatch { left: self.n, right: other.n })
        }
    }
}

/// A subset of the ground set, encoded as a bitmask (bit `i` set iff
/// element `i+1` is a member).
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mask(pub u32);

impl Mask {
    pub const EMPTY: Mask = Mask(0);

    pub fn singleton(i: usize) -> Mask {
        Mask(1 << i)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn card(&self) -> u32 {
        self.0.count_ones()
    }

    pub fn union(&self, other: Mask) -> Mask {
        Mask(self.0 | other.0)
    }

    pub fn inter(&self, other: Mask) -> Mask {
        Mask(self.0 & other.0)
    }

    pub fn minus(&self, other: Mask) -> Mask {
        Mask(self.0 & !other.0)
    }

    pub fn with(&self, i: usize) -> Mask {
        Mask(self.0 | 1 << i)
    }

    pub fn without(&self, i: usize) -> Mask {
        Mask(self.0 & !(1 << i))
    }

    pub fn subset_of(&self, other: Mask) -> bool {
        self.0 & !other.0 == 0
    }

    /// Member indices in increasing order.
    pub fn iter(&self) -> MaskIter {
        MaskIter(self.0)
    }

    /// All subsets of `self`, in an order that enumerates each exactly once.
    pub fn subsets(&self) -> SubsetIter {
        SubsetIter { of: self.0, cur: 0, done: false }
    }
}

/// Iterator over the member indices of a [`Mask`].
pub struct MaskIter(u32);

impl Iterator for MaskIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

/// Iterator over all submasks of a fixed mask.
pub struct SubsetIter {
    of: u32,
    cur: u32,
    done: bool,
}

impl Iterator for SubsetIter {
    type Item = Mask;
    fn next(&mut self) -> Option<Mask> {
        if self.done {
            return None;
        }
        let out = Mask(self.cur);
        if self.cur == self.of {
            self.done = true;
        } else {
            self.cur = (self.cur.wrapping_sub(self.of)) & self.of;
        }
        Some(out)
    }
}

impl fmt::Display for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An ordered pair `(S, T)` of disjoint subsets.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Biset {
    pos: Mask,
    neg: Mask,
}

impl Biset {
    pub const EMPTY: Biset = Biset { pos: Mask::EMPTY, neg: Mask::EMPTY };

    pub fn new(pos: Mask, neg: Mask) -> Result<Self> {
        if pos.inter(neg).is_empty() {
            Ok(Biset { pos, neg })
        } else {
            Err(Error::NotDisjoint { pos, neg })
        }
    }

    pub fn pos(&self) -> Mask {
        self.pos
    }

    pub fn neg(&self) -> Mask {
        self.neg
    }

    pub fn is_empty(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty()
    }

    /// Elements appearing on either side.
    pub fn support(&self) -> Mask {
        self.pos.union(self.neg)
    }

    /// True iff both parts of `self` are contained in the parts of `other`.
    pub fn subpair_of(&self, other: &Biset) -> bool {
        self.pos.subset_of(other.pos) && self.neg.subset_of(other.neg)
    }

    /// Reduced union: conflicting elements cancel from both sides.
    pub fn reduced_union(&self, other: &Biset) -> Biset {
        let p = self.pos.union(other.pos);
        let q = self.neg.union(other.neg);
        Biset { pos: p.minus(q), neg: q.minus(p) }
    }

    /// Reduced intersection: component-wise intersection.
    pub fn reduced_intersection(&self, other: &Biset) -> Biset {
        Biset { pos: self.pos.inter(other.pos), neg: self.neg.inter(other.neg) }
    }

    /// The signed characteristic value of element `i`: +1, -1, or 0.
    pub fn sign_of(&self, i: usize) -> i8 {
        if self.pos.contains(i) {
            1
        } else if self.neg.contains(i) {
            -1
        } else {
            0
        }
    }
}

impl fmt::Display for Biset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.pos, self.neg)
    }
}

impl fmt::Debug for Biset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.pos, self.neg)
    }
}

/// The biset `X | s`: members of `X` split by the sign vector.
pub fn biset_from_sign(x: Mask, s: &SignVector) -> Biset {
    let mut pos = Mask::EMPTY;
    let mut neg = Mask::EMPTY;
    for i in x.iter() {
        if s.get(i) > 0 {
            pos = pos.with(i);
        } else {
            neg = neg.with(i);
        }
    }
    Biset { pos, neg }
}

/// Every ordered disjoint pair over `g`, exactly once (`3^n` of them).
pub fn enumerate_bisets(g: GroundSet) -> Result<Vec<Biset>> {
    if g.n() > MAX_BISET_GROUND {
        return Err(Error::GroundSetSize { n: g.n(), max: MAX_BISET_GROUND });
    }
    let mut out = Vec::with_capacity(3usize.pow(g.n() as u32));
    for pos in g.subsets() {
        let rest = g.full_mask().minus(pos);
        for neg in rest.subsets() {
            out.push(Biset { pos, neg });
        }
    }
    Ok(out)
}

/// A bijection on the ground set; `order[k]` is the 0-based index placed at
/// position `k+1`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Permutation {
    order: Vec<usize>,
}

impl Permutation {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &i in &order {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation);
            }
            seen[i] = true;
        }
        Ok(Permutation { order })
    }

    /// Builds from 1-based indices as written in documents and on the CLI.
    pub fn from_one_based(order: &[usize]) -> Result<Self> {
        if order.contains(&0) {
            return Err(Error::InvalidPermutation);
        }
        Permutation::new(order.iter().map(|&i| i - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation { order: (0..n).collect() }
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn at(&self, k: usize) -> usize {
        self.order[k]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Indices sorted by a comparator, ties broken by smaller index first.
    pub fn sorted_by<F>(n: usize, mut cmp: F) -> Self
    where
        F: FnMut(usize, usize) -> core::cmp::Ordering,
    {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| cmp(a, b).then(a.cmp(&b)));
        Permutation { order }
    }
}

/// All `n!` permutations in lexicographic order of their `order` vectors.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation { order: order.clone() });
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| order[i] < order[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| order[j] > order[i]).unwrap();
        order.swap(i, j);
        order[i + 1..].reverse();
    }
    out
}

/// A vector in `{-1,+1}^n`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct SignVector {
    signs: Vec<i8>,
}

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.iter().all(|&s| s.abs() == 1) {
            Ok(SignVector { signs })
        } else {
            Err(Error::InvalidSignVector)
        }
    }

    pub fn all_plus(n: usize) -> Self {
        SignVector { signs: vec![1; n] }
    }

    pub fn n(&self) -> usize {
        self.signs.len()
    }

    pub fn get(&self, i: usize) -> i8 {
        self.signs[i]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// The orthant `N | s` this sign vector selects.
    pub fn orthant(&self) -> Biset {
        let mut pos = Mask::EMPTY;
        let mut neg = Mask::EMPTY;
        for (i, &s) in self.signs.iter().enumerate() {
            if s > 0 {
                pos = pos.with(i);
            } else {
                neg = neg.with(i);
            }
        }
        Biset { pos, neg }
    }
}

/// All `2^n` sign vectors, indexed by the mask of negative positions.
pub fn all_sign_vectors(n: usize) -> Vec<SignVector> {
    (0..(1u32 << n))
        .map(|m| SignVector {
            signs: (0..n).map(|i| if m >> i & 1 == 1 { -1 } else { 1 }).collect(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(pos: u32, neg: u32) -> Biset {
        Biset::new(Mask(pos), Mask(neg)).unwrap()
    }

    #[test]
    fn reduced_union_examples() {
        // ({1},{}) ⊔ ({},{1}) cancels to the empty pair
        assert_eq!(b(0b1, 0).reduced_union(&b(0, 0b1)), Biset::EMPTY);
        // ({1},{2}) ⊔ ({2},{3}) = ({1},{3})
        assert_eq!(b(0b001, 0b010).reduced_union(&b(0b010, 0b100)), b(0b001, 0b100));
        // empty negative parts reduce to plain union
        assert_eq!(b(0b011, 0).reduced_union(&b(0b110, 0)), b(0b111, 0));
    }

    #[test]
    fn reduced_intersection_examples() {
        assert_eq!(b(0b001, 0b010).reduced_intersection(&b(0b001, 0b100)), b(0b001, 0));
        assert_eq!(b(0b011, 0b100).reduced_intersection(&Biset::EMPTY), Biset::EMPTY);
        assert_eq!(b(0b011, 0b100).reduced_intersection(&b(0b010, 0b100)), b(0b010, 0b100));
    }

    #[test]
    fn biset_from_sign_examples() {
        let s = SignVector::new(vec![1, -1]).unwrap();
        assert_eq!(biset_from_sign(Mask(0b11), &s), b(0b01, 0b10));
        assert_eq!(biset_from_sign(Mask(0), &s), Biset::EMPTY);
        let plus = SignVector::all_plus(3);
        assert_eq!(biset_from_sign(Mask(0b111), &plus), b(0b111, 0));
    }

    #[test]
    fn enumerate_counts() {
        for n in 1..=8 {
            let g = GroundSet::new(n).unwrap();
            let all = enumerate_bisets(g).unwrap();
            assert_eq!(all.len(), 3usize.pow(n as u32));
            // exactly once
            let mut seen = all.clone();
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len(), all.len());
        }
        let g13 = GroundSet { n: 13 };
        assert!(enumerate_bisets(g13).is_err());
    }

    #[test]
    fn reduced_ops_closure_and_laws() {
        // exhaustive over n = 4: disjointness invariant, commutativity,
        // idempotence of the intersection
        let g = GroundSet::new(4).unwrap();
        let all = enumerate_bisets(g).unwrap();
        for u1 in &all {
            assert_eq!(u1.reduced_intersection(u1), *u1);
            for u2 in &all {
                let u = u1.reduced_union(u2);
                let v = u1.reduced_intersection(u2);
                assert!(u.pos().inter(u.neg()).is_empty());
                assert!(v.pos().inter(v.neg()).is_empty());
                assert_eq!(u, u2.reduced_union(u1));
                assert_eq!(v, u2.reduced_intersection(u1));
            }
        }
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 2, 1]).is_ok());
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        let p = Permutation::from_one_based(&[2, 1, 3]).unwrap();
        assert_eq!(p.order(), &[1, 0, 2]);
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
    }

    #[test]
    fn permutation_enumeration() {
        assert_eq!(all_permutations(1).len(), 1);
        assert_eq!(all_permutations(4).len(), 24);
        assert_eq!(all_sign_vectors(3).len(), 8);
        assert!(SignVector::new(vec![1, 0]).is_err());
    }

    #[test]
    fn subset_iter_complete() {
        let m = Mask(0b1011);
        let subs: Vec<Mask> = m.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s.subset_of(m)));
    }
}
