//! The polyhedra generated by set and biset functions: membership,
//! tight-constraint structure, lifting into the base polyhedron, greedy
//! vertex generation, integral-point enumeration, and the greedy linear
//! optimization oracles.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Constraint;
use crate::ground::{Biset, GroundSet, Mask, Permutation, SignVector};
use crate::rat::Rat;
use crate::setfn::{BisetFunction, Kind, SetFunction};
use crate::{Error, Result};

/// A vector of exact rationals indexed by the ground set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    coords: Vec<Rat>,
}

impl Point {
    pub fn new(coords: Vec<Rat>) -> Self {
        Point { coords }
    }

    pub fn zeros(n: usize) -> Self {
        let mut coords = Vec::with_capacity(n);
        coords.resize(n, Rat::zero());
        Point { coords }
    }

    pub fn from_ints(vals: &[i64]) -> Self {
        Point { coords: vals.iter().map(|&v| Rat::from_int(v)).collect() }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord(&self, i: usize) -> &Rat {
        &self.coords[i]
    }

    pub fn coord_mut(&mut self, i: usize) -> &mut Rat {
        &mut self.coords[i]
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Rat> {
        self.coords.iter()
    }

    /// `x(S)`: the sum of the coordinates indexed by `s`.
    pub fn sum_over(&self, s: Mask) -> Rat {
        s.iter().map(|i| &self.coords[i]).sum()
    }

    /// `x(S) - x(T)` for a biset.
    pub fn signed_sum(&self, u: &Biset) -> Rat {
        self.sum_over(u.pos()) - self.sum_over(u.neg())
    }

    pub fn total(&self) -> Rat {
        self.coords.iter().sum()
    }

    pub fn dot(&self, other: &Point) -> Rat {
        self.coords.iter().zip(other.coords.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(Rat::is_integer)
    }

    pub fn le(&self, other: &Point) -> bool {
        self.coords.iter().zip(other.coords.iter()).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Point) -> Point {
        Point {
            coords: self
                .coords
                .iter()
                .zip(other.coords.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point {
            coords: self
                .coords
                .iter()
                .zip(other.coords.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Point {
        Point { coords: self.coords.iter().map(|a| a * c).collect() }
    }

    pub fn neg(&self) -> Point {
        Point { coords: self.coords.iter().map(|a| -a).collect() }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A reference to one of the polyhedra generated by a set or biset function.
#[derive(Clone, Copy, Debug)]
pub enum Polyhedron<'a> {
    /// `P(f) = { x | x(A) <= f(A) for all A }`, `f` submodular.
    Sub(&'a SetFunction),
    /// `B(f) = { x in P(f) | x(N) = f(N) }`.
    Base(&'a SetFunction),
    /// `P_sup(g) = { x | x(A) >= g(A) for all A }`, `g` supermodular.
    Sup(&'a SetFunction),
    /// `B_sup(g) = { x in P_sup(g) | x(N) = g(N) }`.
    BaseSup(&'a SetFunction),
    /// `B~(h) = { x | x(S) - x(T) <= h(S,T) for all (S,T) }`.
    Bisub(&'a BisetFunction),
    /// The submodular polyhedron of the pairs below an orthant.
    OrthantSub(&'a BisetFunction, Biset),
    /// Its base: additionally `x(S) - x(T) = h(S,T)` at the orthant.
    OrthantBase(&'a BisetFunction, Biset),
}

/// Tight constraints of a point, as subsets or bisets depending on the
/// family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TightFamily {
    Subsets(Vec<Mask>),
    Bisets(Vec<Biset>),
}

impl TightFamily {
    /// True iff the family is closed under (reduced) union and intersection.
    /// Holds at every member point of a polyhedron generated by a valid
    /// (bi)submodular table.
    pub fn closed_under_lattice(&self) -> bool {
        match self {
            TightFamily::Subsets(sets) => sets.iter().all(|a| {
                sets.iter().all(|b| {
                    sets.contains(&a.union(*b)) && sets.contains(&a.inter(*b))
                })
            }),
            TightFamily::Bisets(pairs) => pairs.iter().all(|u| {
                pairs.iter().all(|v| {
                    pairs.contains(&u.reduced_union(v)) && pairs.contains(&u.reduced_intersection(v))
                })
            }),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            TightFamily::Subsets(v) => v.len(),
            TightFamily::Bisets(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Which coordinates of a bisubmodular polyhedron point cannot move up or
/// down.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SaturationInfo {
    pub sat_plus: Mask,
    pub sat_minus: Mask,
}

impl<'a> Polyhedron<'a> {
    pub fn submodular(f: &'a SetFunction) -> Result<Self> {
        if f.kind() != Kind::Submodular {
            return Err(Error::KindMismatch);
        }
        Ok(Polyhedron::Sub(f))
    }

    pub fn base(f: &'a SetFunction) -> Result<Self> {
        if f.kind() != Kind::Submodular {
            return Err(Error::KindMismatch);
        }
        Ok(Polyhedron::Base(f))
    }

    pub fn supermodular(g: &'a SetFunction) -> Result<Self> {
        if g.kind() != Kind::Supermodular {
            return Err(Error::KindMismatch);
        }
        Ok(Polyhedron::Sup(g))
    }

    pub fn base_sup(g: &'a SetFunction) -> Result<Self> {
        if g.kind() != Kind::Supermodular {
            return Err(Error::KindMismatch);
        }
        Ok(Polyhedron::BaseSup(g))
    }

    pub fn bisubmodular(h: &'a BisetFunction) -> Self {
        Polyhedron::Bisub(h)
    }

    pub fn orthant_sub(h: &'a BisetFunction, orthant: Biset) -> Result<Self> {
        if orthant.support() != h.ground().full_mask() {
            return Err(Error::NotAnOrthant);
        }
        Ok(Polyhedron::OrthantSub(h, orthant))
    }

    pub fn orthant_base(h: &'a BisetFunction, orthant: Biset) -> Result<Self> {
        if orthant.support() != h.ground().full_mask() {
            return Err(Error::NotAnOrthant);
        }
        Ok(Polyhedron::OrthantBase(h, orthant))
    }

    pub fn ground(&self) -> GroundSet {
        match self {
            Polyhedron::Sub(f) | Polyhedron::Base(f) | Polyhedron::Sup(f) | Polyhedron::BaseSup(f) => {
                f.ground()
            }
            Polyhedron::Bisub(h) | Polyhedron::OrthantSub(h, _) | Polyhedron::OrthantBase(h, _) => {
                h.ground()
            }
        }
    }

    pub fn n(&self) -> usize {
        self.ground().n()
    }

    fn check_dim(&self, x: &Point) -> Result<()> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), got: x.len() });
        }
        Ok(())
    }

    /// Exact membership check; returns the first violated constraint, or
    /// `None` when `x` is a member.
    pub fn violated_constraint(&self, x: &Point) -> Result<Option<Constraint>> {
        self.check_dim(x)?;
        let out = match self {
            Polyhedron::Sub(f) => check_subsets(f, x, false, false),
            Polyhedron::Base(f) => check_subsets(f, x, false, true),
            Polyhedron::Sup(g) => check_subsets(g, x, true, false),
            Polyhedron::BaseSup(g) => check_subsets(g, x, true, true),
            Polyhedron::Bisub(h) => {
                let mut found = None;
                for u in h.bisets() {
                    if x.signed_sum(&u) > *h.value(&u) {
                        found = Some(Constraint::Biset(u));
                        break;
                    }
                }
                found
            }
            Polyhedron::OrthantSub(h, o) => check_orthant(h, o, x, false),
            Polyhedron::OrthantBase(h, o) => check_orthant(h, o, x, true),
        };
        Ok(out)
    }

    pub fn is_member(&self, x: &Point) -> Result<bool> {
        Ok(self.violated_constraint(x)?.is_none())
    }

    /// All tight constraints at a member point (the empty set or pair is
    /// always among them).
    pub fn tight_family(&self, x: &Point) -> Result<TightFamily> {
        if !self.is_member(x)? {
            return Err(Error::NotAMember);
        }
        let fam = match self {
            Polyhedron::Sub(f) | Polyhedron::Base(f) | Polyhedron::Sup(f) | Polyhedron::BaseSup(f) => {
                TightFamily::Subsets(
                    f.ground()
                        .subsets()
                        .filter(|&a| x.sum_over(a) == *f.value(a))
                        .collect(),
                )
            }
            Polyhedron::Bisub(h) => TightFamily::Bisets(
                h.bisets()
                    .into_iter()
                    .filter(|u| x.signed_sum(u) == *h.value(u))
                    .collect(),
            ),
            Polyhedron::OrthantSub(h, o) | Polyhedron::OrthantBase(h, o) => TightFamily::Bisets(
                h.bisets()
                    .into_iter()
                    .filter(|u| u.subpair_of(o) && x.signed_sum(u) == *h.value(u))
                    .collect(),
            ),
        };
        Ok(fam)
    }

    /// True iff the tight family at `x` is closed under (reduced) union and
    /// intersection. A test oracle: must hold for valid sources.
    pub fn verify_tight_closure(&self, x: &Point) -> Result<bool> {
        Ok(self.tight_family(x)?.closed_under_lattice())
    }

    /// Coordinate bounds implied by the defining inequalities, when the
    /// family is bounded in that direction.
    fn implied_bounds(&self) -> (Option<Vec<Rat>>, Option<Vec<Rat>>) {
        let n = self.n();
        let full = self.ground().full_mask();
        match self {
            Polyhedron::Sub(f) => {
                let hi = (0..n).map(|i| f.value(Mask::singleton(i)).clone()).collect();
                (None, Some(hi))
            }
            Polyhedron::Base(f) => {
                let hi: Vec<Rat> = (0..n).map(|i| f.value(Mask::singleton(i)).clone()).collect();
                let lo = (0..n)
                    .map(|i| f.value(full) - f.value(full.without(i)))
                    .collect();
                (Some(lo), Some(hi))
            }
            Polyhedron::Sup(g) => {
                let lo = (0..n).map(|i| g.value(Mask::singleton(i)).clone()).collect();
                (Some(lo), None)
            }
            Polyhedron::BaseSup(g) => {
                let lo: Vec<Rat> = (0..n).map(|i| g.value(Mask::singleton(i)).clone()).collect();
                let hi = (0..n)
                    .map(|i| g.value(full) - g.value(full.without(i)))
                    .collect();
                (Some(lo), Some(hi))
            }
            Polyhedron::Bisub(h) => {
                let hi = (0..n)
                    .map(|i| h.value(&Biset::new(Mask::singleton(i), Mask::EMPTY).unwrap()).clone())
                    .collect();
                let lo = (0..n)
                    .map(|i| -h.value(&Biset::new(Mask::EMPTY, Mask::singleton(i)).unwrap()))
                    .collect();
                (Some(lo), Some(hi))
            }
            Polyhedron::OrthantSub(h, o) | Polyhedron::OrthantBase(h, o) => {
                // one-sided singleton bounds inside the orthant
                let mut lo = Vec::with_capacity(n);
                let mut hi = Vec::with_capacity(n);
                let mut lo_ok = true;
                let mut hi_ok = true;
                for i in 0..n {
                    if o.pos().contains(i) {
                        hi.push(
                            h.value(&Biset::new(Mask::singleton(i), Mask::EMPTY).unwrap()).clone(),
                        );
                        lo.push(Rat::zero());
                        lo_ok = false;
                    } else {
                        lo.push(
                            -h.value(&Biset::new(Mask::EMPTY, Mask::singleton(i)).unwrap()),
                        );
                        hi.push(Rat::zero());
                        hi_ok = false;
                    }
                }
                (lo_ok.then_some(lo), hi_ok.then_some(hi))
            }
        }
    }

    /// All integral members. Bounds are derived from the defining
    /// inequalities where the family is bounded; otherwise a user box is
    /// required. A user box is always intersected with the derived bounds.
    pub fn enumerate_integral_points(&self, user_box: Option<&[(Rat, Rat)]>) -> Result<Vec<Point>> {
        let n = self.n();
        if let Some(bx) = user_box {
            if bx.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: bx.len() });
            }
        }
        let (lo, hi) = self.implied_bounds();
        let mut lo = match (lo, user_box) {
            (Some(lo), Some(bx)) => lo
                .into_iter()
                .zip(bx.iter())
                .map(|(a, (l, _))| a.max(l.clone()))
                .collect(),
            (Some(lo), None) => lo,
            (None, Some(bx)) => bx.iter().map(|(l, _)| l.clone()).collect::<Vec<_>>(),
            (None, None) => return Err(Error::UnboundedEnumeration),
        };
        let mut hi = match (hi, user_box) {
            (Some(hi), Some(bx)) => hi
                .into_iter()
                .zip(bx.iter())
                .map(|(a, (_, u))| a.min(u.clone()))
                .collect(),
            (Some(hi), None) => hi,
            (None, Some(bx)) => bx.iter().map(|(_, u)| u.clone()).collect::<Vec<_>>(),
            (None, None) => return Err(Error::UnboundedEnumeration),
        };
        // shrink to the integer lattice
        let lo_z: Vec<BigInt> = lo.drain(..).map(|r| r.ceil()).collect();
        let hi_z: Vec<BigInt> = hi.drain(..).map(|r| r.floor()).collect();

        if let Some(out) = self.enumerate_i64(&lo_z, &hi_z) {
            return Ok(out);
        }
        let mut out = Vec::new();
        let mut coords: Vec<BigInt> = Vec::with_capacity(n);
        self.dfs_enumerate(&lo_z, &hi_z, &mut coords, &mut out);
        out.sort();
        Ok(out)
    }

    /// Machine-integer scan for the set-function families; bails out to the
    /// arbitrary-precision path when any value is outside the safe range.
    fn enumerate_i64(&self, lo: &[BigInt], hi: &[BigInt]) -> Option<Vec<Point>> {
        const LIMIT: i64 = 1 << 40;
        use num_traits::ToPrimitive;
        let (vals, lower, base) = match self {
            Polyhedron::Sub(f) => (f.values_i64()?, false, false),
            Polyhedron::Base(f) => (f.values_i64()?, false, true),
            Polyhedron::Sup(f) => (f.values_i64()?, true, false),
            Polyhedron::BaseSup(f) => (f.values_i64()?, true, true),
            _ => return None,
        };
        let n = self.n();
        let lo: Vec<i64> = lo.iter().map(|b| b.to_i64()).collect::<Option<_>>()?;
        let hi: Vec<i64> = hi.iter().map(|b| b.to_i64()).collect::<Option<_>>()?;
        if vals.iter().chain(lo.iter()).chain(hi.iter()).any(|v| v.abs() > LIMIT) {
            return None;
        }
        let total = vals[(1usize << n) - 1];
        // suffix sums of the bounds, for the element-sum window of bases
        let mut suffix_lo = vec![0i64; n + 1];
        let mut suffix_hi = vec![0i64; n + 1];
        for i in (0..n).rev() {
            suffix_lo[i] = suffix_lo[i + 1] + lo[i];
            suffix_hi[i] = suffix_hi[i + 1] + hi[i];
        }

        struct Scan<'s> {
            n: usize,
            vals: &'s [i64],
            lo: &'s [i64],
            hi: &'s [i64],
            suffix_lo: &'s [i64],
            suffix_hi: &'s [i64],
            lower: bool,
            base: bool,
            total: i64,
            sums: Vec<i64>,
            coords: Vec<i64>,
            out: Vec<Point>,
        }

        impl Scan<'_> {
            fn go(&mut self, k: usize) {
                if k == self.n {
                    self.out.push(Point::new(
                        self.coords.iter().map(|&v| Rat::from_int(v)).collect(),
                    ));
                    return;
                }
                let bit = 1usize << k;
                for x in self.lo[k]..=self.hi[k] {
                    // every subset of the prefix gains its variant with k;
                    // check the new constraints as the sums materialize
                    let mut ok = true;
                    for m in 0..bit {
                        let s = self.sums[m] + x;
                        self.sums[m | bit] = s;
                        let r = self.vals[m | bit];
                        if (!self.lower && s > r) || (self.lower && s < r) {
                            ok = false;
                            break;
                        }
                    }
                    if !ok {
                        continue;
                    }
                    if self.base {
                        let part = self.sums[2 * bit - 1];
                        if part + self.suffix_hi[k + 1] < self.total
                            || part + self.suffix_lo[k + 1] > self.total
                        {
                            continue;
                        }
                    }
                    self.coords[k] = x;
                    self.go(k + 1);
                }
            }
        }

        let mut scan = Scan {
            n,
            vals: &vals,
            lo: &lo,
            hi: &hi,
            suffix_lo: &suffix_lo,
            suffix_hi: &suffix_hi,
            lower,
            base,
            total,
            sums: vec![0i64; 1usize << n],
            coords: vec![0i64; n],
            out: Vec::new(),
        };
        scan.go(0);
        let mut out = scan.out;
        out.sort();
        Some(out)
    }

    fn dfs_enumerate(
        &self,
        lo: &[BigInt],
        hi: &[BigInt],
        coords: &mut Vec<BigInt>,
        out: &mut Vec<Point>,
    ) {
        let n = self.n();
        let k = coords.len();
        if k == n {
            let p = Point::new(coords.iter().cloned().map(Rat::from_bigint).collect());
            debug_assert!(self.is_member(&p).unwrap());
            out.push(p);
            return;
        }
        let mut v = lo[k].clone();
        while v <= hi[k] {
            coords.push(v.clone());
            if self.prefix_feasible(coords, lo, hi) {
                self.dfs_enumerate(lo, hi, coords, out);
            }
            coords.pop();
            v += BigInt::one();
        }
    }

    /// Checks every constraint whose support lies in the assigned prefix and
    /// involves the last assigned coordinate, plus a sum window for base
    /// families.
    fn prefix_feasible(&self, coords: &[BigInt], lo: &[BigInt], hi: &[BigInt]) -> bool {
        let k = coords.len() - 1;
        let n = self.n();
        let prefix = Mask((1u32 << coords.len()) - 1);
        let sum_over = |m: Mask| -> BigInt {
            m.iter().map(|i| coords[i].clone()).fold(BigInt::zero(), |a, b| a + b)
        };
        match self {
            Polyhedron::Sub(f) | Polyhedron::Base(f) | Polyhedron::Sup(f) | Polyhedron::BaseSup(f) => {
                let upper = matches!(self, Polyhedron::Sub(_) | Polyhedron::Base(_));
                for a in prefix.subsets() {
                    if !a.contains(k) {
                        continue;
                    }
                    let lhs = Rat::from_bigint(sum_over(a));
                    let rhs = f.value(a);
                    if upper && lhs > *rhs {
                        return false;
                    }
                    if !upper && lhs < *rhs {
                        return false;
                    }
                }
                if matches!(self, Polyhedron::Base(_) | Polyhedron::BaseSup(_)) {
                    // partial sum plus remaining bounds must straddle f(N)
                    let total = f.value(f.ground().full_mask());
                    let part = Rat::from_bigint(sum_over(prefix));
                    let rest_hi: BigInt = (k + 1..n).map(|i| hi[i].clone()).fold(BigInt::zero(), |a, b| a + b);
                    let rest_lo: BigInt = (k + 1..n).map(|i| lo[i].clone()).fold(BigInt::zero(), |a, b| a + b);
                    if &part + Rat::from_bigint(rest_hi) < *total {
                        return false;
                    }
                    if &part + Rat::from_bigint(rest_lo) > *total {
                        return false;
                    }
                }
                true
            }
            Polyhedron::Bisub(h) => prefix_feasible_bisets(h, None, coords, k),
            Polyhedron::OrthantSub(h, o) => prefix_feasible_bisets(h, Some(*o), coords, k),
            Polyhedron::OrthantBase(h, o) => {
                if !prefix_feasible_bisets(h, Some(*o), coords, k) {
                    return false;
                }
                if coords.len() == n {
                    let mut x = Point::new(coords.iter().cloned().map(Rat::from_bigint).collect());
                    let _ = &mut x;
                    return x.signed_sum(o) == *h.value(o);
                }
                true
            }
        }
    }

    /// An extreme point maximizing `w . x`, produced by the greedy rule.
    /// Only base and bisubmodular polyhedra carry a greedy oracle.
    pub fn linear_maximize(&self, w: &Point) -> Result<Point> {
        self.check_dim(w)?;
        match self {
            Polyhedron::Base(f) => {
                let pi = Permutation::sorted_by(self.n(), |a, b| w.coord(b).cmp(w.coord(a)));
                Ok(greedy_vertex(f, &pi))
            }
            Polyhedron::Bisub(h) => {
                let signs = SignVector::new(
                    (0..self.n())
                        .map(|i| if w.coord(i).is_negative() { -1 } else { 1 })
                        .collect(),
                )
                .expect("entries are +1 or -1");
                let pi = Permutation::sorted_by(self.n(), |a, b| {
                    w.coord(b).abs().cmp(&w.coord(a).abs())
                });
                Ok(signed_greedy_vertex(h, &pi, &signs))
            }
            _ => Err(Error::UnsupportedCombination),
        }
    }
}

fn check_subsets(f: &SetFunction, x: &Point, lower: bool, base: bool) -> Option<Constraint> {
    let full = f.ground().full_mask();
    if base && x.total() != *f.value(full) {
        return Some(Constraint::BaseSum);
    }
    for a in f.ground().subsets() {
        let lhs = x.sum_over(a);
        let rhs = f.value(a);
        if lower {
            if lhs < *rhs {
                return Some(Constraint::Subset(a));
            }
        } else if lhs > *rhs {
            return Some(Constraint::Subset(a));
        }
    }
    None
}

fn check_orthant(h: &BisetFunction, o: &Biset, x: &Point, base: bool) -> Option<Constraint> {
    if base && x.signed_sum(o) != *h.value(o) {
        return Some(Constraint::BaseSum);
    }
    for pos in o.pos().subsets() {
        for neg in o.neg().subsets() {
            let u = Biset::new(pos, neg).expect("parts of disjoint masks stay disjoint");
            if x.signed_sum(&u) > *h.value(&u) {
                return Some(Constraint::Biset(u));
            }
        }
    }
    None
}

fn prefix_feasible_bisets(
    h: &BisetFunction,
    orthant: Option<Biset>,
    coords: &[BigInt],
    k: usize,
) -> bool {
    let prefix = Mask((1u32 << coords.len()) - 1);
    for pos in prefix.subsets() {
        for neg in prefix.minus(pos).subsets() {
            if !pos.contains(k) && !neg.contains(k) {
                continue;
            }
            let u = Biset::new(pos, neg).expect("disjoint by construction");
            if let Some(o) = orthant {
                if !u.subpair_of(&o) {
                    continue;
                }
            }
            let lhs: BigInt = pos.iter().map(|i| coords[i].clone()).fold(BigInt::zero(), |a, b| a + b)
                - neg.iter().map(|i| coords[i].clone()).fold(BigInt::zero(), |a, b| a + b);
            if Rat::from_bigint(lhs) > *h.value(&u) {
                return false;
            }
        }
    }
    true
}

/// The extreme point of `B(f)` selected by a permutation:
/// `z_{pi(k)} = f({pi(1..k)}) - f({pi(1..k-1)})`.
pub fn greedy_vertex(f: &SetFunction, pi: &Permutation) -> Point {
    let n = f.n();
    let mut z = Point::zeros(n);
    let mut prefix = Mask::EMPTY;
    let mut prev = Rat::zero();
    for k in 0..n {
        let i = pi.at(k);
        prefix = prefix.with(i);
        let cur = f.value(prefix).clone();
        *z.coord_mut(i) = &cur - &prev;
        prev = cur;
    }
    z
}

/// The extreme point of `B~(h)` selected by a permutation and sign vector:
/// `z_{pi(k)} = s_{pi(k)} (h({pi(1..k)} | s) - h({pi(1..k-1)} | s))`.
pub fn signed_greedy_vertex(h: &BisetFunction, pi: &Permutation, s: &SignVector) -> Point {
    let n = h.n();
    let mut z = Point::zeros(n);
    let mut prefix = Mask::EMPTY;
    let mut prev = Rat::zero();
    for k in 0..n {
        let i = pi.at(k);
        prefix = prefix.with(i);
        let cur = h.value(&crate::ground::biset_from_sign(prefix, s)).clone();
        let delta = &cur - &prev;
        *z.coord_mut(i) = if s.get(i) > 0 { delta } else { -delta };
        prev = cur;
    }
    z
}

/// Raises the coordinates of `x in P(f)` in index order until the point lies
/// in `B(f)`; each step adds the largest feasible increase
/// `min_(A contains i) (f(A) - y(A))` (floored when `integral` is set).
pub fn lift_to_base(f: &SetFunction, x: &Point, integral: bool) -> Result<Point> {
    let p = Polyhedron::submodular(f)?;
    if !p.is_member(x)? {
        return Err(Error::NotAMember);
    }
    if integral && !(f.is_integral() && x.is_integral()) {
        return Err(Error::NotIntegral);
    }
    let n = f.n();
    let mut y = x.clone();
    for i in 0..n {
        let mut cap: Option<Rat> = None;
        for a in f.ground().subsets() {
            if !a.contains(i) {
                continue;
            }
            let slack = f.value(a) - y.sum_over(a);
            cap = Some(match cap {
                None => slack,
                Some(c) => c.min(slack),
            });
        }
        let mut step = cap.expect("ground set is nonempty");
        if integral {
            step = Rat::from_bigint(step.floor());
        }
        *y.coord_mut(i) = y.coord(i) + &step;
    }
    Ok(y)
}

/// Which indices of `x in B~(h)` are blocked from moving up (`sat_plus`) or
/// down (`sat_minus`), read off the tight bisets.
pub fn saturation(h: &BisetFunction, x: &Point) -> Result<SaturationInfo> {
    let p = Polyhedron::bisubmodular(h);
    let fam = p.tight_family(x)?;
    let TightFamily::Bisets(pairs) = fam else { unreachable!() };
    let mut sat_plus = Mask::EMPTY;
    let mut sat_minus = Mask::EMPTY;
    for u in &pairs {
        sat_plus = sat_plus.union(u.pos());
        sat_minus = sat_minus.union(u.neg());
    }
    Ok(SaturationInfo { sat_plus, sat_minus })
}

/// `dep(x, +i)` (or `-i`): the reduced intersection of all tight bisets
/// containing `i` on the requested side.
pub fn dependence(h: &BisetFunction, x: &Point, i: usize, positive: bool) -> Result<Biset> {
    let p = Polyhedron::bisubmodular(h);
    let fam = p.tight_family(x)?;
    let TightFamily::Bisets(pairs) = fam else { unreachable!() };
    let mut acc: Option<Biset> = None;
    for u in &pairs {
        let hit = if positive { u.pos().contains(i) } else { u.neg().contains(i) };
        if hit {
            acc = Some(match acc {
                None => *u,
                Some(v) => v.reduced_intersection(u),
            });
        }
    }
    acc.ok_or(Error::NotSaturated { index: i, positive })
}
