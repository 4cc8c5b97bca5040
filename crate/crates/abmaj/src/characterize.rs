//! Decision procedures recognizing whether a finite point set is (or
//! sandwiches) a submodular, supermodular, base, or bisubmodular
//! polyhedron, together with the constructive shift vectors that certify
//! non-existence of least elements when the recognition fails.
//!
//! Integral mode reads the point list as the set itself; continuous mode
//! reads it as the vertex list of a polytope.

mod simplex;

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::ground::{
    all_permutations, all_sign_vectors, Biset, GroundSet, Mask, Permutation, SignVector,
};
use crate::polyhedra::{greedy_vertex, signed_greedy_vertex, Point, Polyhedron};
use crate::rat::Rat;
use crate::setfn::{BisetFunction, CheckMode, Kind, SetFunction};
use crate::{Error, Result};

/// Cap on sweeps over all permutations.
pub const PERM_SWEEP_MAX: usize = 8;
/// Cap on sweeps over all permutation/sign pairs.
pub const SIGNED_SWEEP_MAX: usize = 6;

/// An explicit finite list of points: the candidate set, or the vertex list
/// of a polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    ground: GroundSet,
    points: Vec<Point>,
    integral: bool,
}

impl PointSet {
    /// Points are sorted and deduplicated; the integral flag records
    /// whether every coordinate is an integer.
    pub fn new(ground: GroundSet, mut points: Vec<Point>) -> Result<Self> {
        for p in &points {
            if p.len() != ground.n() {
                return Err(Error::DimensionMismatch { expected: ground.n(), got: p.len() });
            }
        }
        points.sort();
        points.dedup();
        let integral = points.iter().all(Point::is_integral);
        Ok(PointSet { ground, points, integral })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.n()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.integral
    }

    pub fn contains(&self, q: &Point) -> bool {
        self.points.binary_search(q).is_ok()
    }

    /// Per-coordinate minima and maxima over the points.
    pub fn bounds(&self) -> Result<(Vec<Rat>, Vec<Rat>)> {
        if self.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let n = self.n();
        let mut lo = self.points[0].coords().to_vec();
        let mut hi = lo.clone();
        for p in &self.points[1..] {
            for i in 0..n {
                if *p.coord(i) < lo[i] {
                    lo[i] = p.coord(i).clone();
                }
                if *p.coord(i) > hi[i] {
                    hi[i] = p.coord(i).clone();
                }
            }
        }
        Ok((lo, hi))
    }
}

/// Which extremum induces the set function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremum {
    Max,
    Min,
}

/// The polyhedron family a characterization targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Super,
    Sub,
    Base,
    Bisub,
}

/// The function induced by the point set.
#[derive(Clone, Debug)]
pub enum Induced {
    Set(SetFunction),
    Biset(BisetFunction),
}

/// A structured witness for a failed characterization condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// No single point attains all prefix extrema of this permutation.
    Prefix { pi: Permutation },
    /// No single point attains all signed prefix maxima of this pair.
    SignedPrefix { pi: Permutation, signs: SignVector },
    NotSubmodular { a: Mask, b: Mask },
    NotSupermodular { a: Mask, b: Mask },
    NotBisubmodular { u: Biset, v: Biset },
    /// A required member of the generated polyhedron is missing from the set.
    MissingPoint { point: Point },
    /// An integral hull point absent from the set.
    Hole { point: Point },
    /// Two points with different element sums (base family only).
    UnequalSums { x: Point, y: Point },
}

/// Outcome of a characterization run.
#[derive(Clone, Debug)]
pub struct Report {
    pub family: Family,
    pub holds: bool,
    pub induced: Induced,
    pub failures: Vec<Failure>,
}

/// The point list as machine integers, when every coordinate fits the safe
/// range for exhaustive machine arithmetic.
fn rows_i64(c: &PointSet) -> Option<Vec<Vec<i64>>> {
    const LIMIT: i64 = 1 << 40;
    let rows: Option<Vec<Vec<i64>>> = c
        .points()
        .iter()
        .map(|p| p.iter().map(Rat::to_i64).collect::<Option<Vec<i64>>>())
        .collect();
    let rows = rows?;
    rows.iter()
        .all(|r| r.iter().all(|v| v.abs() <= LIMIT))
        .then_some(rows)
}

/// `f(A) = max_{x in C} x(A)` (or min), the function the set induces.
pub fn induced_set_function(c: &PointSet, which: Extremum) -> Result<SetFunction> {
    if c.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let kind = match which {
        Extremum::Max => Kind::Submodular,
        Extremum::Min => Kind::Supermodular,
    };
    let n = c.n();
    if let Some(rows) = rows_i64(c) {
        let size = 1usize << n;
        let mut best = vec![
            match which {
                Extremum::Max => i64::MIN,
                Extremum::Min => i64::MAX,
            };
            size
        ];
        let mut sums = vec![0i64; size];
        for row in &rows {
            for m in 1..size {
                let i = m.trailing_zeros() as usize;
                sums[m] = sums[m & (m - 1)] + row[i];
                best[m] = match which {
                    Extremum::Max => best[m].max(sums[m]),
                    Extremum::Min => best[m].min(sums[m]),
                };
            }
        }
        best[0] = 0;
        let g = c.ground();
        return SetFunction::new(g, kind, best.into_iter().map(Rat::from_int).collect());
    }
    SetFunction::from_fn(c.ground(), kind, |a| {
        if a.is_empty() {
            return Rat::zero();
        }
        let mut acc: Option<Rat> = None;
        for p in c.points() {
            let v = p.sum_over(a);
            acc = Some(match acc {
                None => v,
                Some(b) => match which {
                    Extremum::Max => b.max(v),
                    Extremum::Min => b.min(v),
                },
            });
        }
        acc.unwrap()
    })
}

/// `h(X,Y) = max_{x in C} (x(X) - x(Y))`.
pub fn induced_biset_function(c: &PointSet) -> Result<BisetFunction> {
    if c.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    BisetFunction::from_fn(c.ground(), |u| {
        if u.is_empty() {
            return Rat::zero();
        }
        c.points()
            .iter()
            .map(|p| p.signed_sum(u))
            .max()
            .unwrap()
    })
}

// filter level by level: any simultaneous attainer must attain every
// prefix extremum, so intersecting argmax sets is exact
fn survivors_for_prefix(
    c: &PointSet,
    rows: Option<&[Vec<i64>]>,
    pi: &Permutation,
    which: Extremum,
    signs: Option<&SignVector>,
) -> bool {
    let n = c.n();
    if let Some(rows) = rows {
        let mut sums = vec![0i64; rows.len()];
        let mut alive: Vec<usize> = (0..rows.len()).collect();
        for k in 0..n {
            let i = pi.at(k);
            let factor = signs.map_or(1, |s| s.get(i)) as i64;
            let mut target = match which {
                Extremum::Max => i64::MIN,
                Extremum::Min => i64::MAX,
            };
            for (j, row) in rows.iter().enumerate() {
                sums[j] += factor * row[i];
                target = match which {
                    Extremum::Max => target.max(sums[j]),
                    Extremum::Min => target.min(sums[j]),
                };
            }
            alive.retain(|&j| sums[j] == target);
            if alive.is_empty() {
                return false;
            }
        }
        return true;
    }
    let mut sums: Vec<Rat> = c.points().iter().map(|_| Rat::zero()).collect();
    let mut alive: Vec<usize> = (0..c.len()).collect();
    for k in 0..n {
        let i = pi.at(k);
        let factor = signs.map_or(1, |s| s.get(i));
        for (j, p) in c.points().iter().enumerate() {
            let term = if factor >= 0 { p.coord(i).clone() } else { -p.coord(i) };
            sums[j] = &sums[j] + term;
        }
        // extremum over the whole set, not just the survivors
        let target = match which {
            Extremum::Max => sums.iter().max().unwrap().clone(),
            Extremum::Min => sums.iter().min().unwrap().clone(),
        };
        alive.retain(|&j| sums[j] == target);
        if alive.is_empty() {
            return false;
        }
    }
    true
}

/// For every permutation, does one point attain all its prefix extrema
/// simultaneously? Returns a failing permutation if not.
pub fn prefix_property(c: &PointSet, which: Extremum) -> Result<Option<Permutation>> {
    if c.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if c.n() > PERM_SWEEP_MAX {
        return Err(Error::CheckTooLarge { n: c.n(), max: PERM_SWEEP_MAX });
    }
    let rows = rows_i64(c);
    for pi in all_permutations(c.n()) {
        if !survivors_for_prefix(c, rows.as_deref(), &pi, which, None) {
            return Ok(Some(pi));
        }
    }
    Ok(None)
}

/// The signed analogue over all permutation/sign pairs.
pub fn signed_prefix_property(c: &PointSet) -> Result<Option<(Permutation, SignVector)>> {
    if c.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if c.n() > SIGNED_SWEEP_MAX {
        return Err(Error::CheckTooLarge { n: c.n(), max: SIGNED_SWEEP_MAX });
    }
    let rows = rows_i64(c);
    for pi in all_permutations(c.n()) {
        for s in all_sign_vectors(c.n()) {
            if !survivors_for_prefix(c, rows.as_deref(), &pi, Extremum::Max, Some(&s)) {
                return Ok(Some((pi, s)));
            }
        }
    }
    Ok(None)
}

/// Exact convex-hull membership over the listed points.
pub fn hull_membership(q: &Point, c: &PointSet) -> Result<bool> {
    if c.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if q.len() != c.n() {
        return Err(Error::DimensionMismatch { expected: c.n(), got: q.len() });
    }
    Ok(simplex::in_convex_hull(q, c.points()))
}

/// Scans the integer bounding box for hull members missing from the set.
pub fn hole_free_check(c: &PointSet) -> Result<Option<Point>> {
    if c.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if !c.is_integral() {
        return Err(Error::NotIntegral);
    }
    hole_scan(c, |_| true)
}

fn hole_scan<F: Fn(&Point) -> bool>(c: &PointSet, prefilter: F) -> Result<Option<Point>> {
    let (lo, hi) = c.bounds()?;
    let lo: Vec<BigInt> = lo.iter().map(Rat::ceil).collect();
    let hi: Vec<BigInt> = hi.iter().map(Rat::floor).collect();
    let n = c.n();
    let mut cur = lo.clone();
    'outer: loop {
        let q = Point::new(cur.iter().cloned().map(Rat::from_bigint).collect());
        if !c.contains(&q) && prefilter(&q) && simplex::in_convex_hull(&q, c.points()) {
            return Ok(Some(q));
        }
        for i in 0..n {
            cur[i] += BigInt::one();
            if cur[i] <= hi[i] {
                continue 'outer;
            }
            cur[i] = lo[i].clone();
        }
        return Ok(None);
    }
}

/// The shift vector from the non-existence construction: any least weakly
/// (1,b)-supermajorized element for this shift must attain every prefix
/// maximum of `pi` simultaneously.
pub fn witness_shift_super(c: &PointSet, pi: &Permutation) -> Result<Point> {
    let (lo, hi) = c.bounds()?;
    let n = c.n();
    if pi.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: pi.n() });
    }
    let mut b = vec![Rat::zero(); n];
    b[pi.at(0)] = lo[pi.at(0)].clone();
    for k in 1..n {
        let prev = pi.at(k - 1);
        let i = pi.at(k);
        b[i] = &b[prev] + &hi[prev] - &lo[i] + Rat::one();
    }
    Ok(Point::new(b))
}

/// The signed analogue: any least weakly absolutely (1,b)-majorized element
/// for this shift must attain every signed prefix maximum of `(pi, s)`.
pub fn witness_shift_signed(c: &PointSet, pi: &Permutation, s: &SignVector) -> Result<Point> {
    let (lo, hi) = c.bounds()?;
    let n = c.n();
    if pi.n() != n || s.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: pi.n().min(s.n()) });
    }
    // orthant-flipped bounds
    let fl: Vec<Rat> = (0..n)
        .map(|i| if s.get(i) > 0 { hi[i].clone() } else { lo[i].clone() })
        .collect();
    let fu: Vec<Rat> = (0..n)
        .map(|i| if s.get(i) > 0 { lo[i].clone() } else { hi[i].clone() })
        .collect();
    let mut b = vec![Rat::zero(); n];
    let last = pi.at(n - 1);
    b[last] = -&fl[last] - Rat::from_int(s.get(last) as i64);
    for k in (0..n - 1).rev() {
        let i = pi.at(k);
        let next = pi.at(k + 1);
        let mag = (&b[next] + &fu[next]).abs() + Rat::one();
        b[i] = -Rat::from_int(s.get(i) as i64) * mag - &fl[i];
    }
    Ok(Point::new(b))
}

/// Runs the recognition procedure for one family. `integral` selects the
/// integral reading (the set is itself the candidate) over the continuous one
/// (the set is read as a vertex list).
pub fn characterize(c: &PointSet, family: Family, integral: bool) -> Result<Report> {
    if c.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if integral && !c.is_integral() {
        return Err(Error::NotIntegral);
    }
    match family {
        Family::Super => characterize_one_sided(c, integral, Extremum::Max),
        Family::Sub => characterize_one_sided(c, integral, Extremum::Min),
        Family::Base => characterize_base(c, integral),
        Family::Bisub => characterize_bisub(c, integral),
    }
}

fn report(family: Family, induced: Induced, failures: Vec<Failure>) -> Report {
    Report { family, holds: failures.is_empty(), induced, failures }
}

fn characterize_one_sided(c: &PointSet, integral: bool, which: Extremum) -> Result<Report> {
    let family = if which == Extremum::Max { Family::Super } else { Family::Sub };
    let f = induced_set_function(c, which)?;
    let mut failures = Vec::new();

    if let Some(pi) = prefix_property(c, which)? {
        failures.push(Failure::Prefix { pi });
        return Ok(report(family, Induced::Set(f), failures));
    }
    let modularity = match which {
        Extremum::Max => f.check_submodular(CheckMode::LocalExchange).err().map(|(a, b)| {
            Failure::NotSubmodular { a, b }
        }),
        Extremum::Min => f.check_supermodular(CheckMode::LocalExchange).err().map(|(a, b)| {
            Failure::NotSupermodular { a, b }
        }),
    };
    if let Some(fail) = modularity {
        failures.push(fail);
        return Ok(report(family, Induced::Set(f), failures));
    }

    // containment in the outer polyhedron holds by construction of the
    // induced extremum table; only the base-side inclusion needs a scan
    let (outer, base) = match which {
        Extremum::Max => (Polyhedron::submodular(&f)?, Polyhedron::base(&f)?),
        Extremum::Min => (Polyhedron::supermodular(&f)?, Polyhedron::base_sup(&f)?),
    };
    if integral {
        for z in base.enumerate_integral_points(None)? {
            if !c.contains(&z) {
                failures.push(Failure::MissingPoint { point: z });
                return Ok(report(family, Induced::Set(f), failures));
            }
        }
        // hole-freeness cannot be skipped here: the sandwich can hold for a
        // set with lattice gaps
        if let Some(q) = hole_scan(c, |q| outer.is_member(q).unwrap_or(false))? {
            failures.push(Failure::Hole { point: q });
        }
    } else {
        let greedy_source = match which {
            Extremum::Max => f.clone(),
            Extremum::Min => f.dual(),
        };
        for z in distinct_greedy_vertices(&greedy_source)? {
            if !hull_membership(&z, c)? {
                failures.push(Failure::MissingPoint { point: z });
                return Ok(report(family, Induced::Set(f), failures));
            }
        }
    }
    Ok(report(family, Induced::Set(f), failures))
}

fn characterize_base(c: &PointSet, integral: bool) -> Result<Report> {
    let f = induced_set_function(c, Extremum::Max)?;
    let mut failures = Vec::new();

    let first = &c.points()[0];
    let total = first.total();
    if let Some(y) = c.points().iter().find(|p| p.total() != total) {
        failures.push(Failure::UnequalSums { x: first.clone(), y: y.clone() });
        return Ok(report(Family::Base, Induced::Set(f), failures));
    }
    if let Some(pi) = prefix_property(c, Extremum::Max)? {
        failures.push(Failure::Prefix { pi });
        return Ok(report(Family::Base, Induced::Set(f), failures));
    }
    if let Some((a, b)) = f.check_submodular(CheckMode::LocalExchange).err() {
        failures.push(Failure::NotSubmodular { a, b });
        return Ok(report(Family::Base, Induced::Set(f), failures));
    }
    // the set sits inside B(f) by construction of the induced maximum plus
    // the equal-sums check; only the reverse inclusion needs a scan
    let base = Polyhedron::base(&f)?;
    if integral {
        for z in base.enumerate_integral_points(None)? {
            if !c.contains(&z) {
                failures.push(Failure::MissingPoint { point: z });
                return Ok(report(Family::Base, Induced::Set(f), failures));
            }
        }
        // equality with an integral base polyhedron certifies hole-freeness
    } else {
        for z in distinct_greedy_vertices(&f)? {
            if !hull_membership(&z, c)? {
                failures.push(Failure::MissingPoint { point: z });
                return Ok(report(Family::Base, Induced::Set(f), failures));
            }
        }
    }
    Ok(report(Family::Base, Induced::Set(f), failures))
}

fn characterize_bisub(c: &PointSet, integral: bool) -> Result<Report> {
    let h = induced_biset_function(c)?;
    let mut failures = Vec::new();

    if let Some((pi, signs)) = signed_prefix_property(c)? {
        failures.push(Failure::SignedPrefix { pi, signs });
        return Ok(report(Family::Bisub, Induced::Biset(h), failures));
    }
    if let Err((u, v)) = h.check_bisubmodular(false)? {
        failures.push(Failure::NotBisubmodular { u, v });
        return Ok(report(Family::Bisub, Induced::Biset(h), failures));
    }
    // containment in the polyhedron holds by construction of the induced
    // maxima; only the reverse inclusion needs a scan
    let poly = Polyhedron::bisubmodular(&h);
    if integral {
        for z in poly.enumerate_integral_points(None)? {
            if !c.contains(&z) {
                failures.push(Failure::MissingPoint { point: z });
                return Ok(report(Family::Bisub, Induced::Biset(h), failures));
            }
        }
    } else {
        for z in distinct_signed_greedy_vertices(&h)? {
            if !hull_membership(&z, c)? {
                failures.push(Failure::MissingPoint { point: z });
                return Ok(report(Family::Bisub, Induced::Biset(h), failures));
            }
        }
    }
    Ok(report(Family::Bisub, Induced::Biset(h), failures))
}

fn distinct_greedy_vertices(f: &SetFunction) -> Result<Vec<Point>> {
    if f.n() > PERM_SWEEP_MAX {
        return Err(Error::CheckTooLarge { n: f.n(), max: PERM_SWEEP_MAX });
    }
    let mut out: Vec<Point> = all_permutations(f.n())
        .iter()
        .map(|pi| greedy_vertex(f, pi))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn distinct_signed_greedy_vertices(h: &BisetFunction) -> Result<Vec<Point>> {
    if h.n() > SIGNED_SWEEP_MAX {
        return Err(Error::CheckTooLarge { n: h.n(), max: SIGNED_SWEEP_MAX });
    }
    let mut out = Vec::new();
    for pi in all_permutations(h.n()) {
        for s in all_sign_vectors(h.n()) {
            out.push(signed_greedy_vertex(h, &pi, &s));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}
