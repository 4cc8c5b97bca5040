//! Integral least-element solvers: exhaustive enumeration at desk scale,
//! and steepest-descent exchange moves over integral base polyhedra beyond
//! it.

use crate::ground::Permutation;
use crate::majorization::ScalingShift;
use crate::polyhedra::{greedy_vertex, Point, Polyhedron};
use crate::rat::Rat;
use crate::setfn::{BisetFunction, Kind, SetFunction};
use crate::{Error, Result};

/// Ground sets beyond this size use exchange descent instead of enumeration.
const ENUMERATE_MAX: usize = 4;
/// Integral bisubmodular minimization is enumeration-only.
pub const BISUB_INTEGRAL_MAX: usize = 4;

fn objective(x: &Point, b: &Point) -> Rat {
    (0..x.len())
        .map(|i| {
            let xi = x.coord(i);
            xi * xi / Rat::from_int(2) + b.coord(i) * xi
        })
        .sum()
}

fn argmin_lex_greatest(points: &[Point], b: &Point) -> Option<Point> {
    let mut best: Option<(Rat, &Point)> = None;
    for x in points {
        let val = objective(x, b);
        best = Some(match best {
            None => (val, x),
            // points arrive sorted ascending, so `>=` keeps the
            // lexicographically greatest minimizer
            Some((bv, bx)) => {
                if val <= bv {
                    (val, x)
                } else {
                    (bv, bx)
                }
            }
        });
    }
    best.map(|(_, x)| x.clone())
}

/// A minimizer of `sum_i (x_i^2 / 2 + b_i x_i)` over the integral base
/// polyhedron; any such minimizer is a least (1,b)-majorized element of it.
/// Ties are broken toward the lexicographically greatest point.
pub fn min_quadratic_base_integral(f: &SetFunction, b: &Point) -> Result<Point> {
    if f.kind() != Kind::Submodular {
        return Err(Error::KindMismatch);
    }
    if b.len() != f.n() {
        return Err(Error::DimensionMismatch { expected: f.n(), got: b.len() });
    }
    if !f.is_integral() || !b.is_integral() {
        return Err(Error::NotIntegral);
    }
    let n = f.n();
    let base = Polyhedron::base(f)?;
    if n <= ENUMERATE_MAX {
        let pts = base.enumerate_integral_points(None)?;
        return argmin_lex_greatest(&pts, b).ok_or(Error::EmptyPolyhedron);
    }

    // round the continuous solution into a starting vertex, then walk
    // strictly improving exchanges; local optimality over single exchanges
    // is global for separable convex objectives on a base polyhedron
    let ab = ScalingShift::new(
        Point::new(core::iter::repeat_n(Rat::one(), n).collect()),
        b.clone(),
    )?;
    let relaxed = super::decompose::min_quadratic_base(f, &ab)?;
    let pi = Permutation::sorted_by(n, |i, j| relaxed.coord(j).cmp(relaxed.coord(i)));
    let mut x = greedy_vertex(f, &pi);
    loop {
        let mut best: Option<(Rat, usize, usize)> = None;
        for k in 0..n {
            for i in 0..n {
                if i == k {
                    continue;
                }
                // objective change of x + e^k - e^i
                let delta = x.coord(k) - x.coord(i) + b.coord(k) - b.coord(i) + Rat::one();
                if !delta.is_negative() {
                    continue;
                }
                if let Some((bd, _, _)) = &best {
                    if delta >= *bd {
                        continue;
                    }
                }
                let mut y = x.clone();
                *y.coord_mut(k) = y.coord(k) + Rat::one();
                *y.coord_mut(i) = y.coord(i) - Rat::one();
                if base.is_member(&y)? {
                    best = Some((delta, k, i));
                }
            }
        }
        match best {
            Some((_, k, i)) => {
                *x.coord_mut(k) = x.coord(k) + Rat::one();
                *x.coord_mut(i) = x.coord(i) - Rat::one();
            }
            None => return Ok(x),
        }
    }
}

/// A minimizer of the integral quadratic over the integral bisubmodular
/// polyhedron, by exhaustive enumeration. Larger ground sets are refused
/// rather than served by an unverified heuristic.
pub fn min_quadratic_bisub_integral(h: &BisetFunction, b: &Point) -> Result<Point> {
    if b.len() != h.n() {
        return Err(Error::DimensionMismatch { expected: h.n(), got: b.len() });
    }
    if !h.is_integral() || !b.is_integral() {
        return Err(Error::NotIntegral);
    }
    if h.n() > BISUB_INTEGRAL_MAX {
        return Err(Error::CheckTooLarge { n: h.n(), max: BISUB_INTEGRAL_MAX });
    }
    let pts = Polyhedron::bisubmodular(h).enumerate_integral_points(None)?;
    argmin_lex_greatest(&pts, b).ok_or(Error::EmptyPolyhedron)
}
