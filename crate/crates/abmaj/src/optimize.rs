//! Least (a,b)-majorized elements of the five polyhedron families, the
//! quadratic solvers behind them, and the pairwise-exchange optimality
//! check for separable convex objectives.

mod decompose;
mod frank_wolfe;
mod integral;

pub use decompose::min_quadratic_base;
pub use frank_wolfe::{minimize as fw_minimize, FwOptions, FwOutcome, Quadratic};
pub use integral::{min_quadratic_base_integral, min_quadratic_bisub_integral};

use alloc::vec::Vec;

use crate::majorization::{Order, ScalingShift};
use crate::polyhedra::{Point, Polyhedron, TightFamily};
use crate::rat::Rat;
use crate::setfn::{BisetFunction, Kind, SetFunction};
use crate::{Error, Result};

/// A least-element computation: which polyhedron, which order, which
/// scaling, and whether the integral variant is wanted (integral results
/// require unit scaling and integral data).
#[derive(Clone, Debug)]
pub struct LeastElementRequest<'a> {
    pub polyhedron: Polyhedron<'a>,
    pub ab: ScalingShift,
    pub order: Order,
    pub integral: bool,
}

/// The quadratic minimizer over the bisubmodular polyhedron, which is a
/// least weakly absolutely (a,b)-majorized element of it.
pub fn min_quadratic_bisub(h: &BisetFunction, ab: &ScalingShift, integral: bool) -> Result<Point> {
    if ab.n() != h.n() {
        return Err(Error::DimensionMismatch { expected: h.n(), got: ab.n() });
    }
    if integral {
        if !ab.is_unit_scaling() {
            return Err(Error::ScalingNotUnit);
        }
        return min_quadratic_bisub_integral(h, ab.b());
    }
    let poly = Polyhedron::bisubmodular(h);
    let out = fw_minimize(&poly, &Quadratic::from_scaling(ab), &FwOptions::default())?;
    if !out.certified {
        return Err(Error::Unconverged);
    }
    Ok(out.point)
}

/// Dispatches a least-element request to the solver the corresponding
/// existence result names. Combinations without such a result are refused.
pub fn least_element(req: &LeastElementRequest) -> Result<Point> {
    let ab = &req.ab;
    if ab.n() != req.polyhedron.n() {
        return Err(Error::DimensionMismatch { expected: req.polyhedron.n(), got: ab.n() });
    }
    if req.integral {
        if !ab.is_unit_scaling() {
            return Err(Error::ScalingNotUnit);
        }
        if !ab.b().is_integral() {
            return Err(Error::NotIntegral);
        }
    }
    let solve_base = |f: &SetFunction| -> Result<Point> {
        if req.integral {
            min_quadratic_base_integral(f, ab.b())
        } else {
            min_quadratic_base(f, ab)
        }
    };
    match (req.order, &req.polyhedron) {
        (Order::Full, Polyhedron::Base(f)) => solve_base(f),
        (Order::WeakSuper, Polyhedron::Sub(f)) => solve_base(f),
        (Order::WeakSub, Polyhedron::Sup(g)) => solve_base(&g.dual()),
        (Order::WeakSuper, Polyhedron::Bisub(h)) => {
            let orthant = crate::ground::Biset::new(h.ground().full_mask(), crate::ground::Mask::EMPTY)?;
            solve_base(&h.orthant_restriction(&orthant)?)
        }
        (Order::WeakSub, Polyhedron::Bisub(h)) => {
            // the supermodular side: minimize over B_sup(-h_(empty,N))
            let orthant = crate::ground::Biset::new(crate::ground::Mask::EMPTY, h.ground().full_mask())?;
            let lowered = h.orthant_restriction(&orthant)?;
            let g = SetFunction::new(
                lowered.ground(),
                Kind::Supermodular,
                lowered.values().iter().map(|v| -v).collect(),
            )?;
            solve_base(&g.dual())
        }
        (Order::WeakAbs, Polyhedron::Sub(f)) => {
            let r = reduction_vector(ab);
            solve_base(&f.reduce(&r)?)
        }
        (Order::WeakAbs, Polyhedron::Sup(g)) => {
            let r = reduction_vector(ab);
            solve_base(&g.reduce(&r)?.dual())
        }
        (Order::WeakAbs, Polyhedron::Bisub(h)) => min_quadratic_bisub(h, ab, req.integral),
        _ => Err(Error::UnsupportedCombination),
    }
}

// r_i = -a_i b_i, the peak of the even objective class
fn reduction_vector(ab: &ScalingShift) -> Point {
    Point::new(
        (0..ab.n())
            .map(|i| -(ab.a().coord(i) * ab.b().coord(i)))
            .collect(),
    )
}

/// The least (a,b)-majorized element of the hyperplane `{ x | x(N) = r }`:
/// the point with `x_i / a_i + b_i` constant.
pub fn least_element_hyperplane(r: &Rat, ab: &ScalingShift) -> Point {
    let n = ab.n();
    let a_total: Rat = ab.a().iter().sum();
    let ab_total: Rat = (0..n).map(|i| ab.a().coord(i) * ab.b().coord(i)).sum();
    let theta = (r + ab_total) / a_total;
    Point::new(
        (0..n)
            .map(|i| ab.a().coord(i) * (&theta - ab.b().coord(i)))
            .collect(),
    )
}

/// Left and right derivatives of per-coordinate continuous convex
/// objectives.
pub trait DerivativeOracle {
    fn left(&self, i: usize, t: &Rat) -> Rat;
    fn right(&self, i: usize, t: &Rat) -> Rat;
}

/// `phi_i(t) = t^2/2 + b_i t`; smooth, so both derivatives agree.
#[derive(Clone, Debug)]
pub struct ShiftedQuadratic {
    b: Vec<Rat>,
}

impl ShiftedQuadratic {
    pub fn new(b: Vec<Rat>) -> Self {
        ShiftedQuadratic { b }
    }
}

impl DerivativeOracle for ShiftedQuadratic {
    fn left(&self, i: usize, t: &Rat) -> Rat {
        t + &self.b[i]
    }

    fn right(&self, i: usize, t: &Rat) -> Rat {
        t + &self.b[i]
    }
}

/// The piecewise-linear interpolation of `t^2/2 + b_i t` through the
/// integer lattice: the convex extension to use when the feasible set is an
/// integral polyhedron. Its one-sided derivatives are the unit differences.
#[derive(Clone, Debug)]
pub struct DiscreteQuadratic {
    b: Vec<Rat>,
}

impl DiscreteQuadratic {
    pub fn new(b: Vec<Rat>) -> Self {
        DiscreteQuadratic { b }
    }
}

impl DerivativeOracle for DiscreteQuadratic {
    fn left(&self, i: usize, t: &Rat) -> Rat {
        Rat::from_bigint(t.ceil()) - Rat::ratio(1, 2) + &self.b[i]
    }

    fn right(&self, i: usize, t: &Rat) -> Rat {
        Rat::from_bigint(t.floor()) + Rat::ratio(1, 2) + &self.b[i]
    }
}

/// The pairwise-exchange optimality condition for minimizing
/// `sum_i phi_i(x_i)` at `x`: whenever `x + alpha (e^k - e^i)` stays in the
/// polyhedron for some positive `alpha`, the right derivative at `k` must
/// be at least the left derivative at `i`. Returns a violating `(i, k)`
/// pair, or `None` when the condition holds.
pub fn check_exchange_optimality(
    poly: &Polyhedron,
    x: &Point,
    phi: &dyn DerivativeOracle,
) -> Result<Option<(usize, usize)>> {
    let fam = poly.tight_family(x)?; // errors when x is not a member
    let n = poly.n();
    let raising_blocked = |k: usize, i: usize| -> bool {
        // the move raises x_k and lowers x_i; a tight inequality blocks it
        // iff its value strictly increases along the move, and the orthant
        // equality blocks it whenever its value moves at all (the plain
        // base equality is exchange-invariant)
        if let Polyhedron::OrthantBase(_, o) = poly {
            if o.sign_of(k) != o.sign_of(i) {
                return true;
            }
        }
        match &fam {
            TightFamily::Subsets(sets) => {
                let upper = matches!(poly, Polyhedron::Sub(_) | Polyhedron::Base(_));
                sets.iter().any(|a| {
                    let delta = (a.contains(k) as i8) - (a.contains(i) as i8);
                    if upper {
                        delta > 0
                    } else {
                        delta < 0
                    }
                })
            }
            TightFamily::Bisets(pairs) => pairs.iter().any(|u| u.sign_of(k) - u.sign_of(i) > 0),
        }
    };
    for i in 0..n {
        for k in 0..n {
            if i == k || raising_blocked(k, i) {
                continue;
            }
            if phi.right(k, x.coord(k)) < phi.left(i, x.coord(i)) {
                return Ok(Some((i, k)));
            }
        }
    }
    Ok(None)
}
