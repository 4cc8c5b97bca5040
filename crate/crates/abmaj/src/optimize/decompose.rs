//! Separable quadratic minimization over a base polyhedron by recursive
//! tight-set decomposition.
//!
//! Each level solves the hyperplane relaxation in closed form; if the
//! relaxed point violates `P(f)`, the inclusion-minimal minimizer of
//! `f - x` splits the problem into a restriction and a contraction.

use alloc::vec;
use alloc::vec::Vec;

use crate::ground::Mask;
use crate::majorization::ScalingShift;
use crate::polyhedra::Point;
use crate::rat::Rat;
use crate::setfn::{Kind, SetFunction};
use crate::{Error, Result};

/// The unique minimizer of `sum_i (x_i^2 / (2 a_i) + b_i x_i)` over `B(f)`.
/// This point is the least (a,b)-majorized element of the base polyhedron.
pub fn min_quadratic_base(f: &SetFunction, ab: &ScalingShift) -> Result<Point> {
    if f.kind() != Kind::Submodular {
        return Err(Error::KindMismatch);
    }
    if ab.n() != f.n() {
        return Err(Error::DimensionMismatch { expected: f.n(), got: ab.n() });
    }
    let a: Vec<Rat> = ab.a().coords().to_vec();
    let b: Vec<Rat> = ab.b().coords().to_vec();
    Ok(Point::new(solve(f, &a, &b)))
}

fn solve(f: &SetFunction, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = f.n();
    let full = f.ground().full_mask();
    let a_total: Rat = a.iter().sum();
    let ab_total: Rat = a.iter().zip(b.iter()).map(|(ai, bi)| ai * bi).sum();
    let theta = (f.value(full) + ab_total) / a_total;
    let xhat: Vec<Rat> = (0..n).map(|i| &a[i] * (&theta - &b[i])).collect();

    // minimal minimizer of f(A) - xhat(A); the value at the empty set is 0
    let mut best = Rat::zero();
    let mut a_star = Mask::EMPTY;
    for m in f.ground().subsets() {
        let d = f.value(m) - m.iter().map(|i| &xhat[i]).sum::<Rat>();
        if d < best {
            best = d;
            a_star = m;
        } else if d == best && !best.is_zero() {
            a_star = a_star.inter(m);
        }
    }
    if best.is_zero() {
        return xhat;
    }

    let members: Vec<usize> = a_star.iter().collect();
    let rest: Vec<usize> = full.minus(a_star).iter().collect();
    let fr = f.restrict_to(a_star).expect("nonempty proper subset");
    let fc = f.contract(a_star).expect("nonempty proper subset");
    let xr = solve(
        &fr,
        &members.iter().map(|&i| a[i].clone()).collect::<Vec<_>>(),
        &members.iter().map(|&i| b[i].clone()).collect::<Vec<_>>(),
    );
    let xc = solve(
        &fc,
        &rest.iter().map(|&i| a[i].clone()).collect::<Vec<_>>(),
        &rest.iter().map(|&i| b[i].clone()).collect::<Vec<_>>(),
    );

    let mut out = vec![Rat::zero(); n];
    for (k, &i) in members.iter().enumerate() {
        out[i] = xr[k].clone();
    }
    for (k, &i) in rest.iter().enumerate() {
        out[i] = xc[k].clone();
    }
    out
}
