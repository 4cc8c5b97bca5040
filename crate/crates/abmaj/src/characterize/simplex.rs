//! Phase-one simplex in exact rational arithmetic, used to decide convex
//! hull membership: is `q` a convex combination of the given points?

use alloc::vec;
use alloc::vec::Vec;

use crate::polyhedra::Point;
use crate::rat::Rat;

/// Decides `q in co(points)` exactly: feasibility of
/// `sum lambda_j x_j = q, sum lambda_j = 1, lambda >= 0`.
pub fn in_convex_hull(q: &Point, points: &[Point]) -> bool {
    let n = q.len();
    let m = points.len();
    if m == 0 {
        return false;
    }
    let rows = n + 1;
    let cols = m + rows; // lambdas then artificials

    // tableau with nonnegative right-hand sides
    let mut t = vec![vec![Rat::zero(); cols]; rows];
    let mut rhs = vec![Rat::zero(); rows];
    for (r, row) in t.iter_mut().enumerate() {
        for (j, p) in points.iter().enumerate() {
            row[j] = if r < n { p.coord(r).clone() } else { Rat::one() };
        }
        rhs[r] = if r < n { q.coord(r).clone() } else { Rat::one() };
        if rhs[r].is_negative() {
            for v in row.iter_mut() {
                *v = -&*v;
            }
            rhs[r] = -&rhs[r];
        }
        row[m + r] = Rat::one();
    }
    let mut basis: Vec<usize> = (m..cols).collect();

    // minimize the sum of artificials with Bland's rule
    loop {
        // reduced costs: c_j - sum over rows of c_basis * t[r][j]
        let mut entering = None;
        for j in 0..cols {
            let c_j = if j < m { Rat::zero() } else { Rat::one() };
            let mut z = Rat::zero();
            for (row, &b) in t.iter().zip(basis.iter()) {
                if b >= m {
                    z += &row[j];
                }
            }
            if c_j - z < Rat::zero() {
                entering = Some(j);
                break;
            }
        }
        let Some(j) = entering else { break };

        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for r in 0..rows {
            if !t[r][j].is_positive() {
                continue;
            }
            let ratio = &rhs[r] / &t[r][j];
            let better = match &best {
                None => true,
                Some(b) => ratio < *b || (ratio == *b && basis[r] < basis[leave.unwrap()]),
            };
            if better {
                best = Some(ratio);
                leave = Some(r);
            }
        }
        let Some(r) = leave else {
            // the phase-one objective is bounded below; an unbounded column
            // cannot occur
            return false;
        };

        let pivot = t[r][j].clone();
        for v in t[r].iter_mut() {
            *v = &*v / &pivot;
        }
        rhs[r] = &rhs[r] / &pivot;
        let pivot_row = t[r].clone();
        for rr in 0..rows {
            if rr == r || t[rr][j].is_zero() {
                continue;
            }
            let factor = t[rr][j].clone();
            for (cell, pc) in t[rr].iter_mut().zip(pivot_row.iter()) {
                *cell = &*cell - &factor * pc;
            }
            rhs[rr] = &rhs[rr] - &factor * &rhs[r];
        }
        basis[r] = j;
    }

    let artificial_mass: Rat = (0..rows)
        .filter(|&r| basis[r] >= m)
        .map(|r| rhs[r].clone())
        .sum();
    artificial_mass.is_zero()
}
