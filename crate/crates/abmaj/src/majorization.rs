//! Majorization orders: the four classical variants via sorted partial
//! sums, and their (a,b)-scaled generalizations via exact piecewise-linear
//! breakpoint tests.
//!
//! A comparison `x < y` in one of these orders says that `x` has a better
//! objective value than `y` for every separable convex objective of the
//! matching monotonicity class; deciding it reduces to finitely many
//! evaluations of max-functions at the kinks induced by the data.

use alloc::vec::Vec;

use crate::polyhedra::Point;
use crate::rat::Rat;
use crate::{Error, Result};

/// Which family of test objectives defines the order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// All continuous convex objectives; requires equal element sums.
    Full,
    /// Non-decreasing convex objectives (weak submajorization).
    WeakSub,
    /// Non-increasing convex objectives (weak supermajorization).
    WeakSuper,
    /// Even convex objectives (weak absolute majorization).
    WeakAbs,
}

/// A strictly positive scaling vector and a shift vector; the parameters of
/// (a,b)-majorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingShift {
    a: Point,
    b: Point,
}

impl ScalingShift {
    pub fn new(a: Point, b: Point) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch { expected: a.len(), got: b.len() });
        }
        if !a.iter().all(Rat::is_positive) {
            return Err(Error::ScalingNotPositive);
        }
        Ok(ScalingShift { a, b })
    }

    /// `a = 1`, `b = 0`: the classical orders.
    pub fn unit(n: usize) -> Self {
        ScalingShift {
            a: Point::new(core::iter::repeat_n(Rat::one(), n).collect()),
            b: Point::zeros(n),
        }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &Point {
        &self.a
    }

    pub fn b(&self) -> &Point {
        &self.b
    }

    pub fn is_unit_scaling(&self) -> bool {
        self.a.iter().all(|v| *v == Rat::one())
    }

    /// The transformed coordinates `z_i / a_i + b_i`.
    pub fn transform(&self, z: &Point) -> Vec<Rat> {
        (0..self.n())
            .map(|i| z.coord(i) / self.a.coord(i) + self.b.coord(i))
            .collect()
    }
}

fn sorted_desc(vals: &[Rat]) -> Vec<Rat> {
    let mut v = vals.to_vec();
    v.sort_by(|a, b| b.cmp(a));
    v
}

fn prefix_dominated(x_desc: &[Rat], y_desc: &[Rat]) -> bool {
    let mut px = Rat::zero();
    let mut py = Rat::zero();
    for (a, b) in x_desc.iter().zip(y_desc.iter()) {
        px += a;
        py += b;
        if px > py {
            return false;
        }
    }
    true
}

/// The classical orders, decided by sorted prefix sums.
pub fn classical_compare(x: &Point, y: &Point, order: Order) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { expected: x.len(), got: y.len() });
    }
    let ok = match order {
        Order::WeakSub => prefix_dominated(&sorted_desc(x.coords()), &sorted_desc(y.coords())),
        Order::WeakSuper => {
            // ascending prefix sums of x dominate those of y; equivalently
            // the descending prefixes of -x are dominated by those of -y
            let nx: Vec<Rat> = x.iter().map(|v| -v).collect();
            let ny: Vec<Rat> = y.iter().map(|v| -v).collect();
            prefix_dominated(&sorted_desc(&nx), &sorted_desc(&ny))
        }
        Order::Full => {
            x.total() == y.total()
                && prefix_dominated(&sorted_desc(x.coords()), &sorted_desc(y.coords()))
        }
        Order::WeakAbs => {
            let ax: Vec<Rat> = x.iter().map(Rat::abs).collect();
            let ay: Vec<Rat> = y.iter().map(Rat::abs).collect();
            prefix_dominated(&sorted_desc(&ax), &sorted_desc(&ay))
        }
    };
    Ok(ok)
}

// sum of a_i * max(0, alpha + t_i)
fn eval_sub(a: &Point, t: &[Rat], alpha: &Rat) -> Rat {
    t.iter()
        .enumerate()
        .map(|(i, ti)| {
            let v = alpha + ti;
            if v.is_positive() {
                a.coord(i) * v
            } else {
                Rat::zero()
            }
        })
        .sum()
}

// sum of a_i * max(0, alpha - t_i)
fn eval_super(a: &Point, t: &[Rat], alpha: &Rat) -> Rat {
    t.iter()
        .enumerate()
        .map(|(i, ti)| {
            let v = alpha - ti;
            if v.is_positive() {
                a.coord(i) * v
            } else {
                Rat::zero()
            }
        })
        .sum()
}

// sum of a_i * max(alpha - t_i, 0, alpha + t_i)
fn eval_abs(a: &Point, t: &[Rat], alpha: &Rat) -> Rat {
    t.iter()
        .enumerate()
        .map(|(i, ti)| {
            let lo = alpha - ti;
            let hi = alpha + ti;
            let v = lo.max(hi).max(Rat::zero());
            a.coord(i) * v
        })
        .sum()
}

fn breakpoint_check<F>(a: &Point, tx: &[Rat], ty: &[Rat], breakpoints: Vec<Rat>, eval: F) -> bool
where
    F: Fn(&Point, &[Rat], &Rat) -> Rat,
{
    // both sides are piecewise linear in alpha with equal slopes beyond the
    // extreme kinks, so the difference is nonpositive everywhere iff it is
    // nonpositive at every kink
    breakpoints
        .iter()
        .all(|alpha| eval(a, tx, alpha) <= eval(a, ty, alpha))
}

/// The (a,b)-scaled orders, decided by the finite breakpoint test.
pub fn ab_compare(x: &Point, y: &Point, ab: &ScalingShift, order: Order) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { expected: x.len(), got: y.len() });
    }
    if x.len() != ab.n() {
        return Err(Error::DimensionMismatch { expected: ab.n(), got: x.len() });
    }
    let tx = ab.transform(x);
    let ty = ab.transform(y);
    let ok = match order {
        Order::WeakSub => {
            let bps: Vec<Rat> = tx.iter().chain(ty.iter()).map(|t| -t).collect();
            breakpoint_check(&ab.a, &tx, &ty, bps, eval_sub)
        }
        Order::WeakSuper => {
            let bps: Vec<Rat> = tx.iter().chain(ty.iter()).cloned().collect();
            breakpoint_check(&ab.a, &tx, &ty, bps, eval_super)
        }
        Order::WeakAbs => {
            // two kinks per data value
            let bps: Vec<Rat> = tx
                .iter()
                .chain(ty.iter())
                .flat_map(|t| [t.clone(), -t])
                .collect();
            breakpoint_check(&ab.a, &tx, &ty, bps, eval_abs)
        }
        Order::Full => {
            ab_compare(x, y, ab, Order::WeakSub)? && ab_compare(x, y, ab, Order::WeakSuper)?
        }
    };
    Ok(ok)
}

/// Checks that `x_star` is below every candidate in the requested order.
/// Returns the index of a counterexample, or `None` when `x_star` is a
/// least element. `x_star` must itself be among the candidates.
pub fn is_least_element(
    x_star: &Point,
    candidates: &[Point],
    ab: &ScalingShift,
    order: Order,
) -> Result<Option<usize>> {
    if !candidates.contains(x_star) {
        return Err(Error::NotInCandidates);
    }
    for (k, y) in candidates.iter().enumerate() {
        if !ab_compare(x_star, y, ab, order)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Finds any least element of a finite candidate list by pairwise
/// comparison.
pub fn find_least_element(
    candidates: &[Point],
    ab: &ScalingShift,
    order: Order,
) -> Result<Option<usize>> {
    'outer: for (k, x) in candidates.iter().enumerate() {
        for y in candidates.iter() {
            if !ab_compare(x, y, ab, order)? {
                continue 'outer;
            }
        }
        return Ok(Some(k));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::{Rng, SeedableRng};

    fn pt(v: &[i64]) -> Point {
        Point::from_ints(v)
    }

    #[test]
    fn classical_examples() {
        assert!(classical_compare(&pt(&[1, 1]), &pt(&[0, 2]), Order::Full).unwrap());
        assert!(classical_compare(&pt(&[0, 0]), &pt(&[-1, 2]), Order::WeakAbs).unwrap());
        assert!(!classical_compare(&pt(&[1, 2]), &pt(&[2, 2]), Order::Full).unwrap());
        assert!(classical_compare(&pt(&[1, 2]), &pt(&[2, 2]), Order::WeakSub).unwrap());
    }

    #[test]
    fn ab_examples() {
        let unit = ScalingShift::unit(2);
        assert!(ab_compare(&pt(&[-1, 1]), &pt(&[-2, 2]), &unit, Order::Full).unwrap());

        // b = (-1,-1): the sums of x + b and y + b differ, so full fails in
        // both directions; the componentwise-larger vector is the one that
        // is weakly supermajorized by the other
        let ab = ScalingShift::new(
            Point::from_ints(&[1, 1]),
            Point::from_ints(&[-1, -1]),
        )
        .unwrap();
        assert!(!ab_compare(&pt(&[0, 0]), &pt(&[1, 1]), &ab, Order::Full).unwrap());
        assert!(!ab_compare(&pt(&[0, 0]), &pt(&[1, 1]), &ab, Order::WeakSuper).unwrap());
        assert!(ab_compare(&pt(&[1, 1]), &pt(&[0, 0]), &ab, Order::WeakSuper).unwrap());
    }

    #[test]
    fn unit_scaling_matches_classical_exhaustively() {
        // all integral vectors with entries in [-3, 3], n <= 3
        for n in 1..=3usize {
            let unit = ScalingShift::unit(n);
            let mut vecs: Vec<Vec<i64>> = vec![vec![]];
            for _ in 0..n {
                vecs = vecs
                    .into_iter()
                    .flat_map(|v| {
                        (-3..=3).map(move |c| {
                            let mut w = v.clone();
                            w.push(c);
                            w
                        })
                    })
                    .collect();
            }
            let pts: Vec<Point> = vecs.iter().map(|v| pt(v)).collect();
            for x in pts.iter() {
                for y in pts.iter() {
                    for order in [Order::Full, Order::WeakSub, Order::WeakSuper, Order::WeakAbs] {
                        assert_eq!(
                            classical_compare(x, y, order).unwrap(),
                            ab_compare(x, y, &unit, order).unwrap(),
                            "{x} vs {y} {order:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn breakpoint_verdict_matches_random_alpha_probes() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..30 {
            let n = rng.gen_range(1..=4);
            let x = crate::gen::random_integral_point(&mut rng, n, 6);
            let y = crate::gen::random_integral_point(&mut rng, n, 6);
            let a = Point::new((0..n).map(|_| Rat::from_int(rng.gen_range(1..=4))).collect());
            let b = crate::gen::random_integral_point(&mut rng, n, 3);
            let ab = ScalingShift::new(a, b).unwrap();
            let tx = ab.transform(&x);
            let ty = ab.transform(&y);
            for (order, eval) in [
                (Order::WeakSub, eval_sub as fn(&Point, &[Rat], &Rat) -> Rat),
                (Order::WeakSuper, eval_super),
                (Order::WeakAbs, eval_abs),
            ] {
                let verdict = ab_compare(&x, &y, &ab, order).unwrap();
                let mut sampled_ok = true;
                for _ in 0..1000 {
                    let alpha = Rat::ratio(rng.gen_range(-2000..=2000), rng.gen_range(1..=40));
                    if eval(ab.a(), &tx, &alpha) > eval(ab.a(), &ty, &alpha) {
                        sampled_ok = false;
                        break;
                    }
                }
                // sampling can only refute, never prove
                if verdict {
                    assert!(sampled_ok, "{x} vs {y} {order:?}");
                }
            }
        }
    }

    #[test]
    fn reflexive_and_transitive() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(43);
        let orders = [Order::Full, Order::WeakSub, Order::WeakSuper, Order::WeakAbs];
        for _ in 0..60 {
            let n = rng.gen_range(1..=4);
            let a = Point::new((0..n).map(|_| Rat::from_int(rng.gen_range(1..=3))).collect());
            let b = crate::gen::random_integral_point(&mut rng, n, 2);
            let ab = ScalingShift::new(a, b).unwrap();
            let x = crate::gen::random_integral_point(&mut rng, n, 3);
            let y = crate::gen::random_integral_point(&mut rng, n, 3);
            let z = crate::gen::random_integral_point(&mut rng, n, 3);
            for order in orders {
                assert!(ab_compare(&x, &x, &ab, order).unwrap());
                if ab_compare(&x, &y, &ab, order).unwrap()
                    && ab_compare(&y, &z, &ab, order).unwrap()
                {
                    assert!(ab_compare(&x, &z, &ab, order).unwrap());
                }
            }
        }
    }

    #[test]
    fn permutation_invariance_of_classical_orders() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(47);
        for _ in 0..40 {
            let n = rng.gen_range(2..=4);
            let x = crate::gen::random_integral_point(&mut rng, n, 5);
            let y = crate::gen::random_integral_point(&mut rng, n, 5);
            let perms = crate::ground::all_permutations(n);
            let p = &perms[rng.gen_range(0..perms.len())];
            let q = &perms[rng.gen_range(0..perms.len())];
            let px = Point::new((0..n).map(|k| x.coord(p.at(k)).clone()).collect());
            let qy = Point::new((0..n).map(|k| y.coord(q.at(k)).clone()).collect());
            for order in [Order::Full, Order::WeakSub, Order::WeakSuper, Order::WeakAbs] {
                assert_eq!(
                    classical_compare(&x, &y, order).unwrap(),
                    classical_compare(&px, &qy, order).unwrap()
                );
            }
        }
    }

    #[test]
    fn componentwise_larger_is_supermajorized_smaller() {
        // x <= y pointwise makes y weakly (a,b)-supermajorized by x
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(53);
        for _ in 0..40 {
            let n = rng.gen_range(1..=4);
            let a = Point::new((0..n).map(|_| Rat::from_int(rng.gen_range(1..=3))).collect());
            let b = crate::gen::random_integral_point(&mut rng, n, 3);
            let ab = ScalingShift::new(a, b).unwrap();
            let x = crate::gen::random_integral_point(&mut rng, n, 4);
            let bump = Point::new((0..n).map(|_| Rat::from_int(rng.gen_range(0..=3))).collect());
            let y = x.add(&bump);
            assert!(ab_compare(&y, &x, &ab, Order::WeakSuper).unwrap());
        }
    }

    #[test]
    fn least_element_examples() {
        let unit = ScalingShift::unit(2);
        let candidates = vec![pt(&[-1, 1]), pt(&[-2, 2])];
        assert_eq!(
            is_least_element(&pt(&[-1, 1]), &candidates, &unit, Order::Full).unwrap(),
            None
        );

        let unequal = vec![pt(&[0, 0]), pt(&[1, 1])];
        assert_eq!(
            is_least_element(&pt(&[0, 0]), &unequal, &unit, Order::Full).unwrap(),
            Some(1)
        );

        let only = vec![pt(&[3, 4])];
        assert_eq!(
            is_least_element(&pt(&[3, 4]), &only, &unit, Order::Full).unwrap(),
            None
        );

        assert_eq!(
            is_least_element(&pt(&[9, 9]), &only, &unit, Order::Full).unwrap_err(),
            Error::NotInCandidates
        );
    }
}
