//! Conditional-gradient minimization of a separable quadratic over a base
//! or bisubmodular polyhedron, with the greedy rule as the linear oracle
//! and away steps over the discovered vertex set.
//!
//! The iterate is an exact convex combination of vertices. The loop stops
//! at the rational duality-gap tolerance or, usually much earlier, when
//! projecting onto the constraints shared by the whole support (or within
//! a slack ladder of the iterate) yields a point whose exact duality gap
//! is zero.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::majorization::ScalingShift;
use crate::polyhedra::{Point, Polyhedron};
use crate::rat::Rat;
use crate::{Error, Result};

/// `Q(x) = sum_i (x_i^2 / (2 a_i) + b_i x_i)`, the quadratic representative
/// of the (a,b)-scaled objective class.
#[derive(Clone, Debug)]
pub struct Quadratic {
    a: Vec<Rat>,
    b: Vec<Rat>,
}

impl Quadratic {
    pub fn from_scaling(ab: &ScalingShift) -> Self {
        Quadratic { a: ab.a().coords().to_vec(), b: ab.b().coords().to_vec() }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn value(&self, x: &Point) -> Rat {
        (0..self.n())
            .map(|i| {
                let xi = x.coord(i);
                xi * xi / (Rat::from_int(2) * &self.a[i]) + &self.b[i] * xi
            })
            .sum()
    }

    pub fn gradient(&self, x: &Point) -> Point {
        Point::new((0..self.n()).map(|i| x.coord(i) / &self.a[i] + &self.b[i]).collect())
    }
}

#[derive(Clone, Debug)]
pub struct FwOptions {
    /// Stop once the exact duality gap is at most this.
    pub tol: Rat,
    pub max_iter: usize,
    /// Weights are re-floored to multiples of `2^-grid_bits` periodically
    /// to keep denominators bounded.
    pub grid_bits: u32,
    /// Attempt the exact face projection every this many iterations.
    pub refine_every: usize,
}

impl Default for FwOptions {
    fn default() -> Self {
        FwOptions {
            tol: Rat::ratio(1, 1_000_000_000),
            max_iter: 2000,
            grid_bits: 64,
            refine_every: 4,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FwOutcome {
    pub point: Point,
    pub iterations: usize,
    /// Whether the returned point carries an exact gap-zero certificate.
    pub certified: bool,
    pub gap: Rat,
}

/// Minimizes `obj` over a base or bisubmodular polyhedron.
pub fn minimize(poly: &Polyhedron, obj: &Quadratic, opts: &FwOptions) -> Result<FwOutcome> {
    let n = poly.n();
    if obj.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: obj.n() });
    }
    let v0 = poly.linear_maximize(&Point::zeros(n))?;
    if !poly.is_member(&v0)? {
        // the greedy vertex of a valid table is always a member; a violation
        // means the source was not (bi)submodular and the set may be empty
        return Err(Error::EmptyPolyhedron);
    }
    let mut verts: Vec<Point> = vec![v0.clone()];
    let mut weights: Vec<Rat> = vec![Rat::one()];
    let mut x = v0;

    for it in 0..opts.max_iter {
        let g = obj.gradient(&x);
        let v = poly.linear_maximize(&g.neg())?;
        let gap = g.dot(&x) - g.dot(&v);
        if !gap.is_positive() {
            return Ok(FwOutcome { point: x, iterations: it, certified: true, gap });
        }
        if it < 64 || it % opts.refine_every == 0 || gap <= opts.tol {
            if let Some(opt) = refine_ladder(poly, obj, &x, &verts, &opts.tol) {
                return Ok(FwOutcome { point: opt, iterations: it, certified: true, gap: Rat::zero() });
            }
        }
        if gap <= opts.tol {
            return Ok(FwOutcome { point: x, iterations: it, certified: false, gap });
        }

        // away candidate: the worst vertex currently carrying weight
        let away = (0..verts.len())
            .max_by(|&i, &j| g.dot(&verts[i]).cmp(&g.dot(&verts[j])))
            .expect("support is nonempty");
        let away_gap = g.dot(&verts[away]) - g.dot(&x);

        let (d, gamma_max, toward) = if gap >= away_gap || verts.len() == 1 {
            (v.sub(&x), Rat::one(), true)
        } else {
            let lu = &weights[away];
            (x.sub(&verts[away]), lu / (Rat::one() - lu), false)
        };
        let den: Rat = (0..n).map(|i| d.coord(i) * d.coord(i) / &obj.a[i]).sum();
        if !den.is_positive() {
            // a zero direction cannot occur while some gap is positive
            return Ok(FwOutcome { point: x, iterations: it, certified: false, gap });
        }
        let slope = -g.dot(&d); // positive for a descent direction
        let gamma = (&slope / &den).min(gamma_max);
        if !gamma.is_positive() {
            if let Some(opt) = refine_ladder(poly, obj, &x, &verts, &opts.tol) {
                return Ok(FwOutcome { point: opt, iterations: it, certified: true, gap: Rat::zero() });
            }
            return Ok(FwOutcome { point: x, iterations: it, certified: false, gap });
        }

        if toward {
            let keep = Rat::one() - &gamma;
            for w in weights.iter_mut() {
                *w = &*w * &keep;
            }
            match verts.iter().position(|u| *u == v) {
                Some(k) => weights[k] = &weights[k] + &gamma,
                None => {
                    verts.push(v);
                    weights.push(gamma.clone());
                }
            }
        } else {
            let grow = Rat::one() + &gamma;
            for w in weights.iter_mut() {
                *w = &*w * &grow;
            }
            weights[away] = &weights[away] - &gamma;
        }

        // prune dropped vertices, bound denominators, rebuild the iterate
        regrid(&mut weights, opts.grid_bits);
        let mut kept_v = Vec::with_capacity(verts.len());
        let mut kept_w = Vec::with_capacity(weights.len());
        for (u, w) in verts.drain(..).zip(weights.drain(..)) {
            if w.is_positive() {
                kept_v.push(u);
                kept_w.push(w);
            }
        }
        verts = kept_v;
        weights = kept_w;
        x = Point::zeros(n);
        for (u, w) in verts.iter().zip(weights.iter()) {
            x = x.add(&u.scale(w));
        }
    }

    let final_gap = {
        let g = obj.gradient(&x);
        let v = poly.linear_maximize(&g.neg())?;
        g.dot(&x) - g.dot(&v)
    };
    if let Some(opt) = refine_ladder(poly, obj, &x, &verts, &opts.tol) {
        return Ok(FwOutcome { point: opt, iterations: opts.max_iter, certified: true, gap: Rat::zero() });
    }
    Ok(FwOutcome { point: x, iterations: opts.max_iter, certified: false, gap: final_gap })
}

fn regrid(weights: &mut [Rat], bits: u32) {
    let scale = Rat::from_bigint(BigInt::one() << (bits as usize));
    let mut total = Rat::zero();
    for w in weights.iter_mut() {
        *w = Rat::from_bigint((&*w * &scale).floor()) / &scale;
        total += &*w;
    }
    let deficit = Rat::one() - total;
    let top = (0..weights.len())
        .max_by(|&i, &j| weights[i].cmp(&weights[j]))
        .expect("support is nonempty");
    weights[top] = &weights[top] + deficit;
}

fn refine_ladder(
    poly: &Polyhedron,
    obj: &Quadratic,
    x: &Point,
    support: &[Point],
    tol: &Rat,
) -> Option<Point> {
    // constraints tight across the whole support pin the candidate optimal
    // face exactly, with no slack threshold to tune
    if let Some(p) = refine_with_rows(poly, obj, common_tight_rows(poly, support)) {
        return Some(p);
    }
    let ladder = [
        Rat::zero(),
        tol.clone(),
        Rat::ratio(1, 1_000_000),
        Rat::ratio(1, 10_000),
        Rat::ratio(1, 100),
    ];
    for delta in ladder {
        if let Some(p) = refine_with_rows(poly, obj, near_tight_rows(poly, x, &delta)) {
            return Some(p);
        }
    }
    None
}

/// Projects onto the affine hull of the given rows and certifies the result
/// by an exact zero duality gap.
fn refine_with_rows(
    poly: &Polyhedron,
    obj: &Quadratic,
    rows: Vec<(Vec<Rat>, Rat)>,
) -> Option<Point> {
    let n = poly.n();
    let rows = row_basis(rows)?;
    let m = rows.len();

    // KKT system: D x - M^T mu = -b ; M x = r
    let dim = n + m;
    let mut mat = vec![vec![Rat::zero(); dim]; dim];
    let mut rhs = vec![Rat::zero(); dim];
    for i in 0..n {
        mat[i][i] = obj.a[i].recip();
        for (j, (coeff, _)) in rows.iter().enumerate() {
            mat[i][n + j] = -&coeff[i];
        }
        rhs[i] = -&obj.b[i];
    }
    for (j, (coeff, r)) in rows.iter().enumerate() {
        mat[n + j][..n].clone_from_slice(coeff);
        rhs[n + j] = r.clone();
    }
    let sol = solve_linear(mat, rhs)?;
    let cand = Point::new(sol[..n].to_vec());
    if !poly.is_member(&cand).ok()? {
        return None;
    }
    let g = obj.gradient(&cand);
    let v = poly.linear_maximize(&g.neg()).ok()?;
    let gap = g.dot(&cand) - g.dot(&v);
    if gap.is_positive() {
        return None;
    }
    Some(cand)
}

fn near_tight_rows(poly: &Polyhedron, x: &Point, delta: &Rat) -> Vec<(Vec<Rat>, Rat)> {
    let n = poly.n();
    let mut out = Vec::new();
    match poly {
        Polyhedron::Base(f) => {
            for a in f.ground().subsets() {
                if a.is_empty() {
                    continue;
                }
                let rhs = f.value(a);
                if rhs - x.sum_over(a) <= *delta {
                    let coeff = (0..n)
                        .map(|i| if a.contains(i) { Rat::one() } else { Rat::zero() })
                        .collect();
                    out.push((coeff, rhs.clone()));
                }
            }
        }
        Polyhedron::Bisub(h) => {
            for u in h.bisets() {
                if u.is_empty() {
                    continue;
                }
                let rhs = h.value(&u);
                if rhs - x.signed_sum(&u) <= *delta {
                    let coeff = (0..n).map(|i| Rat::from_int(u.sign_of(i) as i64)).collect();
                    out.push((coeff, rhs.clone()));
                }
            }
        }
        _ => {}
    }
    out
}

fn common_tight_rows(poly: &Polyhedron, support: &[Point]) -> Vec<(Vec<Rat>, Rat)> {
    let n = poly.n();
    let mut out = Vec::new();
    match poly {
        Polyhedron::Base(f) => {
            for a in f.ground().subsets() {
                if a.is_empty() {
                    continue;
                }
                let rhs = f.value(a);
                if support.iter().all(|v| v.sum_over(a) == *rhs) {
                    let coeff = (0..n)
                        .map(|i| if a.contains(i) { Rat::one() } else { Rat::zero() })
                        .collect();
                    out.push((coeff, rhs.clone()));
                }
            }
        }
        Polyhedron::Bisub(h) => {
            for u in h.bisets() {
                if u.is_empty() {
                    continue;
                }
                let rhs = h.value(&u);
                if support.iter().all(|v| v.signed_sum(&u) == *rhs) {
                    let coeff = (0..n).map(|i| Rat::from_int(u.sign_of(i) as i64)).collect();
                    out.push((coeff, rhs.clone()));
                }
            }
        }
        _ => {}
    }
    out
}

/// Reduces rows to an independent subset; `None` when a dependent row is
/// inconsistent with the others.
fn row_basis(rows: Vec<(Vec<Rat>, Rat)>) -> Option<Vec<(Vec<Rat>, Rat)>> {
    let mut basis: Vec<(Vec<Rat>, Rat)> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for (coeff, rhs) in rows {
        let mut c = coeff;
        let mut r = rhs;
        for (b, &p) in basis.iter().zip(pivots.iter()) {
            if c[p].is_zero() {
                continue;
            }
            let factor = c[p].clone();
            for (ck, bk) in c.iter_mut().zip(b.0.iter()) {
                *ck = &*ck - &factor * bk;
            }
            r -= factor * &b.1;
        }
        match c.iter().position(|v| !v.is_zero()) {
            Some(p) => {
                let lead = c[p].clone();
                for v in c.iter_mut() {
                    *v = &*v / &lead;
                }
                r = r / lead;
                basis.push((c, r));
                pivots.push(p);
            }
            None => {
                if !r.is_zero() {
                    return None;
                }
            }
        }
    }
    Some(basis)
}

/// Gauss-Jordan solve of a square rational system; `None` when singular.
fn solve_linear(mut m: Vec<Vec<Rat>>, mut rhs: Vec<Rat>) -> Option<Vec<Rat>> {
    let dim = m.len();
    for col in 0..dim {
        let pivot = (col..dim).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let lead = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v = &*v / &lead;
        }
        rhs[col] = &rhs[col] / &lead;
        for r in 0..dim {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            let pivot_row = m[col].clone();
            for (mc, pc) in m[r].iter_mut().zip(pivot_row.iter()) {
                *mc = &*mc - &factor * pc;
            }
            rhs[r] = &rhs[r] - &factor * &rhs[col];
        }
    }
    Some(rhs)
}
