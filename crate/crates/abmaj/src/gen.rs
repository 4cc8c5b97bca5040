//! Random instance generation for tests and cross-validation suites.
//!
//! Submodular tables are sampled as integer noise and repaired layer by
//! layer with the local exchange condition; bisubmodular tables are built
//! from known-valid atoms (concave functions of the pair size, boxes, and
//! modular shifts), optionally perturbed, and rejection-checked.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::ground::{GroundSet, Mask};
use crate::polyhedra::Point;
use crate::rat::Rat;
use crate::setfn::{BisetFunction, Kind, SetFunction};
use crate::Result;

/// A random integral submodular function with values in `[-range, range]`
/// before repair. The repair pass lowers values of larger sets until every
/// exchange inequality holds, so the result is always submodular.
pub fn random_submodular<R: Rng>(rng: &mut R, n: usize, range: i64) -> Result<SetFunction> {
    let g = GroundSet::new(n)?;
    let size = 1usize << n;
    let mut vals: Vec<i64> = (0..size).map(|_| rng.gen_range(-range..=range)).collect();
    vals[0] = 0;
    // repair by increasing cardinality: lower f(C) until
    // f(C \ i) + f(C \ j) >= f(C) + f(C \ i \ j) for all {i, j} in C
    let mut by_card: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for m in 1..size as u32 {
        by_card[m.count_ones() as usize].push(m);
    }
    for layer in by_card.iter().skip(2) {
        for &m in layer {
            let c = Mask(m);
            let members: Vec<usize> = c.iter().collect();
            let mut cap = i64::MAX;
            for (pi, &i) in members.iter().enumerate() {
                for &j in members.iter().skip(pi + 1) {
                    let bound = vals[c.without(i).0 as usize] + vals[c.without(j).0 as usize]
                        - vals[c.without(i).without(j).0 as usize];
                    cap = cap.min(bound);
                }
            }
            vals[m as usize] = vals[m as usize].min(cap);
        }
    }
    let f = SetFunction::new(g, Kind::Submodular, vals.into_iter().map(Rat::from_int).collect())?;
    debug_assert!(f.is_submodular());
    Ok(f)
}

/// A random integral supermodular function (the negated repaired table).
pub fn random_supermodular<R: Rng>(rng: &mut R, n: usize, range: i64) -> Result<SetFunction> {
    let f = random_submodular(rng, n, range)?;
    let g = GroundSet::new(n)?;
    SetFunction::new(
        g,
        Kind::Supermodular,
        f.values().iter().map(|v| -v).collect(),
    )
}

/// A random integral vector with entries in `[-range, range]`.
pub fn random_integral_point<R: Rng>(rng: &mut R, n: usize, range: i64) -> Point {
    Point::new((0..n).map(|_| Rat::from_int(rng.gen_range(-range..=range))).collect())
}

/// A random integral bisubmodular function on `n <= 3` elements, produced by
/// rejection sampling around sums of valid atoms.
pub fn random_bisubmodular<R: Rng>(rng: &mut R, n: usize) -> Result<BisetFunction> {
    let g = GroundSet::new(n)?;
    for _ in 0..200 {
        let mut h = atom_sum(rng, g)?;
        if rng.gen_bool(0.5) {
            perturb(rng, &mut h, g)?;
        }
        if matches!(h.check_bisubmodular(true), Ok(Ok(()))) {
            return Ok(h);
        }
    }
    // perturbation kept failing; an unperturbed atom sum is always valid
    atom_sum(rng, g)
}

fn atom_sum<R: Rng>(rng: &mut R, g: GroundSet) -> Result<BisetFunction> {
    let n = g.n();
    let atoms = rng.gen_range(1..=3);
    let mut tables: Vec<BisetFunction> = Vec::new();
    for _ in 0..atoms {
        let table = match rng.gen_range(0..3) {
            0 => {
                // concave nondecreasing function of |S| + |T|
                let mut steps: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
                steps.sort_unstable_by(|a, b| b.cmp(a));
                let mut levels = vec![0i64; n + 1];
                for k in 1..=n {
                    levels[k] = levels[k - 1] + steps[k - 1];
                }
                BisetFunction::from_fn(g, |u| {
                    Rat::from_int(levels[u.support().card() as usize])
                })?
            }
            1 => {
                // box [l, u]
                let mut lo = vec![0i64; n];
                let mut hi = vec![0i64; n];
                for i in 0..n {
                    let a = rng.gen_range(-3..=3);
                    let b = rng.gen_range(-3..=3);
                    lo[i] = a.min(b);
                    hi[i] = a.max(b);
                }
                BisetFunction::from_fn(g, |u| {
                    let up: i64 = u.pos().iter().map(|i| hi[i]).sum();
                    let dn: i64 = u.neg().iter().map(|i| lo[i]).sum();
                    Rat::from_int(up - dn)
                })?
            }
            _ => {
                // modular shift by w (a single translated point)
                let w: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
                BisetFunction::from_fn(g, |u| {
                    let up: i64 = u.pos().iter().map(|i| w[i]).sum();
                    let dn: i64 = u.neg().iter().map(|i| w[i]).sum();
                    Rat::from_int(up - dn)
                })?
            }
        };
        tables.push(table);
    }
    BisetFunction::from_fn(g, |u| tables.iter().map(|t| t.value(u)).sum())
}

fn perturb<R: Rng>(rng: &mut R, h: &mut BisetFunction, g: GroundSet) -> Result<()> {
    let all = crate::ground::enumerate_bisets(g)?;
    let hits = rng.gen_range(1..=2);
    let mut values: Vec<Rat> = all.iter().map(|u| h.value(u).clone()).collect();
    for _ in 0..hits {
        let k = rng.gen_range(1..all.len());
        let delta = if rng.gen_bool(0.5) { 1 } else { -1 };
        values[k] = &values[k] + Rat::from_int(delta);
    }
    *h = BisetFunction::from_fn(g, |u| {
        values[all.iter().position(|v| v == u).unwrap()].clone()
    })?;
    Ok(())
}
