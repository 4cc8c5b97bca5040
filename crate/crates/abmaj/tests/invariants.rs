//! Cross-module invariants: the recognition procedures, witness
//! constructions, and solvers must agree with independent recompositions of
//! the primitive operations on randomized instances.

use abmaj::characterize::{
    characterize, hole_free_check, induced_biset_function, induced_set_function,
    signed_prefix_property, witness_shift_signed, witness_shift_super, Extremum, Family, Induced,
    PointSet,
};
use abmaj::ground::{all_permutations, all_sign_vectors, GroundSet};
use abmaj::majorization::{find_least_element, is_least_element, Order, ScalingShift};
use abmaj::polyhedra::{greedy_vertex, signed_greedy_vertex, Point, Polyhedron};
use abmaj::rat::Rat;
use abmaj::{gen, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn unit_shift(b: &Point) -> ScalingShift {
    let ones = Point::new((0..b.len()).map(|_| Rat::one()).collect());
    ScalingShift::new(ones, b.clone()).unwrap()
}

/// Closes a point list under its own integral hull.
fn hull_close(mut pts: Vec<Point>, g: GroundSet) -> PointSet {
    loop {
        let c = PointSet::new(g, pts.clone()).unwrap();
        match hole_free_check(&c).unwrap() {
            Some(missing) => pts.push(missing),
            None => return c,
        }
    }
}

#[test]
fn witness_shift_super_certifies_nonexistence() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failing_perms = 0u32;
    for _ in 0..60 {
        let n = rng.gen_range(2..=3);
        let g = GroundSet::new(n).unwrap();
        let m = rng.gen_range(2..=5);
        let pts: Vec<Point> = (0..m).map(|_| gen::random_integral_point(&mut rng, n, 3)).collect();
        let c = PointSet::new(g, pts).unwrap();
        for pi in all_permutations(n) {
            if prefix_sums_attainable(&c, &pi) {
                continue;
            }
            failing_perms += 1;
            let b = witness_shift_super(&c, &pi).unwrap();
            let ab = unit_shift(&b);
            // no point of the set is a least weakly supermajorized element
            for x in c.points() {
                assert!(
                    is_least_element(x, c.points(), &ab, Order::WeakSuper)
                        .unwrap()
                        .is_some(),
                    "witness {b} failed to exclude {x}"
                );
            }
        }
    }
    assert!(failing_perms > 0, "the random families never exercised a failing permutation");
}

/// A simultaneous attainer of all prefix maxima exists iff filtering the
/// argmax sets level by level leaves a survivor.
fn prefix_sums_attainable(c: &PointSet, pi: &abmaj::ground::Permutation) -> bool {
    let n = c.n();
    let mut alive: Vec<&Point> = c.points().iter().collect();
    for k in 0..n {
        let best = c
            .points()
            .iter()
            .map(|p| (0..=k).map(|j| p.coord(pi.at(j)).clone()).sum::<Rat>())
            .max()
            .unwrap();
        alive.retain(|p| (0..=k).map(|j| p.coord(pi.at(j)).clone()).sum::<Rat>() == best);
        if alive.is_empty() {
            return false;
        }
    }
    true
}

#[test]
fn witness_shift_signed_certifies_nonexistence() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut failing_pairs = 0u32;
    for _ in 0..40 {
        let n = rng.gen_range(1..=3);
        let g = GroundSet::new(n).unwrap();
        let m = rng.gen_range(2..=4);
        let pts: Vec<Point> = (0..m).map(|_| gen::random_integral_point(&mut rng, n, 3)).collect();
        let c = PointSet::new(g, pts).unwrap();
        let Some((pi, s)) = signed_prefix_property(&c).unwrap() else {
            continue;
        };
        failing_pairs += 1;
        let b = witness_shift_signed(&c, &pi, &s).unwrap();
        let ab = unit_shift(&b);
        for x in c.points() {
            assert!(
                is_least_element(x, c.points(), &ab, Order::WeakAbs)
                    .unwrap()
                    .is_some(),
                "signed witness {b} failed to exclude {x}"
            );
        }
    }
    assert!(failing_pairs > 0);
}

#[test]
fn base_characterization_matches_witness_set_least_elements() {
    // over hole-free families: the base recognition holds iff a least
    // (1,b)-majorized element exists for every shift in the finite
    // proof-bearing witness set
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut holds_seen = 0u32;
    let mut fails_seen = 0u32;
    for _ in 0..50 {
        let n = rng.gen_range(1..=3);
        let g = GroundSet::new(n).unwrap();
        let m = rng.gen_range(1..=4);
        let pts: Vec<Point> = (0..m).map(|_| gen::random_integral_point(&mut rng, n, 2)).collect();
        let c = hull_close(pts, g);

        let report = characterize(&c, Family::Base, true).unwrap();

        let mut shifts: Vec<Point> = vec![Point::zeros(n)];
        for pi in all_permutations(n) {
            let w = witness_shift_super(&c, &pi).unwrap();
            shifts.push(w.neg());
            shifts.push(w);
        }
        let all_witnessed = shifts.iter().all(|b| {
            find_least_element(c.points(), &unit_shift(b), Order::Full)
                .unwrap()
                .is_some()
        });
        assert_eq!(report.holds, all_witnessed, "set {:?}", c.points());
        if report.holds {
            holds_seen += 1;
        } else {
            fails_seen += 1;
        }
    }
    assert!(holds_seen > 0 && fails_seen > 0, "{holds_seen} holds / {fails_seen} fails");
}

#[test]
fn perturbing_a_base_point_set_is_detected() {
    // removing or inserting points almost always breaks the recognition;
    // when it does not, the surviving set must itself pass an independent
    // recomposition of the definition
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut flips = 0u32;
    let mut survivals = 0u32;
    for _ in 0..25 {
        let n = rng.gen_range(2..=3);
        let f = gen::random_submodular(&mut rng, n, 4).unwrap();
        let base = Polyhedron::base(&f).unwrap();
        let pts = base.enumerate_integral_points(None).unwrap();
        if pts.len() < 2 {
            continue;
        }
        let g = f.ground();

        for drop in 0..pts.len() {
            let mut reduced = pts.clone();
            reduced.remove(drop);
            let c = PointSet::new(g, reduced).unwrap();
            let rep = characterize(&c, Family::Base, true).unwrap();
            assert_eq!(rep.holds, independently_a_base_set(&c), "{:?}", c.points());
            if rep.holds {
                survivals += 1;
            } else {
                flips += 1;
                assert!(!rep.failures.is_empty());
            }
        }

        // inject a same-dimension integral point outside P^Z(f)
        let sub = Polyhedron::submodular(&f).unwrap();
        for _ in 0..5 {
            let q = gen::random_integral_point(&mut rng, n, 6);
            if sub.is_member(&q).unwrap() {
                continue;
            }
            let mut extended = pts.clone();
            extended.push(q);
            let c = PointSet::new(g, extended).unwrap();
            let rep = characterize(&c, Family::Base, true).unwrap();
            assert_eq!(rep.holds, independently_a_base_set(&c), "{:?}", c.points());
            if !rep.holds {
                flips += 1;
                assert!(!rep.failures.is_empty());
            } else {
                survivals += 1;
            }
        }
    }
    assert!(flips > 10, "perturbations were never detected ({flips} flips, {survivals} survivals)");
}

fn independently_a_base_set(c: &PointSet) -> bool {
    // rebuild the definition from primitive operations only
    let f = induced_set_function(c, Extremum::Max).unwrap();
    if !f.is_submodular() {
        return false;
    }
    let base = Polyhedron::base(&f).unwrap();
    let members = base.enumerate_integral_points(None).unwrap();
    members.len() == c.len() && members.iter().all(|p| c.contains(p))
}

#[test]
fn bisubmodular_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..15 {
        let n = rng.gen_range(1..=3);
        let h = gen::random_bisubmodular(&mut rng, n).unwrap();
        let poly = Polyhedron::bisubmodular(&h);
        let pts = poly.enumerate_integral_points(None).unwrap();
        assert!(!pts.is_empty());
        let c = PointSet::new(h.ground(), pts).unwrap();
        let rep = characterize(&c, Family::Bisub, true).unwrap();
        assert!(rep.holds, "{:?}", rep.failures);
        let Induced::Biset(back) = &rep.induced else { panic!() };
        // the induced table matches the source on every pair
        for u in h.bisets() {
            assert_eq!(back.value(&u), h.value(&u), "{u}");
        }
    }
}

#[test]
fn tight_closure_at_random_member_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut checked = 0u32;
    for _ in 0..20 {
        let n = rng.gen_range(2..=4);
        let f = gen::random_submodular(&mut rng, n, 8).unwrap();
        let base = Polyhedron::base(&f).unwrap();
        let sub = Polyhedron::submodular(&f).unwrap();
        let perms = all_permutations(n);
        for _ in 0..10 {
            // a grid convex combination of two greedy vertices is a member
            let v1 = greedy_vertex(&f, &perms[rng.gen_range(0..perms.len())]);
            let v2 = greedy_vertex(&f, &perms[rng.gen_range(0..perms.len())]);
            let t = Rat::ratio(rng.gen_range(0..=16), 16);
            let x = v1.scale(&(Rat::one() - &t)).add(&v2.scale(&t));
            assert!(base.verify_tight_closure(&x).unwrap());

            // shifting down leaves the submodular polyhedron's members
            let down = Point::new(
                (0..n).map(|_| Rat::from_int(rng.gen_range(0..=3))).collect(),
            );
            let y = x.sub(&down);
            assert!(sub.verify_tight_closure(&y).unwrap());
            checked += 2;
        }
    }
    for _ in 0..10 {
        let h = gen::random_bisubmodular(&mut rng, 3).unwrap();
        let poly = Polyhedron::bisubmodular(&h);
        let perms = all_permutations(3);
        let signs = all_sign_vectors(3);
        for _ in 0..5 {
            let v1 = signed_greedy_vertex(
                &h,
                &perms[rng.gen_range(0..perms.len())],
                &signs[rng.gen_range(0..signs.len())],
            );
            let v2 = signed_greedy_vertex(
                &h,
                &perms[rng.gen_range(0..perms.len())],
                &signs[rng.gen_range(0..signs.len())],
            );
            let t = Rat::ratio(rng.gen_range(0..=16), 16);
            let x = v1.scale(&(Rat::one() - &t)).add(&v2.scale(&t));
            assert!(poly.verify_tight_closure(&x).unwrap());
            checked += 1;
        }
    }
    assert!(checked >= 400);
}

#[test]
fn weak_order_dispatch_agrees_with_enumeration() {
    // least_element(weak_super, P(f)) equals the base minimizer and beats
    // every integral point of P(f) within a box around the base
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..10 {
        let n = rng.gen_range(1..=3);
        let f = gen::random_submodular(&mut rng, n, 5).unwrap();
        let b = gen::random_integral_point(&mut rng, n, 3);
        let ab = unit_shift(&b);
        let req = abmaj::optimize::LeastElementRequest {
            polyhedron: Polyhedron::submodular(&f).unwrap(),
            ab: ab.clone(),
            order: Order::WeakSuper,
            integral: true,
        };
        let x = abmaj::optimize::least_element(&req).unwrap();
        assert_eq!(x, abmaj::optimize::min_quadratic_base_integral(&f, &b).unwrap());

        let base = Polyhedron::base(&f).unwrap();
        let base_pts = base.enumerate_integral_points(None).unwrap();
        let lo = (0..n)
            .map(|i| {
                base_pts.iter().map(|p| p.coord(i).clone()).min().unwrap() - Rat::from_int(2)
            })
            .collect::<Vec<_>>();
        let hi = (0..n)
            .map(|i| {
                base_pts.iter().map(|p| p.coord(i).clone()).max().unwrap() + Rat::from_int(2)
            })
            .collect::<Vec<_>>();
        let bx: Vec<(Rat, Rat)> = lo.into_iter().zip(hi).collect();
        let sub = Polyhedron::submodular(&f).unwrap();
        let mut pts = sub.enumerate_integral_points(Some(&bx)).unwrap();
        if !pts.contains(&x) {
            pts.push(x.clone());
        }
        assert_eq!(is_least_element(&x, &pts, &ab, Order::WeakSuper).unwrap(), None);
    }
}

#[test]
fn lifting_dominates_and_lands_on_the_base() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..40 {
        let n = rng.gen_range(1..=5);
        let f = gen::random_submodular(&mut rng, n, 8).unwrap();
        let perms = abmaj::ground::all_permutations(n);
        let start = greedy_vertex(&f, &perms[rng.gen_range(0..perms.len())]);
        let drop = Point::new((0..n).map(|_| Rat::from_int(rng.gen_range(0..=4))).collect());
        let x = start.sub(&drop);
        let y = abmaj::polyhedra::lift_to_base(&f, &x, true).unwrap();
        assert!(x.le(&y));
        assert_eq!(y.total(), f.value(f.ground().full_mask()).clone());
        assert!(Polyhedron::base(&f).unwrap().is_member(&y).unwrap());
    }
}

#[test]
fn weak_abs_reduction_is_least_against_enumeration() {
    // the reduction route output beats every integral point of P(f) in a
    // box around the base polyhedron, in the absolute order
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..12 {
        let n = rng.gen_range(1..=3);
        let f = gen::random_submodular(&mut rng, n, 5).unwrap();
        let b = gen::random_integral_point(&mut rng, n, 3);
        let ab = unit_shift(&b);
        let req = abmaj::optimize::LeastElementRequest {
            polyhedron: Polyhedron::submodular(&f).unwrap(),
            ab: ab.clone(),
            order: Order::WeakAbs,
            integral: true,
        };
        let x = abmaj::optimize::least_element(&req).unwrap();
        let full = f.ground().full_mask();
        let bx: Vec<(Rat, Rat)> = (0..n)
            .map(|i| {
                let lo = f.value(full) - f.value(full.without(i)) - Rat::from_int(6);
                let hi = f.value(abmaj::ground::Mask::singleton(i)) + Rat::from_int(2);
                (lo, hi)
            })
            .collect();
        let sub = Polyhedron::submodular(&f).unwrap();
        let mut pts = sub.enumerate_integral_points(Some(&bx)).unwrap();
        if !pts.contains(&x) {
            pts.push(x.clone());
        }
        assert_eq!(is_least_element(&x, &pts, &ab, Order::WeakAbs).unwrap(), None);
    }
}

#[test]
fn bisub_absolute_least_element_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..15 {
        let n = rng.gen_range(1..=3);
        let h = gen::random_bisubmodular(&mut rng, n).unwrap();
        let b = gen::random_integral_point(&mut rng, n, 3);
        let ab = unit_shift(&b);
        let x = abmaj::optimize::min_quadratic_bisub(&h, &ab, true).unwrap();
        let pts = Polyhedron::bisubmodular(&h).enumerate_integral_points(None).unwrap();
        assert_eq!(is_least_element(&x, &pts, &ab, Order::WeakAbs).unwrap(), None);
    }
}

#[test]
fn orthant_polyhedra_relate_to_their_restrictions() {
    // a point lies in the orthant polyhedron exactly when its sign-flipped
    // image lies in the polyhedron of the restricted set function, and the
    // signed greedy vertex of an orthant's sign vector sits on that base
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..10 {
        let n = rng.gen_range(1..=3);
        let h = gen::random_bisubmodular(&mut rng, n).unwrap();
        let whole = Polyhedron::bisubmodular(&h);
        for s in all_sign_vectors(n) {
            let orthant = s.orthant();
            let restricted = h.orthant_restriction(&orthant).unwrap();
            let ortho_base = Polyhedron::orthant_base(&h, orthant).unwrap();
            let ortho_sub = Polyhedron::orthant_sub(&h, orthant).unwrap();
            let flat_base = Polyhedron::base(&restricted).unwrap();
            let flat_sub = Polyhedron::submodular(&restricted).unwrap();

            for pi in all_permutations(n) {
                let z = signed_greedy_vertex(&h, &pi, &s);
                assert!(ortho_base.is_member(&z).unwrap());
                assert!(whole.is_member(&z).unwrap());
            }
            for _ in 0..10 {
                let x = gen::random_integral_point(&mut rng, n, 4);
                let flipped = Point::new(
                    (0..n)
                        .map(|i| {
                            if orthant.pos().contains(i) {
                                x.coord(i).clone()
                            } else {
                                -x.coord(i)
                            }
                        })
                        .collect(),
                );
                assert_eq!(
                    ortho_sub.is_member(&x).unwrap(),
                    flat_sub.is_member(&flipped).unwrap()
                );
                assert_eq!(
                    ortho_base.is_member(&x).unwrap(),
                    flat_base.is_member(&flipped).unwrap()
                );
            }
        }
    }
}

#[test]
fn supermodular_side_recognition() {
    // the integral points of B_sup(g) are recognized by the sub family,
    // alone and padded with extra members of P_sup
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for _ in 0..10 {
        let n = rng.gen_range(1..=3);
        let g = gen::random_supermodular(&mut rng, n, 4).unwrap();
        let base_pts = Polyhedron::base_sup(&g).unwrap().enumerate_integral_points(None).unwrap();
        let c = PointSet::new(g.ground(), base_pts.clone()).unwrap();
        let rep = characterize(&c, Family::Sub, true).unwrap();
        assert!(rep.holds, "{:?}", rep.failures);

        // push one coordinate of one base point up: still inside P_sup,
        // so the sandwich survives as long as no hole opens; the verdict
        // must match the recomposition either way
        let mut padded = base_pts.clone();
        let mut extra = padded[rng.gen_range(0..padded.len())].clone();
        let i = rng.gen_range(0..n);
        *extra.coord_mut(i) = extra.coord(i) + Rat::one();
        padded.push(extra);
        let cp = PointSet::new(g.ground(), padded).unwrap();
        let rep = characterize(&cp, Family::Sub, true).unwrap();
        let independent = {
            use abmaj::characterize::hole_free_check;
            let gm = induced_set_function(&cp, Extremum::Min).unwrap();
            gm.is_supermodular()
                && Polyhedron::base_sup(&gm)
                    .unwrap()
                    .enumerate_integral_points(None)
                    .unwrap()
                    .iter()
                    .all(|p| cp.contains(p))
                && hole_free_check(&cp).unwrap().is_none()
                && abmaj::characterize::prefix_property(&cp, Extremum::Min)
                    .unwrap()
                    .is_none()
        };
        assert_eq!(rep.holds, independent, "{:?}", cp.points());
    }
}

#[test]
fn continuous_recognition_of_generated_base_polytopes() {
    // the vertex list of B(f) is recognized in continuous mode
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..10 {
        let n = rng.gen_range(2..=3);
        let f = gen::random_submodular(&mut rng, n, 5).unwrap();
        let mut verts: Vec<Point> =
            all_permutations(n).iter().map(|pi| greedy_vertex(&f, pi)).collect();
        verts.sort();
        verts.dedup();
        let c = PointSet::new(f.ground(), verts).unwrap();
        let rep = characterize(&c, Family::Base, false).unwrap();
        assert!(rep.holds, "{:?}", rep.failures);
        let Induced::Set(induced) = &rep.induced else { panic!() };
        assert_eq!(induced.values(), f.values());
    }
}

#[test]
fn induced_function_errors_on_empty_sets() {
    let g = GroundSet::new(2).unwrap();
    let empty = PointSet::new(g, vec![]).unwrap();
    assert_eq!(
        induced_set_function(&empty, Extremum::Max).unwrap_err(),
        Error::EmptyPointSet
    );
    assert_eq!(induced_biset_function(&empty).unwrap_err(), Error::EmptyPointSet);
    assert_eq!(characterize(&empty, Family::Base, true).unwrap_err(), Error::EmptyPointSet);
}
