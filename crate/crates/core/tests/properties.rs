mod common;

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use common::*;
use spherical::compare::{
    check_affine_hypothesis, check_homogeneous_hypothesis, check_weight_monoid_hypothesis, color_bijections, ColorBijection,
    MAX_BIJECTIONS,
};
use spherical::datum::{spherical_roots_from_cone, ColorRecord, valuation_cone, validate_datum};
use spherical::format::{parse_datum, serialize_datum};
use spherical::lattice::linalg::RatMatrix;
use spherical::lattice::{hnf, is_primitive, snf, Cone, IntMatrix, Lattice};
use spherical::localize::{localize_at_monoid_element, localize_at_weight_int};
use spherical::monoid::{is_unit, monoid_contains, monoid_equal, units, WeightMonoid};
use spherical::rootsys::{generate_reflection_group, CartanType, ParabolicSet, Reflection, RootSystem, DEFAULT_GROUP_CAP};
use spherical::{Int, Rat};

fn small_vec(n: usize, b: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-b..=b, n)
}

fn int_matrix(rows: usize, cols: usize, b: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(small_vec(cols, b), rows).prop_map(move |r| {
        let rows: Vec<Vec<Int>> = r.iter().map(|x| z(x)).collect();
        IntMatrix::from_rows(cols, &rows).unwrap()
    })
}

fn monoid(dim: usize) -> impl Strategy<Value = WeightMonoid> {
    prop::collection::vec(small_vec(dim, 3), 1..=4)
        .prop_filter("all generators zero", |g| g.iter().flatten().any(|x| *x != 0))
        .prop_map(move |g| WeightMonoid::new(dim, &g.iter().map(|x| z(x)).collect::<Vec<_>>()).unwrap())
}

/// Every element `sum c_i g_i` with `c >= 0` and `sum c <= bound`.
fn bounded_elements(gens: &[Vec<Int>], bound: i64) -> HashSet<Vec<Int>> {
    let mut out = HashSet::new();
    let mut c = vec![0i64; gens.len()];
    fn rec(i: usize, left: i64, c: &mut Vec<i64>, gens: &[Vec<Int>], out: &mut HashSet<Vec<Int>>) {
        if i == c.len() {
            out.insert(combine(gens, &z(c)));
            return;
        }
        for k in 0..=left {
            c[i] = k;
            rec(i + 1, left - k, c, gens, out);
        }
        c[i] = 0;
    }
    if gens.is_empty() {
        out.insert(vec![]);
    } else {
        rec(0, bound, &mut c, gens, &mut out);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hermite_form_certified(a in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| int_matrix(r, c, 6))) {
        let (h, u) = hnf(&a);
        prop_assert!(u.det().abs().is_one());
        prop_assert_eq!(u.mul(&a), h.clone());
        prop_assert!(is_hnf(&h));
        // The Hermite form depends only on the row lattice.
        let (h2, _) = hnf(&u.mul(&a));
        prop_assert_eq!(h2, h);
    }

    #[test]
    fn smith_form_certified(a in (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| int_matrix(r, c, 6))) {
        let (d, u, v) = snf(&a);
        prop_assert!(u.det().abs().is_one() && v.det().abs().is_one());
        let p = u.mul(&a).mul(&v);
        for i in 0..a.nrows() {
            for j in 0..a.ncols() {
                let want = if i == j && i < d.len() { d[i].clone() } else { Int::zero() };
                prop_assert_eq!(&p[(i, j)], &want);
            }
        }
        let mut prev = Int::one();
        for (k, dk) in d.iter().enumerate() {
            prop_assert!(dk.is_positive());
            let m = minors_gcd(&a, k + 1);
            prop_assert_eq!(dk, &(&m / &prev));
            prev = m;
        }
        if d.len() < a.nrows().min(a.ncols()) {
            prop_assert!(minors_gcd(&a, d.len() + 1).is_zero());
        }
    }

    #[test]
    fn lattice_membership_matches_cramer(b in prop::collection::vec(small_vec(2, 3), 2), v in small_vec(2, 6)) {
        let rows: Vec<Vec<Int>> = b.iter().map(|x| z(x)).collect();
        let det = b[0][0] * b[1][1] - b[0][1] * b[1][0];
        prop_assume!(det != 0);
        let l = Lattice::new(2, &rows).unwrap();
        // v = c0 b0 + c1 b1 by Cramer's rule.
        let c0 = v[0] * b[1][1] - v[1] * b[1][0];
        let c1 = b[0][0] * v[1] - b[0][1] * v[0];
        let integral = c0 % det == 0 && c1 % det == 0;
        prop_assert_eq!(l.contains(&z(&v)).unwrap(), integral);
        for i in -2i64..=2 {
            for j in -2i64..=2 {
                let p: Vec<i64> = (0..2).map(|k| i * b[0][k] + j * b[1][k]).collect();
                prop_assert!(l.contains(&z(&p)).unwrap());
            }
        }
        if integral {
            let coords = l.coords(&z(&v)).unwrap().unwrap();
            prop_assert_eq!(l.point(&coords), z(&v));
        }
    }

    #[test]
    fn primitivity_is_gcd_one(v in small_vec(3, 6)) {
        prop_assume!(v.iter().any(|x| *x != 0));
        let g = v.iter().fold(0i64, |a, &b| num_integer::gcd(a, b));
        prop_assert_eq!(is_primitive(&Lattice::full(3), &z(&v)).unwrap(), g == 1);
    }

    #[test]
    fn cone_descriptions_are_dual(gens in (1usize..=3).prop_flat_map(|n| prop::collection::vec(small_vec(n, 3), 0..=5).prop_map(move |g| (n, g)))) {
        let (n, g) = gens;
        let gi: Vec<Vec<Int>> = g.iter().map(|x| z(x)).collect();
        let c = Cone::from_int_generators(n, &gi).unwrap();
        for x in &gi {
            prop_assert!(c.contains_int(x).unwrap());
        }
        let back = Cone::from_int_inequalities(n, c.inequalities()).unwrap();
        prop_assert_eq!(&back, &c);
        let again = Cone::from_int_generators(n, c.generators()).unwrap();
        prop_assert_eq!(again, c);
    }

    #[test]
    fn membership_witnesses_reconstruct(m in monoid(3), c in small_vec(4, 3)) {
        let coeffs: Vec<Int> = c.iter().take(m.generators().len()).map(|x| Int::from(x.abs())).collect();
        let v = combine(m.generators(), &coeffs);
        let w = monoid_contains(&m, &v).unwrap();
        prop_assert!(w.is_some());
        let w = w.unwrap();
        prop_assert!(all_nonnegative(&w));
        prop_assert_eq!(combine(m.generators(), &w), v);
    }

    #[test]
    fn membership_agrees_with_enumeration(m in monoid(2), v in small_vec(2, 4)) {
        let v = z(&v);
        let found = monoid_contains(&m, &v).unwrap();
        if bounded_elements(m.generators(), 6).contains(&v) {
            prop_assert!(found.is_some());
        }
        if let Some(w) = found {
            prop_assert!(all_nonnegative(&w));
            prop_assert_eq!(combine(m.generators(), &w), v);
        }
    }

    #[test]
    fn units_form_a_group(m in monoid(3)) {
        let u = units(&m).unwrap();
        for b in u.basis_rows() {
            prop_assert!(is_unit(&m, &b).unwrap());
            prop_assert!(is_unit(&m, &negate(&b)).unwrap());
        }
        for g in m.generators() {
            prop_assert_eq!(is_unit(&m, g).unwrap(), u.contains(g).unwrap());
        }
    }

    #[test]
    fn monoid_equality_is_an_equivalence(m in monoid(2), c1 in small_vec(4, 2), c2 in small_vec(4, 2)) {
        let pick = |c: &[i64]| combine(m.generators(), &c.iter().take(m.generators().len()).map(|x| Int::from(x.abs())).collect::<Vec<_>>());
        let m1 = m.with_generator(pick(&c1)).unwrap();
        let m2 = m1.with_generator(pick(&c2)).unwrap();
        let mut rev: Vec<Vec<Int>> = m.generators().to_vec();
        rev.reverse();
        let mr = WeightMonoid::new(2, &rev).unwrap();
        prop_assert!(monoid_equal(&m, &m).unwrap());
        prop_assert!(monoid_equal(&m, &mr).unwrap());
        prop_assert!(monoid_equal(&m, &m1).unwrap() && monoid_equal(&m1, &m).unwrap());
        prop_assert!(monoid_equal(&m1, &m2).unwrap() && monoid_equal(&m, &m2).unwrap());
        let bigger = m.with_generator(z(&[7, -5])).unwrap();
        prop_assert_eq!(monoid_equal(&m, &bigger).unwrap(), monoid_equal(&bigger, &m).unwrap());
    }

    #[test]
    fn reflections_are_involutions(root in small_vec(3, 4), v in small_vec(3, 5)) {
        prop_assume!(root.iter().any(|x| *x != 0));
        let norm: i64 = root.iter().map(|x| x * x).sum();
        let coroot: Vec<Rat> = root.iter().map(|&x| Rat::new((2 * x).into(), norm.into())).collect();
        let s = Reflection::new(q(&root), coroot).unwrap();
        let v = q(&v);
        prop_assert_eq!(s.apply(&s.apply(&v)), v.clone());
        prop_assert_eq!(s.apply(&q(&root)), q(&root.iter().map(|x| -x).collect::<Vec<_>>()));
        prop_assert!(s.matrix().mul(&s.matrix()).is_identity());
    }
}

#[test]
fn type_a_weyl_orders_are_factorials() {
    let mut fact = 1;
    for n in 1..=4usize {
        fact *= n + 1;
        let rs = RootSystem::new(&[CartanType::A(n)], 0).unwrap();
        let w = generate_reflection_group(n, &rs.simple_reflections(), DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(w.order(), fact, "A{n}");
        if n <= 3 {
            let set: HashSet<&RatMatrix> = w.elements().iter().collect();
            for a in w.elements() {
                for b in w.elements() {
                    assert!(set.contains(&a.mul(b)), "A{n} not closed");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn spherical_roots_round_trip(seed in any::<u64>()) {
        let d = random_datum(&mut rng(seed));
        let back = spherical_roots_from_cone(d.weight_lattice(), &valuation_cone(&d).unwrap()).unwrap();
        let mut want: Vec<Vec<Int>> = d.spherical_roots().iter().map(|a| a.coords.clone()).collect();
        want.sort();
        prop_assert_eq!(back, want);
    }

    #[test]
    fn validity_is_monotone(seed in any::<u64>(), drop in 0usize..4) {
        let d = random_datum(&mut rng(seed));
        let mut roots = d.spherical_roots().to_vec();
        if !roots.is_empty() {
            roots.remove(drop % roots.len());
        }
        let mut colors = d.colors().to_vec();
        if !colors.is_empty() {
            colors.remove(drop % colors.len());
        }
        let smaller = d.with_spherical_roots(roots).unwrap().with_colors(colors).unwrap();
        prop_assert!(validate_datum(&smaller).is_valid());
    }

    #[test]
    fn localization_is_idempotent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = if seed % 2 == 0 { random_datum(&mut r) } else { random_datum_around_levi(&mut r) };
        let m = d.weight_monoid().unwrap();
        let mu = random_member(&mut r, m);
        prop_assume!(!is_unit(m, &mu).unwrap());
        let once = localize_at_weight_int(&d, &mu).unwrap();
        prop_assert_eq!(once.section_datum.weight_lattice(), d.weight_lattice());
        prop_assert!(once.levi.is_subset(&d.ambient().all_labels()));
        let twice = localize_at_monoid_element(&once.section_datum, &mu).unwrap();
        prop_assert_eq!(&twice.section_datum, &once.section_datum);
        prop_assert!(twice.dropped_colors.is_empty());
    }

    #[test]
    fn comparisons_are_symmetric(seed in any::<u64>(), cut in any::<bool>()) {
        let mut r = rng(seed);
        let d = random_datum(&mut r);
        let mut roots = d.spherical_roots().to_vec();
        if cut {
            roots.pop();
        }
        let e = d.with_spherical_roots(roots).unwrap();
        prop_assert_eq!(check_weight_monoid_hypothesis(&d, &e).unwrap().holds(), check_weight_monoid_hypothesis(&e, &d).unwrap().holds());
        let ab = check_affine_hypothesis(&d, &e).unwrap().holds();
        prop_assert_eq!(ab, check_affine_hypothesis(&e, &d).unwrap().holds());
        prop_assert_eq!(ab, !cut || d.spherical_roots().is_empty());
        let fwd = check_homogeneous_hypothesis(&d, &e).unwrap();
        let bwd = check_homogeneous_hypothesis(&e, &d).unwrap();
        prop_assert_eq!(fwd.len(), bwd.len());
        let mut inv: Vec<_> = fwd.iter().map(|b| b.inverse()).collect();
        inv.sort();
        prop_assert_eq!(inv, bwd);
        prop_assert!(check_homogeneous_hypothesis(&d, &d).unwrap().iter().any(|b| b.pairs.iter().all(|(a, c)| a == c)));
    }

    #[test]
    fn serialization_round_trips(seed in any::<u64>()) {
        let d = random_datum(&mut rng(seed));
        let text = serialize_datum(&d);
        let back = parse_datum(&text).unwrap();
        prop_assert_eq!(serialize_datum(&back), text);
        prop_assert_eq!(back, d);
    }
}

fn compose(a: &ColorBijection, b: &ColorBijection) -> ColorBijection {
    ColorBijection { pairs: a.pairs.iter().map(|(k, v)| (k.clone(), b.pairs[v].clone())).collect() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    // Bijections onto a relabeled copy form one coset of the self-bijection group.
    #[test]
    fn color_bijections_form_a_coset(sig in prop::collection::vec(0i64..3, 1..=5), shift in 0usize..5) {
        let colors: Vec<ColorRecord> = sig.iter().enumerate()
            .map(|(i, s)| ColorRecord::new(format!("D{i}"), z(&[*s, 1 - s]), ParabolicSet::new([1 + (*s as usize % 2)])))
            .collect();
        let n = colors.len();
        let renamed: Vec<ColorRecord> = colors.iter().enumerate()
            .map(|(i, c)| ColorRecord::new(format!("E{}", (i + shift) % n), c.phi.clone(), c.moved_roots.clone()))
            .collect();
        let auts = color_bijections(&colors, &colors, MAX_BIJECTIONS).unwrap();
        let set: HashSet<_> = auts.iter().cloned().collect();
        let mut expected = 1usize;
        for k in 0..3 {
            expected *= (1..=sig.iter().filter(|s| **s == k).count()).product::<usize>();
        }
        prop_assert_eq!(auts.len(), expected);
        for a in &auts {
            prop_assert!(set.contains(&a.inverse()));
            for b in &auts {
                prop_assert!(set.contains(&compose(a, b)));
            }
        }
        let to = color_bijections(&colors, &renamed, MAX_BIJECTIONS).unwrap();
        prop_assert_eq!(to.len(), auts.len());
        let coset: HashSet<_> = auts.iter().map(|a| compose(a, &to[0])).collect();
        prop_assert_eq!(coset, to.into_iter().collect::<HashSet<_>>());
    }
}
