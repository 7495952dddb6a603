use bcsurf::diamond::a_system;
use bcsurf::exact::{param_vars, rat_int};
use bcsurf::fibercoh::{cech_h1_fatfiber, r1p_length_a, r1p_length_r, series_inverse, FiberData, TruncElement};
use bcsurf::linsys::a_h0_h1;
use bcsurf::params::random_admissible_point;
use bcsurf::skew::{expected_dim, graded_dims};
use bcsurf::surface::CurveCache;
use bcsurf::{Field, Fp, MPoly, Mode, Ring, Sample};
use proptest::prelude::*;

fn fp() -> impl Strategy<Value = Fp> {
    any::<u64>().prop_map(Fp::new)
}

fn poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((0u32..4, 0u32..4, -5i64..=5), 0..6).prop_map(|terms| {
        MPoly::from_terms(&param_vars(), terms.into_iter().map(|(i, j, c)| (vec![i, j], rat_int(c))))
    })
}

fn trunc(ell: usize, lo: i64, hi: i64) -> impl Strategy<Value = TruncElement<Fp>> {
    let width = ((hi - lo + 1) as usize) * ell;
    prop::collection::vec(0u64..7, width).prop_map(move |cs| {
        let mut t = TruncElement::zero(ell, lo, hi);
        for (k, c) in cs.into_iter().enumerate() {
            let (i, j) = (lo + (k / ell) as i64, k % ell);
            t.add_term(i, j, &Fp::new(c)).unwrap();
        }
        t
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fp_field_axioms(a in fp(), b in fp(), c in fp()) {
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv()).is_one());
        }
    }

    #[test]
    fn evaluation_is_a_ring_map(a in poly(), b in poly(), r in -6i64..6, t in -6i64..6) {
        let pt = [rat_int(r), rat_int(t)];
        prop_assert_eq!(a.mul(&b).eval_rat(&pt), a.eval_rat(&pt) * b.eval_rat(&pt));
        prop_assert_eq!(a.add(&b).eval_rat(&pt), a.eval_rat(&pt) + b.eval_rat(&pt));
    }

    #[test]
    fn series_inverse_inverts(head in 1u64..1000, tail in prop::collection::vec(any::<u64>(), 0..6)) {
        let mut a = vec![Fp::new(head)];
        a.extend(tail.into_iter().map(Fp::new));
        let inv = series_inverse(&a).unwrap();
        let ell = a.len();
        for k in 0..ell {
            let mut s = Fp::zero();
            for i in 0..=k {
                s = s.add(&a[i].mul(&inv[k - i]));
            }
            prop_assert_eq!(s, if k == 0 { Fp::one() } else { Fp::zero() });
        }
    }

    #[test]
    fn truncated_product_commutes(x in trunc(3, -2, 1), y in trunc(3, -2, 1)) {
        let (x, y) = (x.rewindow(-6, 6).unwrap(), y.rewindow(-6, 6).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
    }

    #[test]
    fn shift_is_monomial_product(x in trunc(3, -2, 2), s in -2i64..=2, t in 0usize..3) {
        let x = x.rewindow(-6, 6).unwrap();
        let m = TruncElement::monomial(3, -6, 6, s, t).unwrap();
        prop_assert_eq!(x.shift(s, t).unwrap(), x.mul(&m).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn graded_dims_hold_at_admissible_points(seed in any::<u64>()) {
        let (rho, theta) = random_admissible_point(seed, 4);
        let rows = graded_dims(&Mode::Specialized { rho, theta }, seed, 4).unwrap();
        prop_assert!(rows.iter().all(|r| r.pass()));
    }

    #[test]
    fn fat_fiber_matches_and_stabilizes(seed in any::<u64>(), a in -4i64..=-1, d in 0i64..=1, dl in 0usize..2, dn in 0usize..2) {
        let mut cache: CurveCache<Fp> = CurveCache::new(&Sample::random(seed, 8).params());
        let ell = FiberData::ell0(a) + dl;
        let n = FiberData::n0(a, d) + dn;
        let r = cech_h1_fatfiber(&mut cache, a, 0, d, ell, n).unwrap();
        prop_assert!(r.matches_closed_form());
        prop_assert_eq!(r.profile.iter().sum::<usize>(), r.dim);
        let bigger = cech_h1_fatfiber(&mut cache, a, 0, d, ell + 1, n + 1).unwrap();
        prop_assert_eq!(bigger.dim, r.dim);
    }

    #[test]
    fn pushforward_variants_agree(seed in any::<u64>(), a in -3i64..=-1, m in 0usize..=2, dn in 0usize..3) {
        let mut cache: CurveCache<Fp> = CurveCache::new(&Sample::random(seed, 8).params());
        let n = (-a - 1) as usize + dn;
        let r = r1p_length_r(&mut cache, n, m, a, 0).unwrap();
        let x = r1p_length_a(n, m, a).unwrap();
        prop_assert_eq!(r.total, x.total);
        prop_assert_eq!(r.points.iter().map(|p| p.profile.total()).sum::<usize>(), r.total);
    }
}

proptest! {
    #[test]
    fn monomial_sheaves_have_ring_sections(n in 0usize..8, m in 0usize..4) {
        prop_assert_eq!(a_h0_h1(n, m).unwrap(), (expected_dim(n), 0));
    }

    #[test]
    fn irreducible_words_count_ring_dims(n in 0usize..14) {
        prop_assert_eq!(a_system().irreducible_count(n), expected_dim(n) as u64);
    }
}
