use std::f64::consts::{FRAC_PI_2, PI};

use astar_dehn::holonomy::{holonomy_closed_form, holonomy_words};
use astar_dehn::shapes::{alpha_shapes, consistency_residuals, shapes_from_params};
use astar_dehn::surgery::{dual_curve, filling_from_log, gcd};
use astar_dehn::verify::{octagon_construct, octagon_tiling_check};
use astar_dehn::{lobachevsky, puncture_distance, Cplx, Filling, FillingSolver, ParamPoint, Side};
use proptest::prelude::*;

fn param() -> impl Strategy<Value = Cplx> {
    (-1.5..2.5f64, -1.5..2.5f64)
        .prop_map(|(re, im)| Cplx::new(re, im))
        .prop_filter("away from the punctures", |z| puncture_distance(*z) > 0.05)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn relations_hold_everywhere(a in param(), b in param()) {
        let s = shapes_from_params(&ParamPoint::new(a, b).unwrap()).unwrap();
        for r in consistency_residuals(&s) {
            prop_assert!(r.value.norm() < 1e-11, "{}: {:e}", r.relation, r.value.norm());
        }
        for sh in s.as_array() {
            prop_assert!((sh.triple_product() + 1.0).norm() < 1e-13);
        }
    }

    #[test]
    fn alpha_shapes_ignore_beta(a in param(), b1 in param(), b2 in param()) {
        let s1 = shapes_from_params(&ParamPoint::new(a, b1).unwrap()).unwrap();
        let s2 = shapes_from_params(&ParamPoint::new(a, b2).unwrap()).unwrap();
        prop_assert_eq!([s1.z1.z(), s1.z3.z(), s1.w2.z(), s1.w4.z()], alpha_shapes(a));
        prop_assert_eq!(s1.z1, s2.z1);
        prop_assert_eq!(s1.w4, s2.w4);
    }

    #[test]
    fn words_match_closed_forms(a in param(), b in param()) {
        let p = ParamPoint::new(a, b).unwrap();
        let w = holonomy_words(&shapes_from_params(&p).unwrap()).unwrap();
        let c = holonomy_closed_form(&p).unwrap();
        prop_assert!((w.w.l - c.w.l).norm() <= 1e-12 * c.w.l.norm());
        prop_assert!((w.y.m - c.y.m).norm() <= 1e-12 * c.y.m.norm());
        // cusps pair up: W with Z, X with Y
        prop_assert!((w.w.l - w.z.l).norm() <= 1e-12 * w.w.l.norm());
        prop_assert!((w.x.m - w.y.m).norm() <= 1e-12 * w.y.m.norm());
    }

    #[test]
    fn lobachevsky_is_odd_and_periodic(t in -10.0..10.0f64) {
        prop_assert!((lobachevsky(-t) + lobachevsky(t)).abs() < 1e-14);
        prop_assert!((lobachevsky(t + PI) - lobachevsky(t)).abs() < 1e-13);
    }

    #[test]
    fn lobachevsky_duplication(t in -3.0..3.0f64) {
        // Λ(2θ) = 2Λ(θ) + 2Λ(θ + π/2)
        let lhs = lobachevsky(2.0 * t);
        let rhs = 2.0 * lobachevsky(t) + 2.0 * lobachevsky(t + FRAC_PI_2);
        prop_assert!((lhs - rhs).abs() < 1e-13);
    }

    #[test]
    fn solve_then_recover_coefficients(
        p in -9.0..9.0f64,
        q in -9.0..9.0f64,
        beta in any::<bool>(),
    ) {
        prop_assume!(p.abs().max(q.abs()) > 1.05);
        // (±2, ±2) and the near-corner region land on or near a puncture
        prop_assume!((p.abs() - 2.0).hypot(q.abs() - 2.0) > 0.05);
        let side = if beta { Side::Beta } else { Side::Alpha };
        let r = FillingSolver::default()
            .solve(&Filling::coeffs(p, q).unwrap(), side, None, None)
            .unwrap();
        let f = filling_from_log(&r.log_hol).unwrap();
        prop_assert!((f.p - p).abs() < 1e-9 && (f.q - q).abs() < 1e-9, "({p}, {q}) -> ({}, {})", f.p, f.q);
    }

    #[test]
    fn mirror_between_sides(p in 2.2..9.0f64, q in -9.0..9.0f64) {
        let s = FillingSolver::default();
        let a = s.solve(&Filling::coeffs(p, q).unwrap(), Side::Alpha, None, None).unwrap();
        let b = s.solve(&Filling::coeffs(q, -p).unwrap(), Side::Beta, None, None).unwrap();
        prop_assert!((a.param - b.param).norm() < 1e-10);
    }

    #[test]
    fn dual_curve_has_unit_determinant(p in -500i64..500, q in -500i64..500) {
        prop_assume!(gcd(p, q) == 1);
        let (r, s) = dual_curve(p, q).unwrap();
        prop_assert_eq!(p * s - q * r, 1);
    }

    #[test]
    fn octagon_tiles_for_every_interior_point(re in 0.001..0.999f64, im in 0.001..0.999f64) {
        let cfg = octagon_construct(Cplx::new(re, im)).unwrap();
        let rep = octagon_tiling_check(&cfg);
        prop_assert!(rep.passed(), "{}", rep);
    }
}
