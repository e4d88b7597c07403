mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use astar_dehn::continuation::on_cut;
use astar_dehn::lobachevsky::clausen2;
use astar_dehn::{continue_log, lobachevsky, puncture_distance, Cplx, PathSpec, Side};
use common::{alpha_logs_oracle, beta_logs_oracle, lobachevsky_quadrature};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn lobachevsky_matches_quadrature() {
    let mut worst = 0.0_f64;
    for k in 1..=64 {
        let theta = k as f64 * FRAC_PI_2 / 64.0;
        worst = worst.max((lobachevsky(theta) - lobachevsky_quadrature(theta)).abs());
    }
    assert!(worst < 1e-13, "worst {worst:e}");
}

#[test]
fn catalan_from_quadrature() {
    assert!((lobachevsky_quadrature(FRAC_PI_4) - 0.457_982_797_088_609_5).abs() < 1e-13);
}

#[test]
fn clausen_matches_slow_fourier_sum() {
    // Σ sin(kx)/k² with the tail bounded by 1/N
    let n = 2_000_000;
    for x in [0.3, 1.0, 2.0, 3.0, -1.7] {
        let direct: f64 = (1..=n)
            .map(|k| (k as f64 * x).sin() / (k as f64).powi(2))
            .sum();
        assert!((clausen2(x) - direct).abs() < 1e-6, "x = {x}");
    }
}

#[test]
fn clausen_maximum_value() {
    // Cl₂(π/3) is the maximum, 1.0149416064096536...
    assert!((clausen2(PI / 3.0) - 1.014_941_606_409_653_6).abs() < 1e-15);
}

fn random_cut_plane_points(n: usize, seed: u64) -> Vec<Cplx> {
    let mut g = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let x = Cplx::new(g.random_range(-3.0..4.0), g.random_range(-3.0..4.0));
        if puncture_distance(x) > 1e-3 && !on_cut(x, 1e-3) {
            out.push(x);
        }
    }
    out
}

#[test]
fn continuation_matches_cut_plane_logs() {
    for (side, oracle) in [
        (Side::Beta, beta_logs_oracle as fn(Cplx) -> (Cplx, Cplx)),
        (Side::Alpha, alpha_logs_oracle),
    ] {
        for x in random_cut_plane_points(300, 11) {
            let lh = continue_log(&PathSpec::straight(x).unwrap(), side).unwrap();
            let (u, v) = oracle(x);
            assert!(
                (lh.u - u).norm() < 1e-12,
                "{side:?} u at {x}: {} vs {u}",
                lh.u
            );
            assert!(
                (lh.v - v).norm() < 1e-12,
                "{side:?} v at {x}: {} vs {v}",
                lh.v
            );
        }
    }
}

#[test]
fn oracle_exponentiates_to_closed_forms() {
    for x in random_cut_plane_points(50, 3) {
        let (u, v) = beta_logs_oracle(x);
        assert!((u.exp() - Side::Beta.meridian(x)).norm() < 1e-12 * Side::Beta.meridian(x).norm());
        assert!(
            (v.exp() - Side::Beta.longitude(x)).norm() < 1e-12 * Side::Beta.longitude(x).norm()
        );
    }
}
