use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

use super::{random_param, rng, VerificationReport};
use crate::continuation::{continue_log, PathSpec, Side};
use crate::holonomy::{
    cancellation_identities, cusp_modulus_complete, holonomy_closed_form, holonomy_words, CuspId,
    HolonomyValues,
};
use crate::lobachevsky::{lobachevsky, volume};
use crate::shapes::{consistency_residuals, shapes_from_params, ParamPoint, ShapeVector};
use crate::surgery::{filling_from_log, joint_solve, solve_filling, Filling};
use crate::{Cplx, CENTER};

const I: Cplx = Cplx::new(0.0, 1.0);

/// Radius of the circle through the four punctures.
pub const CIRCLE_RADIUS: f64 = FRAC_1_SQRT_2;

/// Radii of the default sweep toward `|beta| = infinity`.
pub const DEFAULT_RADII: [f64; 3] = [1e2, 1e3, 1e4];

pub fn circle_point(phi: f64) -> Cplx {
    CENTER + Cplx::from_polar(CIRCLE_RADIUS, phi)
}

fn words_at(a: Cplx, b: Cplx) -> Option<HolonomyValues> {
    let p = ParamPoint::new(a, b).ok()?;
    holonomy_words(&shapes_from_params(&p).ok()?).ok()
}

fn shapes_at(a: Cplx, b: Cplx) -> Option<ShapeVector> {
    shapes_from_params(&ParamPoint::new(a, b).ok()?).ok()
}

/// Gluing relations, shape triples, word/closed-form agreement, the
/// single-variable cancellations and the alpha/beta separation.
pub fn verify_consistency(n: usize, seed: u64) -> VerificationReport {
    let mut rep = VerificationReport::new("consistency");
    let mut g = rng(seed);
    let (mut res_max, mut triple_max, mut word_rel, mut half_max, mut pair_max) =
        (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    let mut separation_violations = 0;
    let mut exp_max = 0.0_f64;
    for k in 0..n {
        let a = random_param(&mut g, 0.1);
        let b = random_param(&mut g, 0.1);
        let b2 = random_param(&mut g, 0.1);
        let p = match ParamPoint::new(a, b) {
            Ok(p) => p,
            Err(e) => {
                rep.offend(format!("({a}, {b}): {e}"));
                continue;
            }
        };
        let (s, s2) = match (shapes_from_params(&p), shapes_at(a, b2)) {
            (Ok(s), Some(s2)) => (s, s2),
            _ => {
                rep.offend(format!("({a}, {b}): degenerate shapes"));
                continue;
            }
        };
        for r in consistency_residuals(&s) {
            if r.value.norm() > 1e-12 {
                rep.offend(format!(
                    "({a}, {b}): {} residual {:.3e}",
                    r.relation,
                    r.value.norm()
                ));
            }
            res_max = res_max.max(r.value.norm());
        }
        for sh in s.as_array() {
            triple_max = triple_max.max((sh.triple_product() + 1.0).norm());
        }
        if s.z1 != s2.z1 || s.z3 != s2.z3 || s.w2 != s2.w2 || s.w4 != s2.w4 {
            separation_violations += 1;
        }
        if let (Ok(w), Ok(c)) = (holonomy_words(&s), holonomy_closed_form(&p)) {
            for cusp in CuspId::ALL {
                let (x, y) = (w.get(cusp), c.get(cusp));
                word_rel = word_rel
                    .max((x.l - y.l).norm() / y.l.norm())
                    .max((x.m - y.m).norm() / y.m.norm());
            }
        }
        if let Ok(cr) = cancellation_identities(&p) {
            half_max = half_max
                .max(cr.w4pp_over_z1p.norm())
                .max(cr.z3pp_over_w4p.norm());
            pair_max = pair_max
                .max(cr.l_w_minus_l_z.norm())
                .max(cr.m_w_minus_m_z.norm())
                .max(cr.l_y_minus_l_x.norm())
                .max(cr.m_y_minus_m_x.norm());
        }
        if k % 10 == 0 {
            if let Ok(path) = PathSpec::straight(b) {
                if let Ok(lh) = continue_log(&path, Side::Beta) {
                    let m = Side::Beta.meridian(b);
                    let l = Side::Beta.longitude(b);
                    exp_max = exp_max
                        .max((lh.meridian() - m).norm() / m.norm())
                        .max((lh.longitude() - l).norm() / l.norm());
                }
            }
        }
        rep.samples += 1;
    }
    rep.check("max consistency residual", res_max, 1e-12);
    rep.check("max |z z' z'' + 1|", triple_max, 1e-14);
    rep.check_count("alpha shapes change with beta", separation_violations);
    rep.check("word vs closed form (relative)", word_rel, 1e-11);
    rep.check("max |w4''/z1' - 1/2|", half_max, 1e-13);
    rep.check("max cusp-pair inequality", pair_max, 1e-12);
    rep.check("exp(u), exp(v) round trip (relative)", exp_max, 1e-12);
    rep
}

/// Spread of a list: max distance from the first entry.
fn spread(xs: &[Cplx]) -> f64 {
    xs.first()
        .map(|x0| xs.iter().map(|x| (x - x0).norm()).fold(0.0, f64::max))
        .unwrap_or(0.0)
}

/// Cusp-W modulus at `(alpha, beta = (1+i)/2)` from the word products, by a
/// five-point difference in `beta` of their logarithms.
fn word_modulus_w(alpha: Cplx) -> Option<Cplx> {
    let h = 1e-3;
    let at = |db: Cplx| words_at(alpha, CENTER + db).map(|w| (w.w.m.ln(), w.w.l.ln()));
    let (u2, v2) = at(Cplx::new(2.0 * h, 0.0))?;
    let (u1, v1) = at(Cplx::new(h, 0.0))?;
    let (um1, vm1) = at(Cplx::new(-h, 0.0))?;
    let (um2, vm2) = at(Cplx::new(-2.0 * h, 0.0))?;
    let du = (-u2 + 8.0 * u1 - 8.0 * um1 + um2) / (12.0 * h);
    let dv = (-v2 + 8.0 * v1 - 8.0 * vm1 + vm2) / (12.0 * h);
    Some(dv / du)
}

/// Strong isolation: the `W/Z` cusp geometry ignores every alpha-side filling.
pub fn verify_isolation(grid: usize, seed: u64) -> VerificationReport {
    let mut rep = VerificationReport::new("isolation (thm1)");
    let grid = grid.max(1);
    let mut g = rng(seed);

    // holonomy constancy under the other parameter
    let beta0 = random_param(&mut g, 0.1);
    let alpha0 = random_param(&mut g, 0.1);
    let mut lw = Vec::new();
    let mut mw = Vec::new();
    let mut ly = Vec::new();
    let mut my = Vec::new();
    for _ in 0..1000 {
        let a = random_param(&mut g, 0.1);
        let b = random_param(&mut g, 0.1);
        if let Some(w) = words_at(a, beta0) {
            lw.push(w.w.l);
            mw.push(w.w.m);
        }
        if let Some(w) = words_at(alpha0, b) {
            ly.push(w.y.l);
            my.push(w.y.m);
        }
    }
    rep.samples += lw.len() + ly.len();
    rep.check(
        "l_W, m_W spread over alpha",
        spread(&lw).max(spread(&mw)),
        1e-12,
    );
    rep.check(
        "l_Y, m_Y spread over beta",
        spread(&ly).max(spread(&my)),
        1e-12,
    );

    // finite-difference derivative in the other parameter
    let h = 1e-5;
    let mut fd_max = 0.0_f64;
    for _ in 0..100 {
        let a = random_param(&mut g, 0.1);
        let b = random_param(&mut g, 0.1);
        let hc = Cplx::new(h, 0.0);
        if let (Some(p), Some(m)) = (words_at(a + hc, b), words_at(a - hc, b)) {
            fd_max = fd_max
                .max(((p.w.l - m.w.l) / (2.0 * h)).norm())
                .max(((p.w.m - m.w.m) / (2.0 * h)).norm());
        }
    }
    rep.check(
        "|d l_W / d alpha|, |d m_W / d alpha| (central diff)",
        fd_max,
        1e-7,
    );

    // decoupled solves
    let f_beta = Filling::coeffs(4.0, 1.0).expect("valid filling");
    let fillings: Vec<Filling> = (0..grid * grid)
        .map(|k| {
            let (i, j) = ((k / grid) as f64, (k % grid) as f64);
            Filling::coeffs(3.0 + i, j - (grid / 2) as f64).expect("valid filling")
        })
        .collect();
    let mut betas = Vec::new();
    let mut moduli = Vec::new();
    let mut volumes = Vec::new();
    for f in &fillings {
        match joint_solve(f, &f_beta) {
            Ok(j) => {
                betas.push(j.coupled_beta);
                betas.push(j.beta.param);
            }
            Err(e) => rep.offend(format!("joint solve {f:?}: {e}")),
        }
        match joint_solve(f, &Filling::Complete) {
            Ok(j) => {
                match word_modulus_w(j.coupled_alpha) {
                    Some(t) => moduli.push(t),
                    None => rep.offend(format!("modulus at alpha = {}", j.coupled_alpha)),
                }
                if let Some(s) = shapes_at(j.alpha.param, CENTER) {
                    volumes.push(volume(&s));
                }
            }
            Err(e) => rep.offend(format!("joint solve {f:?} with complete beta: {e}")),
        }
        rep.samples += 1;
    }
    rep.check_count(
        "failed joint solves",
        fillings.len() * 2 - betas.len() / 2 - moduli.len(),
    );
    rep.check("beta spread over alpha fillings", spread(&betas), 1e-12);
    rep.check(
        "W modulus spread over alpha fillings",
        spread(&moduli),
        1e-12,
    );
    let tau = cusp_modulus_complete(CuspId::W).tau;
    rep.check("|tau_W - i| (analytic)", (tau - I).norm(), 1e-12);
    if let Some(t) = moduli.first() {
        rep.check("|tau_W - i| (word differences)", (t - I).norm(), 1e-9);
    }
    let (vmin, vmax) = volumes
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(*v), hi.max(*v))
        });
    rep.note(format!(
        "volume range over alpha fillings: [{vmin:.10}, {vmax:.10}]"
    ));
    // isolation concerns cusp shape only: the volume must still move
    rep.check(
        "volume spread deficit (1e-6 - spread)",
        (1e-6 - (vmax - vmin)).max(0.0),
        0.0,
    );
    rep
}

/// Sample angles on the circle: `n/4` per arc between consecutive corners,
/// each arc's end samples at angular distance `clearance` from the corners.
/// Returns `(arc, phi)`; arc 0 runs from `C = 1+i` to `D = i`.
pub fn theorem2_samples(n: usize, clearance: f64) -> Vec<(usize, f64)> {
    let per_arc = n.div_ceil(4).max(2);
    let mut out = Vec::with_capacity(4 * per_arc);
    for arc in 0..4 {
        let start = FRAC_PI_4 + arc as f64 * FRAC_PI_2;
        for j in 0..per_arc {
            let t = j as f64 / (per_arc - 1) as f64;
            out.push((arc, start + clearance + t * (FRAC_PI_2 - 2.0 * clearance)));
        }
    }
    out
}

fn beta_filling(beta: Cplx) -> crate::Result<(crate::FillingCoeffs, crate::LogHolonomy)> {
    let lh = continue_log(&PathSpec::straight(beta)?, Side::Beta)?;
    Ok((filling_from_log(&lh)?, lh))
}

const SQUARE_CORNERS_2: [(f64, f64); 4] = [(2.0, 2.0), (-2.0, 2.0), (-2.0, -2.0), (2.0, -2.0)];

/// The circle `|beta - (1+i)/2| = 1/sqrt 2` maps onto the square with
/// corners `(±2, ±2)`.
pub fn verify_theorem2(n: usize) -> VerificationReport {
    let mut rep = VerificationReport::new("circle to (+-2,+-2) square (thm2)");
    let n = n.max(8);
    let clearance = 1e-3;
    let samples = theorem2_samples(n, clearance);
    let per_arc = samples.len() / 4;
    let (mut flat, mut square, mut q_arc, mut corner, mut sym) =
        (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    let mut re_order = 0;
    for (k, &(arc, phi)) in samples.iter().enumerate() {
        let beta = circle_point(phi);
        let shapes = match shapes_at(CENTER, beta) {
            Some(s) => s,
            None => {
                rep.offend(format!("phi = {phi}: degenerate shapes"));
                continue;
            }
        };
        for z in [shapes.z2, shapes.z4, shapes.w1, shapes.w3] {
            flat = flat.max(z.z().im.abs());
        }
        let (f, lh) = match beta_filling(beta) {
            Ok(x) => x,
            Err(e) => {
                rep.offend(format!("phi = {phi}: {e}"));
                continue;
            }
        };
        let dev = (f.p.abs().max(f.q.abs()) - 2.0).abs();
        if dev > 1e-9 {
            rep.offend(format!("phi = {phi}: (p, q) = ({}, {})", f.p, f.q));
        }
        square = square.max(dev);
        if arc == 0 {
            q_arc = q_arc.max((f.q - 2.0).abs());
            if lh.v.re.abs() > lh.u.re.abs() + 1e-12 {
                re_order += 1;
            }
        }
        let j = k % per_arc;
        if j == 0 || j == per_arc - 1 {
            let d = SQUARE_CORNERS_2
                .iter()
                .map(|(cp, cq)| (f.p - cp).hypot(f.q - cq))
                .fold(f64::INFINITY, f64::min);
            corner = corner.max(d);
        }
        // quarter turn about the center permutes the square: (p, q) -> (q, -p)
        match beta_filling(CENTER + I * (beta - CENTER)) {
            Ok((g, _)) => sym = sym.max((g.p - f.q).abs()).max((g.q + f.p).abs()),
            Err(e) => rep.offend(format!("rotated phi = {phi}: {e}")),
        }
        rep.samples += 1;
    }
    rep.check("beta-side simplices flat (max |Im z|)", flat, 1e-9);
    rep.check("distance to (+-2,+-2) square", square, 1e-9);
    rep.check("|q - 2| on the C-D arc", q_arc, 1e-9);
    rep.check_count("|Re v_W| > |Re u_W| on the C-D arc", re_order);
    rep.check("corner-adjacent samples to nearest corner", corner, 1e-2);
    rep.check("quarter-turn symmetry (p,q) -> (q,-p)", sym, 1e-9);
    match beta_filling(circle_point(FRAC_PI_2)) {
        Ok((f, _)) => {
            rep.check("|p| at the C-D arc midpoint", f.p.abs(), 1e-9);
        }
        Err(e) => {
            rep.check(format!("arc midpoint: {e}"), f64::INFINITY, 0.0);
        }
    }
    for (label, phi) in [
        ("C", FRAC_PI_4 + clearance),
        ("D", 3.0 * FRAC_PI_4 - clearance),
    ] {
        if let Ok((f, _)) = beta_filling(circle_point(phi)) {
            rep.note(format!(
                "next to {label}: (p, q) = ({:.6}, {:.6})",
                f.p, f.q
            ));
        }
    }
    rep
}

/// Fillings on the `(±2, ±2)` square used for the volume check.
pub const COROLLARY_FILLINGS: [(f64, f64); 8] = [
    (0.0, 2.0),
    (2.0, 0.0),
    (0.0, -2.0),
    (-2.0, 0.0),
    (1.0, 2.0),
    (2.0, -1.0),
    (-1.0, -2.0),
    (-2.0, 1.0),
];

/// Fillings on the square halve the volume: the four beta-side simplices are
/// flat and the alpha side stays complete.
pub fn verify_corollary() -> VerificationReport {
    let mut rep = VerificationReport::new("half volume on the square (corollary)");
    let full = 16.0 * lobachevsky(FRAC_PI_4);
    let mut on_circle = 0.0_f64;
    let mut vol_err = 0.0_f64;
    for (p, q) in COROLLARY_FILLINGS {
        let f = Filling::coeffs(p, q).expect("valid filling");
        let r = match solve_filling(&f, Side::Beta, None, None) {
            Ok(r) => r,
            Err(e) => {
                rep.offend(format!("({p}, {q}): {e}"));
                on_circle = f64::INFINITY;
                continue;
            }
        };
        on_circle = on_circle.max(((r.param - CENTER).norm() - CIRCLE_RADIUS).abs());
        match shapes_at(CENTER, r.param) {
            Some(s) => {
                let v = volume(&s);
                vol_err = vol_err.max((v - full / 2.0).abs());
                rep.note(format!(
                    "({p:+}, {q:+}) beta = {:.12}{:+.12}i volume = {v:.12}",
                    r.param.re, r.param.im
                ));
            }
            None => rep.offend(format!("({p}, {q}): degenerate shapes")),
        }
        rep.samples += 1;
    }
    rep.check("solutions on the circle", on_circle, 1e-9);
    rep.check("|volume - 8 L(pi/4)|", vol_err, 1e-9);
    rep.note(format!("complete volume 16 L(pi/4) = {full:.12}"));
    rep
}

/// Asymptotic directions of the four cut rays.
fn cut_direction_distance(theta: f64) -> f64 {
    (0..4)
        .map(|k| {
            let d = FRAC_PI_4 + k as f64 * FRAC_PI_2;
            let mut diff = (theta - d).rem_euclid(2.0 * PI);
            if diff > PI {
                diff = 2.0 * PI - diff;
            }
            diff
        })
        .fold(f64::INFINITY, f64::min)
}

/// `|beta| -> infinity` maps onto the square with corners `(±1, ±1)`.
///
/// `radii` must be increasing. Angles `(2k+1) pi / n_angles`; any within
/// 0.02 rad of a cut direction are skipped and reported.
pub fn verify_theorem3(radii: &[f64], n_angles: usize) -> VerificationReport {
    let mut rep = VerificationReport::new("infinity to (+-1,+-1) square (thm3)");
    if radii.is_empty() || radii.windows(2).any(|w| w[1] <= w[0]) || radii[0] < 10.0 {
        rep.check("radii increasing and >= 10", f64::INFINITY, 0.0);
        return rep;
    }
    let r_max = *radii.last().unwrap();
    let mut monotone_violations = 0;
    let mut final_dist = 0.0_f64;
    let mut shape_dev = 0.0_f64;
    let mut sector_order = 0;
    let mut sector_p = 0.0_f64;
    let mut sector_sign = Vec::new();
    let mut header = String::from("theta     ");
    for r in radii {
        header.push_str(&format!(" dist(r={r:.0e})"));
    }
    rep.note(header);
    for k in 0..n_angles {
        let theta = (2 * k + 1) as f64 * PI / n_angles as f64;
        if cut_direction_distance(theta) < 0.02 {
            rep.note(format!(
                "theta = {theta:.4} skipped: within 0.02 of a cut ray"
            ));
            continue;
        }
        let mut dists = Vec::with_capacity(radii.len());
        let in_sector = theta > 0.0 && theta < FRAC_PI_4;
        for &r in radii {
            let beta = Cplx::from_polar(r, theta);
            let (f, lh) = match beta_filling(beta) {
                Ok(x) => x,
                Err(e) => {
                    rep.offend(format!("theta = {theta:.4}, r = {r}: {e}"));
                    dists.push(f64::NAN);
                    continue;
                }
            };
            dists.push((f.p.abs().max(f.q.abs()) - 1.0).abs());
            if in_sector {
                let (l, m) = (
                    Side::Beta.longitude(beta).norm(),
                    Side::Beta.meridian(beta).norm(),
                );
                if lh.v.re.abs() < lh.u.re.abs() || !(l > m && m > 1.0) {
                    sector_order += 1;
                }
                if r == r_max {
                    sector_p = sector_p.max((f.p.abs() - 1.0).abs());
                    sector_sign.push(f.p.signum());
                }
            }
            if r == r_max {
                if let Some(s) = shapes_at(CENTER, beta) {
                    for z in [s.z2, s.z4, s.w1, s.w3] {
                        shape_dev = shape_dev.max((z.z() + I).norm());
                    }
                }
            }
        }
        if dists.windows(2).any(|w| w[1].is_nan() || w[1] >= w[0]) {
            monotone_violations += 1;
            rep.offend(format!(
                "theta = {theta:.4}: distances {dists:?} not decreasing"
            ));
        }
        final_dist = final_dist.max(*dists.last().unwrap_or(&f64::NAN));
        let mut line = format!("{theta:<10.4}");
        for d in &dists {
            line.push_str(&format!(" {d:>12.4e}"));
        }
        rep.note(line);
        rep.samples += 1;
    }
    rep.check_count("angles with non-decreasing distance", monotone_violations);
    rep.check(
        "distance to (+-1,+-1) square at largest radius",
        final_dist,
        0.05,
    );
    rep.check(
        "max |shape + i| for z2, z4, w1, w3 at largest radius",
        shape_dev,
        1e-3,
    );
    rep.check_count(
        "sector 0<theta<pi/4: |Re v|<|Re u| or not |l|>|m|>1",
        sector_order,
    );
    rep.check(
        "sector 0<theta<pi/4: ||p| - 1| at largest radius",
        sector_p,
        0.05,
    );
    if let Some(s) = sector_sign.first() {
        let sign = if *s < 0.0 { '-' } else { '+' };
        rep.note(format!(
            "sector 0<theta<pi/4: p tends to {sign}1 with this meridian orientation"
        ));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_layout() {
        let s = theorem2_samples(64, 1e-3);
        assert_eq!(s.len(), 64);
        assert!((s[0].1 - (FRAC_PI_4 + 1e-3)).abs() < 1e-15);
        assert!((s[15].1 - (3.0 * FRAC_PI_4 - 1e-3)).abs() < 1e-12);
        assert_eq!(s[16].0, 1);
    }

    #[test]
    fn cut_distance() {
        assert!(cut_direction_distance(FRAC_PI_4) < 1e-15);
        assert!((cut_direction_distance(PI / 16.0) - 3.0 * PI / 16.0).abs() < 1e-12);
        assert!((cut_direction_distance(-FRAC_PI_4 + 0.01) - 0.01).abs() < 1e-12);
    }

    #[test]
    fn small_runs_pass() {
        assert!(verify_consistency(200, 1).passed());
        let t2 = verify_theorem2(8);
        assert!(t2.passed(), "{t2}");
    }
}
