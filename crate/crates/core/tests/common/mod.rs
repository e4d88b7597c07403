#![allow(dead_code)]

use astar_dehn::Cplx;

/// `-∫₀^θ log(2 sin t) dt` for `0 < θ ≤ π/2`, by splitting off `log(2t)`
/// (integrated exactly) and applying composite Simpson to the smooth rest.
pub fn lobachevsky_quadrature(theta: f64) -> f64 {
    assert!(theta > 0.0 && theta <= std::f64::consts::FRAC_PI_2 + 1e-15);
    let n = 20_000;
    let h = theta / n as f64;
    let g = |t: f64| if t == 0.0 { 0.0 } else { (t.sin() / t).ln() };
    let mut sum = g(0.0) + g(theta);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * g(k as f64 * h);
    }
    let smooth = sum * h / 3.0;
    let singular = theta * (2.0 * theta).ln() - theta;
    -(singular + smooth)
}

pub const CENTER: Cplx = Cplx::new(0.5, 0.5);

/// Branch of `log(x - a)` whose cut is the ray from `a` pointing away from the
/// center, normalized to vanish at the center.
fn ray_log(x: Cplx, a: Cplx) -> Cplx {
    let away = (a - CENTER) / (a - CENTER).norm();
    let rot = -away.conj();
    ((x - a) * rot).ln() - ((CENTER - a) * rot).ln()
}

/// `(u, v)` of the beta side, continued through the cut plane from the center.
pub fn beta_logs_oracle(b: Cplx) -> (Cplx, Cplx) {
    let [p0, p1, pi, p1i] = [
        Cplx::new(0.0, 0.0),
        Cplx::new(1.0, 0.0),
        Cplx::new(0.0, 1.0),
        Cplx::new(1.0, 1.0),
    ];
    // m_W = b (b-1) / ((b-i)(b-1-i)),  l_W = b (b-i) / ((b-1)(b-1-i))
    let u = ray_log(b, p0) + ray_log(b, p1) - ray_log(b, pi) - ray_log(b, p1i);
    let v = ray_log(b, p0) + ray_log(b, pi) - ray_log(b, p1) - ray_log(b, p1i);
    (u, v)
}

/// `(u, v)` of the alpha side.
pub fn alpha_logs_oracle(a: Cplx) -> (Cplx, Cplx) {
    let [p0, p1, pi, p1i] = [
        Cplx::new(0.0, 0.0),
        Cplx::new(1.0, 0.0),
        Cplx::new(0.0, 1.0),
        Cplx::new(1.0, 1.0),
    ];
    // m_Y = (a-1)(a-1-i) / (a (a-i)),  l_Y = a (a-1) / ((a-i)(a-1-i))
    let u = ray_log(a, p1) + ray_log(a, p1i) - ray_log(a, p0) - ray_log(a, pi);
    let v = ray_log(a, p0) + ray_log(a, p1) - ray_log(a, pi) - ray_log(a, p1i);
    (u, v)
}
