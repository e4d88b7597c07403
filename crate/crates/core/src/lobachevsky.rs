//! Lobachevsky function and ideal simplex volumes.
//!
//! `Λ(θ) = Cl₂(2θ) / 2`. The Clausen function is evaluated on `[-π, π]` by its
//! Bernoulli expansion
//! `Cl₂(x) = x - x ln|x| + Σ_{n≥1} 2ζ(2n) x^{2n+1} / ((2π)^{2n} 2n (2n+1))`,
//! whose terms shrink like `4^{-n}` at `|x| = π`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::shapes::{ShapeVector, SimplexShape};

const SERIES_TERMS: usize = 30;

/// ζ(s) for even `s ≥ 2` by direct summation plus an Euler-Maclaurin tail.
fn zeta_even(s: u32) -> f64 {
    const N: u32 = 100;
    let sf = s as f64;
    let n = N as f64;
    let tail = n.powf(1.0 - sf) / (sf - 1.0) + 0.5 * n.powf(-sf) + sf * n.powf(-sf - 1.0) / 12.0
        - sf * (sf + 1.0) * (sf + 2.0) * n.powf(-sf - 3.0) / 720.0;
    let mut sum = tail;
    for k in (1..N).rev() {
        sum += (k as f64).powf(-sf);
    }
    sum
}

fn clausen_coefficients() -> &'static [f64; SERIES_TERMS] {
    static COEFFS: OnceLock<[f64; SERIES_TERMS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut c = [0.0; SERIES_TERMS];
        for (i, slot) in c.iter_mut().enumerate() {
            let n = (i + 1) as u32;
            let two_n = 2.0 * n as f64;
            *slot =
                2.0 * zeta_even(2 * n) / ((2.0 * PI).powi(2 * n as i32) * two_n * (two_n + 1.0));
        }
        c
    })
}

/// Reduce to `(-π, π]`.
fn reduce(x: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut r = x - two_pi * (x / two_pi).round();
    if r <= -PI {
        r += two_pi;
    }
    r
}

/// Clausen function `Cl₂(x) = Σ sin(kx)/k²`.
pub fn clausen2(x: f64) -> f64 {
    let x = reduce(x);
    if x == 0.0 || x.abs() == PI {
        return 0.0;
    }
    let x2 = x * x;
    let coeffs = clausen_coefficients();
    let mut poly = 0.0;
    for c in coeffs.iter().rev() {
        poly = poly * x2 + c;
    }
    x - x * x.abs().ln() + poly * x * x2
}

/// `Λ(θ) = -∫₀^θ log|2 sin t| dt`.
pub fn lobachevsky(theta: f64) -> f64 {
    if !theta.is_finite() {
        return f64::NAN;
    }
    0.5 * clausen2(2.0 * reduce_half(theta))
}

/// Reduce to `(-π/2, π/2]` using π-periodicity.
fn reduce_half(t: f64) -> f64 {
    let mut r = t - PI * (t / PI).round();
    if r <= -PI / 2.0 {
        r += PI;
    }
    r
}

/// Signed volume of one ideal simplex; zero when flat, negative when
/// negatively oriented.
pub fn simplex_volume(s: &SimplexShape) -> f64 {
    lobachevsky(s.z().arg()) + lobachevsky(s.z_prime().arg()) + lobachevsky(s.z_doubleprime().arg())
}

/// Total signed volume of the eight simplices.
pub fn volume(s: &ShapeVector) -> f64 {
    s.as_array().iter().map(simplex_volume).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::shape_triple;
    use crate::Cplx;

    #[test]
    fn zeta_values() {
        assert!((zeta_even(2) - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta_even(4) - PI.powi(4) / 90.0).abs() < 1e-15);
        assert!((zeta_even(40) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn first_coefficient_is_one_over_72() {
        assert!((clausen_coefficients()[0] - 1.0 / 72.0).abs() < 1e-17);
    }

    #[test]
    fn zeros() {
        assert_eq!(lobachevsky(0.0), 0.0);
        assert!(lobachevsky(PI / 2.0).abs() < 1e-16);
        assert!(lobachevsky(PI).abs() < 1e-16);
    }

    #[test]
    fn catalan() {
        // G / 2
        assert!((lobachevsky(PI / 4.0) - 0.457_982_797_088_609_5).abs() < 1e-15);
    }

    #[test]
    fn maximum_at_pi_over_six() {
        // Λ(π/6) = (3/2) Λ(π/3), the regular-tetrahedron identity
        assert!((lobachevsky(PI / 6.0) - 1.5 * lobachevsky(PI / 3.0)).abs() < 1e-14);
    }

    #[test]
    fn flat_simplex_has_zero_volume() {
        for x in [2.5, -3.0, 0.4] {
            let s = shape_triple(Cplx::new(x, 0.0)).unwrap();
            assert!(simplex_volume(&s).abs() < 1e-15);
        }
    }

    #[test]
    fn conjugate_simplex_has_opposite_volume() {
        let z = Cplx::new(0.3, 0.9);
        let a = simplex_volume(&shape_triple(z).unwrap());
        let b = simplex_volume(&shape_triple(z.conj()).unwrap());
        assert!(a > 0.0);
        assert!((a + b).abs() < 1e-15);
    }

    #[test]
    fn nan_in_nan_out() {
        assert!(lobachevsky(f64::NAN).is_nan());
    }
}
