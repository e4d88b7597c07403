//! Cusp holonomies of `A*`.
//!
//! The meridian/longitude holonomy derivatives are products of shape
//! parameters (the "words"). They collapse to rational functions of a single
//! parameter: `l_W = l_Z`, `m_W = m_Z` depend on `beta` only, `l_Y = l_X`,
//! `m_Y = m_X` on `alpha` only. That separation is the whole content of cusp
//! isolation for the quotient orbifold.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{Result, SurgeryError};
use crate::shapes::{shapes_from_params, ParamPoint, ShapeVector};
use crate::{puncture_distance, Cplx, CENTER, EPS0};

const I: Cplx = Cplx::new(0.0, 1.0);
const ONE: Cplx = Cplx::new(1.0, 0.0);
const ONE_I: Cplx = Cplx::new(1.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CuspId {
    W,
    X,
    Y,
    Z,
}

impl CuspId {
    pub const ALL: [CuspId; 4] = [CuspId::W, CuspId::X, CuspId::Y, CuspId::Z];

    /// `W`, `Z` deform with `beta`; `X`, `Y` with `alpha`.
    pub fn is_beta_side(self) -> bool {
        matches!(self, CuspId::W | CuspId::Z)
    }
}

impl fmt::Display for CuspId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CuspId::W => "W",
            CuspId::X => "X",
            CuspId::Y => "Y",
            CuspId::Z => "Z",
        };
        f.write_str(s)
    }
}

/// Longitude and meridian holonomy derivatives of one cusp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CuspHolonomy {
    pub l: Cplx,
    pub m: Cplx,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolonomyValues {
    pub w: CuspHolonomy,
    pub x: CuspHolonomy,
    pub y: CuspHolonomy,
    pub z: CuspHolonomy,
}

impl HolonomyValues {
    pub fn get(&self, c: CuspId) -> CuspHolonomy {
        match c {
            CuspId::W => self.w,
            CuspId::X => self.x,
            CuspId::Y => self.y,
            CuspId::Z => self.z,
        }
    }
}

/// Branch-tracked logarithms of one cusp's holonomies:
/// `u = Log m + 2 pi i branch_u`, `v = Log l + 2 pi i branch_v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogHolonomy {
    pub u: Cplx,
    pub v: Cplx,
    pub branch_u: i64,
    pub branch_v: i64,
}

impl LogHolonomy {
    /// The complete structure: both logs vanish on the principal branch.
    pub fn complete() -> Self {
        LogHolonomy {
            u: Cplx::new(0.0, 0.0),
            v: Cplx::new(0.0, 0.0),
            branch_u: 0,
            branch_v: 0,
        }
    }

    pub fn from_branches(m: Cplx, l: Cplx, branch_u: i64, branch_v: i64) -> Self {
        let two_pi_i = Cplx::new(0.0, 2.0 * PI);
        LogHolonomy {
            u: m.ln() + two_pi_i * branch_u as f64,
            v: l.ln() + two_pi_i * branch_v as f64,
            branch_u,
            branch_v,
        }
    }

    /// Meridian holonomy `exp(u)`.
    pub fn meridian(&self) -> Cplx {
        self.u.exp()
    }

    /// Longitude holonomy `exp(v)`.
    pub fn longitude(&self) -> Cplx {
        self.v.exp()
    }
}

fn check_factor(name: &str, f: Cplx) -> Result<Cplx> {
    if !(f.re.is_finite() && f.im.is_finite()) || f.norm() < EPS0 || f.norm() > 1.0 / EPS0 {
        return Err(SurgeryError::DegenerateShape(format!(
            "holonomy factor {name} = {f} is degenerate"
        )));
    }
    Ok(f)
}

/// Evaluate the eight holonomy words factor by factor.
pub fn holonomy_words(s: &ShapeVector) -> Result<HolonomyValues> {
    let p = |name: &str, z: Cplx| check_factor(name, z);
    let (z1p, z2p, z3p, z4p) = (
        p("z1'", s.z1.z_prime())?,
        p("z2'", s.z2.z_prime())?,
        p("z3'", s.z3.z_prime())?,
        p("z4'", s.z4.z_prime())?,
    );
    let (z1pp, z2pp, z3pp, z4pp) = (
        p("z1''", s.z1.z_doubleprime())?,
        p("z2''", s.z2.z_doubleprime())?,
        p("z3''", s.z3.z_doubleprime())?,
        p("z4''", s.z4.z_doubleprime())?,
    );
    let (w1p, w2p, w3p, w4p) = (
        p("w1'", s.w1.z_prime())?,
        p("w2'", s.w2.z_prime())?,
        p("w3'", s.w3.z_prime())?,
        p("w4'", s.w4.z_prime())?,
    );
    let (w1pp, w2pp, w3pp, w4pp) = (
        p("w1''", s.w1.z_doubleprime())?,
        p("w2''", s.w2.z_doubleprime())?,
        p("w3''", s.w3.z_doubleprime())?,
        p("w4''", s.w4.z_doubleprime())?,
    );
    Ok(HolonomyValues {
        w: CuspHolonomy {
            l: w4pp / z2pp / z1p * w1p,
            m: z2p / w4p / w3pp * z3pp,
        },
        z: CuspHolonomy {
            l: w2pp / z2pp / z3p * w1p,
            m: z2p / w2p / w3pp * z1pp,
        },
        y: CuspHolonomy {
            l: z3pp / z2pp / w2p * w3p,
            m: z2p / z3p / w1pp * w4pp,
        },
        x: CuspHolonomy {
            l: z3pp / z4pp / w2p * w1p,
            m: z4p / z3p / w3pp * w4pp,
        },
    })
}

fn pole_check(x: Cplx, name: &str) -> Result<()> {
    if puncture_distance(x) < EPS0 {
        return Err(SurgeryError::DegenerateShape(format!(
            "{name} = {x} is at a puncture"
        )));
    }
    Ok(())
}

/// `l_W(beta)`.
pub fn longitude_w(b: Cplx) -> Cplx {
    b * (b - I) / ((b - ONE) * (b - ONE_I))
}

/// `m_W(beta)`.
pub fn meridian_w(b: Cplx) -> Cplx {
    b * (b - ONE) / ((b - I) * (b - ONE_I))
}

/// `l_Y(alpha)`.
pub fn longitude_y(a: Cplx) -> Cplx {
    a * (a - ONE) / ((a - I) * (a - ONE_I))
}

/// `m_Y(alpha)`.
pub fn meridian_y(a: Cplx) -> Cplx {
    (a - ONE) * (a - ONE_I) / (a * (a - I))
}

/// `d log l_W / d beta` as partial fractions.
pub fn dlog_longitude_w(b: Cplx) -> Cplx {
    ONE / b + ONE / (b - I) - ONE / (b - ONE) - ONE / (b - ONE_I)
}

/// `d log m_W / d beta`.
pub fn dlog_meridian_w(b: Cplx) -> Cplx {
    ONE / b + ONE / (b - ONE) - ONE / (b - I) - ONE / (b - ONE_I)
}

/// `d log l_Y / d alpha`.
pub fn dlog_longitude_y(a: Cplx) -> Cplx {
    ONE / a + ONE / (a - ONE) - ONE / (a - I) - ONE / (a - ONE_I)
}

/// `d log m_Y / d alpha`.
pub fn dlog_meridian_y(a: Cplx) -> Cplx {
    ONE / (a - ONE) + ONE / (a - ONE_I) - ONE / a - ONE / (a - I)
}

pub fn holonomy_closed_form(p: &ParamPoint) -> Result<HolonomyValues> {
    pole_check(p.alpha(), "alpha")?;
    pole_check(p.beta(), "beta")?;
    let wz = CuspHolonomy {
        l: longitude_w(p.beta()),
        m: meridian_w(p.beta()),
    };
    let xy = CuspHolonomy {
        l: longitude_y(p.alpha()),
        m: meridian_y(p.alpha()),
    };
    Ok(HolonomyValues {
        w: wz,
        z: wz,
        x: xy,
        y: xy,
    })
}

/// Residuals of the single-variable cancellations and cusp-pair equalities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CancellationResiduals {
    /// `w4'' / z1' - 1/2`
    pub w4pp_over_z1p: Cplx,
    /// `z3'' / w4' - 1/2`, the meridian counterpart.
    pub z3pp_over_w4p: Cplx,
    pub l_w_minus_l_z: Cplx,
    pub m_w_minus_m_z: Cplx,
    pub l_y_minus_l_x: Cplx,
    pub m_y_minus_m_x: Cplx,
}

impl CancellationResiduals {
    pub fn max_norm(&self) -> f64 {
        [
            self.w4pp_over_z1p,
            self.z3pp_over_w4p,
            self.l_w_minus_l_z,
            self.m_w_minus_m_z,
            self.l_y_minus_l_x,
            self.m_y_minus_m_x,
        ]
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max)
    }
}

pub fn cancellation_identities(p: &ParamPoint) -> Result<CancellationResiduals> {
    let s = shapes_from_params(p)?;
    let h = holonomy_words(&s)?;
    let half = Cplx::new(0.5, 0.0);
    Ok(CancellationResiduals {
        w4pp_over_z1p: s.w4.z_doubleprime() / s.z1.z_prime() - half,
        z3pp_over_w4p: s.z3.z_doubleprime() / s.w4.z_prime() - half,
        l_w_minus_l_z: h.w.l - h.z.l,
        m_w_minus_m_z: h.w.m - h.z.m,
        l_y_minus_l_x: h.y.l - h.x.l,
        m_y_minus_m_x: h.y.m - h.x.m,
    })
}

/// Modulus of a complete cusp, normalized to the upper half plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CuspModulus {
    pub tau: Cplx,
    /// Set when the raw ratio had negative imaginary part and was conjugated.
    pub flipped: bool,
}

impl CuspModulus {
    pub fn from_ratio(raw: Cplx) -> Self {
        if raw.im < 0.0 {
            CuspModulus {
                tau: raw.conj(),
                flipped: true,
            }
        } else {
            CuspModulus {
                tau: raw,
                flipped: false,
            }
        }
    }
}

/// `(dv/dx) / (du/dx)` at the complete structure, from the closed forms.
pub fn cusp_modulus_complete(c: CuspId) -> CuspModulus {
    let raw = if c.is_beta_side() {
        dlog_longitude_w(CENTER) / dlog_meridian_w(CENTER)
    } else {
        dlog_longitude_y(CENTER) / dlog_meridian_y(CENTER)
    };
    CuspModulus::from_ratio(raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_at_complete_structure_are_one() {
        let s = shapes_from_params(&ParamPoint::complete()).unwrap();
        let h = holonomy_words(&s).unwrap();
        for c in CuspId::ALL {
            let ch = h.get(c);
            assert!((ch.l - ONE).norm() < 1e-14, "l_{c} = {}", ch.l);
            assert!((ch.m - ONE).norm() < 1e-14, "m_{c} = {}", ch.m);
        }
    }

    #[test]
    fn closed_form_at_center() {
        let h = holonomy_closed_form(&ParamPoint::complete()).unwrap();
        assert!((h.w.l - ONE).norm() < 1e-15);
        assert!((h.y.l - ONE).norm() < 1e-15);
        assert!((h.y.m - ONE).norm() < 1e-15);
    }

    #[test]
    fn closed_form_rejects_punctures() {
        let p = ParamPoint::with_eps(CENTER, I, 0.0).unwrap();
        assert!(holonomy_closed_form(&p).is_err());
    }

    #[test]
    fn words_match_closed_form_near_pole() {
        let beta = I + Cplx::new(1e-6, 1e-6);
        let p = ParamPoint::new(Cplx::new(0.3, 0.8), beta).unwrap();
        let words = holonomy_words(&shapes_from_params(&p).unwrap()).unwrap();
        let closed = holonomy_closed_form(&p).unwrap();
        assert!(closed.w.m.norm() > 1e5);
        for (a, b) in [(words.w.l, closed.w.l), (words.w.m, closed.w.m)] {
            assert!((a - b).norm() / b.norm() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn half_cancellation_at_center() {
        let r = cancellation_identities(&ParamPoint::complete()).unwrap();
        assert!(r.max_norm() < 1e-15);
    }

    #[test]
    fn modulus_is_i_on_both_sides() {
        for c in CuspId::ALL {
            let m = cusp_modulus_complete(c);
            assert!((m.tau - I).norm() < 1e-12, "{c}: {}", m.tau);
            assert!(!m.flipped);
        }
    }

    #[test]
    fn modulus_flip_conjugates() {
        let m = CuspModulus::from_ratio(Cplx::new(0.3, -2.0));
        assert!(m.flipped);
        assert_eq!(m.tau, Cplx::new(0.3, 2.0));
    }

    #[test]
    fn log_holonomy_round_trip() {
        let m = Cplx::new(-0.4, 1.7);
        let l = Cplx::new(3.0, -0.2);
        let lh = LogHolonomy::from_branches(m, l, -2, 3);
        assert!((lh.meridian() - m).norm() < 1e-12);
        assert!((lh.longitude() - l).norm() < 1e-12);
    }
}
