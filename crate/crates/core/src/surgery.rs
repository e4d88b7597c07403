//! Dehn filling equations `p u + q v = 2πi` on one cusp pair.
//!
//! Coefficients are given on a cusp of the orbifold `A`; the lift to `A*`
//! fills both cusps of the corresponding pair with the same `(p, q)`, so one
//! equation in one parameter suffices per pair.

use std::f64::consts::PI;

use serde::Serialize;

use crate::continuation::{branch_of, continue_log, track_logs, PathSpec, Side};
use crate::error::{Result, SurgeryError};
use crate::holonomy::{holonomy_words, LogHolonomy};
use crate::shapes::{shapes_from_params, ParamPoint};
use crate::{puncture_distance, Cplx, CENTER};

const TWO_PI_I: Cplx = Cplx::new(0.0, 2.0 * PI);

/// Real surgery coefficients on one lifted cusp pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FillingCoeffs {
    pub p: f64,
    pub q: f64,
}

impl FillingCoeffs {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(p.is_finite() && q.is_finite()) {
            return Err(SurgeryError::InvalidInput(format!(
                "({p}, {q}) is not finite"
            )));
        }
        if p == 0.0 && q == 0.0 {
            return Err(SurgeryError::InvalidInput("(0, 0) is not a filling".into()));
        }
        Ok(FillingCoeffs { p, q })
    }

    /// `Some((p, q))` when both coefficients are integers.
    pub fn as_integers(&self) -> Option<(i64, i64)> {
        let int = |x: f64| (x.fract() == 0.0 && x.abs() < 1e15).then_some(x as i64);
        Some((int(self.p)?, int(self.q)?))
    }

    pub fn is_primitive(&self) -> bool {
        matches!(self.as_integers(), Some((p, q)) if gcd(p, q) == 1)
    }
}

/// Either the complete cusp (`u = 0`) or a Dehn filling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Filling {
    Complete,
    Coeffs(FillingCoeffs),
}

impl Filling {
    pub fn coeffs(p: f64, q: f64) -> Result<Self> {
        FillingCoeffs::new(p, q).map(Filling::Coeffs)
    }

    /// Value of the filling equation for the given logs.
    pub fn residual(&self, lh: &LogHolonomy) -> Cplx {
        match self {
            Filling::Complete => lh.u,
            Filling::Coeffs(f) => lh.u * f.p + lh.v * f.q - TWO_PI_I,
        }
    }

    fn derivative(&self, du: Cplx, dv: Cplx) -> Cplx {
        match self {
            Filling::Complete => du,
            Filling::Coeffs(f) => du * f.p + dv * f.q,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveResult {
    pub param: Cplx,
    pub log_hol: LogHolonomy,
    pub residual: f64,
    pub iterations: usize,
    pub path_taken: PathSpec,
}

/// Newton solver for one side's filling equation.
#[derive(Debug, Clone)]
pub struct FillingSolver {
    pub tol: f64,
    pub max_iterations: usize,
    /// Stop with [`SurgeryError::DegenerateJacobian`] below this `|g'|`.
    pub min_derivative: f64,
    /// Radius of the restart circle around `(1+i)/2`.
    pub restart_radius: f64,
}

impl Default for FillingSolver {
    fn default() -> Self {
        FillingSolver {
            tol: 1e-12,
            max_iterations: 200,
            min_derivative: 1e-14,
            restart_radius: 0.2,
        }
    }
}

/// Iterates closer than this to a puncture are reported as degenerate.
const PUNCTURE_LANDING: f64 = 1e-10;

/// Iterates farther than this from `(1+i)/2` end the attempt. Solutions this
/// far out belong to fillings within about `1e-5` of the unit square.
pub const ESCAPE_RADIUS: f64 = 1e4;

impl FillingSolver {
    pub fn with_tol(tol: f64) -> Self {
        FillingSolver {
            tol,
            ..Default::default()
        }
    }

    /// Linearization of the filling equation at the complete structure.
    pub fn default_start(f: &FillingCoeffs, side: Side) -> Cplx {
        let (du, dv) = side.dlogs(CENTER);
        CENTER + TWO_PI_I / (du * f.p + dv * f.q)
    }

    pub fn solve(
        &self,
        f: &Filling,
        side: Side,
        start: Option<Cplx>,
        path_hint: Option<&PathSpec>,
    ) -> Result<SolveResult> {
        let coeffs = match f {
            Filling::Complete => {
                return Ok(SolveResult {
                    param: CENTER,
                    log_hol: LogHolonomy::complete(),
                    residual: 0.0,
                    iterations: 0,
                    path_taken: PathSpec::at_center(),
                })
            }
            Filling::Coeffs(c) => c,
        };
        if let Some(s) = start {
            return self.newton(f, side, s, path_hint);
        }
        let first = self.newton(f, side, Self::default_start(coeffs, side), path_hint);
        let first_err = match first {
            Ok(r) => return Ok(r),
            Err(e @ SurgeryError::DegenerateShape(_)) => return Err(e),
            Err(e) => e,
        };
        for k in 0..8 {
            let s = CENTER + Cplx::from_polar(self.restart_radius, PI * k as f64 / 4.0 + PI / 8.0);
            if let Ok(r) = self.newton(f, side, s, path_hint) {
                return Ok(r);
            }
        }
        Err(first_err)
    }

    fn path_to(&self, x: Cplx, hint: Option<&PathSpec>) -> Result<PathSpec> {
        match hint {
            Some(h) => h.extended_to(x),
            None => PathSpec::straight(x),
        }
    }

    fn newton(
        &self,
        f: &Filling,
        side: Side,
        start: Cplx,
        hint: Option<&PathSpec>,
    ) -> Result<SolveResult> {
        let mut x = start;
        let mut residual = f64::INFINITY;
        let mut iterations_done = 0;
        for iter in 0..=self.max_iterations {
            iterations_done = iter;
            if puncture_distance(x) < PUNCTURE_LANDING {
                return Err(SurgeryError::DegenerateShape(format!(
                    "{} iterate {x} converged onto a puncture",
                    side.name()
                )));
            }
            if (x - CENTER).norm() > ESCAPE_RADIUS {
                break;
            }
            let path = self.path_to(x, hint)?;
            let lh = continue_log(&path, side)?;
            let g = f.residual(&lh);
            residual = g.norm();
            if residual < self.tol {
                return Ok(SolveResult {
                    param: x,
                    log_hol: lh,
                    residual,
                    iterations: iter,
                    path_taken: path,
                });
            }
            if iter == self.max_iterations {
                break;
            }
            let (du, dv) = side.dlogs(x);
            let gp = f.derivative(du, dv);
            if gp.norm() < self.min_derivative {
                return Err(SurgeryError::DegenerateJacobian(gp.norm()));
            }
            let next = x - g / gp;
            if !(next.re.is_finite() && next.im.is_finite()) {
                break;
            }
            x = next;
        }
        Err(SurgeryError::NoConvergence {
            iterations: iterations_done,
            residual,
        })
    }
}

/// Solve one side with the default solver.
pub fn solve_filling(
    f: &Filling,
    side: Side,
    start: Option<Cplx>,
    path_hint: Option<&PathSpec>,
) -> Result<SolveResult> {
    FillingSolver::default().solve(f, side, start, path_hint)
}

/// Below this `|Im(conj(u) v)|` the real 2×2 system is treated as singular.
pub const SINGULAR_DET: f64 = 1e-13;

/// The unique real `(p, q)` with `p u + q v = 2πi`.
pub fn filling_from_log(lh: &LogHolonomy) -> Result<FillingCoeffs> {
    let (u, v) = (lh.u, lh.v);
    let det = u.re * v.im - u.im * v.re;
    if det.is_nan() || det.abs() < SINGULAR_DET {
        return Err(SurgeryError::SingularSystem(det));
    }
    Ok(FillingCoeffs {
        p: -2.0 * PI * v.re / det,
        q: 2.0 * PI * u.re / det,
    })
}

/// Continue along `path` (extended to `x` if it ends elsewhere) and invert
/// the filling equation.
pub fn filling_from_param(x: Cplx, side: Side, path: &PathSpec) -> Result<FillingCoeffs> {
    let path = if path.endpoint() == x {
        path.clone()
    } else {
        path.extended_to(x)?
    };
    filling_from_log(&continue_log(&path, side)?)
}

/// Both sides solved independently and by one coupled Newton iteration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JointSolution {
    pub alpha: SolveResult,
    pub beta: SolveResult,
    pub coupled_alpha: Cplx,
    pub coupled_beta: Cplx,
    pub coupled_iterations: usize,
    pub coupled_residual: f64,
    /// Max distance between the coupled and independent solutions.
    pub discrepancy: f64,
}

/// Agreement required between coupled and independent solves.
pub const JOINT_AGREEMENT: f64 = 1e-10;

pub fn joint_solve(f_alpha: &Filling, f_beta: &Filling) -> Result<JointSolution> {
    joint_solve_with(&FillingSolver::default(), f_alpha, f_beta)
}

pub fn joint_solve_with(
    solver: &FillingSolver,
    f_alpha: &Filling,
    f_beta: &Filling,
) -> Result<JointSolution> {
    let alpha = solver.solve(f_alpha, Side::Alpha, None, None)?;
    let beta = solver.solve(f_beta, Side::Beta, None, None)?;
    let start = |f: &Filling, side| match f {
        Filling::Complete => CENTER,
        Filling::Coeffs(c) => FillingSolver::default_start(c, side),
    };
    let (ca, cb, iters, res) = coupled_newton(
        f_alpha,
        f_beta,
        start(f_alpha, Side::Alpha),
        start(f_beta, Side::Beta),
        solver,
    )
    // the coupled iteration has no restart logic; seed it from the answer
    .or_else(|_| {
        coupled_newton(
            f_alpha,
            f_beta,
            alpha.param + Cplx::new(1e-3, 0.0),
            beta.param + Cplx::new(0.0, 1e-3),
            solver,
        )
    })?;
    let discrepancy = (ca - alpha.param).norm().max((cb - beta.param).norm());
    if discrepancy > JOINT_AGREEMENT {
        return Err(SurgeryError::NoConvergence {
            iterations: iters,
            residual: discrepancy,
        });
    }
    Ok(JointSolution {
        alpha,
        beta,
        coupled_alpha: ca,
        coupled_beta: cb,
        coupled_iterations: iters,
        coupled_residual: res,
        discrepancy,
    })
}

/// Word-product holonomies `[m_W, l_W, m_Y, l_Y]` on the full shape vector.
fn word_values(a: Cplx, b: Cplx) -> Result<[Cplx; 4]> {
    let p = ParamPoint::new(a, b)?;
    let h = holonomy_words(&shapes_from_params(&p)?)?;
    Ok([h.w.m, h.w.l, h.y.m, h.y.l])
}

/// Logs `[u_W, v_W, u_Y, v_Y]` continued along the straight segment from
/// `(c, c)` to `(a, b)` in parameter space.
fn coupled_logs(a: Cplx, b: Cplx) -> Result<[Cplx; 4]> {
    let (da, db) = (a - CENTER, b - CENTER);
    let length = (da.norm_sqr() + db.norm_sqr()).sqrt();
    let mut logs = [Cplx::new(0.0, 0.0); 4];
    let ones = [Cplx::new(1.0, 0.0); 4];
    track_logs(
        &mut logs,
        |t| word_values(CENTER + da * t, CENTER + db * t).unwrap_or([Cplx::new(f64::NAN, 0.0); 4]),
        |t| puncture_distance(CENTER + da * t).min(puncture_distance(CENTER + db * t)),
        |t| CENTER + db * t,
        length,
        0.5,
    )?;
    let vals = if length == 0.0 {
        ones
    } else {
        word_values(a, b)?
    };
    let mut out = [Cplx::new(0.0, 0.0); 4];
    for k in 0..4 {
        out[k] = vals[k].ln() + TWO_PI_I * branch_of(logs[k], vals[k]) as f64;
    }
    Ok(out)
}

fn coupled_residual(f_alpha: &Filling, f_beta: &Filling, logs: &[Cplx; 4]) -> [Cplx; 2] {
    let beta_lh = LogHolonomy {
        u: logs[0],
        v: logs[1],
        branch_u: 0,
        branch_v: 0,
    };
    let alpha_lh = LogHolonomy {
        u: logs[2],
        v: logs[3],
        branch_u: 0,
        branch_v: 0,
    };
    [f_alpha.residual(&alpha_lh), f_beta.residual(&beta_lh)]
}

/// Two-variable Newton on the word-product holonomies with a finite-difference
/// Jacobian. Nothing here assumes the equations decouple.
fn coupled_newton(
    f_alpha: &Filling,
    f_beta: &Filling,
    a0: Cplx,
    b0: Cplx,
    solver: &FillingSolver,
) -> Result<(Cplx, Cplx, usize, f64)> {
    let (mut a, mut b) = (a0, b0);
    let h = 1e-7;
    let mut norm = f64::INFINITY;
    for iter in 0..=solver.max_iterations {
        if puncture_distance(a) < PUNCTURE_LANDING || puncture_distance(b) < PUNCTURE_LANDING {
            return Err(SurgeryError::DegenerateShape(
                "coupled iterate at a puncture".into(),
            ));
        }
        let logs = coupled_logs(a, b)?;
        let r = coupled_residual(f_alpha, f_beta, &logs);
        norm = r[0].norm().max(r[1].norm());
        if norm < solver.tol {
            return Ok((a, b, iter, norm));
        }
        let base = word_values(a, b)?;
        // perturbed logs: same branch, shifted by the principal log of the ratio
        let shifted = |da: Cplx, db: Cplx| -> Result<[Cplx; 2]> {
            let v = word_values(a + da, b + db)?;
            let mut l = logs;
            for k in 0..4 {
                l[k] += (v[k] / base[k]).ln();
            }
            Ok(coupled_residual(f_alpha, f_beta, &l))
        };
        let hc = Cplx::new(h, 0.0);
        let zero = Cplx::new(0.0, 0.0);
        let (ap, am) = (shifted(hc, zero)?, shifted(-hc, zero)?);
        let (bp, bm) = (shifted(zero, hc)?, shifted(zero, -hc)?);
        let j = [
            [(ap[0] - am[0]) / (2.0 * h), (bp[0] - bm[0]) / (2.0 * h)],
            [(ap[1] - am[1]) / (2.0 * h), (bp[1] - bm[1]) / (2.0 * h)],
        ];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.norm() < solver.min_derivative {
            return Err(SurgeryError::DegenerateJacobian(det.norm()));
        }
        let step_a = (r[0] * j[1][1] - r[1] * j[0][1]) / det;
        let step_b = (j[0][0] * r[1] - j[1][0] * r[0]) / det;
        a -= step_a;
        b -= step_b;
        if !(a.re.is_finite() && a.im.is_finite() && b.re.is_finite() && b.im.is_finite()) {
            break;
        }
    }
    Err(SurgeryError::NoConvergence {
        iterations: solver.max_iterations,
        residual: norm,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoreGeodesic {
    /// Translation length plus `i` times torsion.
    pub complex_length: Cplx,
    pub r: i64,
    pub s: i64,
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(g, x, y)` with `a x + b y = g`.
fn extended_euclid(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = extended_euclid(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Integers `(r, s)` with `p s - q r = 1`, `|r|` minimal.
pub fn dual_curve(p: i64, q: i64) -> Result<(i64, i64)> {
    let (g, x, y) = extended_euclid(p, q);
    let (x, y) = if g < 0 { (-x, -y) } else { (x, y) };
    if g.abs() != 1 {
        return Err(SurgeryError::NotPrimitive {
            p: p as f64,
            q: q as f64,
        });
    }
    // p x + q y = 1  =>  s = x, r = -y
    let (mut r, mut s) = (-y, x);
    if p != 0 {
        let k = (-(r as f64) / p as f64).round() as i64;
        r += k * p;
        s += k * q;
    } else {
        let k = (-(s as f64) / q as f64).round() as i64;
        r += k * p;
        s += k * q;
    }
    Ok((r, s))
}

/// Complex length `r u + s v` of the core geodesic of an integral primitive
/// filling, sign-normalized to a non-negative real part.
pub fn core_geodesic(f: &FillingCoeffs, lh: &LogHolonomy) -> Result<CoreGeodesic> {
    let not_primitive = SurgeryError::NotPrimitive { p: f.p, q: f.q };
    let (p, q) = f.as_integers().ok_or(not_primitive.clone())?;
    if gcd(p, q) != 1 {
        return Err(not_primitive);
    }
    let (r, s) = dual_curve(p, q)?;
    let mut len = lh.u * r as f64 + lh.v * s as f64;
    if len.re < 0.0 {
        len = -len;
    }
    Ok(CoreGeodesic {
        complex_length: len,
        r,
        s,
    })
}

/// Real length of the filled geodesic for any real `(p, q)`.
///
/// For every real `(r, s)` with `p s - q r = 1`, `Re(r u + s v)` is the same
/// number, namely `|Re v Im u - Re u Im v| / 2π`.
pub fn core_length_real(lh: &LogHolonomy) -> f64 {
    (lh.v.re * lh.u.im - lh.u.re * lh.v.im).abs() / (2.0 * PI)
}
