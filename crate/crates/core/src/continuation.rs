//! Analytic continuation of the log-holonomies `(u, v)`.
//!
//! The holonomies are single-valued rational functions of the parameter, but
//! their logarithms are not: the branch depends on the homotopy class of the
//! path from the complete structure in the plane punctured at `0, 1, i, 1+i`.
//! Paths are followed in adaptive steps. A step is accepted only if every
//! tracked quantity changes argument by less than `pi/2` and the step is
//! short compared to the distance to the nearest puncture.
//!
//! On the cut plane (the complex plane minus the four rays leaving the unit
//! square's corners away from its center) the result depends only on the
//! endpoint. That region is star-shaped about `(1+i)/2`, so [`PathSpec::straight`]
//! always stays inside it.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Result, SurgeryError};
use crate::holonomy::{
    dlog_longitude_w, dlog_longitude_y, dlog_meridian_w, dlog_meridian_y, longitude_w, longitude_y,
    meridian_w, meridian_y, LogHolonomy,
};
use crate::{puncture_distance, Cplx, CENTER, EPS0, PUNCTURES};

/// Smallest accepted step length.
pub const MIN_STEP: f64 = 1e-12;
/// Default upper bound on a single continuation step.
pub const DEFAULT_MAX_STEP: f64 = 0.5;
/// A straight path passing closer than this to a puncture gets a detour.
pub const DETOUR_TRIGGER: f64 = 0.05;
/// Radius of the detour arc around a puncture.
pub const DETOUR_CLEARANCE: f64 = 0.1;

/// Which cusp pair a one-variable computation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Parameter `alpha`, cusps `X` and `Y`.
    Alpha,
    /// Parameter `beta`, cusps `W` and `Z`.
    Beta,
}

impl Side {
    pub fn meridian(self, x: Cplx) -> Cplx {
        match self {
            Side::Alpha => meridian_y(x),
            Side::Beta => meridian_w(x),
        }
    }

    pub fn longitude(self, x: Cplx) -> Cplx {
        match self {
            Side::Alpha => longitude_y(x),
            Side::Beta => longitude_w(x),
        }
    }

    /// `(du/dx, dv/dx)`.
    pub fn dlogs(self, x: Cplx) -> (Cplx, Cplx) {
        match self {
            Side::Alpha => (dlog_meridian_y(x), dlog_longitude_y(x)),
            Side::Beta => (dlog_meridian_w(x), dlog_longitude_w(x)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Alpha => "alpha",
            Side::Beta => "beta",
        }
    }
}

/// Polyline starting at `(1+i)/2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathSpec {
    waypoints: Vec<Cplx>,
    max_step: f64,
}

impl PathSpec {
    pub fn new(waypoints: Vec<Cplx>, max_step: f64) -> Result<Self> {
        if waypoints.is_empty() {
            return Err(SurgeryError::InvalidInput("path has no waypoints".into()));
        }
        if (waypoints[0] - CENTER).norm() > 1e-15 {
            return Err(SurgeryError::InvalidInput(format!(
                "path must start at (1+i)/2, not {}",
                waypoints[0]
            )));
        }
        if max_step.is_nan() || max_step <= 0.0 {
            return Err(SurgeryError::InvalidInput(format!(
                "max_step {max_step} must be positive"
            )));
        }
        for w in &waypoints {
            if !(w.re.is_finite() && w.im.is_finite()) {
                return Err(SurgeryError::InvalidInput(format!(
                    "waypoint {w} is not finite"
                )));
            }
            if puncture_distance(*w) < EPS0 {
                return Err(SurgeryError::DegenerateShape(format!(
                    "waypoint {w} is at a puncture"
                )));
            }
        }
        Ok(PathSpec {
            waypoints,
            max_step,
        })
    }

    /// The constant path at the complete structure.
    pub fn at_center() -> Self {
        PathSpec {
            waypoints: vec![CENTER],
            max_step: DEFAULT_MAX_STEP,
        }
    }

    /// Path from `(1+i)/2` through the given points, in order.
    pub fn through(points: &[Cplx]) -> Result<Self> {
        let mut w = vec![CENTER];
        w.extend_from_slice(points);
        Self::new(w, DEFAULT_MAX_STEP)
    }

    /// Straight segment from `(1+i)/2` to `target`, detouring around any
    /// puncture it passes within [`DETOUR_TRIGGER`] of.
    pub fn straight(target: Cplx) -> Result<Self> {
        let a = CENTER;
        let d = target - a;
        let len2 = d.norm_sqr();
        let mut waypoints = vec![a];
        if len2 > 0.0 {
            let len = len2.sqrt();
            let mut detours: Vec<(f64, Vec<Cplx>)> = Vec::new();
            for p in PUNCTURES {
                let t_star = ((p - a) * d.conj()).re / len2;
                if t_star <= 0.0 || t_star >= 1.0 {
                    continue;
                }
                let foot = a + d * t_star;
                let dist = (foot - p).norm();
                if dist >= DETOUR_TRIGGER {
                    continue;
                }
                let half = (DETOUR_CLEARANCE * DETOUR_CLEARANCE - dist * dist).sqrt() / len;
                let (t1, t2) = (t_star - half, t_star + half);
                if t1 <= 0.0 || t2 >= 1.0 {
                    continue;
                }
                let x1 = a + d * t1;
                let x2 = a + d * t2;
                let phi1 = (x1 - p).arg();
                let mut sweep = (x2 - p).arg() - phi1;
                // minor arc: the side of the chord away from the puncture
                while sweep > PI {
                    sweep -= 2.0 * PI;
                }
                while sweep <= -PI {
                    sweep += 2.0 * PI;
                }
                let n = 8;
                let arc = (0..=n)
                    .map(|k| {
                        p + Cplx::from_polar(DETOUR_CLEARANCE, phi1 + sweep * k as f64 / n as f64)
                    })
                    .collect();
                detours.push((t1, arc));
            }
            detours.sort_by(|x, y| x.0.total_cmp(&y.0));
            for (_, arc) in detours {
                waypoints.extend(arc);
            }
            waypoints.push(target);
        }
        Self::new(waypoints, DEFAULT_MAX_STEP)
    }

    pub fn with_max_step(mut self, max_step: f64) -> Result<Self> {
        if max_step.is_nan() || max_step <= 0.0 {
            return Err(SurgeryError::InvalidInput(format!(
                "max_step {max_step} must be positive"
            )));
        }
        self.max_step = max_step;
        Ok(self)
    }

    /// Append one more waypoint.
    pub fn extended_to(&self, target: Cplx) -> Result<Self> {
        let mut w = self.waypoints.clone();
        if (target - *w.last().unwrap()).norm() > 0.0 {
            w.push(target);
        }
        Self::new(w, self.max_step)
    }

    pub fn waypoints(&self) -> &[Cplx] {
        &self.waypoints
    }

    pub fn max_step(&self) -> f64 {
        self.max_step
    }

    pub fn endpoint(&self) -> Cplx {
        *self.waypoints.last().unwrap()
    }

    /// True when no segment meets one of the four cut rays.
    pub fn in_cut_plane(&self) -> bool {
        self.waypoints
            .windows(2)
            .all(|s| !segment_meets_cut(s[0], s[1]))
    }
}

/// Whether `x` lies on one of the four rays leaving the corners of the unit
/// square away from its center.
pub fn on_cut(x: Cplx, tol: f64) -> bool {
    PUNCTURES.iter().any(|&p| {
        let dir = (p - CENTER) / (p - CENTER).norm();
        let rel = (x - p) * dir.conj();
        rel.re >= -tol && rel.im.abs() <= tol
    })
}

fn segment_meets_cut(a: Cplx, b: Cplx) -> bool {
    PUNCTURES.iter().any(|&p| {
        let dir = (p - CENTER) / (p - CENTER).norm();
        // rotate so the ray is the positive real axis from the origin
        let ra = (a - p) * dir.conj();
        let rb = (b - p) * dir.conj();
        if ra.im == 0.0 && ra.re >= 0.0 || rb.im == 0.0 && rb.re >= 0.0 {
            return true;
        }
        if ra.im.signum() == rb.im.signum() {
            return false;
        }
        let t = ra.im / (ra.im - rb.im);
        ra.re + t * (rb.re - ra.re) >= 0.0
    })
}

/// Continue `N` logarithms along a parametrized curve `t in [0, 1]`.
///
/// `logs` holds the logs at `t = 0` and receives the logs at `t = 1`.
/// `eval(t)` returns the tracked values, `clearance(t)` the distance to the
/// nearest singularity and `length` the total curve length.
pub(crate) fn track_logs<const N: usize>(
    logs: &mut [Cplx; N],
    eval: impl Fn(f64) -> [Cplx; N],
    clearance: impl Fn(f64) -> f64,
    position: impl Fn(f64) -> Cplx,
    length: f64,
    max_step: f64,
) -> Result<()> {
    if length == 0.0 {
        return Ok(());
    }
    let mut t = 0.0_f64;
    let mut vals = eval(0.0);
    let mut h = (max_step / length).min(1.0);
    while t < 1.0 {
        let limit = max_step.min(0.5 * clearance(t)) / length;
        h = h.min(limit).min(1.0 - t);
        loop {
            if h * length < MIN_STEP {
                let at = position(t);
                return Err(SurgeryError::StepCollapse {
                    re: at.re,
                    im: at.im,
                });
            }
            let t_next = if t + h >= 1.0 { 1.0 } else { t + h };
            let next = eval(t_next);
            let finite = next
                .iter()
                .all(|c| c.re.is_finite() && c.im.is_finite() && c.norm() > 0.0);
            let ok = finite
                && clearance(t_next) >= EPS0
                && next
                    .iter()
                    .zip(vals.iter())
                    .all(|(n, v)| (n / v).arg().abs() < FRAC_PI_2);
            if ok {
                for k in 0..N {
                    logs[k] += (next[k] / vals[k]).ln();
                }
                vals = next;
                t = t_next;
                h *= 2.0;
                break;
            }
            h *= 0.5;
        }
    }
    Ok(())
}

/// Snap a continued log to `Log(value) + 2 pi i k` and return `k`.
pub(crate) fn branch_of(continued: Cplx, value: Cplx) -> i64 {
    ((continued.im - value.arg()) / (2.0 * PI)).round() as i64
}

/// Continue `(u, v)` from `(0, 0)` at `(1+i)/2` along `path`.
pub fn continue_log(path: &PathSpec, side: Side) -> Result<LogHolonomy> {
    let mut logs = [Cplx::new(0.0, 0.0); 2];
    for seg in path.waypoints.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        let d = b - a;
        let pos = |t: f64| a + d * t;
        track_logs(
            &mut logs,
            |t| {
                let x = pos(t);
                [side.meridian(x), side.longitude(x)]
            },
            |t| puncture_distance(pos(t)),
            pos,
            d.norm(),
            path.max_step,
        )?;
    }
    let end = path.endpoint();
    let m = side.meridian(end);
    let l = side.longitude(end);
    Ok(LogHolonomy::from_branches(
        m,
        l,
        branch_of(logs[0], m),
        branch_of(logs[1], l),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    const I: Cplx = Cplx::new(0.0, 1.0);

    #[test]
    fn constant_path_is_complete() {
        let lh = continue_log(&PathSpec::at_center(), Side::Beta).unwrap();
        assert_eq!(lh, LogHolonomy::complete());
    }

    #[test]
    fn path_must_start_at_center() {
        assert!(PathSpec::new(vec![Cplx::new(0.2, 0.2)], 0.5).is_err());
        assert!(PathSpec::new(vec![], 0.5).is_err());
        assert!(PathSpec::through(&[I]).is_err());
    }

    #[test]
    fn straight_path_detours_near_puncture() {
        // passes 0.01 from the corner 1+i and continues beyond
        let target = Cplx::new(1.5, 1.52);
        let p = PathSpec::straight(target).unwrap();
        assert!(p.waypoints().len() > 2);
        for w in p.waypoints() {
            assert!((w - Cplx::new(1.0, 1.0)).norm() > 0.099, "{w}");
        }
        assert!(p.in_cut_plane());
        let direct = PathSpec::through(&[target]).unwrap();
        let a = continue_log(&p, Side::Beta).unwrap();
        let b = continue_log(&direct, Side::Beta).unwrap();
        assert!((a.u - b.u).norm() < 1e-12 && (a.v - b.v).norm() < 1e-12);
    }

    #[test]
    fn winding_a_puncture_shifts_branch() {
        // loop around beta = 1 counterclockwise
        let pts: Vec<Cplx> = (0..=16)
            .map(|k| Cplx::new(1.0, 0.0) + Cplx::from_polar(0.3, 2.0 * PI * k as f64 / 16.0 + 2.3))
            .collect();
        let mut w = vec![pts[0]];
        w.extend_from_slice(&pts[1..]);
        let looped = PathSpec::through(&w).unwrap();
        let direct = PathSpec::through(&[pts[0]]).unwrap();
        let a = continue_log(&looped, Side::Beta).unwrap();
        let b = continue_log(&direct, Side::Beta).unwrap();
        // m_W has a simple zero at 1, l_W a simple pole
        assert_eq!(a.branch_u - b.branch_u, 1);
        assert_eq!(a.branch_v - b.branch_v, -1);
        assert!(!looped.in_cut_plane());
    }

    #[test]
    fn cut_detection() {
        assert!(on_cut(Cplx::new(3.0, 3.0), 1e-12));
        assert!(on_cut(Cplx::new(-2.0, -2.0), 1e-12));
        assert!(!on_cut(Cplx::new(3.0, 0.0), 1e-12));
        assert!(PathSpec::straight(Cplx::new(50.0, 3.0))
            .unwrap()
            .in_cut_plane());
    }

    #[test]
    fn path_through_puncture_collapses() {
        // the straight line to 1.5+1.5i runs through the corner 1+i
        let p = PathSpec::through(&[Cplx::new(1.5, 1.5)]).unwrap();
        assert!(matches!(
            continue_log(&p, Side::Beta),
            Err(SurgeryError::StepCollapse { .. })
        ));
    }
}
