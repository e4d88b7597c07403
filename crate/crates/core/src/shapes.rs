//! Shape parameters of the eight ideal tetrahedra as functions of `(alpha, beta)`.

use serde::Serialize;

use crate::error::{Result, SurgeryError};
use crate::{puncture_distance, Cplx, CENTER, EPS0};

const I: Cplx = Cplx::new(0.0, 1.0);
const ONE: Cplx = Cplx::new(1.0, 0.0);

/// Default band for calling a simplex flat.
pub const DEFAULT_FLAT_EPS: f64 = 1e-9;

/// A tetrahedron shape `z` together with `z' = (z-1)/z` and `z'' = 1/(1-z)`.
///
/// The companions are computed once at construction and never recomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexShape {
    z: Cplx,
    z_prime: Cplx,
    z_doubleprime: Cplx,
}

impl SimplexShape {
    /// Build the shape triple, rejecting `z` within `eps0` of `0` or `1`.
    pub fn new(z: Cplx, eps0: f64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(SurgeryError::DegenerateShape(format!(
                "non-finite shape {z}"
            )));
        }
        if z.norm() < eps0 {
            return Err(SurgeryError::DegenerateShape(format!("shape {z} is at 0")));
        }
        if (z - ONE).norm() < eps0 {
            return Err(SurgeryError::DegenerateShape(format!("shape {z} is at 1")));
        }
        Ok(SimplexShape {
            z,
            z_prime: (z - ONE) / z,
            z_doubleprime: ONE / (ONE - z),
        })
    }

    pub fn z(&self) -> Cplx {
        self.z
    }

    pub fn z_prime(&self) -> Cplx {
        self.z_prime
    }

    pub fn z_doubleprime(&self) -> Cplx {
        self.z_doubleprime
    }

    /// Always `-1` up to rounding.
    pub fn triple_product(&self) -> Cplx {
        self.z * self.z_prime * self.z_doubleprime
    }
}

/// `shape_triple` with the default degeneracy radius.
pub fn shape_triple(z: Cplx) -> Result<SimplexShape> {
    SimplexShape::new(z, EPS0)
}

/// A point `(alpha, beta)` of the parameter space, away from the punctures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamPoint {
    alpha: Cplx,
    beta: Cplx,
}

impl ParamPoint {
    pub fn new(alpha: Cplx, beta: Cplx) -> Result<Self> {
        Self::with_eps(alpha, beta, EPS0)
    }

    pub fn with_eps(alpha: Cplx, beta: Cplx, eps0: f64) -> Result<Self> {
        for (name, x) in [("alpha", alpha), ("beta", beta)] {
            if !(x.re.is_finite() && x.im.is_finite()) {
                return Err(SurgeryError::InvalidInput(format!(
                    "{name} = {x} is not finite"
                )));
            }
            if puncture_distance(x) < eps0 {
                return Err(SurgeryError::DegenerateShape(format!(
                    "{name} = {x} is at a puncture"
                )));
            }
        }
        Ok(ParamPoint { alpha, beta })
    }

    /// The complete structure `alpha = beta = (1+i)/2`.
    pub fn complete() -> Self {
        ParamPoint {
            alpha: CENTER,
            beta: CENTER,
        }
    }

    pub fn alpha(&self) -> Cplx {
        self.alpha
    }

    pub fn beta(&self) -> Cplx {
        self.beta
    }
}

/// Names of the eight simplices, in storage order.
pub const SIMPLEX_NAMES: [&str; 8] = ["z1", "z2", "z3", "z4", "w1", "w2", "w3", "w4"];

/// Which parameter each simplex depends on, in storage order.
pub const SIMPLEX_DEPENDS_ON_BETA: [bool; 8] = [false, true, false, true, true, false, true, false];

/// Raw alpha-side shapes `(z1, z3, w2, w4)`.
pub fn alpha_shapes(a: Cplx) -> [Cplx; 4] {
    let w4 = (a * I + a + ONE - I) / (a * I - a + ONE - I);
    let z1 = (a + a * I) / (2.0 - a + a * I);
    let w2 = (a * I + a - ONE - I) / (a * I - a + ONE + I);
    let z3 = (a * I + a - 2.0 * I) / (a * I - a);
    [z1, z3, w2, w4]
}

/// Raw beta-side shapes `(z2, z4, w1, w3)`.
pub fn beta_shapes(b: Cplx) -> [Cplx; 4] {
    let w1 = (2.0 * I - b - b * I) / (b - b * I);
    let z2 = (I - ONE - b - b * I) / (b - b * I + I - ONE);
    let w3 = (-b - b * I) / (b - b * I - 2.0);
    let z4 = (ONE + I - b - b * I) / (b - b * I - I - ONE);
    [z2, z4, w1, w3]
}

fn alpha_denominators(a: Cplx) -> [Cplx; 4] {
    [
        2.0 - a + a * I,
        a * I - a,
        a * I - a + ONE + I,
        a * I - a + ONE - I,
    ]
}

fn beta_denominators(b: Cplx) -> [Cplx; 4] {
    [
        b - b * I + I - ONE,
        b - b * I - I - ONE,
        b - b * I,
        b - b * I - 2.0,
    ]
}

/// The eight shapes of the triangulation at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeVector {
    pub z1: SimplexShape,
    pub z2: SimplexShape,
    pub z3: SimplexShape,
    pub z4: SimplexShape,
    pub w1: SimplexShape,
    pub w2: SimplexShape,
    pub w3: SimplexShape,
    pub w4: SimplexShape,
    pub source: ParamPoint,
}

impl ShapeVector {
    /// Shapes in the order of [`SIMPLEX_NAMES`].
    pub fn as_array(&self) -> [SimplexShape; 8] {
        [
            self.z1, self.z2, self.z3, self.z4, self.w1, self.w2, self.w3, self.w4,
        ]
    }
}

pub fn shapes_from_params(p: &ParamPoint) -> Result<ShapeVector> {
    shapes_from_params_eps(p, EPS0)
}

pub fn shapes_from_params_eps(p: &ParamPoint, eps0: f64) -> Result<ShapeVector> {
    // Denominators listed in the same order as the shapes they divide.
    let a_names = ["z1", "z3", "w2", "w4"];
    let b_names = ["z2", "z4", "w1", "w3"];
    for (name, d) in a_names.iter().zip(alpha_denominators(p.alpha)) {
        if d.norm() < eps0 {
            return Err(SurgeryError::DegenerateShape(format!(
                "{name}: denominator vanishes at alpha = {}",
                p.alpha
            )));
        }
    }
    for (name, d) in b_names.iter().zip(beta_denominators(p.beta)) {
        if d.norm() < eps0 {
            return Err(SurgeryError::DegenerateShape(format!(
                "{name}: denominator vanishes at beta = {}",
                p.beta
            )));
        }
    }
    let named = |name: &str, z: Cplx| {
        SimplexShape::new(z, eps0).map_err(|e| match e {
            SurgeryError::DegenerateShape(msg) => {
                SurgeryError::DegenerateShape(format!("{name}: {msg}"))
            }
            other => other,
        })
    };
    let [z1, z3, w2, w4] = alpha_shapes(p.alpha);
    let [z2, z4, w1, w3] = beta_shapes(p.beta);
    Ok(ShapeVector {
        z1: named("z1", z1)?,
        z2: named("z2", z2)?,
        z3: named("z3", z3)?,
        z4: named("z4", z4)?,
        w1: named("w1", w1)?,
        w2: named("w2", w2)?,
        w3: named("w3", w3)?,
        w4: named("w4", w4)?,
        source: *p,
    })
}

/// One gluing relation evaluated as `lhs - rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub relation: &'static str,
    pub value: Cplx,
}

/// Residuals of the edge and octagon relations satisfied by every shape vector.
pub fn consistency_residuals(s: &ShapeVector) -> Vec<Residual> {
    let (z1, z2, z3, z4) = (s.z1, s.z2, s.z3, s.z4);
    let (w1, w2, w3, w4) = (s.w1, s.w2, s.w3, s.w4);
    let r = |relation, value| Residual { relation, value };
    vec![
        r("w1*w2*w3*w4 = 1", w1.z * w2.z * w3.z * w4.z - ONE),
        r("z1*z2*z3*z4 = 1", z1.z * z2.z * z3.z * z4.z - ONE),
        r(
            "w1''*w2'*w3''*w4'*z1'*z2''*z3'*z4'' = 1",
            w1.z_doubleprime
                * w2.z_prime
                * w3.z_doubleprime
                * w4.z_prime
                * z1.z_prime
                * z2.z_doubleprime
                * z3.z_prime
                * z4.z_doubleprime
                - ONE,
        ),
        r("w1*w3*z1*z3 = 1", w1.z * w3.z * z1.z * z3.z - ONE),
        r("w1*w3 = -1", w1.z * w3.z + ONE),
        r("z2*z4 = -1", z2.z * z4.z + ONE),
        r(
            "w1''*w3''*z2''*z4'' = -1/4",
            w1.z_doubleprime * w3.z_doubleprime * z2.z_doubleprime * z4.z_doubleprime + 0.25,
        ),
        r("w2*w4 = -1", w2.z * w4.z + ONE),
        r("z1*z3 = -1", z1.z * z3.z + ONE),
        r(
            "w2'*w4'*z1'*z3' = -4",
            w2.z_prime * w4.z_prime * z1.z_prime * z3.z_prime + 4.0,
        ),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Positive,
    Flat,
    Negative,
}

impl Orientation {
    pub fn classify(z: Cplx, eps: f64) -> Self {
        if z.im > eps {
            Orientation::Positive
        } else if z.im < -eps {
            Orientation::Negative
        } else {
            Orientation::Flat
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Orientation::Positive => '+',
            Orientation::Flat => '0',
            Orientation::Negative => '-',
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrientationReport {
    pub classes: [Orientation; 8],
    pub epsilon: f64,
}

impl OrientationReport {
    pub fn get(&self, name: &str) -> Option<Orientation> {
        SIMPLEX_NAMES
            .iter()
            .position(|n| *n == name)
            .map(|i| self.classes[i])
    }

    /// Eight characters `+`, `0` or `-`, in the order of [`SIMPLEX_NAMES`].
    pub fn flags(&self) -> String {
        self.classes.iter().map(|c| c.symbol()).collect()
    }

    pub fn count(&self, o: Orientation) -> usize {
        self.classes.iter().filter(|c| **c == o).count()
    }
}

pub fn classify_orientation(s: &ShapeVector, eps: f64) -> OrientationReport {
    let arr = s.as_array();
    let mut classes = [Orientation::Flat; 8];
    for (c, shape) in classes.iter_mut().zip(arr.iter()) {
        *c = Orientation::classify(shape.z, eps);
    }
    OrientationReport {
        classes,
        epsilon: eps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Cplx, b: Cplx, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn triple_at_i() {
        let s = shape_triple(I).unwrap();
        assert!(close(s.z_prime(), Cplx::new(1.0, 1.0), 1e-15));
        assert!(close(s.z_doubleprime(), Cplx::new(0.5, 0.5), 1e-15));
        assert!(close(s.triple_product(), -ONE, 1e-15));
    }

    #[test]
    fn triple_at_two() {
        let s = shape_triple(Cplx::new(2.0, 0.0)).unwrap();
        assert_eq!(s.z_prime(), Cplx::new(0.5, 0.0));
        assert_eq!(s.z_doubleprime(), Cplx::new(-1.0, 0.0));
    }

    #[test]
    fn triple_rejects_zero_and_one() {
        assert!(matches!(
            shape_triple(ONE),
            Err(SurgeryError::DegenerateShape(_))
        ));
        assert!(matches!(
            shape_triple(Cplx::new(1e-14, 0.0)),
            Err(SurgeryError::DegenerateShape(_))
        ));
        assert!(shape_triple(Cplx::new(1e-12, 0.0)).is_ok());
    }

    #[test]
    fn complete_structure_is_all_i() {
        let s = shapes_from_params(&ParamPoint::complete()).unwrap();
        for (name, shape) in SIMPLEX_NAMES.iter().zip(s.as_array()) {
            assert!(close(shape.z(), I, 1e-14), "{name} = {}", shape.z());
        }
    }

    #[test]
    fn alpha_at_center_pins_alpha_shapes() {
        let p = ParamPoint::new(CENTER, Cplx::new(2.3, -0.7)).unwrap();
        let s = shapes_from_params(&p).unwrap();
        for shape in [s.z1, s.z3, s.w2, s.w4] {
            assert!(close(shape.z(), I, 1e-14));
        }
        assert!(!close(s.z2.z(), I, 1e-3));
    }

    #[test]
    fn punctures_rejected() {
        for bad in crate::PUNCTURES {
            assert!(matches!(
                ParamPoint::new(CENTER, bad),
                Err(SurgeryError::DegenerateShape(_))
            ));
            assert!(ParamPoint::new(bad, CENTER).is_err());
        }
        let near = ParamPoint::new(CENTER, Cplx::new(1.0 + 1e-9, 0.0)).unwrap();
        assert!(shapes_from_params(&near).is_ok());
    }

    #[test]
    fn residuals_vanish_at_complete() {
        let s = shapes_from_params(&ParamPoint::complete()).unwrap();
        let res = consistency_residuals(&s);
        assert_eq!(res.len(), 10);
        for r in res {
            assert!(r.value.norm() < 1e-14, "{} -> {}", r.relation, r.value);
        }
    }

    #[test]
    fn orientation_on_circle_and_outside() {
        let s = shapes_from_params(&ParamPoint::complete()).unwrap();
        let rep = classify_orientation(&s, DEFAULT_FLAT_EPS);
        assert_eq!(rep.flags(), "++++++++");

        let beta = CENTER + Cplx::from_polar(std::f64::consts::FRAC_1_SQRT_2, 1.3);
        let s = shapes_from_params(&ParamPoint::new(CENTER, beta).unwrap()).unwrap();
        let rep = classify_orientation(&s, DEFAULT_FLAT_EPS);
        for name in ["z2", "z4", "w1", "w3"] {
            assert_eq!(rep.get(name), Some(Orientation::Flat), "{name}");
        }
        assert_eq!(rep.count(Orientation::Positive), 4);

        let beta = Cplx::new(40.0, -1e-3);
        let s = shapes_from_params(&ParamPoint::new(CENTER, beta).unwrap()).unwrap();
        let rep = classify_orientation(&s, DEFAULT_FLAT_EPS);
        assert!(rep.count(Orientation::Negative) > 0, "{}", rep.flags());
    }
}
