//! Hyperbolic Dehn surgery space of the 4-cusped link complement `A*`, the
//! double cover of a four-cusped arithmetic orbifold `A`.
//!
//! The eight tetrahedron shapes of the two-octahedron triangulation are
//! written as rational functions of two complex parameters: `alpha` governs
//! the cusp pair `{X, Y}` and `beta` the pair `{W, Z}`. Everything else is
//! built on top of that map:
//!
//! * [`shapes`]: shape parameters, gluing-consistency residuals, orientation.
//! * [`holonomy`]: cusp holonomy words, their closed forms, cusp moduli.
//! * [`continuation`]: branch-tracked logarithms of the holonomies.
//! * [`surgery`]: Dehn filling equations, Newton solves, core geodesics.
//! * [`lobachevsky`]: the Lobachevsky function and simplex volumes.
//! * [`verify`]: executable checks of cusp isolation, the circle/square
//!   correspondences and the octagon tiling.
//! * [`cli`]: record types and serializers used by the `astar-dehn` binary.

pub mod cli;
pub mod continuation;
pub mod error;
pub mod holonomy;
pub mod lobachevsky;
pub mod shapes;
pub mod surgery;
pub mod verify;

pub use num_complex::Complex64 as Cplx;

pub use continuation::{continue_log, PathSpec, Side};
pub use error::{Result, SurgeryError};
pub use holonomy::{CuspId, HolonomyValues, LogHolonomy};
pub use lobachevsky::{lobachevsky, volume};
pub use shapes::{ParamPoint, ShapeVector, SimplexShape};
pub use surgery::{Filling, FillingCoeffs, FillingSolver, SolveResult};

/// Radius of the excluded disk around each puncture and around vanishing
/// denominators.
pub const EPS0: f64 = 1e-13;

/// `(1+i)/2`, the parameter value of the complete structure on either side.
pub const CENTER: Cplx = Cplx::new(0.5, 0.5);

/// The four corners of the unit square `0, 1, i, 1+i`. Shapes degenerate here.
pub const PUNCTURES: [Cplx; 4] = [
    Cplx::new(0.0, 0.0),
    Cplx::new(1.0, 0.0),
    Cplx::new(0.0, 1.0),
    Cplx::new(1.0, 1.0),
];

/// Distance from `x` to the nearest puncture.
pub fn puncture_distance(x: Cplx) -> f64 {
    PUNCTURES
        .iter()
        .map(|p| (x - p).norm())
        .fold(f64::INFINITY, f64::min)
}
