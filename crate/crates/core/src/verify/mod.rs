//! Executable checks of the isolation, circle/square and octagon statements.
//!
//! Every check produces a [`VerificationReport`]: a list of named maxima
//! compared against fixed tolerances. Sampling is seeded, so reports are
//! reproducible bit for bit.

mod octagon;
mod theorems;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{puncture_distance, Cplx};

pub use octagon::{
    horoball_correspondence, octagon_construct, octagon_tiling_check, search_assignments,
    triangle_shape, verify_octagon, Assignment, OctagonConfig, FROZEN_ASSIGNMENT, S_MINUS_U,
};
pub use theorems::{
    circle_point, theorem2_samples, verify_consistency, verify_corollary, verify_isolation,
    verify_theorem2, verify_theorem3, CIRCLE_RADIUS, DEFAULT_RADII,
};

/// One named quantity compared against its tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub samples: usize,
    pub checks: Vec<Check>,
    pub offending: Vec<String>,
    /// Free-form lines (tables, recorded conventions).
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(theorem: impl Into<String>) -> Self {
        VerificationReport {
            theorem: theorem.into(),
            samples: 0,
            checks: Vec::new(),
            offending: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Record `max_residual <= tolerance`. NaN fails.
    pub fn check(&mut self, name: impl Into<String>, max_residual: f64, tolerance: f64) -> bool {
        let passed = max_residual <= tolerance;
        self.checks.push(Check {
            name: name.into(),
            max_residual,
            tolerance,
            passed,
        });
        passed
    }

    /// Record a count of violations; passes only when zero.
    pub fn check_count(&mut self, name: impl Into<String>, violations: usize) -> bool {
        self.check(name, violations as f64, 0.0)
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn offend(&mut self, what: impl Into<String>) {
        self.offending.push(what.into());
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.samples += other.samples;
        let prefix = other.theorem.clone();
        for mut c in other.checks {
            c.name = format!("{prefix}: {}", c.name);
            self.checks.push(c);
        }
        self.offending.extend(other.offending);
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{} [{}] samples={}", self.theorem, verdict, self.samples)?;
        for c in &self.checks {
            writeln!(
                f,
                "  {} {:<48} max={:.3e} tol={:.1e}",
                if c.passed { "ok  " } else { "FAIL" },
                c.name,
                c.max_residual,
                c.tolerance
            )?;
        }
        for n in &self.notes {
            writeln!(f, "  {n}")?;
        }
        if !self.offending.is_empty() {
            writeln!(f, "  offending samples:")?;
            for o in self.offending.iter().take(20) {
                writeln!(f, "    {o}")?;
            }
            if self.offending.len() > 20 {
                writeln!(f, "    ... {} more", self.offending.len() - 20)?;
            }
        }
        Ok(())
    }
}

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point of `[-1.5, 2.5]²` at least `clearance` from every puncture.
pub(crate) fn random_param(rng: &mut ChaCha8Rng, clearance: f64) -> Cplx {
    loop {
        let x = Cplx::new(rng.random_range(-1.5..2.5), rng.random_range(-1.5..2.5));
        if puncture_distance(x) >= clearance {
            return x;
        }
    }
}

/// Uniform point of the open unit square, at least `margin` from its boundary.
pub(crate) fn random_interior(rng: &mut ChaCha8Rng, margin: f64) -> Cplx {
    Cplx::new(
        rng.random_range(margin..1.0 - margin),
        rng.random_range(margin..1.0 - margin),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_logic() {
        let mut r = VerificationReport::new("t");
        assert!(!r.passed());
        r.check("a", 1e-13, 1e-12);
        assert!(r.passed());
        r.check("nan", f64::NAN, 1.0);
        assert!(!r.passed());
        assert!(format!("{r}").contains("FAIL"));
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        let a: Vec<Cplx> = (0..5)
            .map({
                let mut g = rng(7);
                move |_| random_param(&mut g, 0.1)
            })
            .collect();
        let b: Vec<Cplx> = (0..5)
            .map({
                let mut g = rng(7);
                move |_| random_param(&mut g, 0.1)
            })
            .collect();
        assert_eq!(a, b);
    }
}
