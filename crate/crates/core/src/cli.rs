//! Command-line front end: argument parsing, CSV/JSON serialization and the
//! octagon SVG. The binary is a thin wrapper around [`run`].

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::continuation::Side;
use crate::lobachevsky::volume;
use crate::shapes::{classify_orientation, shapes_from_params, ParamPoint, DEFAULT_FLAT_EPS};
use crate::surgery::{
    core_geodesic, core_length_real, joint_solve_with, Filling, FillingCoeffs, FillingSolver,
    SolveResult,
};
use crate::verify::{
    octagon_construct, verify_consistency, verify_corollary, verify_isolation, verify_octagon,
    verify_theorem2, verify_theorem3, OctagonConfig, VerificationReport, DEFAULT_RADII,
};
use crate::{Cplx, SurgeryError, CENTER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_NO_CONVERGENCE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

pub const CSV_HEADER: &str = "p1,q1,p2,q2,re_alpha,im_alpha,re_beta,im_beta,volume,core_len_alpha,core_len_beta,residual,orient,status";

/// Rows with a larger residual are never reported as `ok`.
pub const OK_RESIDUAL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(
    name = "astar-dehn",
    version,
    about = "Dehn surgery space of a four-cusped hyperbolic manifold"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SideArg {
    Alpha,
    Beta,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    Thm1,
    Thm2,
    Thm3,
    Consistency,
    Octagon,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the filling equation on one or both sides.
    Solve {
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
        #[arg(long, allow_negative_numbers = true)]
        q: f64,
        /// Beta-side coefficients for `--side both` (default: same as --p/--q).
        #[arg(long, allow_negative_numbers = true)]
        p2: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        q2: Option<f64>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Solve over a grid of coefficients and write CSV.
    Scan {
        #[arg(long, value_enum)]
        side: SideArg,
        /// `start:end:step`
        #[arg(long, allow_hyphen_values = true)]
        p_range: String,
        #[arg(long, allow_hyphen_values = true)]
        q_range: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Run one of the verification suites.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Draw the octagon for a point of the unit square as SVG.
    Octagon {
        /// `re,im`
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
        #[arg(long, default_value_t = 1)]
        tiles: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JsonCplx {
    pub re: f64,
    pub im: f64,
}

impl From<Cplx> for JsonCplx {
    fn from(z: Cplx) -> Self {
        JsonCplx { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoreRecord {
    pub complex_length: JsonCplx,
    pub r: i64,
    pub s: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SideSolution {
    pub p: f64,
    pub q: f64,
    pub param: JsonCplx,
    pub u: JsonCplx,
    pub v: JsonCplx,
    pub branch_u: i64,
    pub branch_v: i64,
    pub residual: f64,
    pub iterations: usize,
    pub core_length: f64,
    /// Present for primitive integer coefficients.
    pub core_geodesic: Option<CoreRecord>,
}

impl SideSolution {
    fn new(f: &FillingCoeffs, r: &SolveResult) -> Self {
        let lh = &r.log_hol;
        SideSolution {
            p: f.p,
            q: f.q,
            param: r.param.into(),
            u: lh.u.into(),
            v: lh.v.into(),
            branch_u: lh.branch_u,
            branch_v: lh.branch_v,
            residual: r.residual,
            iterations: r.iterations,
            core_length: core_length_real(lh),
            core_geodesic: core_geodesic(f, lh).ok().map(|c| CoreRecord {
                complex_length: c.complex_length.into(),
                r: c.r,
                s: c.s,
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoupledRecord {
    pub alpha: JsonCplx,
    pub beta: JsonCplx,
    pub iterations: usize,
    pub residual: f64,
    pub discrepancy: f64,
}

/// JSON record printed by `solve`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveRecord {
    pub side: SideArg,
    pub alpha: Option<SideSolution>,
    pub beta: Option<SideSolution>,
    pub coupled: Option<CoupledRecord>,
    pub volume: f64,
    pub orientation_flags: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorRecord {
    pub kind: &'static str,
    pub message: String,
}

impl From<&SurgeryError> for ErrorRecord {
    fn from(e: &SurgeryError) -> Self {
        ErrorRecord {
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

pub fn exit_code(e: &SurgeryError) -> i32 {
    match e {
        SurgeryError::NoConvergence { .. }
        | SurgeryError::DegenerateJacobian(_)
        | SurgeryError::StepCollapse { .. } => EXIT_NO_CONVERGENCE,
        _ => EXIT_INVALID,
    }
}

fn shapes_summary(alpha: Cplx, beta: Cplx) -> crate::Result<(f64, String)> {
    let s = shapes_from_params(&ParamPoint::new(alpha, beta)?)?;
    Ok((
        volume(&s),
        classify_orientation(&s, DEFAULT_FLAT_EPS).flags(),
    ))
}

pub fn solve_record(
    side: SideArg,
    f1: (f64, f64),
    f2: (f64, f64),
    solver: &FillingSolver,
) -> crate::Result<SolveRecord> {
    let c1 = FillingCoeffs::new(f1.0, f1.1)?;
    let (alpha, beta, coupled) = match side {
        SideArg::Alpha => {
            let r = solver.solve(&Filling::Coeffs(c1), Side::Alpha, None, None)?;
            (Some((c1, r)), None, None)
        }
        SideArg::Beta => {
            let r = solver.solve(&Filling::Coeffs(c1), Side::Beta, None, None)?;
            (None, Some((c1, r)), None)
        }
        SideArg::Both => {
            let c2 = FillingCoeffs::new(f2.0, f2.1)?;
            let j = joint_solve_with(solver, &Filling::Coeffs(c1), &Filling::Coeffs(c2))?;
            let coupled = CoupledRecord {
                alpha: j.coupled_alpha.into(),
                beta: j.coupled_beta.into(),
                iterations: j.coupled_iterations,
                residual: j.coupled_residual,
                discrepancy: j.discrepancy,
            };
            (Some((c1, j.alpha)), Some((c2, j.beta)), Some(coupled))
        }
    };
    let a = alpha.as_ref().map_or(CENTER, |(_, r)| r.param);
    let b = beta.as_ref().map_or(CENTER, |(_, r)| r.param);
    let (vol, flags) = shapes_summary(a, b)?;
    Ok(SolveRecord {
        side,
        alpha: alpha.map(|(c, r)| SideSolution::new(&c, &r)),
        beta: beta.map(|(c, r)| SideSolution::new(&c, &r)),
        coupled,
        volume: vol,
        orientation_flags: flags,
    })
}

fn write_side_text(out: &mut String, name: &str, s: &SideSolution) {
    let _ = writeln!(out, "{name}: ({}, {}) filling", s.p, s.q);
    let _ = writeln!(out, "  param     = {:.15} {:+.15}i", s.param.re, s.param.im);
    let _ = writeln!(
        out,
        "  u         = {:.15} {:+.15}i  (branch {})",
        s.u.re, s.u.im, s.branch_u
    );
    let _ = writeln!(
        out,
        "  v         = {:.15} {:+.15}i  (branch {})",
        s.v.re, s.v.im, s.branch_v
    );
    let _ = writeln!(
        out,
        "  residual  = {:.3e} after {} iterations",
        s.residual, s.iterations
    );
    let _ = writeln!(out, "  core len  = {:.15}", s.core_length);
    if let Some(c) = &s.core_geodesic {
        let _ = writeln!(
            out,
            "  core geodesic (r, s) = ({}, {}): {:.15} {:+.15}i",
            c.r, c.s, c.complex_length.re, c.complex_length.im
        );
    }
}

impl SolveRecord {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(a) = &self.alpha {
            write_side_text(&mut out, "alpha", a);
        }
        if let Some(b) = &self.beta {
            write_side_text(&mut out, "beta", b);
        }
        if let Some(c) = &self.coupled {
            let _ = writeln!(
                out,
                "coupled: {} iterations, residual {:.3e}, max distance to independent solves {:.3e}",
                c.iterations, c.residual, c.discrepancy
            );
        }
        let _ = writeln!(out, "volume = {:.15}", self.volume);
        let _ = writeln!(out, "orientation = {}", self.orientation_flags);
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScanStatus {
    #[serde(rename = "ok")]
    Ok,
    #[serde(rename = "no-converge")]
    NoConverge,
    #[serde(rename = "degenerate")]
    Degenerate,
}

impl ScanStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ScanStatus::Ok => "ok",
            ScanStatus::NoConverge => "no-converge",
            ScanStatus::Degenerate => "degenerate",
        }
    }

    fn from_error(e: &SurgeryError) -> Self {
        if exit_code(e) == EXIT_NO_CONVERGENCE {
            ScanStatus::NoConverge
        } else {
            ScanStatus::Degenerate
        }
    }
}

/// One CSV row. Coefficients of a complete side and every output of a failed
/// row are absent and written as empty cells.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRecord {
    pub p1: Option<f64>,
    pub q1: Option<f64>,
    pub p2: Option<f64>,
    pub q2: Option<f64>,
    pub alpha: Option<JsonCplx>,
    pub beta: Option<JsonCplx>,
    pub volume: Option<f64>,
    pub core_len_alpha: Option<f64>,
    pub core_len_beta: Option<f64>,
    pub residual: Option<f64>,
    pub orientation_flags: String,
    pub status: ScanStatus,
}

fn cell(out: &mut String, x: Option<f64>) {
    if let Some(x) = x {
        let _ = write!(out, "{x:.16e}");
    }
    out.push(',');
}

impl ScanRecord {
    pub fn to_csv_row(&self) -> String {
        let mut s = String::new();
        for x in [self.p1, self.q1, self.p2, self.q2] {
            cell(&mut s, x);
        }
        cell(&mut s, self.alpha.map(|z| z.re));
        cell(&mut s, self.alpha.map(|z| z.im));
        cell(&mut s, self.beta.map(|z| z.re));
        cell(&mut s, self.beta.map(|z| z.im));
        cell(&mut s, self.volume);
        cell(&mut s, self.core_len_alpha);
        cell(&mut s, self.core_len_beta);
        cell(&mut s, self.residual);
        s.push_str(&self.orientation_flags);
        s.push(',');
        s.push_str(self.status.as_str());
        s
    }
}

/// `start:end:step`, inclusive of `end` up to rounding.
pub fn parse_range(s: &str) -> crate::Result<Vec<f64>> {
    let bad = || SurgeryError::InvalidInput(format!("range {s:?} is not start:end:step"));
    let parts: Vec<f64> = s
        .split(':')
        .map(|t| t.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<crate::Result<_>>()?;
    let [a, b, step] = parts[..] else {
        return Err(bad());
    };
    if !(a.is_finite() && b.is_finite() && step.is_finite()) || step <= 0.0 || b < a {
        return Err(bad());
    }
    let n = ((b - a) / step + 1e-9).floor();
    if n > 1e6 {
        return Err(SurgeryError::InvalidInput(format!(
            "range {s:?} has too many points"
        )));
    }
    Ok((0..=n as usize).map(|k| a + k as f64 * step).collect())
}

pub fn scan_point(side: SideArg, p: f64, q: f64, solver: &FillingSolver) -> ScanRecord {
    let (p1, q1, p2, q2) = match side {
        SideArg::Alpha => (Some(p), Some(q), None, None),
        SideArg::Beta => (None, None, Some(p), Some(q)),
        SideArg::Both => (Some(p), Some(q), Some(p), Some(q)),
    };
    let failed = |status, flags: String| ScanRecord {
        p1,
        q1,
        p2,
        q2,
        alpha: None,
        beta: None,
        volume: None,
        core_len_alpha: None,
        core_len_beta: None,
        residual: None,
        orientation_flags: flags,
        status,
    };
    let rec = match solve_record(side, (p, q), (p, q), solver) {
        Ok(r) => r,
        Err(e) => return failed(ScanStatus::from_error(&e), String::new()),
    };
    let residual = [&rec.alpha, &rec.beta]
        .iter()
        .filter_map(|s| s.as_ref().map(|s| s.residual))
        .fold(0.0, f64::max);
    let param = |s: &Option<SideSolution>| s.as_ref().map_or(CENTER.into(), |s| s.param);
    ScanRecord {
        p1,
        q1,
        p2,
        q2,
        alpha: Some(param(&rec.alpha)),
        beta: Some(param(&rec.beta)),
        volume: Some(rec.volume),
        core_len_alpha: rec.alpha.as_ref().map(|s| s.core_length),
        core_len_beta: rec.beta.as_ref().map(|s| s.core_length),
        residual: Some(residual),
        orientation_flags: rec.orientation_flags,
        status: if residual < OK_RESIDUAL {
            ScanStatus::Ok
        } else {
            ScanStatus::NoConverge
        },
    }
}

/// Row-major over `ps × qs`; the result does not depend on `threads`.
pub fn scan(
    side: SideArg,
    ps: &[f64],
    qs: &[f64],
    solver: &FillingSolver,
    threads: Option<usize>,
) -> crate::Result<Vec<ScanRecord>> {
    let grid: Vec<(f64, f64)> = ps
        .iter()
        .flat_map(|&p| qs.iter().map(move |&q| (p, q)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| SurgeryError::InvalidInput(format!("thread pool: {e}")))?;
    Ok(pool.install(|| {
        grid.par_iter()
            .map(|&(p, q)| scan_point(side, p, q, solver))
            .collect()
    }))
}

pub fn scan_csv(records: &[ScanRecord]) -> String {
    let mut s = String::with_capacity(200 * (records.len() + 1));
    s.push_str(CSV_HEADER);
    s.push('\n');
    for r in records {
        s.push_str(&r.to_csv_row());
        s.push('\n');
    }
    s
}

pub fn parse_omega(s: &str) -> crate::Result<Cplx> {
    let bad = || SurgeryError::InvalidInput(format!("omega {s:?} is not re,im"));
    let (re, im) = s.split_once(',').ok_or_else(bad)?;
    let re: f64 = re.trim().parse().map_err(|_| bad())?;
    let im: f64 = im.trim().parse().map_err(|_| bad())?;
    Ok(Cplx::new(re, im))
}

const SVG_UNIT: f64 = 1000.0;

/// SVG coordinates of `z`; adding zero clears negative zeros.
fn svg_xy(z: Cplx) -> (f64, f64) {
    (z.re * SVG_UNIT + 0.0, -z.im * SVG_UNIT + 0.0)
}

fn svg_pt(z: Cplx) -> String {
    let (x, y) = svg_xy(z);
    format!("{x:.3},{y:.3}")
}

fn svg_polygon(out: &mut String, pts: &[Cplx], class: &str) {
    let pts: Vec<String> = pts.iter().map(|z| svg_pt(*z)).collect();
    let _ = writeln!(
        out,
        r#"  <polygon class="{class}" points="{}"/>"#,
        pts.join(" ")
    );
}

/// SVG with 1000 units per unit length, `y` pointing up. Draws `tiles × tiles`
/// translated octagons, then the square, the four triangles, the octagon
/// itself and the point `O`.
pub fn octagon_svg(cfg: &OctagonConfig, tiles: usize) -> String {
    let tiles = tiles.max(1);
    let lo = -SVG_UNIT;
    let size = (tiles as f64 + 2.0) * SVG_UNIT;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{lo:.0} {:.0} {size:.0} {size:.0}">"#,
        -(tiles as f64 + 1.0) * SVG_UNIT
    );
    s.push_str("  <style>.tile{fill:#dde8f4;stroke:#6b8db5;stroke-width:4}.square{fill:none;stroke:#000;stroke-width:6}.tri{fill:#f6d8a8;stroke:#a0662a;stroke-width:4}.oct{fill:none;stroke:#b22222;stroke-width:8}.pt{fill:#000}text{font:40px sans-serif}</style>\n");
    let oct = cfg.octagon();
    for i in 0..tiles {
        for j in 0..tiles {
            let shift = Cplx::new(i as f64, j as f64);
            let pts: Vec<Cplx> = oct.iter().map(|z| z + shift).collect();
            svg_polygon(&mut s, &pts, "tile");
        }
    }
    svg_polygon(&mut s, &[cfg.a, cfg.b, cfg.c, cfg.d], "square");
    for (_, tri) in cfg.triangles() {
        svg_polygon(&mut s, &tri, "tri");
    }
    svg_polygon(&mut s, &oct, "oct");
    let labels = [
        ("A", cfg.a),
        ("B", cfg.b),
        ("C", cfg.c),
        ("D", cfg.d),
        ("O", cfg.o),
        ("R", cfg.r),
        ("S", cfg.s),
        ("T", cfg.t),
        ("U", cfg.u),
    ];
    for (name, z) in labels {
        let (x, y) = svg_xy(z);
        let _ = writeln!(
            s,
            r#"  <circle class="pt" cx="{x:.3}" cy="{y:.3}" r="12"/><text x="{:.3}" y="{:.3}">{name}</text>"#,
            x + 18.0,
            y - 18.0
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn run_verify(target: VerifyTarget, samples: Option<usize>, seed: u64) -> VerificationReport {
    match target {
        VerifyTarget::Thm1 => verify_isolation(samples.unwrap_or(4), seed),
        VerifyTarget::Thm2 => {
            let mut r = verify_theorem2(samples.unwrap_or(64));
            r.merge(verify_corollary());
            r
        }
        VerifyTarget::Thm3 => verify_theorem3(&DEFAULT_RADII, samples.unwrap_or(16)),
        VerifyTarget::Consistency => verify_consistency(samples.unwrap_or(10_000), seed),
        VerifyTarget::Octagon => verify_octagon(samples.unwrap_or(1000), seed),
    }
}

fn report_error(out: &mut dyn Write, err: &mut dyn Write, e: &SurgeryError, json: bool) -> i32 {
    if json {
        let obj = serde_json::json!({ "error": ErrorRecord::from(e) });
        let _ = writeln!(out, "{obj}");
    } else {
        let _ = writeln!(err, "error: {e}");
    }
    exit_code(e)
}

fn write_file(path: &PathBuf, contents: &str) -> crate::Result<()> {
    std::fs::write(path, contents)
        .map_err(|e| SurgeryError::InvalidInput(format!("cannot write {}: {e}", path.display())))
}

/// Parse `args` (including the program name) and execute; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_INVALID;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match cli.command {
        Command::Solve {
            side,
            p,
            q,
            p2,
            q2,
            tol,
            json,
        } => {
            if tol.is_nan() || tol <= 0.0 {
                let e = SurgeryError::InvalidInput(format!("tolerance {tol} must be positive"));
                return report_error(out, err, &e, json);
            }
            let solver = FillingSolver::with_tol(tol);
            match solve_record(side, (p, q), (p2.unwrap_or(p), q2.unwrap_or(q)), &solver) {
                Ok(rec) => {
                    if json {
                        let _ = writeln!(
                            out,
                            "{}",
                            serde_json::to_string_pretty(&rec).expect("serializable")
                        );
                    } else {
                        let _ = write!(out, "{}", rec.to_text());
                    }
                    EXIT_OK
                }
                Err(e) => report_error(out, err, &e, json),
            }
        }
        Command::Scan {
            side,
            p_range,
            q_range,
            out: path,
            threads,
            tol,
        } => {
            let run = || -> crate::Result<usize> {
                let ps = parse_range(&p_range)?;
                let qs = parse_range(&q_range)?;
                if threads == Some(0) {
                    return Err(SurgeryError::InvalidInput(
                        "--threads must be positive".into(),
                    ));
                }
                let rows = scan(side, &ps, &qs, &FillingSolver::with_tol(tol), threads)?;
                write_file(&path, &scan_csv(&rows))?;
                Ok(rows.len())
            };
            match run() {
                Ok(n) => {
                    let _ = writeln!(out, "wrote {n} rows to {}", path.display());
                    EXIT_OK
                }
                Err(e) => report_error(out, err, &e, false),
            }
        }
        Command::Verify {
            target,
            samples,
            seed,
            json,
        } => {
            let report = run_verify(target, samples, seed);
            if json {
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable")
                );
            } else {
                let _ = write!(out, "{report}");
            }
            if report.passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            }
        }
        Command::Octagon {
            omega,
            tiles,
            out: path,
        } => {
            let run = || -> crate::Result<()> {
                let cfg = octagon_construct(parse_omega(&omega)?)?;
                write_file(&path, &octagon_svg(&cfg, tiles))
            };
            match run() {
                Ok(()) => {
                    let _ = writeln!(out, "wrote {}", path.display());
                    EXIT_OK
                }
                Err(e) => report_error(out, err, &e, false),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(
            parse_range("-6:6:3").unwrap(),
            vec![-6.0, -3.0, 0.0, 3.0, 6.0]
        );
        assert_eq!(parse_range("0:1:0.25").unwrap().len(), 5);
        assert_eq!(parse_range("1:1:1").unwrap(), vec![1.0]);
        assert!(parse_range("1:0:1").is_err());
        assert!(parse_range("0:1:0").is_err());
        assert!(parse_range("0:1").is_err());
        assert!(parse_range("a:1:1").is_err());
    }

    #[test]
    fn omega_parse() {
        assert_eq!(parse_omega("0.9, 0.1").unwrap(), Cplx::new(0.9, 0.1));
        assert!(parse_omega("0.9").is_err());
    }

    #[test]
    fn header_field_count_matches_rows() {
        let r = scan_point(SideArg::Beta, 0.0, 0.0, &FillingSolver::default());
        assert_eq!(r.status, ScanStatus::Degenerate);
        assert_eq!(
            r.to_csv_row().matches(',').count(),
            CSV_HEADER.matches(',').count()
        );
    }
}
