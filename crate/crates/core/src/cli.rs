//! Command-line front end: every computation of the crate as a subcommand
//! with JSON (single results, reports) or CSV (sample tables) output.
//!
//! Exit codes: `0` success, `2` domain or precondition errors (including
//! argument errors), `3` non-convergence or integration failure. On failure
//! a single JSON line `{"error": kind, "message": …}` goes to stderr.

use std::f64::consts::PI;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::curvature::{verify_cmc, CmcCheck, CMC_TOL, DEFAULT_FD_STEP};
use crate::error::{Error, Result};
use crate::lorentz::{fiber_samples, gauss_map, immerse_state};
use crate::polygon::closure_gap;
use crate::potential::{landmarks, ShapeParams};
use crate::profile::{integrate_profile, profile_alpha, surface_grid, ProfileCurve, ENERGY_TOL, PERIOD_TOL};
use crate::quadrature::{flux_k_with, xi_with, QuadOptions};
use crate::shooting::{
    find_h0_with, solve_c_with, SolveMode, SolveReport, SolverConfig, WindingTarget,
};

/// Environment variable overriding the default quadrature tolerance.
pub const TOL_ENV: &str = "HYPERCMC_TOL";

pub const PROFILE_HEADER: &str = "t,g,g_prime,r,lambda,theta,theta_prime,alpha_x,alpha_y";
pub const SWEEP_HEADER: &str = "H,xi,error_estimate";

/// Mean curvature shared by the profile figures.
const FIGURE_H: f64 = -1.1;
/// `(file stem, C, periods)` of the three profile figures.
const FIGURE_PROFILES: [(&str, f64, u32); 3] = [
    ("fig1_profile", -0.9091743461769703, 1),
    ("fig2_profile", -0.6835660909345689, 5),
    ("fig3_profile", -0.19607165524075582, 10),
];
/// Clip of the partial `θ′` view.
const FIGURE_CLIP: f64 = 5.0;
/// `ξₙ` figures on `[-50, -1]`.
const FIGURE_SWEEPS: [(&str, u32); 3] = [("fig6_xi3", 3), ("fig7_xi4", 4), ("fig8_xi5", 5)];

/// Tolerances of the `check` report.
const GEOMETRY_TOL: f64 = 1e-10;
const FLUX_TOL: f64 = 1e-7;
const CLOSURE_TOL: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(name = "hypercmc", version, about = "Hyperbolic-type rotational CMC hypersurfaces in H^{n+1}")]
pub struct Cli {
    /// Quadrature tolerance.
    #[arg(long, global = true, env = TOL_ENV, default_value_t = 1e-11)]
    pub tol: f64,

    /// Output file (a directory with --seed-figures); stdout when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// ξₙ(H), the flux at the λ-sign threshold C̃.
    Xi(XiArgs),
    /// H₀ with ξₙ(H₀) = -2π.
    H0(H0Args),
    /// C* with K(C*, H) = -2πk/m.
    SolveC(SolveArgs),
    /// Profile curve samples (CSV).
    Profile(ProfileArgs),
    /// Immersion point grid in Lorentz coordinates (CSV).
    Surface(SurfaceArgs),
    /// ξₙ on a grid of H (CSV).
    Sweep(SweepArgs),
    /// Invariant report for one surface (JSON).
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct XiArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long = "H", allow_negative_numbers = true)]
    pub h: f64,
}

#[derive(Debug, Args)]
pub struct H0Args {
    #[arg(long)]
    pub n: u32,
    #[arg(long, allow_negative_numbers = true, default_value_t = -10.0)]
    pub lo: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = -1.0)]
    pub hi: f64,
    /// Root tolerance on H.
    #[arg(long, default_value_t = 1e-12)]
    pub param_tol: f64,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long = "H", allow_negative_numbers = true)]
    pub h: f64,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Only search (C0, C~), where the surface is embedded.
    #[arg(long)]
    pub embedded: bool,
    /// Root tolerance on C.
    #[arg(long, default_value_t = 1e-13)]
    pub param_tol: f64,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[arg(long, required_unless_present = "seed_figures")]
    pub n: Option<u32>,
    #[arg(long = "H", allow_negative_numbers = true, required_unless_present = "seed_figures")]
    pub h: Option<f64>,
    #[arg(long = "C", allow_negative_numbers = true, required_unless_present = "seed_figures")]
    pub c: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub periods: u32,
    /// Samples per period.
    #[arg(long, default_value_t = 1024, value_parser = clap::value_parser!(u32).range(16..))]
    pub samples: u32,
    /// Clamp θ′ to [-clip, clip].
    #[arg(long)]
    pub clip: Option<f64>,
    /// Write the data of the profile and θ′ figures into the --output directory.
    #[arg(long)]
    pub seed_figures: bool,
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long = "H", allow_negative_numbers = true)]
    pub h: f64,
    #[arg(long = "C", allow_negative_numbers = true)]
    pub c: f64,
    #[arg(long, default_value_t = 1)]
    pub periods: u32,
    /// Samples per period.
    #[arg(long, default_value_t = 1024, value_parser = clap::value_parser!(u32).range(16..))]
    pub samples: u32,
    /// Fibre points per profile sample.
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..))]
    pub fiber_samples: u32,
    /// Largest hyperbolic distance of a fibre point from the base point.
    #[arg(long, default_value_t = 1.0)]
    pub fiber_extent: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, required_unless_present = "seed_figures")]
    pub n: Option<u32>,
    #[arg(long = "H-from", allow_negative_numbers = true, required_unless_present = "seed_figures")]
    pub h_from: Option<f64>,
    #[arg(long = "H-to", allow_negative_numbers = true, required_unless_present = "seed_figures")]
    pub h_to: Option<f64>,
    /// Number of grid points, ends included.
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(2..))]
    pub steps: u32,
    /// Write the data of the ξ₃, ξ₄, ξ₅ figures into the --output directory.
    #[arg(long)]
    pub seed_figures: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long = "H", allow_negative_numbers = true)]
    pub h: f64,
    #[arg(long = "C", allow_negative_numbers = true)]
    pub c: f64,
    #[arg(long, default_value_t = 1)]
    pub periods: u32,
    /// Samples per period.
    #[arg(long, default_value_t = 1024, value_parser = clap::value_parser!(u32).range(16..))]
    pub samples: u32,
    /// Points at which the curvatures are estimated by finite differences.
    #[arg(long, default_value_t = 128, value_parser = clap::value_parser!(u32).range(1..))]
    pub cmc_samples: u32,
}

/// What a subcommand produced.
enum Artifact {
    Text { body: String, code: i32, reason: Option<(String, String)> },
    Files(Vec<PathBuf>),
}

impl Artifact {
    fn ok(body: String) -> Self {
        Artifact::Text { body, code: 0, reason: None }
    }
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(Artifact::Text { body, code, reason }) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &body).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
                None => out.write_all(body.as_bytes()).map_err(|e| Error::Io(e.to_string())),
            };
            if let Err(e) = written {
                return report_error(&e, err);
            }
            if let Some((kind, message)) = reason {
                let _ = writeln!(err, "{}", json!({ "error": kind, "message": message }));
            }
            code
        }
        Ok(Artifact::Files(paths)) => {
            let listing: Vec<Value> = paths.iter().map(|p| json!(p.display().to_string())).collect();
            let _ = writeln!(out, "{}", json!({ "written": listing }));
            0
        }
        Err(e) => report_error(&e, err),
    }
}

fn report_error(e: &Error, err: &mut dyn Write) -> i32 {
    let _ = writeln!(err, "{}", json!({ "error": e.kind(), "message": e.to_string() }));
    exit_code(e)
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonConvergence(_) | Error::Integration { .. } | Error::Evaluation { .. } => 3,
        Error::Io(_) => 1,
        _ => 2,
    }
}

fn execute(cli: &Cli) -> Result<Artifact> {
    if !(cli.tol > 0.0) {
        return Err(Error::Domain(format!("tolerance {} must be positive", cli.tol)));
    }
    let quad = QuadOptions::with_tol(cli.tol);
    match &cli.command {
        Command::Xi(a) => xi_command(a, &quad),
        Command::H0(a) => h0_command(a, &quad),
        Command::SolveC(a) => solve_command(a, &quad),
        Command::Profile(a) if a.seed_figures => seed_profile_figures(cli.output.as_deref()),
        Command::Profile(a) => {
            let params = ShapeParams::checked(req(a.n, "n")?, req(a.h, "H")?, req(a.c, "C")?)?;
            let curve = integrate_profile(&params, a.periods, a.samples as usize)?;
            Ok(Artifact::ok(profile_csv(&curve, a.clip)))
        }
        Command::Surface(a) => surface_command(a),
        Command::Sweep(a) if a.seed_figures => seed_sweep_figures(cli.output.as_deref(), a.steps, &quad),
        Command::Sweep(a) => {
            let csv = sweep_csv(req(a.n, "n")?, req(a.h_from, "H-from")?, req(a.h_to, "H-to")?, a.steps, &quad)?;
            Ok(Artifact::ok(csv))
        }
        Command::Check(a) => check_command(a, &quad),
    }
}

fn req<T>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::Domain(format!("--{name} is required")))
}

/// Shortest round-trip decimal; non-finite values as strings.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        serde_json::to_string(&x).expect("finite float serialises")
    } else {
        x.to_string()
    }
}

fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!(x.to_string())
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serialises");
    s.push('\n');
    s
}

fn object(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}

fn xi_command(a: &XiArgs, quad: &QuadOptions) -> Result<Artifact> {
    let r = xi_with(a.n, a.h, quad)?;
    let body = pretty(&object(vec![
        ("command", json!("xi")),
        ("n", json!(a.n)),
        ("H", num(a.h)),
        ("value", num(r.value)),
        ("error_estimate", num(r.abs_error_estimate)),
        ("evaluations", json!(r.evaluations)),
        ("converged", json!(r.converged)),
    ]));
    Ok(not_converged_exit(body, r.converged))
}

fn not_converged_exit(body: String, converged: bool) -> Artifact {
    if converged {
        Artifact::ok(body)
    } else {
        Artifact::Text {
            body,
            code: 3,
            reason: Some(("non_convergence".into(), "quadrature reached its maximum level".into())),
        }
    }
}

fn report_json(report: &SolveReport, parameter: &str) -> Vec<(&'static str, Value)> {
    match report {
        SolveReport::Solved(o) => vec![
            ("outcome", json!("Solved")),
            ("parameter", json!(parameter)),
            ("parameter_value", num(o.parameter_value)),
            ("residual", num(o.residual)),
            ("classification", o.classification.map_or(Value::Null, |c| json!(c))),
            ("bracket_used", json!([num(o.bracket_used.0), num(o.bracket_used.1)])),
            ("iterations", json!(o.iterations)),
        ],
        SolveReport::NoRoot(r) => vec![
            ("outcome", json!("NoRoot")),
            ("parameter", json!(parameter)),
            ("target", num(r.target)),
            ("segments", json!(r.segments.iter().map(|s| json!([num(s.0), num(s.1)])).collect::<Vec<_>>())),
            ("grid_points", json!(r.grid_points)),
            ("min_value", num(r.min_value)),
            ("max_value", num(r.max_value)),
        ],
        SolveReport::PreconditionFailed(p) => vec![
            ("outcome", json!("PreconditionFailed")),
            ("parameter", json!(parameter)),
            ("reason", json!(p.reason)),
            ("xi", p.xi.map_or(Value::Null, num)),
        ],
    }
}

fn h0_command(a: &H0Args, quad: &QuadOptions) -> Result<Artifact> {
    let config = SolverConfig { param_tol: a.param_tol, quad: *quad, ..SolverConfig::default() };
    let report = find_h0_with(a.n, (a.lo, a.hi), &config)?;
    let mut fields = vec![("command", json!("h0")), ("n", json!(a.n))];
    fields.extend(report_json(&report, "H"));
    if let SolveReport::Solved(o) = &report {
        fields.push(("H0", num(o.parameter_value)));
    }
    Ok(Artifact::ok(pretty(&object(fields))))
}

fn solve_command(a: &SolveArgs, quad: &QuadOptions) -> Result<Artifact> {
    let winding = WindingTarget::new(a.k, a.m)?;
    let mode = if a.embedded { SolveMode::EmbeddedOnly } else { SolveMode::AnyClosed };
    let config = SolverConfig { param_tol: a.param_tol, quad: *quad, ..SolverConfig::default() };
    let report = solve_c_with(a.n, a.h, winding, mode, &config)?;
    let marks = landmarks(a.n, a.h, None)?;
    let mut fields = vec![
        ("command", json!("solve-c")),
        ("n", json!(a.n)),
        ("H", num(a.h)),
        ("k", json!(a.k)),
        ("m", json!(a.m)),
        ("target", num(winding.target)),
        ("mode", json!(mode)),
        ("C0", num(marks.c0)),
        ("Ctilde", num(marks.c_tilde)),
    ];
    fields.extend(report_json(&report, "C"));
    if let SolveReport::Solved(o) = &report {
        fields.push(("C", num(o.parameter_value)));
    }
    let body = pretty(&object(fields));
    Ok(match &report {
        SolveReport::PreconditionFailed(p) => {
            Artifact::Text { body, code: 2, reason: Some(("precondition".into(), p.reason.clone())) }
        }
        _ => Artifact::ok(body),
    })
}

/// Profile samples as CSV with [`PROFILE_HEADER`].
pub fn profile_csv(curve: &ProfileCurve, clip: Option<f64>) -> String {
    let alpha = profile_alpha(curve);
    let mut s = String::with_capacity(curve.samples.len() * 160);
    s.push_str(PROFILE_HEADER);
    s.push('\n');
    for (p, (ax, ay)) in curve.samples.iter().zip(alpha) {
        let tp = clip.map_or(p.theta_prime, |c| p.theta_prime.clamp(-c, c));
        let row = [p.t, p.g, p.g_prime, p.r, p.lambda, p.theta, tp, ax, ay].map(fmt_f64).join(",");
        s.push_str(&row);
        s.push('\n');
    }
    s
}

fn theta_prime_csv(curve: &ProfileCurve, clip: Option<f64>) -> String {
    let mut s = String::from("t,theta_prime\n");
    for (t, v) in crate::profile::theta_prime_trace(curve, clip) {
        s.push_str(&format!("{},{}\n", fmt_f64(t), fmt_f64(v)));
    }
    s
}

fn output_dir(dir: Option<&Path>) -> Result<&Path> {
    let dir = dir.ok_or_else(|| Error::Domain("--seed-figures needs --output <directory>".into()))?;
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    Ok(dir)
}

fn write_file(path: PathBuf, body: &str) -> Result<PathBuf> {
    std::fs::write(&path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(path)
}

fn seed_profile_figures(dir: Option<&Path>) -> Result<Artifact> {
    let dir = output_dir(dir)?;
    let mut written = Vec::new();
    for (stem, c, periods) in FIGURE_PROFILES {
        let curve = integrate_profile(&ShapeParams::checked(2, FIGURE_H, c)?, periods, 1024)?;
        written.push(write_file(dir.join(format!("{stem}.csv")), &profile_csv(&curve, None))?);
        if stem == "fig1_profile" {
            let clipped = theta_prime_csv(&curve, Some(FIGURE_CLIP));
            written.push(write_file(dir.join("fig4_theta_prime_clipped.csv"), &clipped)?);
            written.push(write_file(dir.join("fig5_theta_prime.csv"), &theta_prime_csv(&curve, None))?);
        }
    }
    Ok(Artifact::Files(written))
}

/// `ξₙ` on `steps` equally spaced values of `H`, as CSV with [`SWEEP_HEADER`].
pub fn sweep_csv(n: u32, from: f64, to: f64, steps: u32, quad: &QuadOptions) -> Result<String> {
    if !(from.is_finite() && to.is_finite() && from <= -1.0 && to <= -1.0) || steps < 2 {
        return Err(Error::Domain(format!("sweep needs H <= -1 on both ends and at least 2 steps, got [{from}, {to}]")));
    }
    let grid: Vec<f64> = (0..steps)
        .map(|i| if i == steps - 1 { to } else { from + (to - from) * f64::from(i) / f64::from(steps - 1) })
        .collect();
    let rows = grid
        .par_iter()
        .map(|&h| xi_with(n, h, quad).map(|r| format!("{},{},{}\n", fmt_f64(h), fmt_f64(r.value), fmt_f64(r.abs_error_estimate))))
        .collect::<Result<Vec<_>>>()?;
    let mut s = String::from(SWEEP_HEADER);
    s.push('\n');
    s.extend(rows);
    Ok(s)
}

fn seed_sweep_figures(dir: Option<&Path>, steps: u32, quad: &QuadOptions) -> Result<Artifact> {
    let dir = output_dir(dir)?;
    let mut written = Vec::new();
    for (stem, n) in FIGURE_SWEEPS {
        let csv = sweep_csv(n, -50.0, -1.0, steps, quad)?;
        written.push(write_file(dir.join(format!("{stem}.csv")), &csv)?);
    }
    Ok(Artifact::Files(written))
}

fn surface_command(a: &SurfaceArgs) -> Result<Artifact> {
    let params = ShapeParams::checked(a.n, a.h, a.c)?;
    let curve = integrate_profile(&params, a.periods, a.samples as usize)?;
    let fibers = fiber_samples(a.n as usize, a.fiber_samples as usize, a.fiber_extent)?;
    let grid = surface_grid(&curve, &fibers)?;
    let dim = a.n as usize + 2;
    let mut s = String::from("t,fiber");
    for i in 1..=dim {
        s.push_str(&format!(",x{i}"));
    }
    s.push('\n');
    for (sample, row) in curve.samples.iter().zip(&grid) {
        for (j, point) in row.iter().enumerate() {
            s.push_str(&fmt_f64(sample.t));
            s.push_str(&format!(",{j}"));
            for x in point.coords() {
                s.push(',');
                s.push_str(&fmt_f64(*x));
            }
            s.push('\n');
        }
    }
    Ok(Artifact::ok(s))
}

fn invariant(value: f64, bound: f64) -> Value {
    json!({ "value": num(value), "bound": num(bound), "pass": value <= bound })
}

/// Evenly spread low-discrepancy points of `(0, 1)`.
pub fn golden_points(count: usize) -> impl Iterator<Item = f64> {
    const PHI: f64 = 0.618_033_988_749_894_9;
    (1..=count).map(|i| (i as f64 * PHI).fract())
}

fn check_command(a: &CheckArgs, quad: &QuadOptions) -> Result<Artifact> {
    let params = ShapeParams::checked(a.n, a.h, a.c)?;
    let curve = integrate_profile(&params, a.periods, a.samples as usize)?;
    let n = a.n;
    let fibers = fiber_samples(n as usize, 5, 1.0)?;

    let (mut phi_dev, mut nu_unit, mut nu_normal, mut first_integral) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut skipped_axis = 0usize;
    for s in &curve.samples {
        let state = curve.sample_state(s);
        first_integral = first_integral.max(state.first_integral_residual().abs());
        for y in &fibers {
            let phi = immerse_state(n, &state, y)?;
            phi_dev = phi_dev.max((phi.dot(&phi) + 1.0).abs());
            if state.rho <= 0.0 {
                skipped_axis += 1;
                continue;
            }
            let nu = gauss_map(n, &state, y)?;
            nu_unit = nu_unit.max((nu.dot(&nu) - 1.0).abs());
            nu_normal = nu_normal.max(nu.dot(&phi).abs());
        }
    }

    let (_, end) = curve.span();
    let mut cmc_worst = 0.0f64;
    let (mut evaluated, mut not_evaluated, mut inconsistent) = (0usize, 0usize, 0usize);
    for u in golden_points(a.cmc_samples as usize) {
        match verify_cmc(&curve, u * end, DEFAULT_FD_STEP)? {
            CmcCheck::Evaluated(e) => {
                evaluated += 1;
                cmc_worst = cmc_worst.max(e.max_error);
            }
            CmcCheck::NotEvaluated { .. } => not_evaluated += 1,
            CmcCheck::Inconsistent { .. } => {
                inconsistent += 1;
                cmc_worst = f64::INFINITY;
            }
        }
    }

    let thetas = curve.theta_at_periods();
    let periodicity = thetas
        .iter()
        .enumerate()
        .map(|(j, th)| (th - j as f64 * curve.k_value).abs())
        .fold(0.0, f64::max);
    let flux = match flux_k_with(&params, quad) {
        Ok(r) => Some(r),
        Err(Error::GuardBand { .. }) => None,
        Err(e) => return Err(e),
    };
    let alpha = profile_alpha(&curve);
    let c = a.c;
    let mut report = vec![
        ("command", json!("check")),
        ("n", json!(n)),
        ("H", num(a.h)),
        ("C", num(c)),
        ("periods", json!(a.periods)),
        ("period_T", num(curve.period_t)),
        ("K_ode", num(curve.k_value)),
        ("K_quadrature", flux.map_or(Value::Null, |r| num(r.value))),
        ("windings", num(f64::from(a.periods) * curve.k_value / (2.0 * PI))),
        ("energy_residual", invariant(curve.max_energy_residual, ENERGY_TOL * c.abs().max(1.0))),
        ("first_integral_identity", invariant(first_integral, GEOMETRY_TOL)),
        ("period_consistency", invariant((curve.ode_period - curve.period_t).abs(), PERIOD_TOL * curve.period_t)),
        (
            "flux_consistency",
            flux.map_or(Value::Null, |r| invariant((curve.k_value - r.value).abs(), FLUX_TOL)),
        ),
        ("periodicity", invariant(periodicity, FLUX_TOL)),
        ("closure_residual", invariant(closure_gap(&alpha), CLOSURE_TOL)),
        ("hyperboloid_membership", invariant(phi_dev, GEOMETRY_TOL)),
        ("gauss_map_unit", invariant(nu_unit, GEOMETRY_TOL)),
        ("gauss_map_normal", invariant(nu_normal, GEOMETRY_TOL)),
        ("cmc_finite_difference", invariant(cmc_worst, CMC_TOL)),
        (
            "cmc_samples",
            json!({ "evaluated": evaluated, "not_evaluated": not_evaluated, "inconsistent": inconsistent, "axis_points_skipped": skipped_axis }),
        ),
    ];
    let all_pass = report
        .iter()
        .filter_map(|(_, v)| v.get("pass").and_then(Value::as_bool))
        .all(|p| p);
    report.push(("all_pass", json!(all_pass)));
    Ok(Artifact::ok(pretty(&object(report))))
}
