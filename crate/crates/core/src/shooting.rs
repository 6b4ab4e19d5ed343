//! Closure conditions solved by scan-then-bracket root finding.
//!
//! * `H₀` with `ξₙ(H₀) = -2π`, the threshold below which the embedded
//!   surfaces exist;
//! * `C*` with `K(C*, H) = -2πk/m`, which closes the immersion after `m`
//!   periods and `k` turns.
//!
//! `K(·, H)` jumps by `2π` at `C̃` (the profile switches the side of the
//! axis it passes), so `(C₀, C̃)` and `(C̃, 0)` are scanned as separate
//! segments and no bracket ever straddles `C̃`.

use std::cell::Cell;
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::potential::{c_tilde, c_zero, ShapeParams};
use crate::quadrature::{flux_k_with, guard_band, xi_with, QuadOptions};
use crate::roots::brent_with_values;

/// Initial and largest number of subdivisions of each scan segment.
pub const SCAN_START: usize = 64;
pub const SCAN_MAX: usize = 4096;

/// Relative offset `γ/|C₀|` of the first scan point from `C₀`.
pub const C0_OFFSET: f64 = 1e-6;

/// Distance `γ′` of the last scan point from `C = 0`.
pub const ZERO_OFFSET: f64 = 1e-9;

/// Closest approach of the `H` scan to `H = -1`.
pub const MINUS_ONE_OFFSET: f64 = 1e-6;

/// Accepted `|K - target|` when classifying a given `C`.
pub const CLASSIFY_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverConfig {
    /// Brent tolerance on the parameter.
    pub param_tol: f64,
    /// Re-checked residual bound on the closure functional.
    pub residual_tol: f64,
    #[serde(skip)]
    pub quad: QuadOptions,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { param_tol: 1e-13, residual_tol: 1e-9, quad: QuadOptions::default() }
    }
}

/// `K = -2πk/m` with `gcd(k, m) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WindingTarget {
    pub k: u32,
    pub m: u32,
    pub coprime: bool,
    pub target: f64,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { gcd(b, a % b) }
}

impl WindingTarget {
    pub fn new(k: u32, m: u32) -> Result<Self> {
        if k == 0 || m == 0 {
            return Err(Error::Domain(format!("winding k = {k}, m = {m} must be positive")));
        }
        if gcd(k, m) != 1 {
            return Err(Error::Domain(format!("winding k = {k}, m = {m} is not in lowest terms")));
        }
        Ok(Self { k, m, coprime: true, target: -2.0 * PI * f64::from(k) / f64::from(m) })
    }

    /// One turn after one period.
    pub fn single_turn() -> Self {
        Self { k: 1, m: 1, coprime: true, target: -2.0 * PI }
    }

    pub fn is_single_turn(&self) -> bool {
        self.k == 1 && self.m == 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SolveMode {
    /// `K = -2π` on `(C₀, C̃)`, where `λ < 0` makes `θ` injective.
    EmbeddedOnly,
    /// `K = -2πk/m` anywhere on `(C₀, 0)`.
    AnyClosed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    Embedded,
    ImmersedClosed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolveOutcome {
    pub parameter_value: f64,
    /// Closure functional minus its target, re-evaluated at the root.
    pub residual: f64,
    /// `None` for `H₀`, which is a threshold rather than a surface.
    pub classification: Option<Classification>,
    pub bracket_used: (f64, f64),
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoRootReport {
    pub target: f64,
    /// Scanned segments in the solved parameter.
    pub segments: Vec<(f64, f64)>,
    pub grid_points: usize,
    pub min_value: f64,
    pub max_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PreconditionReport {
    pub reason: String,
    pub xi: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome")]
pub enum SolveReport {
    Solved(SolveOutcome),
    NoRoot(NoRootReport),
    PreconditionFailed(PreconditionReport),
}

impl SolveReport {
    pub fn solved(&self) -> Option<&SolveOutcome> {
        match self {
            SolveReport::Solved(o) => Some(o),
            _ => None,
        }
    }
}

/// Grid of `count + 1` points between `from` and `to`, geometric in the
/// distance from `anchor` (which lies outside `[from, to]` or at an end).
fn geometric_grid(anchor: f64, from: f64, to: f64, count: usize) -> Vec<f64> {
    let (d0, d1) = ((from - anchor).abs(), (to - anchor).abs());
    let dir = if to >= anchor { 1.0 } else { -1.0 };
    (0..=count)
        .map(|i| {
            if i == 0 {
                from
            } else if i == count {
                to
            } else {
                anchor + dir * d0 * (d1 / d0).powf(i as f64 / count as f64)
            }
        })
        .collect()
}

struct Bracket {
    lo: (f64, f64),
    hi: (f64, f64),
}

enum ScanResult {
    Found(Bracket),
    Missed { points: usize, min: f64, max: f64 },
}

/// Evaluates `f` on every segment grid (in parallel, ordered) and returns
/// the first sign change, segments taken in order.
fn scan<F>(segments: &[(f64, f64, f64)], count: usize, f: &F) -> Result<ScanResult>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let mut points = 0;
    let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(anchor, from, to) in segments {
        let grid = geometric_grid(anchor, from, to, count);
        let values: Vec<f64> = grid.par_iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
        points += grid.len();
        for &v in &values {
            min = min.min(v);
            max = max.max(v);
        }
        for i in 0..grid.len() - 1 {
            let (a, b) = (values[i], values[i + 1]);
            if a == 0.0 || a.signum() != b.signum() {
                return Ok(ScanResult::Found(Bracket { lo: (grid[i], a), hi: (grid[i + 1], b) }));
            }
        }
        if values[grid.len() - 1] == 0.0 {
            let last = grid.len() - 1;
            return Ok(ScanResult::Found(Bracket {
                lo: (grid[last - 1], values[last - 1]),
                hi: (grid[last], 0.0),
            }));
        }
    }
    Ok(ScanResult::Missed { points, min, max })
}

/// Doubles the grid from [`SCAN_START`] to [`SCAN_MAX`] until a sign change
/// shows up.
fn scan_refining<F>(segments: &[(f64, f64, f64)], f: &F) -> Result<std::result::Result<Bracket, (usize, f64, f64)>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let mut count = SCAN_START;
    loop {
        match scan(segments, count, f)? {
            ScanResult::Found(b) => return Ok(Ok(b)),
            ScanResult::Missed { points, min, max } => {
                if count >= SCAN_MAX {
                    return Ok(Err((points, min, max)));
                }
                count *= 2;
            }
        }
    }
}

/// Brent refinement of a scanned bracket; errors raised inside `f` are
/// passed through unchanged.
fn refine<F>(f: &F, bracket: &Bracket, config: &SolverConfig) -> Result<(f64, (f64, f64), usize)>
where
    F: Fn(f64) -> Result<f64>,
{
    let failure: Cell<Option<Error>> = Cell::new(None);
    let mut g = |x: f64| match f(x) {
        Ok(v) => v,
        Err(e) => {
            failure.set(Some(e));
            f64::NAN
        }
    };
    let root = brent_with_values(&mut g, bracket.lo, bracket.hi, config.param_tol, 200);
    if let Some(e) = failure.take() {
        return Err(e);
    }
    let root = root?;
    Ok((root.x, root.bracket, root.iterations))
}

/// `H₀` with `ξₙ(H₀) = -2π` on `(H_lo, H_hi)`.
pub fn find_h0(n: u32, search: (f64, f64), tol: f64) -> Result<SolveReport> {
    find_h0_with(n, search, &SolverConfig { param_tol: tol, ..SolverConfig::default() })
}

pub fn find_h0_with(n: u32, (lo, hi): (f64, f64), config: &SolverConfig) -> Result<SolveReport> {
    if n < 2 {
        return Err(Error::Domain(format!("n = {n} must be at least 2")));
    }
    if !(hi <= -1.0 && lo < hi && lo.is_finite()) || !(config.param_tol > 0.0) {
        return Err(Error::Domain(format!(
            "need H_lo < H_hi <= -1 and a positive tolerance, got ({lo}, {hi}), {}",
            config.param_tol
        )));
    }
    // scan in s = -1 - H, geometric away from H = -1
    let s_near = (-1.0 - hi).max(MINUS_ONE_OFFSET);
    let s_far = -1.0 - lo;
    if !(s_near < s_far) {
        return Err(Error::Domain(format!("search interval ({lo}, {hi}) is too close to -1")));
    }
    let target = -2.0 * PI;
    let in_s = |s: f64| xi_with(n, -1.0 - s, &config.quad).map(|r| r.value - target);
    let segments = [(0.0, s_near, s_far)];
    match scan_refining(&segments, &in_s)? {
        Err((grid_points, min, max)) => Ok(SolveReport::NoRoot(NoRootReport {
            target,
            segments: vec![(-1.0 - s_far, -1.0 - s_near)],
            grid_points,
            min_value: min + target,
            max_value: max + target,
        })),
        Ok(bracket) => {
            let in_h = |h: f64| xi_with(n, h, &config.quad).map(|r| r.value - target);
            let flipped = Bracket {
                lo: (-1.0 - bracket.lo.0, bracket.lo.1),
                hi: (-1.0 - bracket.hi.0, bracket.hi.1),
            };
            let (h0, used, iterations) = refine(&in_h, &flipped, config)?;
            let residual = in_h(h0)?;
            if residual.abs() > config.residual_tol {
                return Err(Error::NonConvergence(format!(
                    "xi(H0) + 2pi = {residual:e} at H0 = {h0} exceeds {:e}",
                    config.residual_tol
                )));
            }
            Ok(SolveReport::Solved(SolveOutcome {
                parameter_value: h0,
                residual,
                classification: None,
                bracket_used: used,
                iterations,
            }))
        }
    }
}

/// `C*` with `K(C*, H) = -2πk/m`.
pub fn solve_c(n: u32, h: f64, winding: WindingTarget, mode: SolveMode, tol: f64) -> Result<SolveReport> {
    solve_c_with(n, h, winding, mode, &SolverConfig { param_tol: tol, ..SolverConfig::default() })
}

pub fn solve_c_with(
    n: u32,
    h: f64,
    winding: WindingTarget,
    mode: SolveMode,
    config: &SolverConfig,
) -> Result<SolveReport> {
    let base = ShapeParams::new(n, h)?;
    if !(config.param_tol > 0.0) {
        return Err(Error::Domain(format!("tolerance {} must be positive", config.param_tol)));
    }
    let c0 = c_zero(n, h);
    let ct = c_tilde(n, h);
    let band = guard_band(n, h);
    let lower = c0 + C0_OFFSET * c0.abs();
    let below_tilde = (lower, ct - 2.0 * band);
    let above_tilde = (ct + 2.0 * band, -ZERO_OFFSET);

    let segments = match mode {
        SolveMode::EmbeddedOnly => {
            if !winding.is_single_turn() {
                return Ok(SolveReport::PreconditionFailed(PreconditionReport {
                    reason: format!(
                        "embedded surfaces close after one turn; got k = {}, m = {}",
                        winding.k, winding.m
                    ),
                    xi: None,
                }));
            }
            let x = xi_with(n, h, &config.quad)?.value;
            if !(x > -2.0 * PI) {
                return Ok(SolveReport::PreconditionFailed(PreconditionReport {
                    reason: format!("embedding criterion xi_n(H) > -2pi fails: xi_{n}({h}) = {x}"),
                    xi: Some(x),
                }));
            }
            vec![(c0, below_tilde.0, below_tilde.1)]
        }
        SolveMode::AnyClosed => {
            vec![(c0, below_tilde.0, below_tilde.1), (0.0, above_tilde.0, above_tilde.1)]
        }
    };

    let target = winding.target;
    let residual_at = |c: f64| -> Result<f64> {
        let params = base.with_c(c)?;
        Ok(flux_k_with(&params, &config.quad)?.value - target)
    };
    match scan_refining(&segments, &residual_at)? {
        Err((grid_points, min, max)) => Ok(SolveReport::NoRoot(NoRootReport {
            target,
            segments: segments.iter().map(|&(_, a, b)| (a, b)).collect(),
            grid_points,
            min_value: min + target,
            max_value: max + target,
        })),
        Ok(bracket) => {
            let (c_star, used, iterations) = refine(&residual_at, &bracket, config)?;
            // fresh evaluation, nothing shared with the refinement
            let residual = residual_at(c_star)?;
            if residual.abs() > config.residual_tol {
                return Err(Error::NonConvergence(format!(
                    "K(C*) - target = {residual:e} at C* = {c_star} exceeds {:e}",
                    config.residual_tol
                )));
            }
            Ok(SolveReport::Solved(SolveOutcome {
                parameter_value: c_star,
                residual,
                classification: Some(classify_rule(c_star, ct, &winding)),
                bracket_used: used,
                iterations,
            }))
        }
    }
}

fn classify_rule(c: f64, ct: f64, winding: &WindingTarget) -> Classification {
    if c < ct && winding.is_single_turn() {
        Classification::Embedded
    } else {
        Classification::ImmersedClosed
    }
}

/// Classifies a closed surface whose flux is known to match `winding`.
/// Inside the `C̃` guard band the flux is taken as `ξₙ(H)`.
pub fn classify(n: u32, h: f64, c: f64, winding: &WindingTarget) -> Result<Classification> {
    let params = ShapeParams::checked(n, h, c)?;
    let ct = c_tilde(n, h);
    let k_value = match flux_k_with(&params, &QuadOptions::default()) {
        Ok(r) => r.value,
        Err(Error::GuardBand { .. }) => xi_with(n, h, &QuadOptions::default())?.value,
        Err(e) => return Err(e),
    };
    if (k_value - winding.target).abs() > CLASSIFY_TOL {
        return Err(Error::ClassificationRefused { k_value, target: winding.target });
    }
    Ok(classify_rule(c, ct, winding))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn winding_validation() {
        assert!(WindingTarget::new(2, 4).is_err());
        assert!(WindingTarget::new(0, 3).is_err());
        let w = WindingTarget::new(3, 5).unwrap();
        assert_eq!(w.target, -2.0 * PI * 3.0 / 5.0);
        assert!(w.coprime);
    }

    #[test]
    fn geometric_grid_hits_both_ends() {
        let g = geometric_grid(-2.0, -1.9, -0.5, 8);
        assert_eq!(g[0], -1.9);
        assert_eq!(g[8], -0.5);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        let g = geometric_grid(0.0, -0.9, -1e-9, 8);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(g[8], -1e-9);
    }

    #[test]
    fn h0_in_two_dimensions() {
        let r = find_h0(2, (-10.0, -1.0), 1e-12).unwrap();
        let o = r.solved().expect("H0 exists for n = 2");
        assert!((o.parameter_value + 1.0158136657178574).abs() < 1e-9, "{o:?}");
    }

    #[test]
    fn embedded_precondition_above_h0() {
        let r = solve_c(2, -1.005, WindingTarget::single_turn(), SolveMode::EmbeddedOnly, 1e-13).unwrap();
        match r {
            SolveReport::PreconditionFailed(p) => assert!(p.xi.unwrap() < -2.0 * PI),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn immersed_five_period_solution() {
        let w = WindingTarget::new(1, 5).unwrap();
        let r = solve_c(2, -1.1, w, SolveMode::AnyClosed, 1e-13).unwrap();
        let o = r.solved().unwrap();
        assert!((o.parameter_value + 0.6835660909345689).abs() < 1e-9, "{o:?}");
        assert_eq!(o.classification, Some(Classification::ImmersedClosed));
    }

    #[test]
    fn target_below_the_limit_has_no_root() {
        let w = WindingTarget::new(2, 1).unwrap();
        let r = solve_c(2, -1.1, w, SolveMode::AnyClosed, 1e-13).unwrap();
        match r {
            SolveReport::NoRoot(rep) => assert!(rep.min_value > w.target),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn classification_refuses_mismatch() {
        let w = WindingTarget::new(1, 3).unwrap();
        assert!(matches!(
            classify(2, -1.1, -0.6835660909345689, &w),
            Err(Error::ClassificationRefused { .. })
        ));
        let w5 = WindingTarget::new(1, 5).unwrap();
        assert_eq!(classify(2, -1.1, -0.6835660909345689, &w5).unwrap(), Classification::ImmersedClosed);
    }
}
