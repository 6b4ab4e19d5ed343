//! Tanh-sinh (double-exponential) quadrature for integrands with
//! inverse-square-root endpoint singularities, and the concrete period and
//! flux integrals built on it.
//!
//! The rule never evaluates an endpoint. Every node is handed to the
//! integrand together with its exact distances to both ends of the
//! interval. An integrand that vanishes like `√(v - a)` can then evaluate
//! its radicand from the distance instead of from `v - a`, which would have
//! cancelled away all significant digits close to `a`.

mod integrals;

pub use integrals::{
    b2, flux_k, flux_k_with, guard_band, k_limit_at_c0, period_t, period_t_with,
    threshold_upper_root, xi, xi_two_dimensional_direct, xi_with, FluxIntegrand,
};

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest `t` of the tanh-sinh transform; beyond it every node distance
/// underflows in double precision.
const T_MAX: f64 = 6.5;

/// Levels below this are never accepted as converged (coarse levels can
/// agree by accident on symmetric integrands).
const MIN_LEVEL: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SingularityClass {
    None,
    InverseSqrtAtLower,
    InverseSqrtAtUpper,
    Both,
}

/// A quadrature node: abscissa plus exact distances to both endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub x: f64,
    pub from_lower: f64,
    pub from_upper: f64,
}

pub struct SingularIntegrand<F> {
    pub lower: f64,
    pub upper: f64,
    pub integrand: F,
    pub singularity: SingularityClass,
}

impl<F: Fn(&Node) -> f64> SingularIntegrand<F> {
    pub fn new(lower: f64, upper: f64, singularity: SingularityClass, integrand: F) -> Self {
        Self { lower, upper, integrand, singularity }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub tol: f64,
    pub max_level: u32,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { tol: 1e-11, max_level: 12 }
    }
}

impl QuadOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }
}

/// Integrates with the default maximum level (12).
pub fn de_integrate<F: Fn(&Node) -> f64>(spec: &SingularIntegrand<F>, tol: f64) -> Result<QuadResult> {
    de_integrate_with(spec, &QuadOptions::with_tol(tol))
}

pub fn de_integrate_with<F: Fn(&Node) -> f64>(
    spec: &SingularIntegrand<F>,
    opts: &QuadOptions,
) -> Result<QuadResult> {
    let (a, b) = (spec.lower, spec.upper);
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!("integration interval [{a}, {b}] is empty or infinite")));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::Domain(format!("tolerance {} must be positive", opts.tol)));
    }
    let half = 0.5 * (b - a);
    let width = b - a;
    let mut evaluations = 0usize;

    // f at the centre t = 0
    let centre = Node { x: a + half, from_lower: half, from_upper: half };
    let mut raw = evaluate(spec, &centre, &mut evaluations)? * std::f64::consts::FRAC_PI_2;

    let mut prev: Option<f64> = None;
    let mut last_diff = f64::INFINITY;
    for level in 0..=opts.max_level {
        let h = 0.5f64.powi(level as i32);
        let (start, stride) = if level == 0 { (1u64, 1u64) } else { (1u64, 2u64) };
        let mut k = start;
        loop {
            let t = k as f64 * h;
            if t > T_MAX {
                break;
            }
            let u = std::f64::consts::FRAC_PI_2 * t.sinh();
            let cosh_u = u.cosh();
            let weight = std::f64::consts::FRAC_PI_2 * t.cosh() / (cosh_u * cosh_u);
            // 1 - tanh(u), without cancellation
            let complement = (-u).exp() / cosh_u;
            let dist = half * complement;
            if weight > 0.0 && dist > 0.0 {
                let right = Node { x: b - dist, from_lower: width - dist, from_upper: dist };
                let left = Node { x: a + dist, from_lower: dist, from_upper: width - dist };
                raw += weight * (evaluate(spec, &right, &mut evaluations)? + evaluate(spec, &left, &mut evaluations)?);
            }
            k += stride;
        }
        let estimate = raw * h * half;
        if let Some(p) = prev {
            last_diff = (estimate - p).abs();
            if level >= MIN_LEVEL && last_diff <= opts.tol {
                return Ok(QuadResult {
                    value: estimate,
                    abs_error_estimate: last_diff,
                    evaluations,
                    converged: true,
                });
            }
        }
        prev = Some(estimate);
    }
    Ok(QuadResult {
        value: prev.unwrap_or(f64::NAN),
        abs_error_estimate: last_diff,
        evaluations,
        converged: false,
    })
}

fn evaluate<F: Fn(&Node) -> f64>(spec: &SingularIntegrand<F>, node: &Node, count: &mut usize) -> Result<f64> {
    *count += 1;
    let y = (spec.integrand)(node);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::Evaluation { abscissa: node.x, value: y })
    }
}
