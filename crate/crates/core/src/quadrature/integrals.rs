use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::potential::{
    c_tilde, oscillation_roots, threshold_sum, xi_weight, OscillationRoots, Potential, ShapeParams,
};
use crate::power_sum::Polynomial;
use crate::roots::brent;

use super::{de_integrate_with, Node, QuadOptions, QuadResult, SingularIntegrand, SingularityClass};

/// Relative half-width of the band around `C̃` in which the flux integrand
/// is refused.
pub const GUARD_BAND: f64 = 1e-9;

pub fn guard_band(n: u32, h: f64) -> f64 {
    GUARD_BAND * c_tilde(n, h).abs()
}

/// `q(v)` on `(t₁, t₂)`, expanded about whichever turning point is closer.
fn radicand(pot: &Potential, roots: &OscillationRoots, node: &Node) -> f64 {
    if node.from_lower <= node.from_upper {
        pot.q_near(roots.t1, node.from_lower)
    } else {
        pot.q_near(roots.t2, -node.from_upper)
    }
}

/// Period of `g`: `T = 2 ∫_{t₁}^{t₂} dv/√q(v)`.
pub fn period_t(params: &ShapeParams) -> Result<QuadResult> {
    period_t_with(params, &QuadOptions::default())
}

pub fn period_t_with(params: &ShapeParams, opts: &QuadOptions) -> Result<QuadResult> {
    let pot = Potential::new(*params)?;
    let roots = oscillation_roots(params)?;
    let spec = SingularIntegrand::new(roots.t1, roots.t2, SingularityClass::Both, |node: &Node| {
        1.0 / radicand(&pot, &roots, node).sqrt()
    });
    Ok(doubled(de_integrate_with(&spec, &QuadOptions { tol: 0.5 * opts.tol, ..*opts })?))
}

fn doubled(r: QuadResult) -> QuadResult {
    QuadResult { value: 2.0 * r.value, abs_error_estimate: 2.0 * r.abs_error_estimate, ..r }
}

/// Integrand of the flux integral in the `v = g` substitution,
/// `2√(-C) v λ(v) / ((v² + C) √q(v))`, with `λ(v) = H + v^{-n}`.
///
/// Near `t₁` both `λ` and `v² + C` can be tiny (when `C` is close to `C̃`);
/// they are rebuilt from the turning-point values so that the ratio keeps
/// its relative precision.
pub struct FluxIntegrand {
    pot: Potential,
    roots: OscillationRoots,
    n: i32,
    h: f64,
    s: f64,
    lambda1: f64,
    gap1: f64,
}

impl FluxIntegrand {
    pub fn new(params: &ShapeParams) -> Result<Self> {
        let c = params.require_c()?;
        let pot = Potential::new(*params)?;
        let roots = oscillation_roots(params)?;
        let n = params.n() as i32;
        let h = params.h();
        let s = (-c).sqrt();
        let t1 = roots.t1;
        let lambda1 = h + t1.powi(-n);
        // t₁² + C = λ(t₁)² t₁² at the turning point
        let gap1 = (lambda1 * t1).powi(2) / (t1 + s);
        Ok(Self { pot, roots, n, h, s, lambda1, gap1 })
    }

    pub fn roots(&self) -> &OscillationRoots {
        &self.roots
    }

    pub fn eval(&self, node: &Node) -> f64 {
        let v = node.x;
        let (lambda, below) = if node.from_lower <= node.from_upper {
            let t1 = self.roots.t1;
            let rel = (node.from_lower / t1).ln_1p();
            let dl = t1.powi(-self.n) * (-f64::from(self.n) * rel).exp_m1();
            (self.lambda1 + dl, self.gap1 + node.from_lower)
        } else {
            (self.h + v.powi(-self.n), v - self.s)
        };
        let q = radicand(&self.pot, &self.roots, node);
        2.0 * self.s * v * lambda / (below * (v + self.s) * q.sqrt())
    }
}

/// Total turning `K(C, H)` of `θ` over one period of `g`.
pub fn flux_k(params: &ShapeParams) -> Result<QuadResult> {
    flux_k_with(params, &QuadOptions::default())
}

pub fn flux_k_with(params: &ShapeParams, opts: &QuadOptions) -> Result<QuadResult> {
    let c = params.require_c()?;
    let (n, h) = (params.n(), params.h());
    let ct = c_tilde(n, h);
    let band = guard_band(n, h);
    if (c - ct).abs() < band {
        return Err(Error::GuardBand { c, c_tilde: ct, band });
    }
    let f = FluxIntegrand::new(params)?;
    let spec = SingularIntegrand::new(f.roots.t1, f.roots.t2, SingularityClass::Both, |node: &Node| f.eval(node));
    de_integrate_with(&spec, opts)
}

/// Upper zero `t̃₂(C̃, H) > 1` of the threshold potential `Q`.
pub fn threshold_upper_root(n: u32, h: f64) -> Result<f64> {
    if n < 2 || !(h <= -1.0) || !h.is_finite() {
        return Err(Error::Domain(format!("need n >= 2 and H <= -1, got n = {n}, H = {h}")));
    }
    let nu = n as usize;
    let h2 = h * h;
    let big_p = Polynomial::from_terms([
        (-h2, 0),
        (2.0 * h2, nu),
        (-1.0, 2 * nu - 2),
        (1.0 - h2, 2 * nu),
    ]);
    // v = 1 is always a root; the cofactor is positive there (Q′(1) = 2).
    let cofactor = big_p.deflate(1.0);
    let mut upper = 2.0;
    while cofactor.eval(upper) >= 0.0 {
        upper *= 2.0;
        if upper > 1e12 {
            return Err(Error::Landmark(format!(
                "threshold potential has no zero above 1 for n = {n}, H = {h}"
            )));
        }
    }
    Ok(brent(|v| cofactor.eval(v), 1.0, upper, 0.0, 400)?.x)
}

/// `ξₙ(H) = ∫₁^{t̃₂} h(v)/√Q(v) dv`, the flux at `C = C̃`.
pub fn xi(n: u32, h: f64) -> Result<QuadResult> {
    xi_with(n, h, &QuadOptions::default())
}

pub fn xi_with(n: u32, h: f64, opts: &QuadOptions) -> Result<QuadResult> {
    let upper = threshold_upper_root(n, h)?;
    let big_q = threshold_sum(n, h);
    let spec = SingularIntegrand::new(1.0, upper, SingularityClass::Both, |node: &Node| {
        let q = if node.from_lower <= node.from_upper {
            big_q.eval_near(1.0, node.from_lower)
        } else {
            big_q.eval_near(upper, -node.from_upper)
        };
        xi_weight(n, h, node.x) / q.sqrt()
    });
    de_integrate_with(&spec, opts)
}

/// `ξ₂` through its trigonometric form
/// `∫₀^π √2 H dt / √(2H² + sin 2t - 1)`, a smooth periodic integrand.
pub fn xi_two_dimensional_direct(h: f64) -> Result<QuadResult> {
    let spec = SingularIntegrand::new(0.0, PI, SingularityClass::None, |node: &Node| {
        SQRT_2 * h / (2.0 * h * h + (2.0 * node.x).sin() - 1.0).sqrt()
    });
    de_integrate_with(&spec, &QuadOptions::with_tol(1e-13))
}

/// One-sided limit of `K(C, H)` as `C → C₀⁺`:
/// `-π √2 √(1 - nH/√(n²H² - 4(n-1)))`.
pub fn k_limit_at_c0(n: u32, h: f64) -> f64 {
    let nf = f64::from(n);
    -SQRT_2 * (1.0 - nf * h / (nf * nf * h * h - 4.0 * (nf - 1.0)).sqrt()).sqrt() * PI
}

/// Two-dimensional form of [`k_limit_at_c0`]: `-π √(2 - 2H/√(H² - 1))`.
pub fn b2(h: f64) -> f64 {
    -PI * (2.0 - 2.0 * h / (h * h - 1.0).sqrt()).sqrt()
}
