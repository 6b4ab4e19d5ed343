//! The radial potential `q(v) = C - v^{2-2n} + (1-H²)v² - 2H v^{2-n}` and
//! everything derived from it in closed form.
//!
//! A profile function `g` obeys `(g′)² = q(g)`, so `g` oscillates between
//! the two positive zeros `t₁ < t₂` of `q`. Those exist exactly when
//! `C₀ < C < 0`, where `C₀` is the value of `C` at which the maximum of `q`
//! (attained at `v₀`) touches zero.
//!
//! Relatives of `q`:
//!
//! * `p(v) = v^{2n-2} q(v)`, an even-degree polynomial with `p(0) = -1`;
//! * the scaled potential `q̃(v) = -q(√(-C)·v)/C` governing `r = g/√(-C)`;
//! * the threshold potential `Q = q̃` at `C = C̃ = -(-H)^{-2/n}`, which
//!   vanishes at `v = 1`;
//! * the weight `h(v) = 2H v^{1-n}(1 + v + … + v^{n-1})/(1 + v)` appearing
//!   in the threshold flux integral.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::power_sum::{PowerSum, Polynomial};
use crate::roots::brent;

/// Relative distance to `C₀` below which the turning points are reported as
/// degenerate.
pub const DEGENERATE_GAP: f64 = 1e-12;

/// `(n, H, C)` for one candidate hypersurface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShapeParams {
    n: u32,
    h: f64,
    c: Option<f64>,
}

impl ShapeParams {
    /// Dimension `n ≥ 2` and mean curvature `H < -1`; `C` still open.
    pub fn new(n: u32, h: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("n = {n} must be at least 2")));
        }
        if !h.is_finite() || h >= -1.0 {
            return Err(Error::Domain(format!("H = {h} must be finite and < -1")));
        }
        Ok(Self { n, h, c: None })
    }

    /// Fixes `C`, checking `C₀ < C < 0`.
    pub fn with_c(self, c: f64) -> Result<Self> {
        let c0 = c_zero(self.n, self.h);
        if !c.is_finite() || c >= 0.0 {
            return Err(Error::Range(format!("C = {c} violates C < 0")));
        }
        if c <= c0 {
            return Err(Error::Range(format!("C = {c} violates C > C0 = {c0}")));
        }
        Ok(Self { c: Some(c), ..self })
    }

    pub fn checked(n: u32, h: f64, c: f64) -> Result<Self> {
        Self::new(n, h)?.with_c(c)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn c(&self) -> Option<f64> {
        self.c
    }

    pub(crate) fn require_c(&self) -> Result<f64> {
        self.c
            .ok_or_else(|| Error::Domain("first-integral constant C has not been chosen".into()))
    }
}

/// `q` and its derivative for one fixed `(n, H, C)`.
#[derive(Debug, Clone)]
pub struct Potential {
    params: ShapeParams,
    q: PowerSum,
    dq: PowerSum,
}

impl Potential {
    pub fn new(params: ShapeParams) -> Result<Self> {
        let c = params.require_c()?;
        let (n, h) = (params.n as i32, params.h);
        let q = PowerSum::new(c, [(-1.0, 2 - 2 * n), (1.0 - h * h, 2), (-2.0 * h, 2 - n)]);
        let dq = q.derivative();
        Ok(Self { params, q, dq })
    }

    pub fn params(&self) -> ShapeParams {
        self.params
    }

    pub fn q(&self, v: f64) -> f64 {
        self.q.eval(v)
    }

    pub fn q_prime(&self, v: f64) -> f64 {
        self.dq.eval(v)
    }

    /// `q(root + offset)` for a zero `root` of `q`, accurate for tiny offsets.
    pub fn q_near(&self, root: f64, offset: f64) -> f64 {
        self.q.eval_near(root, offset)
    }

    /// Sum of the absolute values of the terms of `q`, a scale for residuals.
    pub fn q_magnitude(&self, v: f64) -> f64 {
        self.q.magnitude(v)
    }

    /// `p(v) = v^{2n-2} q(v)` as an explicit polynomial.
    pub fn p_polynomial(&self) -> Polynomial {
        let n = self.params.n as usize;
        let (h, c) = (self.params.h, self.params.c.unwrap_or_default());
        Polynomial::from_terms([
            (-1.0, 0),
            (-2.0 * h, n),
            (c, 2 * n - 2),
            (1.0 - h * h, 2 * n),
        ])
    }
}

fn positive(v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("v = {v} must be positive")))
    }
}

pub fn eval_q(params: &ShapeParams, v: f64) -> Result<f64> {
    positive(v)?;
    Ok(Potential::new(*params)?.q(v))
}

pub fn eval_q_prime(params: &ShapeParams, v: f64) -> Result<f64> {
    positive(v)?;
    Ok(Potential::new(*params)?.q_prime(v))
}

/// `p(v) = v^{2n-2} q(v)`; defined for every real `v`.
pub fn eval_p(params: &ShapeParams, v: f64) -> Result<f64> {
    Ok(Potential::new(*params)?.p_polynomial().eval(v))
}

/// `q̃(v) = -q(√(-C) v)/C`, the potential for `r = g/√(-C)`.
pub fn eval_q_scaled(params: &ShapeParams, v: f64) -> Result<f64> {
    positive(v)?;
    let c = params.require_c()?;
    Ok(-Potential::new(*params)?.q((-c).sqrt() * v) / c)
}

pub(crate) fn threshold_sum(n: u32, h: f64) -> PowerSum {
    let n = n as i32;
    let h2 = h * h;
    PowerSum::new(-1.0, [(1.0 - h2, 2), (-h2, 2 - 2 * n), (2.0 * h2, 2 - n)])
}

fn threshold_domain(n: u32, h: f64) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("n = {n} must be at least 2")));
    }
    if !h.is_finite() || h > -1.0 {
        return Err(Error::Domain(format!("H = {h} must be finite and <= -1")));
    }
    Ok(())
}

/// Threshold potential `Q(v) = -1 + v² - H²v² - H²v^{2-2n} + 2H²v^{2-n}`;
/// `Q(1) = 0` for every `(n, H)`. `H = -1` is allowed.
pub fn eval_q_threshold(n: u32, h: f64, v: f64) -> Result<f64> {
    threshold_domain(n, h)?;
    positive(v)?;
    Ok(threshold_sum(n, h).eval(v))
}

/// Weight `h(v) = 2H v^{1-n} (1 + v + … + v^{n-1})/(1 + v)`, regular at
/// `v = 1` where it equals `nH`.
pub fn eval_xi_weight(n: u32, h: f64, v: f64) -> Result<f64> {
    threshold_domain(n, h)?;
    positive(v)?;
    Ok(xi_weight(n, h, v))
}

pub(crate) fn xi_weight(n: u32, h: f64, v: f64) -> f64 {
    let geometric = (0..n).fold(0.0, |acc, _| acc * v + 1.0);
    2.0 * h * v.powi(1 - n as i32) * geometric / (1.0 + v)
}

/// Only positive critical point of `q`.
pub fn v_zero(n: u32, h: f64) -> f64 {
    let nf = f64::from(n);
    let disc = (4.0 - 4.0 * nf + h * h * nf * nf).sqrt();
    (2.0 * (nf - 1.0) / (disc - h * (nf - 2.0))).powf(1.0 / nf)
}

/// Lower bound `C₀` for `C`: `q(v₀) = C - C₀`.
pub fn c_zero(n: u32, h: f64) -> f64 {
    let nf = f64::from(n);
    let disc = (4.0 - 4.0 * nf + h * h * nf * nf).sqrt();
    // H²n - 2 + H√D rationalised: its conjugate product is 4(1 - H²).
    let numer = 4.0 * (1.0 - h * h) / (h * h * nf - 2.0 - h * disc);
    let base = h * (nf - 2.0) + disc;
    nf * numer / base.powf((2.0 * nf - 2.0) / nf) * (2.0 * h * h - 2.0).powf((nf - 2.0) / nf)
}

/// `C̃ = -(-H)^{-2/n}`: for `C < C̃` the curvature `λ` is negative everywhere.
pub fn c_tilde(n: u32, h: f64) -> f64 {
    -(-h).powf(-2.0 / f64::from(n))
}

/// `C₁ = 2(H + √(H² - 1))`, the `n = 2` form of `C₀`.
pub fn c_one(h: f64) -> f64 {
    2.0 / (h - (h * h - 1.0).sqrt())
}

/// `λ` at `g = v₀`: `(nH + √(n²H² - 4(n-1)))/(2(n-1))`.
pub fn lambda_at_v_zero(n: u32, h: f64) -> f64 {
    let nf = f64::from(n);
    2.0 / (nf * h - (nf * nf * h * h - 4.0 * (nf - 1.0)).sqrt())
}

/// Zeros of `q` at `C = 0`, the limits of `t₁, t₂` as `C → 0⁻`.
pub fn zero_c_roots(n: u32, h: f64) -> (f64, f64) {
    let inv_n = -1.0 / f64::from(n);
    ((1.0 - h).powf(inv_n), (-1.0 - h).powf(inv_n))
}

/// Turning points of the profile function `g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OscillationRoots {
    pub t1: f64,
    pub t2: f64,
    /// `t₁/√(-C)`, the minimum of `r`.
    pub t1_scaled: f64,
    /// `t₂/√(-C)`, the maximum of `r`.
    pub t2_scaled: f64,
}

impl OscillationRoots {
    /// Largest value of `λ = H + g^{-n}` along the profile.
    pub fn max_lambda(&self, n: u32, h: f64) -> f64 {
        h + self.t1.powi(-(n as i32))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialLandmarks {
    pub v0: f64,
    #[serde(rename = "C0")]
    pub c0: f64,
    #[serde(rename = "Ctilde")]
    pub c_tilde: f64,
    #[serde(rename = "C1")]
    pub c1: Option<f64>,
    pub lambda_at_v0: f64,
    pub v1: f64,
    pub v2: f64,
    pub roots: Option<OscillationRoots>,
}

pub fn landmarks(n: u32, h: f64, c: Option<f64>) -> Result<PotentialLandmarks> {
    let params = ShapeParams::new(n, h)?;
    let roots = match c {
        Some(c) => Some(oscillation_roots(&params.with_c(c)?)?),
        None => None,
    };
    let (v1, v2) = zero_c_roots(n, h);
    Ok(PotentialLandmarks {
        v0: v_zero(n, h),
        c0: c_zero(n, h),
        c_tilde: c_tilde(n, h),
        c1: (n == 2).then(|| c_one(h)),
        lambda_at_v0: lambda_at_v_zero(n, h),
        v1,
        v2,
        roots,
    })
}

/// The two positive zeros of `q`, from bracketed root finding on `p`.
pub fn oscillation_roots(params: &ShapeParams) -> Result<OscillationRoots> {
    let c = params.require_c()?;
    let (n, h) = (params.n, params.h);
    let c0 = c_zero(n, h);
    if c >= 0.0 {
        return Err(Error::Range(format!("C = {c} violates C < 0")));
    }
    if c <= c0 {
        return Err(Error::Range(format!("C = {c} violates C > C0 = {c0}")));
    }
    let gap = c - c0;
    if gap < DEGENERATE_GAP * c0.abs() {
        return Err(Error::DegenerateOscillation { gap, threshold: DEGENERATE_GAP * c0.abs() });
    }

    let pot = Potential::new(*params)?;
    let p = pot.p_polynomial();
    let v0 = v_zero(n, h);
    if p.eval(v0) <= 0.0 {
        return Err(Error::DegenerateOscillation { gap, threshold: DEGENERATE_GAP * c0.abs() });
    }
    let mut upper = 2.0 * v0;
    while p.eval(upper) >= 0.0 {
        upper *= 2.0;
        if upper > 1e150 {
            return Err(Error::Landmark("no upper bracket for t2".into()));
        }
    }
    let t1 = brent(|v| p.eval(v), 0.0, v0, 0.0, 400)?.x;
    let t2 = brent(|v| p.eval(v), v0, upper, 0.0, 400)?.x;
    let s = (-c).sqrt();
    Ok(OscillationRoots { t1, t2, t1_scaled: t1 / s, t2_scaled: t2 / s })
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn scaled_potential_identity(n in 2u32..6, h in -8.0f64..-1.01, frac in 0.01f64..0.99, v in 0.2f64..4.0) {
            let c = frac * c_zero(n, h);
            let p = ShapeParams::checked(n, h, c).unwrap();
            let lhs = eval_q_scaled(&p, v).unwrap() * -c;
            let rhs = eval_q(&p, (-c).sqrt() * v).unwrap();
            let scale = Potential::new(p).unwrap().q_magnitude((-c).sqrt() * v);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * scale.max(1.0));
        }

        #[test]
        fn p_is_scaled_q(n in 2u32..6, h in -8.0f64..-1.01, frac in 0.01f64..0.99, v in 0.2f64..3.0) {
            let p = ShapeParams::checked(n, h, frac * c_zero(n, h)).unwrap();
            let lhs = eval_p(&p, v).unwrap();
            let rhs = v.powi(2 * n as i32 - 2) * eval_q(&p, v).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-11 * lhs.abs().max(1.0) * v.powi(2 * n as i32).max(1.0));
        }
    }
}
