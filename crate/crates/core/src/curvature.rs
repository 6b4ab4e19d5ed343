//! Finite-difference certification of the principal curvatures.
//!
//! Along a fibre direction `w` and along the profile parameter `u` the
//! Gauss map satisfies `dν = -κ dφ`, so each curvature is estimated as
//! `κ = -⟨Dν, Dφ⟩/⟨Dφ, Dφ⟩` from Richardson-extrapolated central
//! differences with steps `h` and `2h`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lorentz::{gauss_map, immerse_state, FiberPoint, LorentzVector};
use crate::ode::rk_step;
use crate::profile::ProfileCurve;

pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// Accepted deviation of each estimate from its exact value.
pub const CMC_TOL: f64 = 1e-5;

/// Closer to the axis than this (`r - 1`) no estimate is attempted.
pub const AXIS_GAP: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CmcEstimate {
    pub t: f64,
    /// `λ` estimated along each vector of an orthonormal fibre tangent basis.
    pub lambda_fibre: Vec<f64>,
    pub lambda_est: f64,
    pub mu_est: f64,
    pub h_est: f64,
    pub lambda_exact: f64,
    pub mu_exact: f64,
    /// `⟨ν, ∂φ/∂u⟩` from the same differences.
    pub normal_tangent: f64,
    /// Step actually used along `u`.
    pub u_step: f64,
    pub max_error: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CmcCheck {
    Evaluated(CmcEstimate),
    NotEvaluated { t: f64, r_minus_one: f64 },
    /// A displaced state broke `(r′)² + λ²r² = r² - 1`: the step is too large.
    Inconsistent { t: f64, u_step: f64, residual: f64 },
}

impl CmcCheck {
    pub fn estimate(&self) -> Option<&CmcEstimate> {
        match self {
            CmcCheck::Evaluated(e) => Some(e),
            CmcCheck::NotEvaluated { .. } | CmcCheck::Inconsistent { .. } => None,
        }
    }
}

fn richardson(plus: [&LorentzVector; 2], minus: [&LorentzVector; 2], h: f64) -> LorentzVector {
    let d1 = plus[0].sub(minus[0]).scale(0.5 / h);
    let d2 = plus[1].sub(minus[1]).scale(0.25 / h);
    d1.scale(4.0 / 3.0).sub(&d2.scale(1.0 / 3.0))
}

fn curvature_along(dnu: &LorentzVector, dphi: &LorentzVector) -> f64 {
    -dnu.dot(dphi) / dphi.dot(dphi)
}

/// Estimates at the base fibre point `(0, …, 0, 1)`.
pub fn verify_cmc(curve: &ProfileCurve, t: f64, fd_step: f64) -> Result<CmcCheck> {
    let n = curve.params().n() as usize;
    verify_cmc_at(curve, &FiberPoint::base(n), t, fd_step)
}

pub fn verify_cmc_at(curve: &ProfileCurve, y: &FiberPoint, t: f64, fd_step: f64) -> Result<CmcCheck> {
    if !(fd_step > 0.0) {
        return Err(Error::Domain(format!("finite-difference step {fd_step} must be positive")));
    }
    let (a, b) = curve.span();
    let y0 = curve
        .raw_state(t)
        .ok_or_else(|| Error::Range(format!("t = {t} outside the sampled range [{a}, {b}]")))?;
    let params = curve.params();
    let n = params.n();
    let h = params.h();
    let sys = curve.system();
    let centre = sys.state(&y0);
    if centre.r - 1.0 < AXIS_GAP {
        return Ok(CmcCheck::NotEvaluated { t, r_minus_one: centre.r - 1.0 });
    }
    if y.dim() != n as usize {
        return Err(Error::Dimension { expected: n as usize, got: y.dim() });
    }

    let nu0 = gauss_map(n, &centre, y)?;

    // fibre directions: ν and φ are both linear in y
    let mut lambda_fibre = Vec::new();
    for w in y.tangent_basis() {
        let at = |s: f64| -> Result<(LorentzVector, LorentzVector)> {
            let yy = y.moved(&w, s);
            Ok((immerse_state(n, &centre, &yy)?, gauss_map(n, &centre, &yy)?))
        };
        let (p1, n1) = at(fd_step)?;
        let (p2, n2) = at(2.0 * fd_step)?;
        let (m1, mn1) = at(-fd_step)?;
        let (m2, mn2) = at(-2.0 * fd_step)?;
        let dphi = richardson([&p1, &p2], [&m1, &m2], fd_step);
        let dnu = richardson([&n1, &n2], [&mn1, &mn2], fd_step);
        lambda_fibre.push(curvature_along(&dnu, &dphi));
    }

    // profile direction: exact-flow states from the interpolated one
    let theta_prime = sys.sample(t, &y0).theta_prime;
    let hu = fd_step * (1.0 / theta_prime.abs()).min(1.0);
    let f = |_t: f64, s: &[f64; 3]| sys.rhs(s);
    let at = |du: f64| -> Result<(LorentzVector, LorentzVector)> {
        let st = sys.state(&rk_step(&f, t, &y0, du));
        Ok((immerse_state(n, &st, y)?, gauss_map(n, &st, y)?))
    };
    let displaced = [hu, 2.0 * hu, -hu, -2.0 * hu].map(at);
    let mut pts = Vec::with_capacity(4);
    for d in displaced {
        match d {
            Ok(v) => pts.push(v),
            Err(Error::InconsistentState { residual }) => {
                return Ok(CmcCheck::Inconsistent { t, u_step: hu, residual })
            }
            Err(e) => return Err(e),
        }
    }
    let [(p1, n1), (p2, n2), (m1, mn1), (m2, mn2)]: [_; 4] = pts.try_into().expect("four displaced states");
    let dphi = richardson([&p1, &p2], [&m1, &m2], hu);
    let dnu = richardson([&n1, &n2], [&mn1, &mn2], hu);
    let mu_est = curvature_along(&dnu, &dphi);
    let normal_tangent = nu0.dot(&dphi) / dphi.dot(&dphi).sqrt();

    let nf = f64::from(n);
    let lambda_est = lambda_fibre.iter().sum::<f64>() / lambda_fibre.len() as f64;
    let h_est = ((nf - 1.0) * lambda_est + mu_est) / nf;
    let lambda_exact = centre.lambda;
    let mu_exact = nf * h - (nf - 1.0) * lambda_exact;
    let max_error = lambda_fibre
        .iter()
        .map(|l| (l - lambda_exact).abs())
        .chain([(mu_est - mu_exact).abs(), (h_est - h).abs()])
        .fold(0.0, f64::max);
    Ok(CmcCheck::Evaluated(CmcEstimate {
        t,
        lambda_fibre,
        lambda_est,
        mu_est,
        h_est,
        lambda_exact,
        mu_exact,
        normal_tangent,
        u_step: hu,
        max_error,
        pass: max_error <= CMC_TOL,
    }))
}
