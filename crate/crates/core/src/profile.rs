//! Profile curves in the time domain.
//!
//! The profile function obeys `g″ = ½ q′(g)` with `g(0) = t₁`, `g′(0) = 0`,
//! so `t = 0` sits at the minimum of `r = g/√(-C)`. The angle follows
//! `θ′ = rλ/(r² - 1) = √(-C) g λ / ((g - √(-C))(g + √(-C)))`.
//!
//! The state carries `w = g - t₁` instead of `g`. Close to the axis both
//! `g - √(-C)` and `λ` are small; they are rebuilt from their exact values
//! at `t₁` so that `θ′` keeps full relative precision in the spike.
//!
//! How close the profile returns to the axis is set by the first integral:
//! a drift `δ` in `(g′)² - q(g)` moves the minimum of `g` by about
//! `δ/q′(t₁)`, and the turning of `θ` in the spike scales like
//! `1/√(t₁ - √(-C))`. Every accepted step is therefore projected back onto
//! the level set `(g′)² = q(g)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lorentz::{immerse_state, FiberPoint, LorentzVector, ProfileState};
use crate::ode::{integrate_projected, Tolerances, Trajectory};
use crate::potential::{c_tilde, oscillation_roots, OscillationRoots, Potential, ShapeParams};
use crate::quadrature::{guard_band, period_t};
use crate::roots::brent;

/// Allowed first-integral drift, relative to `max(1, |C|)`.
pub const ENERGY_TOL: f64 = 1e-8;

/// Allowed mismatch between the integrated and the quadrature period,
/// relative to the period.
pub const PERIOD_TOL: f64 = 1e-8;

/// Step control used by [`integrate_profile`]. Tighter than the generic
/// integrator default: the Gauss map identities divide first-integral
/// errors by `r² - 1`, and are checked at `1e-10`.
pub const PROFILE_TOLERANCES: Tolerances = Tolerances { rtol: 1e-12, atol: 1e-14, max_steps: 5_000_000 };

/// Right-hand side and sample reconstruction for one `(n, H, C)`.
#[derive(Debug, Clone)]
pub struct ProfileSystem {
    params: ShapeParams,
    pot: Potential,
    roots: OscillationRoots,
    n: i32,
    h: f64,
    s: f64,
    lambda1: f64,
    gap1: f64,
}

impl ProfileSystem {
    pub fn new(params: &ShapeParams) -> Result<Self> {
        let c = params.require_c()?;
        let pot = Potential::new(*params)?;
        let roots = oscillation_roots(params)?;
        let n = params.n() as i32;
        let h = params.h();
        let s = (-c).sqrt();
        let t1 = roots.t1;
        let lambda1 = h + t1.powi(-n);
        let gap1 = (lambda1 * t1).powi(2) / (t1 + s);
        Ok(Self { params: *params, pot, roots, n, h, s, lambda1, gap1 })
    }

    pub fn params(&self) -> &ShapeParams {
        &self.params
    }

    pub fn roots(&self) -> &OscillationRoots {
        &self.roots
    }

    /// `λ = H + g^{-n}` at `g = t₁ + w`.
    pub fn lambda(&self, w: f64) -> f64 {
        let t1 = self.roots.t1;
        self.lambda1 + t1.powi(-self.n) * (-f64::from(self.n) * (w / t1).ln_1p()).exp_m1()
    }

    fn theta_prime(&self, w: f64) -> f64 {
        let g = self.roots.t1 + w;
        self.s * g * self.lambda(w) / ((self.gap1 + w) * (g + self.s))
    }

    /// Derivative of the state `[w, g′, θ]`.
    pub fn rhs(&self, y: &[f64; 3]) -> [f64; 3] {
        let g = self.roots.t1 + y[0];
        [y[1], 0.5 * self.pot.q_prime(g), self.theta_prime(y[0])]
    }

    /// `(g′)² - q(g)`, zero on exact trajectories.
    pub fn energy_residual(&self, y: &[f64; 3]) -> f64 {
        y[1] * y[1] - self.pot.q_near(self.roots.t1, y[0])
    }

    /// One Newton step of `(w, g′)` towards `(g′)² = q(g)` along the
    /// gradient of the residual. At the turning points this moves `w`,
    /// which fixes how close the profile comes to the axis.
    pub fn project(&self, y: &mut [f64; 3]) {
        let e = self.energy_residual(y);
        let dw = -self.pot.q_prime(self.roots.t1 + y[0]);
        let dg = 2.0 * y[1];
        let norm = dw * dw + dg * dg;
        if norm > 0.0 {
            y[0] -= e * dw / norm;
            y[1] -= e * dg / norm;
        }
    }

    pub fn sample(&self, t: f64, y: &[f64; 3]) -> ProfileSample {
        let w = y[0];
        let g = self.roots.t1 + w;
        let lambda = self.lambda(w);
        ProfileSample {
            t,
            g,
            g_prime: y[1],
            r: g / self.s,
            lambda,
            mu: f64::from(self.n) * self.h - f64::from(self.n - 1) * lambda,
            theta: y[2],
            theta_prime: self.theta_prime(w),
        }
    }

    /// `(r, r′, λ, θ)` and `√(r² - 1)` for the immersion and Gauss map.
    pub fn state(&self, y: &[f64; 3]) -> ProfileState {
        let g = self.roots.t1 + y[0];
        ProfileState {
            r: g / self.s,
            r_prime: y[1] / self.s,
            lambda: self.lambda(y[0]),
            theta: y[2],
            rho: self.radius(y[0]),
        }
    }

    /// `√(r² - 1)` at `g = t₁ + w`, without cancellation near the axis.
    pub fn radius(&self, w: f64) -> f64 {
        let g = self.roots.t1 + w;
        ((self.gap1 + w) * (g + self.s)).sqrt() / self.s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileSample {
    pub t: f64,
    pub g: f64,
    pub g_prime: f64,
    pub r: f64,
    pub lambda: f64,
    pub mu: f64,
    pub theta: f64,
    pub theta_prime: f64,
}

/// An integrated profile over `m` periods of `g`.
#[derive(Debug, Clone)]
pub struct ProfileCurve {
    system: ProfileSystem,
    trajectory: Trajectory<3>,
    pub samples: Vec<ProfileSample>,
    /// Period of `g` from quadrature.
    pub period_t: f64,
    /// Period of `g` measured on the trajectory (first return of `g′ = 0`
    /// from below).
    pub ode_period: f64,
    /// `θ(T)`.
    pub k_value: f64,
    pub periods_covered: u32,
    /// Largest `|(g′)² - q(g)|` over samples and step nodes.
    pub max_energy_residual: f64,
}

impl ProfileCurve {
    pub fn params(&self) -> &ShapeParams {
        self.system.params()
    }

    pub fn system(&self) -> &ProfileSystem {
        &self.system
    }

    /// Covered parameter range `[0, m·T]`.
    pub fn span(&self) -> (f64, f64) {
        (0.0, f64::from(self.periods_covered) * self.period_t)
    }

    /// Interpolated raw state `[w, g′, θ]`.
    pub fn raw_state(&self, t: f64) -> Option<[f64; 3]> {
        let (a, b) = self.span();
        if !(t >= a && t <= b) {
            return None;
        }
        self.trajectory.eval(t)
    }

    /// Immersion state of a sample taken from this curve.
    pub fn sample_state(&self, s: &ProfileSample) -> ProfileState {
        let w = s.g - self.system.roots.t1;
        ProfileState {
            r: s.r,
            r_prime: s.g_prime / self.system.s,
            lambda: s.lambda,
            theta: s.theta,
            rho: self.system.radius(w),
        }
    }

    pub fn state_at(&self, t: f64) -> Option<ProfileSample> {
        self.raw_state(t).map(|y| self.system.sample(t, &y))
    }

    /// `θ(jT)` for `j = 0..=m`.
    pub fn theta_at_periods(&self) -> Vec<f64> {
        (0..=self.periods_covered)
            .map(|j| self.raw_state(f64::from(j) * self.period_t).map_or(f64::NAN, |y| y[2]))
            .collect()
    }
}

/// Integrates the profile over `m_periods` periods and resamples it with
/// `samples_per_period` points per period.
pub fn integrate_profile(params: &ShapeParams, m_periods: u32, samples_per_period: usize) -> Result<ProfileCurve> {
    integrate_profile_with(params, m_periods, samples_per_period, &PROFILE_TOLERANCES)
}

pub fn integrate_profile_with(
    params: &ShapeParams,
    m_periods: u32,
    samples_per_period: usize,
    tol: &Tolerances,
) -> Result<ProfileCurve> {
    let c = params.require_c()?;
    if m_periods == 0 || samples_per_period == 0 {
        return Err(Error::Domain("need at least one period and one sample per period".into()));
    }
    let (n, h) = (params.n(), params.h());
    let ct = c_tilde(n, h);
    let band = guard_band(n, h);
    if (c - ct).abs() < band {
        return Err(Error::GuardBand { c, c_tilde: ct, band });
    }
    let system = ProfileSystem::new(params)?;
    let period = period_t(params)?.value;
    let m = f64::from(m_periods);
    let end = (m + 0.25) * period;
    let trajectory = integrate_projected(
        |_t, y: &[f64; 3]| system.rhs(y),
        |y: &mut [f64; 3]| system.project(y),
        0.0,
        [0.0, 0.0, 0.0],
        end,
        tol,
    )?;

    // first return to the minimum: g′ crosses zero upwards near T
    let gp = |t: f64| trajectory.eval(t).map_or(f64::NAN, |y| y[1]);
    let ode_period = brent(gp, 0.75 * period, 1.25 * period, 1e-15 * period, 200)
        .map_err(|_| Error::Integration { t: period, reason: "g′ does not return to zero near T".into() })?
        .x;
    if (ode_period - period).abs() > PERIOD_TOL * period {
        return Err(Error::Integration {
            t: ode_period,
            reason: format!("integrated period {ode_period} differs from quadrature period {period}"),
        });
    }

    let count = m_periods as usize * samples_per_period;
    let dt = period / samples_per_period as f64;
    let samples: Vec<ProfileSample> = (0..=count)
        .map(|i| {
            let t = if i == count { m * period } else { i as f64 * dt };
            let y = trajectory.eval(t).expect("sample inside the integrated range");
            system.sample(t, &y)
        })
        .collect();

    let energy_bound = ENERGY_TOL * c.abs().max(1.0);
    let mut worst = (0.0f64, 0.0f64);
    let nodes = trajectory.steps().iter().map(|s| s.t0).filter(|&t| t <= m * period);
    for t in nodes.chain(samples.iter().map(|s| s.t)) {
        let y = trajectory.eval(t).expect("node inside the integrated range");
        let e = system.energy_residual(&y).abs();
        if e > worst.0 {
            worst = (e, t);
        }
    }
    if worst.0 > energy_bound {
        return Err(Error::Integration {
            t: worst.1,
            reason: format!("first-integral drift {:e} exceeds {energy_bound:e}", worst.0),
        });
    }

    let k_value = trajectory.eval(period).expect("T inside the integrated range")[2];
    Ok(ProfileCurve {
        system,
        trajectory,
        samples,
        period_t: period,
        ode_period,
        k_value,
        periods_covered: m_periods,
        max_energy_residual: worst.0,
    })
}

/// Planar profile `α = (√(r² - 1) cos θ, √(r² - 1) sin θ)` at every sample.
pub fn profile_alpha(curve: &ProfileCurve) -> Vec<(f64, f64)> {
    curve
        .samples
        .iter()
        .map(|s| {
            let rho = curve.system.radius(s.g - curve.system.roots.t1);
            (rho * s.theta.cos(), rho * s.theta.sin())
        })
        .collect()
}

/// `(t, θ′)` at every sample, optionally clamped to `[-clip, clip]`.
pub fn theta_prime_trace(curve: &ProfileCurve, clip: Option<f64>) -> Vec<(f64, f64)> {
    curve
        .samples
        .iter()
        .map(|s| (s.t, clip.map_or(s.theta_prime, |c| s.theta_prime.clamp(-c, c))))
        .collect()
}

/// Immersion points `φ(y, t)`: one row per profile sample, one column per
/// fibre point.
pub fn surface_grid(curve: &ProfileCurve, fibers: &[FiberPoint]) -> Result<Vec<Vec<LorentzVector>>> {
    let n = curve.params().n();
    curve
        .samples
        .iter()
        .map(|s| {
            let state = curve.sample_state(s);
            fibers.iter().map(|y| immerse_state(n, &state, y)).collect()
        })
        .collect()
}
