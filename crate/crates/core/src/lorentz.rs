//! Lorentzian ℝ^{n+2}, the hyperboloid model of `H^{n+1}`, and the
//! rotational immersion
//!
//! ```text
//! φ(y, u) = (√(r²-1) cos θ, √(r²-1) sin θ, r·y),   y ∈ H^{n-1} ⊂ ℝⁿ
//! ```
//!
//! with its Gauss map. Every vector keeps its timelike coordinate last.

use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance on `⟨y, y⟩ = -1` for fibre points, relative to `|y|²`.
const FIBER_TOL: f64 = 1e-12;

/// Relative tolerance on `(r′)² + λ²r² = r² - 1` accepted by [`gauss_map`].
pub const FIRST_INTEGRAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LorentzVector(pub Vec<f64>);

impl LorentzVector {
    pub fn new(coords: Vec<f64>) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `⟨self, other⟩`; panics on a length mismatch.
    pub fn dot(&self, other: &LorentzVector) -> f64 {
        minkowski_inner(self, other).expect("vectors of equal length")
    }

    pub fn sub(&self, other: &LorentzVector) -> LorentzVector {
        LorentzVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: f64) -> LorentzVector {
        LorentzVector(self.0.iter().map(|a| a * s).collect())
    }

    /// Largest coordinate difference (Euclidean ∞-norm of the difference).
    pub fn max_abs_diff(&self, other: &LorentzVector) -> f64 {
        self.0.iter().zip(&other.0).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// `v₁w₁ + … + v_{k-1}w_{k-1} - v_k w_k`.
pub fn minkowski_inner(v: &LorentzVector, w: &LorentzVector) -> Result<f64> {
    inner_slices(&v.0, &w.0)
}

fn inner_slices(v: &[f64], w: &[f64]) -> Result<f64> {
    if v.len() != w.len() {
        return Err(Error::Dimension { expected: v.len(), got: w.len() });
    }
    if v.len() < 2 {
        return Err(Error::Dimension { expected: 2, got: v.len() });
    }
    let last = v.len() - 1;
    let space: f64 = v[..last].iter().zip(&w[..last]).map(|(a, b)| a * b).sum();
    Ok(space - v[last] * w[last])
}

/// A point of `H^{n-1}` in ambient Lorentzian `ℝⁿ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiberPoint {
    coords: Vec<f64>,
}

impl FiberPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::Dimension { expected: 2, got: coords.len() });
        }
        let norm = inner_slices(&coords, &coords)?;
        let scale: f64 = coords.iter().map(|c| c * c).sum::<f64>().max(1.0);
        if (norm + 1.0).abs() > FIBER_TOL * scale || coords[coords.len() - 1] < 1.0 {
            return Err(Error::Domain(format!(
                "fibre point must satisfy <y,y> = -1 with last coordinate >= 1 (got {norm})"
            )));
        }
        Ok(Self { coords })
    }

    /// `(0, …, 0, 1)` in `ℝⁿ`.
    pub fn base(n: usize) -> Self {
        let mut coords = vec![0.0; n];
        coords[n - 1] = 1.0;
        Self { coords }
    }

    /// `(sinh v, cosh v)`, the `n = 2` fibre.
    pub fn hyperbolic_angle(v: f64) -> Self {
        Self { coords: vec![v.sinh(), v.cosh()] }
    }

    /// Point at hyperbolic distance `s` from the base point along the unit
    /// spatial direction `direction` (length `n - 1`).
    pub fn along_geodesic(direction: &[f64], s: f64) -> Result<Self> {
        let len: f64 = direction.iter().map(|d| d * d).sum::<f64>().sqrt();
        if direction.is_empty() || (len - 1.0).abs() > 1e-12 {
            return Err(Error::Domain("geodesic direction must be a unit vector".into()));
        }
        let mut coords: Vec<f64> = direction.iter().map(|d| d * s.sinh()).collect();
        coords.push(s.cosh());
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Lorentz-orthonormal basis of the tangent space `T_y H^{n-1}`.
    pub fn tangent_basis(&self) -> Vec<Vec<f64>> {
        let n = self.coords.len();
        let y = &self.coords;
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n - 1);
        for axis in 0..n - 1 {
            let mut w = vec![0.0; n];
            w[axis] = 1.0;
            // project out y (⟨y,y⟩ = -1) and earlier basis vectors
            let wy = inner_slices(&w, y).unwrap();
            for (wi, yi) in w.iter_mut().zip(y) {
                *wi += wy * yi;
            }
            for b in &basis {
                let wb = inner_slices(&w, b).unwrap();
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= wb * bi;
                }
            }
            let norm = inner_slices(&w, &w).unwrap().sqrt();
            basis.push(w.into_iter().map(|c| c / norm).collect());
        }
        basis
    }

    /// `cosh(s) y + sinh(s) w` for a unit tangent `w`.
    pub fn moved(&self, tangent: &[f64], s: f64) -> FiberPoint {
        let coords = self
            .coords
            .iter()
            .zip(tangent)
            .map(|(y, w)| s.cosh() * y + s.sinh() * w)
            .collect();
        FiberPoint { coords }
    }
}

/// `count` fibre points at hyperbolic distances spread evenly over
/// `[-extent, extent]`, in directions turning by the golden angle.
pub fn fiber_samples(n: usize, count: usize, extent: f64) -> Result<Vec<FiberPoint>> {
    if n < 2 {
        return Err(Error::Dimension { expected: 2, got: n });
    }
    if !(extent >= 0.0 && extent.is_finite()) {
        return Err(Error::Domain(format!("fibre extent {extent} must be finite and non-negative")));
    }
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let s = if count == 1 { 0.0 } else { extent * (2.0 * i as f64 / (count - 1) as f64 - 1.0) };
            if n == 2 {
                return Ok(FiberPoint::hyperbolic_angle(s));
            }
            let a = golden * i as f64;
            let mut dir = vec![0.0; n - 1];
            dir[0] = a.cos();
            dir[1] = a.sin();
            FiberPoint::along_geodesic(&dir, s)
        })
        .collect()
}

/// The state of the profile at one parameter value, as seen by φ and ν.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileState {
    pub r: f64,
    pub r_prime: f64,
    pub lambda: f64,
    pub theta: f64,
    /// `√(r² - 1)`, kept separately so that callers who know it without
    /// cancellation (near the axis) can supply it.
    pub rho: f64,
}

impl ProfileState {
    pub fn new(r: f64, r_prime: f64, lambda: f64, theta: f64) -> Self {
        let rho = ((r - 1.0) * (r + 1.0)).max(0.0).sqrt();
        Self { r, r_prime, lambda, theta, rho }
    }

    /// `(r′)² + λ²r² - (r² - 1)`, zero along every exact profile.
    pub fn first_integral_residual(&self) -> f64 {
        self.r_prime * self.r_prime + self.lambda * self.lambda * self.r * self.r - self.rho * self.rho
    }
}

fn check_fiber(n: usize, y: &FiberPoint) -> Result<()> {
    if y.dim() != n {
        return Err(Error::Dimension { expected: n, got: y.dim() });
    }
    Ok(())
}

/// `φ = (√(r²-1) cos θ, √(r²-1) sin θ, r·y)`.
pub fn immerse_point(n: u32, r: f64, theta: f64, y: &FiberPoint) -> Result<LorentzVector> {
    if !(r >= 1.0) {
        return Err(Error::Domain(format!("r = {r} < 1 leaves the hyperboloid chart")));
    }
    immerse_state(n, &ProfileState::new(r, 0.0, 0.0, theta), y)
}

/// [`immerse_point`] using the state's own `√(r² - 1)`.
pub fn immerse_state(n: u32, state: &ProfileState, y: &FiberPoint) -> Result<LorentzVector> {
    check_fiber(n as usize, y)?;
    let ProfileState { r, theta, rho, .. } = *state;
    if !(r >= 1.0) {
        return Err(Error::Domain(format!("r = {r} < 1 leaves the hyperboloid chart")));
    }
    let mut coords = Vec::with_capacity(n as usize + 2);
    coords.push(rho * theta.cos());
    coords.push(rho * theta.sin());
    coords.extend(y.coords().iter().map(|c| r * c));
    Ok(LorentzVector(coords))
}

/// `ν = -rλ(0,0,y) - (r²λ/√(r²-1)) B₂ + (r′/√(r²-1)) B₃` with
/// `B₂ = (cos θ, sin θ, 0, …)` and `B₃ = (-sin θ, cos θ, 0, …)`.
pub fn gauss_map(n: u32, state: &ProfileState, y: &FiberPoint) -> Result<LorentzVector> {
    check_fiber(n as usize, y)?;
    let ProfileState { r, r_prime, lambda, theta, rho } = *state;
    if !(r > 1.0 && rho > 0.0) {
        return Err(Error::Domain(format!("Gauss map needs r > 1, got {r}")));
    }
    let residual = state.first_integral_residual();
    if residual.abs() > FIRST_INTEGRAL_TOL * (r * r).max(1.0) {
        return Err(Error::InconsistentState { residual });
    }
    let b2 = -r * r * lambda / rho;
    let b3 = r_prime / rho;
    let (s, c) = theta.sin_cos();
    let mut coords = Vec::with_capacity(n as usize + 2);
    coords.push(b2 * c - b3 * s);
    coords.push(b2 * s + b3 * c);
    coords.extend(y.coords().iter().map(|yc| -r * lambda * yc));
    Ok(LorentzVector(coords))
}
