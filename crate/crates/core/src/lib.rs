//! Rotational constant-mean-curvature hypersurfaces of hyperbolic type in
//! the hyperboloid model of `H^{n+1}`.
//!
//! A surface in the family is fixed by `(n, H, C)`: the dimension, the mean
//! curvature `H < -1` and a negative first-integral constant `C`. The crate
//! evaluates the radial potential and its landmarks ([`potential`]), the
//! singular period and flux integrals ([`quadrature`]), solves the closure
//! conditions ([`shooting`]), integrates profile curves ([`profile`]) and
//! checks the geometry of the resulting immersion ([`lorentz`],
//! [`curvature`]).
//!
//! ```
//! use hypercmc::quadrature::xi;
//!
//! let value = xi(3, -1.0).unwrap().value;
//! assert!((value + 5.971067631784846).abs() < 1e-10);
//! ```

// `!(x > 0.0)` guards are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod curvature;
pub mod error;
pub mod lorentz;
pub mod ode;
pub mod polygon;
pub mod potential;
pub mod power_sum;
pub mod profile;
pub mod quadrature;
pub mod roots;
pub mod shooting;

pub use error::{Error, Result};
pub use potential::{landmarks, PotentialLandmarks, ShapeParams};
pub use profile::{integrate_profile, ProfileCurve, ProfileSample};
pub use quadrature::{flux_k, period_t, xi, QuadResult};
pub use shooting::{find_h0, solve_c, Classification, SolveMode, SolveOutcome, WindingTarget};
