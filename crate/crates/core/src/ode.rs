//! Dormand–Prince 5(4) with step-size control and the classical
//! continuous extension (Hairer, Nørsett & Wanner, "dopri5").

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];

const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];

const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { rtol: 1e-10, atol: 1e-12, max_steps: 5_000_000 }
    }
}

/// One accepted step with its interpolation coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseStep<const N: usize> {
    pub t0: f64,
    pub h: f64,
    cont: [[f64; N]; 5],
}

impl<const N: usize> DenseStep<N> {
    pub fn t1(&self) -> f64 {
        self.t0 + self.h
    }

    pub fn eval(&self, t: f64) -> [f64; N] {
        let s = (t - self.t0) / self.h;
        let s1 = 1.0 - s;
        let [c0, c1, c2, c3, c4] = &self.cont;
        std::array::from_fn(|i| c0[i] + s * (c1[i] + s1 * (c2[i] + s * (c3[i] + s1 * c4[i]))))
    }
}

/// Piecewise dense solution over `[t_start, t_end]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<const N: usize> {
    steps: Vec<DenseStep<N>>,
    t_start: f64,
    t_end: f64,
}

impl<const N: usize> Trajectory<N> {
    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn steps(&self) -> &[DenseStep<N>] {
        &self.steps
    }

    pub fn final_state(&self) -> [f64; N] {
        let last = self.steps.last().expect("trajectory has at least one step");
        last.eval(last.t1())
    }

    /// Interpolated state; `None` outside the integrated range.
    pub fn eval(&self, t: f64) -> Option<[f64; N]> {
        let (lo, hi) = if self.t_start <= self.t_end {
            (self.t_start, self.t_end)
        } else {
            (self.t_end, self.t_start)
        };
        if !(t >= lo && t <= hi) {
            return None;
        }
        let forward = self.t_start <= self.t_end;
        let idx = self
            .steps
            .partition_point(|s| if forward { s.t1() < t } else { s.t1() > t })
            .min(self.steps.len() - 1);
        Some(self.steps[idx].eval(t))
    }
}

fn stages<F, const N: usize>(f: &F, t: f64, y: &[f64; N], h: f64, k1: [f64; N]) -> ([[f64; N]; 7], [f64; N])
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let mut k = [[0.0; N]; 7];
    k[0] = k1;
    for s in 1..7 {
        let ys: [f64; N] = std::array::from_fn(|i| {
            y[i] + h * (0..s).map(|j| A[s][j] * k[j][i]).sum::<f64>()
        });
        if s == 6 {
            // the seventh stage is evaluated at the 5th-order solution
            k[6] = f(t + h, &ys);
            return (k, ys);
        }
        k[s] = f(t + C[s] * h, &ys);
    }
    unreachable!()
}

/// A single Dormand–Prince step of size `h` (either sign), no error control.
pub fn rk_step<F, const N: usize>(f: &F, t: f64, y: &[f64; N], h: f64) -> [f64; N]
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    stages(f, t, y, h, f(t, y)).1
}

/// Adaptive integration from `(t0, y0)` to `t_end` (which may lie before `t0`).
pub fn integrate<F, const N: usize>(f: F, t0: f64, y0: [f64; N], t_end: f64, tol: &Tolerances) -> Result<Trajectory<N>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    integrate_projected(f, |_: &mut [f64; N]| {}, t0, y0, t_end, tol)
}

/// As [`integrate`], with every accepted state passed through `project`
/// (e.g. back onto the level set of a first integral) before the next step.
pub fn integrate_projected<F, P, const N: usize>(
    f: F,
    project: P,
    t0: f64,
    y0: [f64; N],
    t_end: f64,
    tol: &Tolerances,
) -> Result<Trajectory<N>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
    P: Fn(&mut [f64; N]),
{
    let span = t_end - t0;
    if span == 0.0 || !span.is_finite() {
        return Err(Error::Domain(format!("empty integration span [{t0}, {t_end}]")));
    }
    let dir = span.signum();
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    let mut h = dir * (1e-3 * span.abs()).min(0.1);
    let mut steps = Vec::new();
    let mut rejected_last = false;

    for _ in 0..tol.max_steps {
        if (t_end - t) * dir <= 0.0 {
            return Ok(Trajectory { steps, t_start: t0, t_end });
        }
        if (t + h - t_end) * dir > 0.0 {
            h = t_end - t;
        }
        let (mut k, mut y_new) = stages(&f, t, &y, h, k1);
        let mut acc = 0.0;
        for i in 0..N {
            let err_i = h * (0..7).map(|j| E[j] * k[j][i]).sum::<f64>();
            let scale = tol.atol + tol.rtol * y[i].abs().max(y_new[i].abs());
            acc += (err_i / scale).powi(2);
        }
        let err = (acc / N as f64).sqrt();
        if !err.is_finite() || y_new.iter().any(|v| !v.is_finite()) {
            h *= 0.25;
            rejected_last = true;
            if h.abs() < 1e-15 * t.abs().max(1.0) {
                return Err(Error::Integration { t, reason: "non-finite state".into() });
            }
            continue;
        }
        if err <= 1.0 {
            let raw = y_new;
            project(&mut y_new);
            if y_new != raw {
                k[6] = f(t + h, &y_new);
            }
            let ydiff: [f64; N] = std::array::from_fn(|i| y_new[i] - y[i]);
            let bspl: [f64; N] = std::array::from_fn(|i| h * k[0][i] - ydiff[i]);
            let cont = [
                y,
                ydiff,
                bspl,
                std::array::from_fn(|i| ydiff[i] - h * k[6][i] - bspl[i]),
                std::array::from_fn(|i| h * (0..7).map(|j| D[j] * k[j][i]).sum::<f64>()),
            ];
            steps.push(DenseStep { t0: t, h, cont });
            t = if (t + h - t_end) * dir >= 0.0 { t_end } else { t + h };
            y = y_new;
            k1 = k[6];
            let grow = if rejected_last { 1.0 } else { 5.0 };
            h *= (0.9 * err.powf(-0.2)).clamp(0.2, grow);
            rejected_last = false;
        } else {
            h *= (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
            rejected_last = true;
            if h.abs() < 1e-15 * t.abs().max(1.0) {
                return Err(Error::Integration { t, reason: "step size underflow".into() });
            }
        }
    }
    Err(Error::Integration { t, reason: format!("exceeded {} steps", tol.max_steps) })
}
