//! Bracketed scalar root finding (Brent–Dekker).

use crate::error::{Error, Result};

/// A converged root together with the bracket it was refined from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketedRoot {
    pub x: f64,
    pub fx: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
}

/// Brent's method on `[a, b]`; `f(a)` and `f(b)` must have opposite signs
/// (or one of them is zero). Stops when the bracket half-width falls below
/// `xtol + 4ε|x|`.
pub fn brent<F>(mut f: F, a: f64, b: f64, xtol: f64, max_iter: usize) -> Result<BracketedRoot>
where
    F: FnMut(f64) -> f64,
{
    let fa = f(a);
    let fb = f(b);
    brent_with_values(&mut f, (a, fa), (b, fb), xtol, max_iter)
}

/// Same as [`brent`] when the endpoint values are already known (saves two
/// evaluations of an expensive function).
pub fn brent_with_values<F>(
    f: &mut F,
    (a0, fa0): (f64, f64),
    (b0, fb0): (f64, f64),
    xtol: f64,
    max_iter: usize,
) -> Result<BracketedRoot>
where
    F: FnMut(f64) -> f64,
{
    if !(fa0.is_finite() && fb0.is_finite()) {
        return Err(Error::Evaluation {
            abscissa: if fa0.is_finite() { b0 } else { a0 },
            value: if fa0.is_finite() { fb0 } else { fa0 },
        });
    }
    let bracket = (a0.min(b0), a0.max(b0));
    if fa0 == 0.0 {
        return Ok(BracketedRoot { x: a0, fx: 0.0, bracket, iterations: 0 });
    }
    if fb0 == 0.0 {
        return Ok(BracketedRoot { x: b0, fx: 0.0, bracket, iterations: 0 });
    }
    if fa0.signum() == fb0.signum() {
        return Err(Error::Range(format!(
            "no sign change on [{a0}, {b0}]: f = {fa0:e}, {fb0:e}"
        )));
    }

    let (mut a, mut fa, mut b, mut fb) = (a0, fa0, b0, fb0);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for iter in 1..=max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(BracketedRoot { x: b, fx: fb, bracket, iterations: iter });
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                // secant
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                // inverse quadratic
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
        if !fb.is_finite() {
            return Err(Error::Evaluation { abscissa: b, value: fb });
        }
    }
    Err(Error::NonConvergence(format!(
        "brent: {max_iter} iterations on [{a0}, {b0}]"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let r = brent(|x| x * x - 2.0, 0.0, 2.0, 0.0, 200).unwrap();
        assert!((r.x - 2f64.sqrt()).abs() < 4e-16);
    }

    #[test]
    fn rejects_same_sign() {
        assert!(matches!(brent(|x| x * x + 1.0, -1.0, 1.0, 1e-12, 50), Err(Error::Range(_))));
    }

    #[test]
    fn exact_endpoint_root() {
        let r = brent(|x| x - 1.0, 1.0, 3.0, 1e-12, 50).unwrap();
        assert_eq!(r.x, 1.0);
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn handles_flat_cubic() {
        let r = brent(|x: f64| (x - 0.3).powi(3), -1.0, 2.0, 1e-14, 500).unwrap();
        assert!((r.x - 0.3).abs() < 1e-4);
    }
}
