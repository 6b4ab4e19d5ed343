//! Sums of integer powers `c₀ + Σ cⱼ v^kⱼ`, the common shape of every
//! potential in this crate.
//!
//! The point of the type is [`PowerSum::eval_near`]: at a known zero `r`
//! the value at `r + δ` is rebuilt from `rᵏ·expm1(k·ln1p(δ/r))`, so it keeps
//! full relative precision for tiny `δ` instead of suffering the
//! cancellation of `f(r + δ) - f(r)`.

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSum {
    constant: f64,
    terms: Vec<(f64, i32)>,
}

impl PowerSum {
    pub fn new(constant: f64, terms: impl IntoIterator<Item = (f64, i32)>) -> Self {
        let mut merged: Vec<(f64, i32)> = Vec::new();
        let mut constant = constant;
        for (c, k) in terms {
            if k == 0 {
                constant += c;
            } else if let Some(slot) = merged.iter_mut().find(|(_, e)| *e == k) {
                slot.0 += c;
            } else {
                merged.push((c, k));
            }
        }
        Self { constant, terms: merged }
    }

    pub fn eval(&self, v: f64) -> f64 {
        self.terms
            .iter()
            .fold(self.constant, |acc, &(c, k)| acc + c * v.powi(k))
    }

    /// Value at `root + offset`, assuming the sum vanishes exactly at `root`.
    pub fn eval_near(&self, root: f64, offset: f64) -> f64 {
        let rel = (offset / root).ln_1p();
        self.terms
            .iter()
            .map(|&(c, k)| c * root.powi(k) * (f64::from(k) * rel).exp_m1())
            .sum()
    }

    pub fn derivative(&self) -> PowerSum {
        PowerSum::new(
            0.0,
            self.terms
                .iter()
                .map(|&(c, k)| (c * f64::from(k), k - 1)),
        )
    }

    /// Sum of the absolute values of the terms, the natural scale for
    /// relative residuals.
    pub fn magnitude(&self, v: f64) -> f64 {
        self.terms
            .iter()
            .fold(self.constant.abs(), |acc, &(c, k)| acc + (c * v.powi(k)).abs())
    }
}

/// Dense polynomial with coefficients in increasing degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn from_terms(terms: impl IntoIterator<Item = (f64, usize)>) -> Self {
        let mut coeffs = Vec::new();
        for (c, k) in terms {
            if coeffs.len() <= k {
                coeffs.resize(k + 1, 0.0);
            }
            coeffs[k] += c;
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, v: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * v + c)
    }

    /// Quotient by `(v - root)`; the remainder is dropped.
    pub fn deflate(&self, root: f64) -> Polynomial {
        let deg = self.coeffs.len().saturating_sub(1);
        if deg == 0 {
            return Polynomial { coeffs: vec![0.0] };
        }
        let mut out = vec![0.0; deg];
        let mut carry = 0.0;
        for i in (1..=deg).rev() {
            carry = carry * root + self.coeffs[i];
            out[i - 1] = carry;
        }
        Polynomial { coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_equal_exponents() {
        let s = PowerSum::new(1.0, [(2.0, 2), (3.0, 2), (4.0, 0)]);
        assert_eq!(s.eval(2.0), 5.0 + 5.0 * 4.0);
    }

    #[test]
    fn near_root_matches_direct_far_away() {
        // (v^2 - 4) has a root at 2
        let s = PowerSum::new(-4.0, [(1.0, 2)]);
        let direct = s.eval(2.5);
        let near = s.eval_near(2.0, 0.5);
        assert!((direct - near).abs() < 1e-14);
    }

    #[test]
    fn near_root_keeps_relative_precision() {
        let s = PowerSum::new(-1.0, [(1.0, 3), (0.0, -2)]);
        let d = 1e-13;
        // v^3 - 1 ≈ 3d + 3d² at 1 + d
        let expect = 3.0 * d + 3.0 * d * d;
        assert!(((s.eval_near(1.0, d) - expect) / expect).abs() < 1e-14);
    }

    #[test]
    fn deflation_divides_exactly() {
        // (v - 1)(v - 2)(v + 3) = v^3 - 7v + 6
        let p = Polynomial::from_terms([(6.0, 0), (-7.0, 1), (1.0, 3)]);
        let d = p.deflate(1.0);
        assert_eq!(d.coeffs(), &[-6.0, 1.0, 1.0]);
    }

    #[test]
    fn derivative_of_negative_powers() {
        let s = PowerSum::new(0.0, [(1.0, -2)]);
        let d = s.derivative();
        assert!((d.eval(2.0) + 2.0 / 8.0).abs() < 1e-15);
    }
}
