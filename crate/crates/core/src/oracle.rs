//! Independent floating point route to `v_k(2π)` at a fixed parameter point.
//!
//! Shares nothing with [`crate::recurrence`]: the polar equation
//! `dr/dθ = r p(r cosθ) sin²θ / (−1 + sinθ cosθ p(r cosθ))` is integrated
//! over `[0, 2π]` with classical RK4, the unknown being the whole truncated
//! power series `r(θ) = Σ u_k(θ) a^k` in the initial radius `a = r(0)`. The
//! resulting map `a ↦ r(2π)` is inverted as a series to give `r0 = Σ v_k r^k`.

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Default number of RK4 steps over one revolution.
pub const ORACLE_STEPS: usize = 4096;

/// Truncated product of two series with zero-based coefficient vectors.
fn series_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut out = vec![0.0; n];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| **x != 0.0) {
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

struct PolarField<'a> {
    lambda: &'a [f64],
    len: usize,
}

impl PolarField<'_> {
    /// `d/dθ` of the series coefficients; index `i` holds the coefficient of `a^i`.
    fn rate(&self, theta: f64, r: &[f64]) -> Vec<f64> {
        let (s, c) = theta.sin_cos();
        let x: Vec<f64> = r.iter().map(|v| v * c).collect();
        // p(x) = Σ λ_l x^l
        let mut p = vec![0.0; self.len];
        let mut power = x.clone();
        for (l, lam) in self.lambda.iter().enumerate() {
            if l > 0 {
                power = series_mul(&power, &x);
            }
            for (pi, xi) in p.iter_mut().zip(&power) {
                *pi += lam * xi;
            }
        }
        let numerator: Vec<f64> = series_mul(r, &p).iter().map(|v| v * s * s).collect();
        // 1 / (−1 + s c p) = −Σ_m (s c p)^m; p has no constant term
        let q: Vec<f64> = p.iter().map(|v| v * s * c).collect();
        let mut recip = vec![0.0; self.len];
        let mut term = vec![0.0; self.len];
        term[0] = 1.0;
        for _ in 0..self.len {
            for (ri, ti) in recip.iter_mut().zip(&term) {
                *ri -= ti;
            }
            term = series_mul(&term, &q);
            if term.iter().all(|v| *v == 0.0) {
                break;
            }
        }
        series_mul(&numerator, &recip)
    }
}

/// Compositional inverse of `x + Σ_{k≥2} a_k x^k`, truncated; index `i` holds
/// the coefficient of `x^i` and index 1 must be 1.
fn invert(forward: &[f64]) -> Vec<f64> {
    let n = forward.len();
    let mut inv = vec![0.0; n];
    if n > 1 {
        inv[1] = 1.0;
    }
    for k in 2..n {
        // coefficient of y^k in forward(inv(y)) with inv known below k
        let mut total = 0.0;
        let mut power = inv.clone();
        for a in forward.iter().take(k + 1).skip(2) {
            power = series_mul(&power, &inv);
            total += a * power[k];
        }
        inv[k] = -total;
    }
    inv
}

/// `v_1(2π), ..., v_K(2π)` at the rational point `lambda`, by series-valued RK4.
pub fn brute_force_series_oracle(d: usize, order: usize, lambda: &[Rational]) -> Result<Vec<f64>> {
    brute_force_series_oracle_with_steps(d, order, lambda, ORACLE_STEPS)
}

pub fn brute_force_series_oracle_with_steps(
    d: usize,
    order: usize,
    lambda: &[Rational],
    steps: usize,
) -> Result<Vec<f64>> {
    if lambda.len() != d {
        return Err(Error::Dimension { expected: d, got: lambda.len() });
    }
    if order == 0 || steps == 0 {
        return Err(Error::InvalidArgument("order and step count must be positive".into()));
    }
    let lambda: Vec<f64> = lambda.iter().map(Rational::to_f64).collect();
    let len = order + 1;
    let field = PolarField { lambda: &lambda, len };
    let mut r = vec![0.0; len];
    r[1] = 1.0;
    let h = 2.0 * std::f64::consts::PI / steps as f64;
    let axpy = |y: &[f64], k: &[f64], s: f64| -> Vec<f64> { y.iter().zip(k).map(|(a, b)| a + s * b).collect() };
    for i in 0..steps {
        let t = i as f64 * h;
        let k1 = field.rate(t, &r);
        let k2 = field.rate(t + h / 2.0, &axpy(&r, &k1, h / 2.0));
        let k3 = field.rate(t + h / 2.0, &axpy(&r, &k2, h / 2.0));
        let k4 = field.rate(t + h, &axpy(&r, &k3, h));
        for j in 0..len {
            r[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
    }
    Ok(invert(&r)[1..].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn unperturbed_is_identity() {
        let v = brute_force_series_oracle(2, 6, &[Rational::from(0), Rational::from(0)]).unwrap();
        assert_eq!(v[0], 1.0);
        assert!(v[1..].iter().all(|x| x.abs() < 1e-14));
    }

    #[test]
    fn third_order_is_quarter_pi() {
        let v = brute_force_series_oracle(2, 3, &[Rational::from(0), Rational::from(1)]).unwrap();
        assert!(v[1].abs() < 1e-10);
        assert!((v[2] - std::f64::consts::FRAC_PI_4).abs() < 1e-10, "{}", v[2]);
    }

    #[test]
    fn second_order_vanishes() {
        let v = brute_force_series_oracle(3, 2, &[ratio(1, 2), ratio(-1, 3), ratio(2, 5)]).unwrap();
        assert!(v[1].abs() < 1e-10);
    }

    #[test]
    fn inversion_low_order() {
        // x + a x² → y − a y² + 2a² y³
        let inv = invert(&[0.0, 1.0, 0.5, 0.0]);
        assert_eq!(inv, vec![0.0, 1.0, -0.5, 0.5]);
    }

    #[test]
    fn dimension_checked() {
        assert!(brute_force_series_oracle(2, 3, &[Rational::from(1)]).is_err());
    }
}
