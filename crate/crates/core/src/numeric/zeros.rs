//! Complex zeros of the truncated displacement `Q_K(x) − x` in a disc.
//!
//! The trivial zero at the origin is divided out, the rest is rescaled to the
//! unit disc and solved with the Aberth–Ehrlich iteration (started on the
//! circles of the Newton polygon). The count is cross-checked with the
//! argument principle on the boundary circle.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::bounds::{radius_basic, rho_solve};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::recurrence::CoefficientTable;

pub const WINDING_SAMPLES: usize = 4096;
/// Roots closer than this (relative to the radius) to the circle are ambiguous.
pub const BOUNDARY_GAP: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct ComplexZeroReport {
    pub lambda: Vec<Rational>,
    #[serde(rename = "K")]
    pub order: usize,
    pub radius: f64,
    /// Multiplicity of the origin as a zero of the truncated displacement.
    pub trivial_order: usize,
    /// Degree of the remaining factor.
    pub degree: usize,
    /// Roots with `|x| < radius`, with multiplicity.
    pub count: usize,
    pub winding: i64,
    pub roots_inside: Vec<[f64; 2]>,
    /// Bound on the neglected orders on the circle.
    pub tail_bound: f64,
    /// Smallest `|Q_K(x) − x|` seen on the circle.
    pub min_displacement: f64,
    /// The tail is below the displacement everywhere on the circle, so the
    /// truncated count is also the count of the full series.
    pub guard_ok: bool,
    /// The displacement is identically zero through order `K` (a center).
    pub identically_zero: bool,
}

/// `(π/2) ρ q^{K+1} / (1 − q)` with `q = 2|x|/ρ`: the envelope bound on
/// `Σ_{k>K} |v_k(λ)| |x|^k` obtained by rescaling `λ` onto `Σ ρ^i |λ_i| = 1`.
pub fn tail_bound(lambda: &[f64], order: usize, x: f64) -> f64 {
    let Some(rho) = rho_solve(lambda) else { return 0.0 };
    let q = 2.0 * x.abs() / rho;
    if q >= 1.0 {
        return f64::INFINITY;
    }
    PI / 2.0 * rho * q.powi(order as i32 + 1) / (1.0 - q)
}

fn eval(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Starting points on the circles given by the upper hull of `(j, ln|b_j|)`.
fn newton_polygon_guesses(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let pts: Vec<(usize, f64)> =
        coeffs.iter().enumerate().filter(|(_, c)| **c != 0.0).map(|(j, c)| (j, c.abs().ln())).collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(n);
    for w in hull.windows(2) {
        let (i, li) = w[0];
        let (k, lk) = w[1];
        let count = k - i;
        let u = ((li - lk) / count as f64).exp();
        for t in 0..count {
            let angle = 2.0 * PI * t as f64 / count as f64 + 2.0 * PI * i as f64 / n as f64 + 0.4;
            out.push(Complex64::from_polar(u, angle));
        }
    }
    out
}

/// All roots of `Σ b_j z^j` (nonzero leading and constant coefficients).
fn aberth(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let c: Vec<Complex64> = coeffs.iter().map(|x| Complex64::new(*x, 0.0)).collect();
    let mut z = newton_polygon_guesses(coeffs);
    let mut done = vec![false; n];
    let mut last = vec![f64::INFINITY; n];
    for _ in 0..2000 {
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp) = eval(&c, z[i]);
            if p.norm() == 0.0 {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|j| *j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !w.is_finite() {
                return Err(Error::Integration("root iteration diverged".into()));
            }
            z[i] -= w;
            last[i] = w.norm() / z[i].norm();
            if last[i] <= 1e-13 {
                done[i] = true;
            }
        }
        if done.iter().all(|d| *d) {
            return Ok(z);
        }
    }
    // clustered roots stall short of full precision; accept them if settled
    if last.iter().zip(&done).all(|(w, d)| *d || *w <= 1e-8) {
        return Ok(z);
    }
    Err(Error::Integration("root iteration did not converge".into()))
}

/// Winding number of `P` around the unit circle plus `min |P|` on it.
fn winding(coeffs: &[f64]) -> (i64, f64) {
    let c: Vec<Complex64> = coeffs.iter().map(|x| Complex64::new(*x, 0.0)).collect();
    let at = |phi: f64| eval(&c, Complex64::from_polar(1.0, phi)).0;
    let mut total = 0.0;
    let mut min = f64::INFINITY;
    let h = 2.0 * PI / WINDING_SAMPLES as f64;
    let mut prev = at(0.0);
    min = min.min(prev.norm());
    for j in 1..=WINDING_SAMPLES {
        let phi = j as f64 * h;
        let next = at(phi);
        total += arg_increment(&at, phi - h, prev, phi, next, 0, &mut min);
        min = min.min(next.norm());
        prev = next;
    }
    ((total / (2.0 * PI)).round() as i64, min)
}

// splits an arc until every increment is small enough to be unambiguous
fn arg_increment(
    at: &impl Fn(f64) -> Complex64,
    a: f64,
    fa: Complex64,
    b: f64,
    fb: Complex64,
    depth: u32,
    min: &mut f64,
) -> f64 {
    let step = (fb / fa).arg();
    if step.abs() < 0.5 || depth >= 24 {
        return step;
    }
    let m = 0.5 * (a + b);
    let fm = at(m);
    *min = min.min(fm.norm());
    arg_increment(at, a, fa, m, fm, depth + 1, min) + arg_increment(at, m, fm, b, fb, depth + 1, min)
}

/// Zeros of `Q_K(x) − x = Σ_{k=2}^K v_k(2π)(λ) x^k` in `|x| < radius`, not
/// counting the zero at the origin.
pub fn count_complex_zeros(
    table: &CoefficientTable,
    lambda: &[Rational],
    order: usize,
    radius: f64,
) -> Result<ComplexZeroReport> {
    if order < 2 || order > table.order() {
        return Err(Error::InvalidArgument(format!("order must lie in 2..={}, got {order}", table.order())));
    }
    let lambda_f: Vec<f64> = lambda.iter().map(Rational::to_f64).collect();
    if lambda.len() != table.d() {
        return Err(Error::Dimension { expected: table.d(), got: lambda.len() });
    }
    let guard = radius_basic(&lambda_f) / 2.0;
    if !(radius > 0.0) || radius > guard {
        return Err(Error::InvalidArgument(format!("radius {radius} must lie in (0, {guard}]")));
    }
    // a[k] is the coefficient of x^k
    let mut a = vec![0.0; order + 1];
    for (k, slot) in a.iter_mut().enumerate().skip(2) {
        *slot = table.v_2pi(k).specialize(lambda)?.to_f64();
    }
    let tail = tail_bound(&lambda_f, order, radius);
    let Some(low) = a.iter().position(|c| *c != 0.0) else {
        return Ok(ComplexZeroReport {
            lambda: lambda.to_vec(),
            order,
            radius,
            trivial_order: order + 1,
            degree: 0,
            count: 0,
            winding: 0,
            roots_inside: Vec::new(),
            tail_bound: tail,
            min_displacement: 0.0,
            guard_ok: tail == 0.0,
            identically_zero: true,
        });
    };
    let high = a.iter().rposition(|c| *c != 0.0).unwrap_or(low);
    // x = radius·z, dividing out x^low
    let b: Vec<f64> = (low..=high).map(|k| a[k] * radius.powi((k - low) as i32)).collect();
    let roots = aberth(&b)?;
    let mut inside = Vec::new();
    for z in &roots {
        let gap = (z.norm() - 1.0).abs();
        if gap < BOUNDARY_GAP {
            return Err(Error::BoundaryAmbiguity { distance: gap * radius });
        }
        if z.norm() < 1.0 {
            inside.push([z.re * radius, z.im * radius]);
        }
    }
    let (wind, min_p) = winding(&b);
    if min_p == 0.0 {
        return Err(Error::BoundaryAmbiguity { distance: 0.0 });
    }
    if wind != inside.len() as i64 {
        return Err(Error::CountMismatch { winding: wind, roots: inside.len() });
    }
    let min_displacement = min_p * radius.powi(low as i32);
    Ok(ComplexZeroReport {
        lambda: lambda.to_vec(),
        order,
        radius,
        trivial_order: low,
        degree: high - low,
        count: inside.len(),
        winding: wind,
        roots_inside: inside,
        tail_bound: tail,
        min_displacement,
        guard_ok: tail < min_displacement,
        identically_zero: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn aberth_known_roots() {
        // (z − 2)(z + 0.5)(z − 0.1) = z³ − 1.6 z² − 0.85 z + 0.1
        let mut r = aberth(&[0.1, -0.85, -1.6, 1.0]).unwrap();
        r.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        for (z, want) in r.iter().zip([-0.5, 0.1, 2.0]) {
            assert!((z - Complex64::new(want, 0.0)).norm() < 1e-12, "{z}");
        }
        // widely spread magnitudes
        let r = aberth(&[1e-7, -0.100001, 1.0]).unwrap();
        let mut m: Vec<f64> = r.iter().map(|z| z.norm()).collect();
        m.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((m[0] / 1e-6 - 1.0).abs() < 1e-9 && (m[1] / 1e-1 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn winding_counts_inside() {
        assert_eq!(winding(&[0.1, -0.85, -1.6, 1.0]).0, 2);
        assert_eq!(winding(&[1.0, 0.0, 0.0, 1e-3]).0, 0);
    }

    #[test]
    fn center_has_no_zeros() {
        let table = CoefficientTable::compute(2, 8).unwrap();
        let zero = [Rational::default(), Rational::default()];
        let r = count_complex_zeros(&table, &zero, 8, 0.25).unwrap();
        assert!(r.identically_zero && r.count == 0 && r.guard_ok);
    }

    #[test]
    fn focus_term_gives_one_pair() {
        // with only v3, v5 nonzero the displacement is x³(v3 + v5 x² + ...)
        let table = CoefficientTable::compute(4, 6).unwrap();
        let lambda = [Rational::default(), ratio(1, 1000), Rational::default(), ratio(-1, 4)];
        let r = count_complex_zeros(&table, &lambda, 6, 0.2).unwrap();
        assert_eq!(r.trivial_order, 3);
        assert_eq!(r.count, r.winding as usize);
        assert!(r.count <= 4);
        assert!(count_complex_zeros(&table, &lambda, 6, 10.0).is_err());
    }
}
