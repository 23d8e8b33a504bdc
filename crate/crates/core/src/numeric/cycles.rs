use serde::Serialize;

use super::ode::{inverse_return_map, return_map};
use super::zeros::tail_bound;
use super::LienardSystem;
use crate::bounds::{radius_basic, radius_scaled};
use crate::error::{Error, Result};
use crate::recurrence::{wallis_c, CoefficientTable};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationRow {
    pub r0: f64,
    pub r_return: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub lambda: Vec<f64>,
    #[serde(rename = "K")]
    pub order: usize,
    pub radius: f64,
    pub tolerance: f64,
    pub rows: Vec<ValidationRow>,
    pub max_residual: f64,
    /// Allowance for integration error at the largest sample.
    pub epsilon_model: f64,
    /// Envelope bound on the neglected orders at the largest sample.
    pub epsilon_trunc: f64,
    /// Every residual is within its own `ε_model + ε_trunc`.
    pub within_bound: bool,
}

impl ValidationReport {
    /// `r0,r_return,residual` rows.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row).map_err(|e| Error::Integration(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Integration(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Integration(e.to_string()))
    }
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c) * x
}

// integration error allowance per sample
fn model_error(tol: f64, r0: f64) -> f64 {
    100.0 * tol * r0.max(1e-300)
}

/// Checks `Q_K(P⁻¹(r0)) = r0` on `samples` equally spaced radii in `(0, radius/2]`.
pub fn validate_series(
    sys: &LienardSystem,
    table: &CoefficientTable,
    order: usize,
    radius: f64,
    samples: usize,
    tol: f64,
) -> Result<ValidationReport> {
    if order < 2 || order > table.order() {
        return Err(Error::InvalidArgument(format!("order must lie in 2..={}, got {order}", table.order())));
    }
    if table.d() != sys.d() {
        return Err(Error::Dimension { expected: table.d(), got: sys.d() });
    }
    let limit = radius_scaled(sys.lambda()).unwrap_or_else(|| radius_basic(sys.lambda()));
    if !(radius > 0.0) || radius > limit * (1.0 + 1e-12) {
        return Err(Error::InvalidArgument(format!("radius {radius} outside the certified disc of radius {limit}")));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let q: Vec<f64> = table.return_series_f64(sys.lambda())?[..order].to_vec();
    let mut rows = Vec::with_capacity(samples);
    let mut within = true;
    for i in 1..=samples {
        let r0 = radius / 2.0 * i as f64 / samples as f64;
        let p = inverse_return_map(sys, r0, tol)?.r_return;
        let residual = (horner(&q, p) - r0).abs();
        within &= residual <= model_error(tol, r0) + tail_bound(sys.lambda(), order, p);
        rows.push(ValidationRow { r0, r_return: p, residual });
    }
    let last = rows.last().map(|r| r.r_return).unwrap_or(0.0);
    Ok(ValidationReport {
        lambda: sys.lambda().to_vec(),
        order,
        radius,
        tolerance: tol,
        max_residual: rows.iter().map(|r| r.residual).fold(0.0, f64::max),
        epsilon_model: model_error(tol, radius / 2.0),
        epsilon_trunc: tail_bound(sys.lambda(), order, last),
        within_bound: within,
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CycleCount {
    pub lambda: Vec<f64>,
    pub r_max: f64,
    pub grid: usize,
    pub count: usize,
    /// Refined radii of the sign changes, increasing.
    pub radii: Vec<f64>,
}

/// Sign changes of `D(r) = P(r) − r` over `grid` points of `(0, r_max]`.
///
/// Values of `D` within the integration noise of zero carry no sign; a
/// change is counted only between two samples of definite, opposite sign,
/// so a center (where `D` is zero up to noise) has no cycles.
pub fn count_real_cycles(sys: &LienardSystem, r_max: f64, grid: usize, tol: f64) -> Result<CycleCount> {
    if !(r_max > 0.0) || grid == 0 {
        return Err(Error::InvalidArgument("need r_max > 0 and a nonempty grid".into()));
    }
    let step_tol = (tol * 1e-2).clamp(1e-13, 1e-10);
    let displacement = |r: f64| -> Result<f64> { Ok(return_map(sys, r, step_tol)?.r_return - r) };
    let sign = |r: f64, dr: f64| -> i8 {
        let noise = 1e3 * step_tol * r;
        if dr > noise {
            1
        } else if dr < -noise {
            -1
        } else {
            0
        }
    };
    let mut radii = Vec::new();
    let mut last: Option<(f64, i8)> = None;
    for i in 1..=grid {
        let r = r_max * i as f64 / grid as f64;
        let s = sign(r, displacement(r)?);
        if s == 0 {
            continue;
        }
        if let Some((lo, ls)) = last {
            if ls != s {
                radii.push(bisect(&displacement, lo, r, ls, tol)?);
            }
        }
        last = Some((r, s));
    }
    Ok(CycleCount { lambda: sys.lambda().to_vec(), r_max, grid, count: radii.len(), radii })
}

fn bisect(f: &impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64, lo_sign: i8, tol: f64) -> Result<f64> {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid)?;
        if (v > 0.0) == (lo_sign > 0) && v != 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Parameters `λ_2, λ_4, ..., λ_{2n+2}` (odd ones zero) whose first-order
/// displacement `ε r Σ_k a_k c_{2k+1} s^k`, `s = r²`, equals `ε r s Π_j (s − s_j)`
/// with `s_j = (j/(n+1))²`. The system has `d = 2n + 2`: one more even
/// coefficient than the `n` cycles, since the displacement starts at `r³`.
pub fn lins_neto_lambda(n: usize, epsilon: f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if !(epsilon >= 0.0) || !epsilon.is_finite() {
        return Err(Error::InvalidArgument(format!("epsilon must be nonnegative, got {epsilon}")));
    }
    // coefficients of Π (s − s_j), lowest first
    let mut poly = vec![1.0];
    for j in 1..=n {
        let root = (j as f64 / (n + 1) as f64).powi(2);
        let mut next = vec![0.0; poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= root * c;
        }
        poly = next;
    }
    let d = 2 * n + 2;
    let mut lambda = vec![0.0; d];
    for (i, e) in poly.iter().enumerate() {
        let k = i + 1;
        lambda[2 * k - 1] = epsilon * e / wallis_c(k as u32).to_f64();
    }
    Ok(lambda)
}

pub fn lins_neto_construct(n: usize, epsilon: f64) -> Result<LienardSystem> {
    LienardSystem::new(lins_neto_lambda(n, epsilon)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lins_neto_coefficients() {
        let l = lins_neto_lambda(1, 0.01).unwrap();
        assert_eq!(l.len(), 4);
        assert_eq!((l[0], l[2]), (0.0, 0.0));
        // s(s − 1/4): a_1 = −1/4, a_2 = 1
        let pi = std::f64::consts::PI;
        assert!((l[1] - 0.01 * -0.25 / (pi / 4.0)).abs() < 1e-15);
        assert!((l[3] - 0.01 / (pi / 8.0)).abs() < 1e-15);
        assert!(lins_neto_lambda(2, 0.0).unwrap().iter().all(|x| *x == 0.0));
    }

    #[test]
    fn center_has_no_cycles() {
        let sys = LienardSystem::new(vec![0.0, 0.0]).unwrap();
        assert_eq!(count_real_cycles(&sys, 0.5, 10, 1e-8).unwrap().count, 0);
        let sys = LienardSystem::new(vec![0.0, -0.1]).unwrap();
        assert_eq!(count_real_cycles(&sys, 0.5, 10, 1e-8).unwrap().count, 0);
    }

    #[test]
    fn single_lins_neto_cycle() {
        let sys = lins_neto_construct(1, 0.01).unwrap();
        let c = count_real_cycles(&sys, 0.8, 16, 1e-8).unwrap();
        assert_eq!(c.count, 1);
        assert!((c.radii[0] - 0.5).abs() < 0.02, "{:?}", c.radii);
    }

    #[test]
    fn validation_at_zero() {
        let sys = LienardSystem::new(vec![0.0, 0.0]).unwrap();
        let table = CoefficientTable::compute(2, 6).unwrap();
        let report = validate_series(&sys, &table, 6, 0.5, 4, 1e-10).unwrap();
        assert!(report.max_residual < 1e-9);
        assert!(report.within_bound);
        assert!(report.to_csv().unwrap().starts_with("r0,r_return,residual\n"));
        assert!(validate_series(&sys, &table, 6, 2.0, 4, 1e-10).is_err());
    }
}
