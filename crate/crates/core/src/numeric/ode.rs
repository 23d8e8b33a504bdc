//! Dormand–Prince 5(4) with first-return event location on the positive x-axis.

use serde::Serialize;

use super::LienardSystem;
use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Trajectories leaving `|x|, |y| ≤ BOUNDING_BOX` are reported as escaped.
pub const BOUNDING_BOX: f64 = 1e3;
const MAX_STEPS: usize = 1_000_000;
// a first return takes about 2π; anything far beyond that is not a small cycle
const MAX_TIME: f64 = 200.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReturnSample {
    pub r0: f64,
    pub r_return: f64,
    pub integrator_tolerance: f64,
    pub steps: usize,
}

type State = [f64; 2];

// the field is autonomous, so the stage nodes never enter
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// fifth-order weights minus embedded fourth-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

struct Flow<'a> {
    sys: &'a LienardSystem,
    // +1 forward in time, −1 for the reversed field
    sign: f64,
}

impl Flow<'_> {
    fn rate(&self, u: &State) -> State {
        let (a, b) = self.sys.field(u[0], u[1]);
        [self.sign * a, self.sign * b]
    }

    /// Angular velocity of the integrated field.
    fn theta_dot(&self, u: &State) -> f64 {
        let f = self.rate(u);
        (u[0] * f[1] - u[1] * f[0]) / (u[0] * u[0] + u[1] * u[1])
    }

    /// One Dormand–Prince step: the fifth-order solution and the error estimate.
    fn step(&self, u: &State, h: f64) -> (State, State) {
        let mut k = [[0.0; 2]; 7];
        k[0] = self.rate(u);
        for s in 1..7 {
            let mut v = *u;
            for (j, kj) in k.iter().enumerate().take(s) {
                v[0] += h * A[s][j] * kj[0];
                v[1] += h * A[s][j] * kj[1];
            }
            k[s] = self.rate(&v);
        }
        let mut next = *u;
        let mut err = [0.0; 2];
        for s in 0..7 {
            // the last row of A holds the fifth-order weights
            let w = if s < 6 { A[6][s] } else { 0.0 };
            next[0] += h * w * k[s][0];
            next[1] += h * w * k[s][1];
            err[0] += h * E[s] * k[s][0];
            err[1] += h * E[s] * k[s][1];
        }
        (next, err)
    }
}

fn first_return(sys: &LienardSystem, r0: f64, tol: f64, sign: f64) -> Result<ReturnSample> {
    if !(r0 > 0.0 && r0.is_finite()) {
        return Err(Error::InvalidArgument(format!("initial radius must be positive, got {r0}")));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidArgument(format!("tolerance must lie in (0, 1), got {tol}")));
    }
    let flow = Flow { sys, sign };
    let atol = tol * r0;
    let rtol = tol;
    let mut u: State = [r0, 0.0];
    let mut t = 0.0;
    let mut h = 1e-2;
    let mut steps = 0;
    while steps < MAX_STEPS {
        if t > MAX_TIME {
            return Err(Error::Integration(format!("no return to the section before t = {MAX_TIME}")));
        }
        let (next, err) = flow.step(&u, h);
        let scale = |i: usize| atol + rtol * u[i].abs().max(next[i].abs());
        let norm = (err[0] / scale(0)).abs().max((err[1] / scale(1)).abs());
        if !norm.is_finite() {
            return Err(Error::Escape { t });
        }
        if norm > 1.0 {
            h *= (0.9 * norm.powf(-0.2)).max(0.2);
            if h < 1e-14 {
                return Err(Error::Integration(format!("step size underflow at t = {t}")));
            }
            continue;
        }
        steps += 1;
        if next[0].abs() > BOUNDING_BOX || next[1].abs() > BOUNDING_BOX {
            return Err(Error::Escape { t: t + h });
        }
        let theta_dot = flow.theta_dot(&next);
        if sign * theta_dot >= 0.0 {
            return Err(Error::Transversality { t: t + h, theta_dot });
        }
        if sign * u[1] > 0.0 && sign * next[1] <= 0.0 && next[0] > 0.0 {
            let x = locate_crossing(&flow, &u, h, atol)?;
            return Ok(ReturnSample { r0, r_return: x, integrator_tolerance: tol, steps });
        }
        u = next;
        t += h;
        let grow = if norm == 0.0 { 5.0 } else { (0.9 * norm.powf(-0.2)).clamp(0.2, 5.0) };
        h = (h * grow).min(0.1);
    }
    Err(Error::Integration(format!("step budget of {MAX_STEPS} exhausted")))
}

/// Finds the step length from `u` that lands on `y = 0` by re-stepping with
/// Illinois false position; returns the `x` coordinate there.
fn locate_crossing(flow: &Flow, u: &State, h: f64, atol: f64) -> Result<f64> {
    let g = |tau: f64| flow.step(u, tau).0;
    let (mut a, mut fa) = (0.0, u[1]);
    let end = g(h);
    let (mut b, mut fb) = (h, end[1]);
    let mut best = end;
    let mut side = 0i8;
    for _ in 0..200 {
        if fb.abs() < atol || (b - a).abs() < 1e-15 {
            return Ok(best[0]);
        }
        let c = (a * fb - b * fa) / (fb - fa);
        let v = g(c);
        best = v;
        if v[1].abs() < atol {
            return Ok(v[0]);
        }
        if (v[1] > 0.0) == (fb > 0.0) {
            b = c;
            fb = v[1];
            if side == -1 {
                fa /= 2.0;
            }
            side = -1;
        } else {
            a = c;
            fa = v[1];
            if side == 1 {
                fb /= 2.0;
            }
            side = 1;
        }
    }
    Err(Error::Integration("crossing refinement did not converge".into()))
}

/// First return to `{y = 0, x > 0}` of the orbit through `(r0, 0)`, forward in time.
pub fn return_map(sys: &LienardSystem, r0: f64, tol: f64) -> Result<ReturnSample> {
    first_return(sys, r0, tol, 1.0)
}

/// First return of the reversed flow, i.e. the inverse of [`return_map`].
/// This is the map that the coefficient series undoes: `Q(P⁻¹(r0)) = r0`.
pub fn inverse_return_map(sys: &LienardSystem, r0: f64, tol: f64) -> Result<ReturnSample> {
    first_return(sys, r0, tol, -1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_center_is_identity() {
        let sys = LienardSystem::new(vec![0.0, 0.0]).unwrap();
        for r0 in [0.1, 0.5, 1.0] {
            let s = return_map(&sys, r0, 1e-10).unwrap();
            assert!((s.r_return - r0).abs() < 1e-9, "{r0} -> {}", s.r_return);
            let s = inverse_return_map(&sys, r0, 1e-10).unwrap();
            assert!((s.r_return - r0).abs() < 1e-9);
        }
    }

    #[test]
    fn forward_and_inverse_compose() {
        let sys = LienardSystem::new(vec![0.3, 0.2, -0.1]).unwrap();
        let p = return_map(&sys, 0.4, 1e-11).unwrap().r_return;
        let back = inverse_return_map(&sys, p, 1e-11).unwrap().r_return;
        assert!((back - 0.4).abs() < 1e-9);
        // λ2 > 0 pumps energy in
        assert!(p > 0.4);
    }

    #[test]
    fn guards() {
        let sys = LienardSystem::new(vec![1.0, 1.0]).unwrap();
        let err = return_map(&sys, 1e6, 1e-10).unwrap_err();
        assert!(matches!(err, Error::Escape { .. } | Error::Transversality { .. }), "{err}");
        assert!(return_map(&sys, -1.0, 1e-10).is_err());
        assert!(return_map(&sys, 0.1, 0.0).is_err());
    }
}
