//! Floating point side: the flow itself, its return map, and counts of real
//! and complex small-amplitude cycles.

mod cycles;
mod ode;
mod zeros;

pub use cycles::{
    count_real_cycles, lins_neto_construct, lins_neto_lambda, validate_series, CycleCount, ValidationReport,
    ValidationRow,
};
pub use ode::{inverse_return_map, return_map, ReturnSample, BOUNDING_BOX, DEFAULT_TOLERANCE};
pub use zeros::{count_complex_zeros, tail_bound, ComplexZeroReport};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;

/// `x' = y, y' = −x + p(x) y` with `p(x) = λ1 x + ... + λd x^d`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LienardSystem {
    d: usize,
    lambda: Vec<f64>,
}

impl LienardSystem {
    pub fn new(lambda: Vec<f64>) -> Result<Self> {
        if lambda.is_empty() {
            return Err(Error::InvalidArgument("need at least one coefficient".into()));
        }
        if lambda.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("coefficients must be finite".into()));
        }
        Ok(LienardSystem { d: lambda.len(), lambda })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `⌊d/2⌋`, the number of Bautin generators.
    pub fn n(&self) -> usize {
        self.d / 2
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    pub fn p(&self, x: f64) -> f64 {
        self.lambda.iter().rev().fold(0.0, |acc, l| (acc + l) * x)
    }

    pub fn field(&self, x: f64, y: f64) -> (f64, f64) {
        (y, -x + self.p(x) * y)
    }
}

/// Coefficients `λ` of `p = −P′` for a potential `P = Σ P_j x^j` written as
/// `[P_0, P_1, ...]`. `P` must vanish to second order at the origin, otherwise
/// the linear part is not a center.
pub fn liouville_lambda(potential: &[Rational]) -> Result<Vec<Rational>> {
    for (j, c) in potential.iter().enumerate().take(2) {
        if !c.is_zero() {
            return Err(Error::InvalidArgument(format!("potential coefficient of x^{j} must vanish")));
        }
    }
    let top = potential.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    let d = top.saturating_sub(1).max(1);
    Ok((1..=d).map(|l| -(&Rational::integer(l as i64 + 1) * &potential.get(l + 1).cloned().unwrap_or_default())).collect())
}

/// Inverse of [`liouville_lambda`]: `P(x) = −∫_0^x p`.
pub fn liouville_potential(lambda: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::default(); lambda.len() + 2];
    for (i, l) in lambda.iter().enumerate() {
        out[i + 2] = -(l * &Rational::new(1, i as i64 + 2).expect("nonzero"));
    }
    out
}

/// The system with damping `p = −P′` for a potential `P` (see [`liouville_lambda`]).
pub fn liouville_form_convert(potential: &[Rational]) -> Result<LienardSystem> {
    LienardSystem::new(liouville_lambda(potential)?.iter().map(Rational::to_f64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn potential_conversion() {
        let p = liouville_lambda(&[Rational::default(), Rational::default(), ratio(-1, 2)]).unwrap();
        assert_eq!(p, vec![Rational::integer(1)]);
        let cubic = [0, 0, 0, 1].map(Rational::integer);
        assert_eq!(liouville_lambda(&cubic).unwrap(), vec![Rational::default(), Rational::integer(-3)]);
        assert_eq!(liouville_lambda(&[]).unwrap(), vec![Rational::default()]);
        assert!(liouville_lambda(&[Rational::integer(1)]).is_err());
        let lambda = vec![ratio(1, 3), ratio(-2, 7), ratio(5, 2)];
        assert_eq!(liouville_lambda(&liouville_potential(&lambda)).unwrap(), lambda);
    }

    #[test]
    fn field_values() {
        let sys = LienardSystem::new(vec![1.0, 2.0]).unwrap();
        assert_eq!(sys.p(2.0), 10.0);
        assert_eq!(sys.field(2.0, 1.0), (1.0, 8.0));
        assert!(LienardSystem::new(vec![]).is_err());
    }
}
