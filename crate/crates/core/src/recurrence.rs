//! The coefficient table `v_k(θ)`, `v_k(2π)` and its structural checks.
//!
//! Writing `r0 = r + v_2(θ) r^2 + v_3(θ) r^3 + ...` for the solution of the
//! polar equation `dr/dθ = r p(r cosθ) sin²θ / (−1 + sinθ cosθ p(r cosθ))`
//! and matching powers of `r` gives
//!
//! ```text
//! v_k' = Σ_{l=1}^{min(d, k−1)} λ_l cos^l θ sinθ [cosθ v'_{k−l} + (k−l) sinθ v_{k−l}]
//! ```
//!
//! with `v_1 = 1` and `v_k(0) = 0` for `k ≥ 2`. Each `v_k` is then one exact
//! antiderivative away.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bautin::IdealSpec;
use crate::error::{Error, Result};
use crate::exact::{PiPoly, Rational};
use crate::param::{Monomial, ParamPoly, ParamTrigSeries};
use crate::ring::Ring;
use crate::trig::TrigPoly;

#[derive(Clone, PartialEq, Debug)]
pub struct CoefficientTable {
    d: usize,
    v_theta: Vec<ParamTrigSeries>,
    v_2pi: Vec<ParamPoly>,
    // cosθ v_j' + j sinθ v_j, cached for extension
    inner: Vec<ParamTrigSeries>,
}

impl CoefficientTable {
    /// Computes `v_1 ... v_order` for `d` parameters.
    pub fn compute(d: usize, order: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("parameter count d must be at least 1".into()));
        }
        if order == 0 {
            return Err(Error::InvalidArgument("order K must be at least 1".into()));
        }
        let one = ParamTrigSeries::constant(d, TrigPoly::one());
        let mut table = CoefficientTable {
            d,
            v_2pi: vec![one.eval_2pi()],
            inner: vec![inner_term(&one, 1)],
            v_theta: vec![one],
        };
        table.extend_to(order);
        Ok(table)
    }

    /// Appends orders until `order` is reached; existing orders are untouched.
    pub fn extend_to(&mut self, order: usize) {
        let lifts: Vec<TrigPoly> = (0..=self.d as u32).map(|l| TrigPoly::from_monomial(l, 1)).collect();
        while self.v_theta.len() < order {
            let k = self.v_theta.len() + 1;
            let mut derivative = ParamTrigSeries::zero(self.d);
            for l in 1..=self.d.min(k - 1) {
                let lift = &lifts[l];
                let term = self.inner[k - l - 1].map_coeffs(|t| lift.mul(t)).times_variable(l, 1);
                derivative = derivative.add(&term);
            }
            let v = derivative.antiderivative();
            self.v_2pi.push(v.eval_2pi());
            self.inner.push(inner_term(&v, k));
            self.v_theta.push(v);
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Highest computed order `K`.
    pub fn order(&self) -> usize {
        self.v_theta.len()
    }

    /// `v_k(θ)`, 1-based.
    pub fn v_theta(&self, k: usize) -> &ParamTrigSeries {
        &self.v_theta[k - 1]
    }

    /// `v_k(2π)`, 1-based.
    pub fn v_2pi(&self, k: usize) -> &ParamPoly {
        &self.v_2pi[k - 1]
    }

    /// `[v_1(2π), ..., v_K(2π)]`
    pub fn v_2pi_all(&self) -> &[ParamPoly] {
        &self.v_2pi
    }

    pub fn v_theta_all(&self) -> &[ParamTrigSeries] {
        &self.v_theta
    }

    /// Truncated map `Q_K(x) = x + Σ_{k=2}^K v_k(2π)(λ) x^k` at real `λ` and `x`.
    pub fn return_series_f64(&self, lambda: &[f64]) -> Result<Vec<f64>> {
        self.v_2pi.iter().map(|v| v.eval_f64(lambda)).collect()
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            d: self.d,
            order: self.order(),
            orders: (1..=self.order())
                .map(|k| OrderJson {
                    k,
                    v_theta: json_map(self.v_theta(k)),
                    v_2pi: json_map(self.v_2pi(k)),
                })
                .collect(),
        }
    }

    /// Rebuilds a table from its JSON dump, recomputing nothing but checking
    /// that `v_2pi` is the value of `v_theta` at 2π.
    pub fn from_json(json: &TableJson) -> Result<Self> {
        let d = json.d;
        let mut v_theta = Vec::new();
        let mut v_2pi = Vec::new();
        for (i, o) in json.orders.iter().enumerate() {
            if o.k != i + 1 {
                return Err(Error::Parse(format!("orders out of sequence at k = {}", o.k)));
            }
            let vt = ParamTrigSeries::from_json_map(d, o.v_theta.clone())?;
            let vp = ParamPoly::from_json_map(d, o.v_2pi.clone())?;
            if vt.eval_2pi() != vp {
                return Err(Error::Structure(format!("v_2pi at k = {} is not the value of v_theta at 2π", o.k)));
            }
            v_theta.push(vt);
            v_2pi.push(vp);
        }
        if v_theta.is_empty() {
            return Err(Error::Parse("empty table".into()));
        }
        let inner = v_theta.iter().enumerate().map(|(i, v)| inner_term(v, i + 1)).collect();
        Ok(CoefficientTable { d, v_theta, v_2pi, inner })
    }
}

fn inner_term(v: &ParamTrigSeries, j: usize) -> ParamTrigSeries {
    let cos = TrigPoly::cos(1);
    let sin_j = TrigPoly::sin(1).scale(&Rational::integer(j as i64));
    v.derivative().map_coeffs(|t| cos.mul(t)).add(&v.map_coeffs(|t| sin_j.mul(t)))
}

fn json_map<C: Ring + Clone>(p: &crate::param::LambdaPoly<C>) -> BTreeMap<String, C> {
    p.terms().map(|(m, c)| (m.key(), c.clone())).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableJson {
    pub d: usize,
    #[serde(rename = "K")]
    pub order: usize,
    pub orders: Vec<OrderJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrderJson {
    pub k: usize,
    pub v_theta: BTreeMap<String, TrigPoly>,
    pub v_2pi: BTreeMap<String, PiPoly>,
}

/// `c_{2k0+1} = ∫_0^{2π} cos^{2k0}θ sin²θ dθ`, a positive rational multiple of π.
pub fn wallis_c(k0: u32) -> PiPoly {
    TrigPoly::from_monomial(2 * k0, 2).antiderivative().eval_2pi()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub k: usize,
    pub monomial: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureReport {
    pub holds: bool,
    pub orders_checked: Vec<usize>,
    pub violations: Vec<Violation>,
}

impl StructureReport {
    fn from_violations(orders_checked: Vec<usize>, violations: Vec<Violation>) -> Self {
        StructureReport { holds: violations.is_empty(), orders_checked, violations }
    }
}

/// Splits `v_k(θ)` into the part in the even ideal `(λ2, ..., λ_{2k0})` and the
/// pure-odd remainder `Σ λ_{2j+1} w(sinθ, λ)`.
pub fn split_order(table: &CoefficientTable, k: usize) -> (ParamTrigSeries, ParamTrigSeries) {
    let v = table.v_theta(k);
    let has_even = |m: &Monomial| (2..=table.d()).step_by(2).any(|i| m.exponent(i) > 0);
    (v.filter(has_even), v.filter(|m| !has_even(m)))
}

/// Checks, for every order `k ≥ 2`, that `v_k(θ)` is an element of
/// `(λ2, ..., λ_{2k0})` (`2k0 ≤ k − 1`) plus terms `λ_{2j+1} w(sinθ)` built
/// from odd parameters only, with each `w` a polynomial in `sinθ` vanishing at 0.
pub fn check_theta_structure(table: &CoefficientTable) -> StructureReport {
    let mut violations = Vec::new();
    let orders: Vec<usize> = (2..=table.order()).collect();
    for &k in &orders {
        let k0 = (k - 1) / 2;
        let (even_part, odd_part) = split_order(table, k);
        for (m, _) in even_part.terms() {
            let allowed = (1..=k0).any(|j| m.exponent(2 * j) > 0);
            if !allowed {
                violations.push(Violation {
                    k,
                    monomial: m.to_string(),
                    reason: format!("even part not in (λ2..λ{})", 2 * k0),
                });
            }
        }
        for (m, t) in odd_part.terms() {
            if m.degree() == 0 {
                violations.push(Violation { k, monomial: m.to_string(), reason: "parameter-free term".into() });
            } else if t.as_sin_polynomial().is_none() {
                violations.push(Violation { k, monomial: m.to_string(), reason: "not a polynomial in sinθ".into() });
            } else if !t.value_at_zero().is_zero() {
                violations.push(Violation { k, monomial: m.to_string(), reason: "does not vanish at θ = 0".into() });
            }
        }
    }
    StructureReport::from_violations(orders, violations)
}

/// Checks `v_k(2π) ∈ (λ2, ..., λ_{2k0})` for every `k ≥ 2`, `2k0 ≤ k − 1`.
pub fn check_return_ideal(table: &CoefficientTable) -> StructureReport {
    let mut violations = Vec::new();
    let orders: Vec<usize> = (2..=table.order()).collect();
    for &k in &orders {
        let k0 = (k - 1) / 2;
        let ideal = IdealSpec::even_prefix(table.d(), k0.min(table.d() / 2));
        if let Some(m) = ideal.first_non_member(table.v_2pi(k)) {
            violations.push(Violation { k, monomial: m.to_string(), reason: format!("not in {ideal}") });
        }
    }
    StructureReport::from_violations(orders, violations)
}

/// Checks `v_{2k0+1}(2π) − c_{2k0+1} λ_{2k0} ∈ (λ2, ..., λ_{2k0−2})` for `k0 = 1..n`.
pub fn check_leading_terms(table: &CoefficientTable, n: usize) -> Result<StructureReport> {
    if table.order() < 2 * n + 1 || table.d() < 2 * n {
        return Err(Error::InvalidArgument(format!(
            "need K ≥ {} and d ≥ {} (have K = {}, d = {})",
            2 * n + 1,
            2 * n,
            table.order(),
            table.d()
        )));
    }
    let d = table.d();
    let mut violations = Vec::new();
    let mut orders = Vec::new();
    for k0 in 1..=n {
        let k = 2 * k0 + 1;
        orders.push(k);
        let lead = ParamPoly::variable(d, 2 * k0).scale_by(&wallis_c(k0 as u32));
        let rest = table.v_2pi(k).sub(&lead);
        let ideal = IdealSpec::even_prefix(d, k0 - 1);
        if let Some(m) = ideal.first_non_member(&rest) {
            violations.push(Violation { k, monomial: m.to_string(), reason: format!("remainder not in {ideal}") });
        }
    }
    Ok(StructureReport::from_violations(orders, violations))
}
