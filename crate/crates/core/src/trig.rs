//! Exact generalized trigonometric polynomials
//!
//! ```text
//! a(θ) = Σ q · θ^m · cos(jθ)  +  Σ q · θ^m · sin(jθ)
//! ```
//!
//! with rational `q`. Products are linearized with the product-to-sum
//! identities, so the Fourier basis stays closed under multiplication,
//! differentiation and integration. Powers of θ ("secular" terms) appear
//! whenever a term with nonzero mean is integrated.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Decimal, PiPoly, Rational, Rounding};
use crate::ring::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrigKind {
    Cos,
    Sin,
}

/// Basis element `θ^theta_power · kind(frequency · θ)`. `sin(0·θ)` is not a
/// basis element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TrigKey {
    pub theta_power: u32,
    pub frequency: u32,
    pub kind: TrigKind,
}

impl TrigKey {
    pub fn cos(theta_power: u32, frequency: u32) -> Self {
        TrigKey { theta_power, frequency, kind: TrigKind::Cos }
    }

    pub fn sin(theta_power: u32, frequency: u32) -> Self {
        TrigKey { theta_power, frequency, kind: TrigKind::Sin }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrigTerm {
    pub coeff: Rational,
    pub theta_power: u32,
    pub frequency: u32,
    pub kind: TrigKind,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TrigPoly {
    terms: BTreeMap<TrigKey, Rational>,
}

impl TrigPoly {
    pub fn constant(q: Rational) -> Self {
        TrigPoly::term(q, TrigKey::cos(0, 0))
    }

    pub fn term(q: Rational, key: TrigKey) -> Self {
        let mut p = TrigPoly::default();
        p.add_term(key, q);
        p
    }

    pub fn cos(frequency: u32) -> Self {
        TrigPoly::term(Rational::one(), TrigKey::cos(0, frequency))
    }

    pub fn sin(frequency: u32) -> Self {
        TrigPoly::term(Rational::one(), TrigKey::sin(0, frequency))
    }

    /// The identity function `θ`.
    pub fn theta() -> Self {
        TrigPoly::term(Rational::one(), TrigKey::cos(1, 0))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = TrigTerm>) -> Result<Self> {
        let mut p = TrigPoly::default();
        for t in terms {
            if t.kind == TrigKind::Sin && t.frequency == 0 {
                return Err(Error::InvalidArgument("sin(0·θ) is not a basis element".into()));
            }
            p.add_term(TrigKey { theta_power: t.theta_power, frequency: t.frequency, kind: t.kind }, t.coeff);
        }
        Ok(p)
    }

    /// Adds `q · key`, folding `sin(0·θ)` to zero and dropping cancellations.
    fn add_term(&mut self, key: TrigKey, q: Rational) {
        if q.is_zero() || (key.kind == TrigKind::Sin && key.frequency == 0) {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(q);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &q;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = TrigTerm> + '_ {
        self.terms.iter().map(|(k, q)| TrigTerm {
            coeff: q.clone(),
            theta_power: k.theta_power,
            frequency: k.frequency,
            kind: k.kind,
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: TrigKey) -> Rational {
        self.terms.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest power of θ; `None` for zero.
    pub fn secular_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.theta_power).max()
    }

    pub fn max_frequency(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.frequency).max()
    }

    /// `cos^a θ · sin^b θ` in the Fourier basis.
    pub fn from_monomial(a: u32, b: u32) -> Self {
        let cos = TrigPoly::cos(1);
        let sin = TrigPoly::sin(1);
        let mut out = TrigPoly::one();
        for _ in 0..a {
            out = out.mul(&cos);
        }
        for _ in 0..b {
            out = out.mul(&sin);
        }
        out
    }

    pub fn derivative(&self) -> Self {
        let mut out = TrigPoly::default();
        for (k, q) in &self.terms {
            let j = Rational::integer(k.frequency);
            // (θ^m)' · trig
            if k.theta_power > 0 {
                let m = Rational::integer(k.theta_power);
                out.add_term(TrigKey { theta_power: k.theta_power - 1, ..*k }, q * &m);
            }
            // θ^m · trig'
            match k.kind {
                TrigKind::Cos => out.add_term(TrigKey::sin(k.theta_power, k.frequency), -(q * &j)),
                TrigKind::Sin => out.add_term(TrigKey::cos(k.theta_power, k.frequency), q * &j),
            }
        }
        out
    }

    /// Value at θ = 0.
    pub fn value_at_zero(&self) -> Rational {
        self.terms
            .iter()
            .filter(|(k, _)| k.theta_power == 0 && k.kind == TrigKind::Cos)
            .fold(Rational::zero(), |acc, (_, q)| acc + q)
    }

    /// Antiderivative `F` with `F(0) = 0`.
    pub fn antiderivative(&self) -> Self {
        let mut out = TrigPoly::default();
        for (k, q) in &self.terms {
            integrate_basis(*k, q, &mut out);
        }
        let offset = out.value_at_zero();
        out.add_term(TrigKey::cos(0, 0), -offset);
        out
    }

    /// Exact value at θ = 2π: `cos(2πj) = 1`, `sin(2πj) = 0`, `θ^m = 2^m π^m`.
    pub fn eval_2pi(&self) -> PiPoly {
        let mut coeffs: Vec<Rational> = Vec::new();
        for (k, q) in self.terms.iter().filter(|(k, _)| k.kind == TrigKind::Cos) {
            let m = k.theta_power as usize;
            if coeffs.len() <= m {
                coeffs.resize(m + 1, Rational::zero());
            }
            coeffs[m] = &coeffs[m] + &(q * &Rational::integer(2).pow(k.theta_power));
        }
        PiPoly::from_coeffs(coeffs)
    }

    pub fn eval_f64(&self, theta: f64) -> f64 {
        self.terms
            .iter()
            .map(|(k, q)| {
                let trig = match k.kind {
                    TrigKind::Cos => (k.frequency as f64 * theta).cos(),
                    TrigKind::Sin => (k.frequency as f64 * theta).sin(),
                };
                q.to_f64() * theta.powi(k.theta_power as i32) * trig
            })
            .sum()
    }

    /// `Σ |q| (2π)^m` as an exact polynomial in π.
    pub fn sup_norm_bound_exact(&self) -> PiPoly {
        let mut coeffs: Vec<Rational> = Vec::new();
        for (k, q) in &self.terms {
            let m = k.theta_power as usize;
            if coeffs.len() <= m {
                coeffs.resize(m + 1, Rational::zero());
            }
            coeffs[m] = &coeffs[m] + &(q.abs() * Rational::integer(2).pow(k.theta_power));
        }
        PiPoly::from_coeffs(coeffs)
    }

    /// Upper bound for `sup |a(θ)|` over `[0, 2π]` by the triangle inequality,
    /// rounded upward at `precision` decimal places.
    pub fn sup_norm_bound(&self, precision: u32) -> Decimal {
        let exact = self.sup_norm_bound_exact();
        if exact.degree().unwrap_or(0) == 0 {
            return Decimal::from_rational(exact.coeff(0).as_big(), precision, Rounding::Up);
        }
        // approximation error is below 10^-(precision+2); add it back before rounding up
        let slack = BigRational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(10), precision as usize + 2));
        Decimal::from_rational(&(exact.approx(precision + 2) + slack), precision, Rounding::Up)
    }

    /// Coefficients `[s0, s1, ...]` with `a(θ) = Σ s_i sin^i θ`, when such an
    /// expression exists.
    pub fn as_sin_polynomial(&self) -> Option<Vec<Rational>> {
        if self.terms.keys().any(|k| k.theta_power > 0) {
            return None;
        }
        let top = self.max_frequency().unwrap_or(0);
        let mut rest = self.clone();
        let mut out = vec![Rational::zero(); top as usize + 1];
        // sin^p θ has leading term ±2^(1-p) cos(pθ) (p even) or sin(pθ) (p odd);
        // eliminate from the highest frequency down.
        for p in (0..=top).rev() {
            let kind = if p % 2 == 0 { TrigKind::Cos } else { TrigKind::Sin };
            let wrong = if p % 2 == 0 { TrigKind::Sin } else { TrigKind::Cos };
            if p > 0 && !rest.coeff(TrigKey { theta_power: 0, frequency: p, kind: wrong }).is_zero() {
                return None;
            }
            let c = rest.coeff(TrigKey { theta_power: 0, frequency: p, kind });
            if c.is_zero() {
                continue;
            }
            let basis = TrigPoly::from_monomial(0, p);
            let lead = basis.coeff(TrigKey { theta_power: 0, frequency: p, kind });
            let s = c.checked_div(&lead).ok()?;
            rest = rest.sub(&basis.scale(&s));
            out[p as usize] = s;
        }
        if !rest.is_empty() {
            return None;
        }
        while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        Some(out)
    }
}

/// Appends `q ∫_0^θ key` (up to an additive constant) to `out`.
fn integrate_basis(key: TrigKey, q: &Rational, out: &mut TrigPoly) {
    let m = key.theta_power;
    if key.frequency == 0 {
        // pure θ^m
        out.add_term(TrigKey::cos(m + 1, 0), q * &Rational::new(1, m + 1).expect("m + 1 > 0"));
        return;
    }
    let inv_j = Rational::new(1, key.frequency).expect("frequency > 0");
    match key.kind {
        // ∫θ^m cos jθ = θ^m sin jθ / j − (m/j) ∫θ^(m−1) sin jθ
        TrigKind::Cos => {
            out.add_term(TrigKey::sin(m, key.frequency), q * &inv_j);
            if m > 0 {
                let next = -(q * &inv_j) * Rational::integer(m);
                integrate_basis(TrigKey::sin(m - 1, key.frequency), &next, out);
            }
        }
        // ∫θ^m sin jθ = −θ^m cos jθ / j + (m/j) ∫θ^(m−1) cos jθ
        TrigKind::Sin => {
            out.add_term(TrigKey::cos(m, key.frequency), -(q * &inv_j));
            if m > 0 {
                let next = (q * &inv_j) * Rational::integer(m);
                integrate_basis(TrigKey::cos(m - 1, key.frequency), &next, out);
            }
        }
    }
}

impl Ring for TrigPoly {
    fn zero() -> Self {
        TrigPoly::default()
    }
    fn one() -> Self {
        TrigPoly::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, q) in &other.terms {
            out.add_term(*k, q.clone());
        }
        out
    }
    fn add_assign(&mut self, other: &Self) {
        for (k, q) in &other.terms {
            self.add_term(*k, q.clone());
        }
    }
    fn mul(&self, other: &Self) -> Self {
        let half = Rational::new(1, 2).expect("nonzero");
        let mut out = TrigPoly::default();
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                let m = a.theta_power + b.theta_power;
                let c = &(p * q) * &half;
                let (j, k) = (a.frequency, b.frequency);
                let sum = j + k;
                let diff = j.abs_diff(k);
                // sign of sin((j − k)θ) after folding the negative frequency
                let diff_sign = if j >= k { c.clone() } else { -&c };
                match (a.kind, b.kind) {
                    (TrigKind::Cos, TrigKind::Cos) => {
                        out.add_term(TrigKey::cos(m, diff), c.clone());
                        out.add_term(TrigKey::cos(m, sum), c);
                    }
                    (TrigKind::Sin, TrigKind::Sin) => {
                        out.add_term(TrigKey::cos(m, diff), c.clone());
                        out.add_term(TrigKey::cos(m, sum), -c);
                    }
                    // sin jθ cos kθ = ½[sin(j+k)θ + sin(j−k)θ]
                    (TrigKind::Sin, TrigKind::Cos) => {
                        out.add_term(TrigKey::sin(m, sum), c);
                        out.add_term(TrigKey::sin(m, diff), diff_sign);
                    }
                    // cos jθ sin kθ = ½[sin(j+k)θ − sin(j−k)θ]
                    (TrigKind::Cos, TrigKind::Sin) => {
                        out.add_term(TrigKey::sin(m, sum), c);
                        out.add_term(TrigKey::sin(m, diff), -diff_sign);
                    }
                }
            }
        }
        out
    }
    fn neg(&self) -> Self {
        TrigPoly { terms: self.terms.iter().map(|(k, q)| (*k, -q)).collect() }
    }
    fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return TrigPoly::default();
        }
        TrigPoly { terms: self.terms.iter().map(|(k, c)| (*k, c * q)).collect() }
    }
}

impl fmt::Debug for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, q)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({q})")?;
            match k.theta_power {
                0 => {}
                1 => write!(f, "·θ")?,
                m => write!(f, "·θ^{m}")?,
            }
            match (k.kind, k.frequency) {
                (TrigKind::Cos, 0) => {}
                (TrigKind::Cos, 1) => write!(f, "·cosθ")?,
                (TrigKind::Sin, 1) => write!(f, "·sinθ")?,
                (TrigKind::Cos, j) => write!(f, "·cos{j}θ")?,
                (TrigKind::Sin, j) => write!(f, "·sin{j}θ")?,
            }
        }
        Ok(())
    }
}

impl Serialize for TrigPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms())
    }
}

impl<'de> Deserialize<'de> for TrigPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TrigTerm>::deserialize(deserializer)?;
        TrigPoly::from_terms(terms).map_err(serde::de::Error::custom)
    }
}

/// Exact `∫_0^{2π} a(θ) dθ`.
pub fn integral_over_period(a: &TrigPoly) -> PiPoly {
    a.antiderivative().eval_2pi()
}
