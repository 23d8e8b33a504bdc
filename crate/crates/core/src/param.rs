//! Polynomials in the parameters `λ1, ..., λd` over a coefficient ring.
//!
//! [`ParamTrigSeries`] (trigonometric coefficients) carries `v_k(θ)`,
//! [`ParamPoly`] (coefficients in ℚ[π]) carries `v_k(2π)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{decimal_magnitude, Decimal, PiFraction, PiPoly, Rational, Rounding};
use crate::ring::Ring;
use crate::trig::TrigPoly;

/// Exponent vector of a monomial `λ1^e1 ... λd^ed`.
///
/// Ordered graded-lexicographically: total degree first, then `λ1` before
/// `λ2` before ... among monomials of equal degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(d: usize) -> Self {
        Monomial(vec![0; d])
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// `λ_index` with a 1-based index.
    pub fn variable(d: usize, index: usize) -> Self {
        let mut e = vec![0; d];
        e[index - 1] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Exponent of `λ_index` (1-based).
    pub fn exponent(&self, index: usize) -> u32 {
        self.0.get(index - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `Σ i · e_i`, the order contributed to the expansion.
    pub fn weight(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, e)| (i as u32 + 1) * e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial((0..n).map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0)).collect())
    }

    /// Multiplies by `λ_index^power` (1-based).
    pub fn raised(&self, index: usize, power: u32) -> Monomial {
        let mut e = self.0.clone();
        e[index - 1] += power;
        Monomial(e)
    }

    /// Divides by `λ_index` if it divides.
    pub fn lowered(&self, index: usize) -> Option<Monomial> {
        let mut e = self.0.clone();
        let slot = e.get_mut(index - 1)?;
        *slot = slot.checked_sub(1)?;
        Some(Monomial(e))
    }

    fn padded(&self, d: usize) -> Monomial {
        let mut e = self.0.clone();
        e.resize(d, 0);
        Monomial(e)
    }

    pub fn key(&self) -> String {
        self.0.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }

    pub fn parse_key(key: &str) -> Result<Monomial> {
        if key.is_empty() {
            return Ok(Monomial(Vec::new()));
        }
        key.split(',')
            .map(|s| s.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent tuple {key:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    /// `Π λ_i^e_i` at a rational point.
    pub fn eval(&self, lambda: &[Rational]) -> Rational {
        self.0
            .iter()
            .zip(lambda)
            .filter(|(e, _)| **e > 0)
            .fold(Rational::one(), |acc, (e, x)| acc * x.pow(*e))
    }

    pub fn eval_f64(&self, lambda: &[f64]) -> f64 {
        self.0.iter().zip(lambda).map(|(e, x)| x.powi(*e as i32)).product()
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (i, e) in self.0.iter().enumerate().filter(|(_, e)| **e > 0) {
            if any {
                write!(f, "·")?;
            }
            any = true;
            match e {
                1 => write!(f, "λ{}", i + 1)?,
                _ => write!(f, "λ{}^{e}", i + 1)?,
            }
        }
        if !any {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Sparse polynomial in `λ1..λd` with coefficients in `C`.
///
/// A polynomial built with `d = 0` is a bare constant and combines with
/// polynomials of any parameter count; any other mismatch is a dimension error.
#[derive(Clone, PartialEq, Eq)]
pub struct LambdaPoly<C> {
    d: usize,
    terms: BTreeMap<Monomial, C>,
}

pub type ParamPoly = LambdaPoly<PiPoly>;
pub type ParamTrigSeries = LambdaPoly<TrigPoly>;

impl<C: Ring> LambdaPoly<C> {
    pub fn zero(d: usize) -> Self {
        LambdaPoly { d, terms: BTreeMap::new() }
    }

    pub fn constant(d: usize, c: C) -> Self {
        LambdaPoly::from_terms(d, [(Monomial::one(d), c)])
    }

    /// The polynomial `λ_index` (1-based).
    pub fn variable(d: usize, index: usize) -> Self {
        LambdaPoly::from_terms(d, [(Monomial::variable(d, index), C::one())])
    }

    pub fn from_terms(d: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = LambdaPoly::zero(d);
        for (m, c) in terms {
            assert_eq!(m.len(), d, "monomial {m} does not have {d} exponents");
            p.add_term(m, c);
        }
        p
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Maximal total degree; `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn common_d(&self, other: &Self) -> Result<usize> {
        match (self.d, other.d) {
            (a, b) if a == b => Ok(a),
            (0, b) if self.is_scalar() => Ok(b),
            (a, 0) if other.is_scalar() => Ok(a),
            (a, b) => Err(Error::Dimension { expected: a, got: b }),
        }
    }

    fn is_scalar(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    fn lifted(&self, d: usize) -> Self {
        if self.d == d {
            return self.clone();
        }
        LambdaPoly { d, terms: self.terms.iter().map(|(m, c)| (m.padded(d), c.clone())).collect() }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_d(other)?;
        let mut out = self.lifted(d);
        for (m, c) in &other.terms {
            out.add_term(m.padded(d), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_poly())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_d(other)?;
        let mut out = LambdaPoly::zero(d);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb).padded(d), ca.mul(cb));
            }
        }
        Ok(out)
    }

    fn neg_poly(&self) -> Self {
        LambdaPoly { d: self.d, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale_by(&self, c: &C) -> Self {
        LambdaPoly::from_terms(self.d, self.terms.iter().map(|(m, x)| (m.clone(), x.mul(c))))
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        LambdaPoly::from_terms(self.d, self.terms.iter().map(|(m, x)| (m.clone(), x.scale(q))))
    }

    /// Multiplies by `λ_index^power` (1-based).
    pub fn times_variable(&self, index: usize, power: u32) -> Self {
        LambdaPoly {
            d: self.d,
            terms: self.terms.iter().map(|(m, c)| (m.raised(index, power), c.clone())).collect(),
        }
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> LambdaPoly<D> {
        LambdaPoly::from_terms(self.d, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        LambdaPoly {
            d: self.d,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Exact value at a rational parameter point.
    pub fn specialize(&self, lambda: &[Rational]) -> Result<C> {
        if lambda.len() != self.d {
            return Err(Error::Dimension { expected: self.d, got: lambda.len() });
        }
        let mut out = C::zero();
        for (m, c) in &self.terms {
            out.add_assign(&c.scale(&m.eval(lambda)));
        }
        Ok(out)
    }

    /// Parses the JSON object `{"e1,...,ed": coefficient, ...}`.
    pub fn from_json_map(d: usize, map: BTreeMap<String, C>) -> Result<Self> {
        let mut p = LambdaPoly::zero(d);
        for (k, c) in map {
            let m = Monomial::parse_key(&k)?;
            if m.len() != d {
                return Err(Error::Dimension { expected: d, got: m.len() });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }
}

impl ParamPoly {
    /// `Σ |value of coefficient|` over all monomials, rounded to `precision` places.
    pub fn norm(&self, precision: u32) -> Decimal {
        Decimal::from_rational(&self.norm_rational(precision + 2), precision, Rounding::Nearest)
    }

    /// Rational approximation of the norm with error below `10^-digits`.
    pub fn norm_rational(&self, digits: u32) -> BigRational {
        let guard = digits + 1 + decimal_magnitude(&BigRational::from_integer((self.terms.len() + 1).into()));
        self.terms.values().map(|c| c.approx(guard).abs()).fold(BigRational::zero(), |a, b| a + b)
    }

    /// Value at a real parameter point: the floats are taken as exact
    /// rationals, the sum is formed exactly in ℚ[π], and only then rounded.
    pub fn eval(&self, lambda: &[f64], precision: u32) -> Result<Decimal> {
        let lambda = lambda.iter().map(|x| Rational::from_f64(*x)).collect::<Result<Vec<_>>>()?;
        Ok(self.specialize(&lambda)?.eval(precision))
    }

    pub fn eval_f64(&self, lambda: &[f64]) -> Result<f64> {
        if lambda.len() != self.d {
            return Err(Error::Dimension { expected: self.d, got: lambda.len() });
        }
        Ok(self.terms.iter().map(|(m, c)| c.to_f64() * m.eval_f64(lambda)).sum())
    }
}

impl ParamTrigSeries {
    /// `Σ sup-norm bound of each coefficient`, rounded upward.
    pub fn norm_bound(&self, precision: u32) -> Decimal {
        self.terms.values().fold(Decimal::zero(precision), |acc, t| &acc + &t.sup_norm_bound(precision))
    }

    pub fn derivative(&self) -> Self {
        self.map_coeffs(TrigPoly::derivative)
    }

    pub fn antiderivative(&self) -> Self {
        self.map_coeffs(TrigPoly::antiderivative)
    }

    pub fn eval_2pi(&self) -> ParamPoly {
        self.map_coeffs(TrigPoly::eval_2pi)
    }
}

/// `|λ| = |λ1| + ... + |λd|`
pub fn lambda_abs(lambda: &[f64]) -> f64 {
    lambda.iter().map(|x| x.abs()).sum()
}

pub fn lambda_abs_rational(lambda: &[Rational]) -> Rational {
    lambda.iter().fold(Rational::zero(), |acc, x| acc + x.abs())
}

impl<C: Ring> Ring for LambdaPoly<C> {
    fn zero() -> Self {
        LambdaPoly::zero(0)
    }
    fn one() -> Self {
        LambdaPoly::constant(0, C::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("parameter counts agree")
    }
    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("parameter counts agree")
    }
    fn neg(&self) -> Self {
        self.neg_poly()
    }
    fn scale(&self, q: &Rational) -> Self {
        self.scale_rational(q)
    }
}

impl From<&ParamPoly> for LambdaPoly<PiFraction> {
    fn from(p: &ParamPoly) -> Self {
        p.map_coeffs(|c| PiFraction::from(c.clone()))
    }
}

impl<C: Ring + Serialize> Serialize for LambdaPoly<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            map.serialize_entry(&m.key(), c)?;
        }
        map.end()
    }
}

impl<C: Ring + fmt::Display> fmt::Display for LambdaPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]·{m}")?;
        }
        Ok(())
    }
}

impl<C: Ring> fmt::Debug for LambdaPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(m, c)| (m.to_string(), c))).finish()
    }
}
