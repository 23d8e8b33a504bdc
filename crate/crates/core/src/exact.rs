//! Exact scalars: rationals, polynomials in π over ℚ, Laurent monomials in π,
//! and fixed-scale decimals for the places where π finally gets a value.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::Ring;

/// Arbitrary-precision rational, always reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_big(value: BigRational) -> Self {
        Rational(value)
    }

    /// Exact conversion of a finite float.
    pub fn from_f64(x: f64) -> Result<Self> {
        BigRational::from_float(x)
            .map(Rational)
            .ok_or_else(|| Error::InvalidArgument(format!("non-finite value {x}")))
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn into_big(self) -> BigRational {
        self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn checked_div(&self, other: &Rational) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &other.0))
    }

    pub fn recip(&self) -> Result<Self> {
        Rational::integer(1).checked_div(self)
    }

    pub fn pow(&self, e: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), e as usize))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
                let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
                Rational::new(p, q)
            }
            None if s.contains(['.', 'e', 'E']) => parse_decimal(s).ok_or_else(bad),
            None => Ok(Rational::integer(BigInt::from_str(s).map_err(|_| bad())?)),
        }
    }
}

// exact value of a literal such as "-0.05" or "2.5e-3"
fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if frac.starts_with(['+', '-']) || (int.trim_start_matches(['+', '-']).is_empty() && frac.is_empty()) {
        return None;
    }
    let digits = BigInt::from_str(&format!("{int}{frac}")).ok()?;
    let shift = exponent.checked_sub(i32::try_from(frac.len()).ok()?)?;
    let scale = BigInt::from(10).pow(shift.unsigned_abs());
    Some(Rational::from_big(if shift >= 0 {
        BigRational::from_integer(digits * scale)
    } else {
        BigRational::new(digits, scale)
    }))
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational::integer(0)
    }
    fn one() -> Self {
        Rational::integer(1)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
}

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), e as usize)
}

/// `arctan(1/x)` scaled by `unity`, truncated term by term.
fn arctan_recip(x: u32, unity: &BigInt) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = unity / &x;
    let mut sum = power.clone();
    let mut k = 1u32;
    loop {
        power /= &x2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// Rational approximation of π with absolute error below `10^-digits`,
/// from Machin's formula `π = 16 atan(1/5) − 4 atan(1/239)`.
pub fn pi_rational(digits: u32) -> BigRational {
    let guard = 10;
    let unity = pow10(digits + guard);
    let pi = BigInt::from(16) * arctan_recip(5, &unity) - BigInt::from(4) * arctan_recip(239, &unity);
    BigRational::new(pi, unity)
}

/// Number of decimal digits needed to write `ceil(|x|)`.
pub(crate) fn decimal_magnitude(x: &BigRational) -> u32 {
    let c = x.abs().ceil().to_integer();
    if c.is_zero() {
        0
    } else {
        c.to_string().len() as u32
    }
}

/// Polynomial in the symbol π with rational coefficients; index `m` holds the
/// coefficient of `π^m`. Trailing zeros are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PiPoly {
    coeffs: Vec<Rational>,
}

impl PiPoly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PiPoly { coeffs }
    }

    pub fn constant(q: Rational) -> Self {
        PiPoly::from_coeffs(vec![q])
    }

    /// `q · π^power`
    pub fn monomial(q: Rational, power: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = q;
        PiPoly::from_coeffs(coeffs)
    }

    pub fn pi() -> Self {
        PiPoly::monomial(Rational::one(), 1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> Rational {
        self.coeffs.get(power).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest power of π present; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `Some((q, m))` when the value is the single term `q π^m`.
    pub fn as_monomial(&self) -> Option<(Rational, usize)> {
        let mut nonzero = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        let (m, q) = nonzero.next()?;
        if nonzero.next().is_some() {
            return None;
        }
        Some((q.clone(), m))
    }

    /// `Σ |c_m| 4^m`, which bounds the sensitivity of the value to the error
    /// in an approximation of π below 1/2.
    fn sensitivity(&self) -> BigRational {
        let mut total = BigRational::zero();
        let mut four = BigRational::one();
        for c in &self.coeffs {
            total += c.as_big().abs() * &four;
            four *= BigRational::from_integer(4.into());
        }
        total
    }

    /// Horner evaluation at a given rational stand-in for π.
    pub fn eval_at(&self, pi: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * pi + c.as_big())
    }

    /// Rational approximation with absolute error below `10^-digits`.
    pub fn approx(&self, digits: u32) -> BigRational {
        if self.coeffs.len() <= 1 {
            return self.coeff(0).into_big();
        }
        let guard = digits + 2 + decimal_magnitude(&self.sensitivity());
        self.eval_at(&pi_rational(guard))
    }

    /// Decimal value rounded to `precision` places; error below `10^-precision`.
    pub fn eval(&self, precision: u32) -> Decimal {
        Decimal::from_rational(&self.approx(precision + 2), precision, Rounding::Nearest)
    }

    pub fn to_f64(&self) -> f64 {
        self.eval(20).to_f64()
    }
}

impl fmt::Debug for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match m {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})π")?,
                _ => write!(f, "({c})π^{m}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for PiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Vec::<Rational>::deserialize(deserializer).map(PiPoly::from_coeffs)
    }
}

impl Ring for PiPoly {
    fn zero() -> Self {
        PiPoly::default()
    }
    fn one() -> Self {
        PiPoly::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        PiPoly::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return PiPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        PiPoly::from_coeffs(out)
    }
    fn neg(&self) -> Self {
        PiPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn scale(&self, q: &Rational) -> Self {
        PiPoly::from_coeffs(self.coeffs.iter().map(|c| c * q).collect())
    }
}

/// Element of ℚ[π, 1/π] stored as `numer / π^den_power` in lowest terms.
///
/// This is the ring the matrix inversion lives in: the diagonal constants are
/// rational multiples of π, so their inverses only ever need powers of π in
/// the denominator.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PiFraction {
    numer: PiPoly,
    den_power: usize,
}

impl PiFraction {
    pub fn new(numer: PiPoly, den_power: usize) -> Self {
        let mut coeffs = numer.coeffs;
        let mut den_power = den_power;
        if coeffs.is_empty() {
            den_power = 0;
        }
        let strip = coeffs.iter().take_while(|c| c.is_zero()).count().min(den_power);
        coeffs.drain(..strip);
        den_power -= strip;
        PiFraction { numer: PiPoly::from_coeffs(coeffs), den_power }
    }

    pub fn numer(&self) -> &PiPoly {
        &self.numer
    }

    pub fn den_power(&self) -> usize {
        self.den_power
    }

    /// Inverse of `q π^m`; `None` when the value is not a single π-monomial.
    pub fn inverse(&self) -> Option<Self> {
        let (q, m) = self.numer.as_monomial()?;
        let inv = q.recip().ok()?;
        // (q π^m / π^e)^-1 = (1/q) π^e / π^m
        Some(PiFraction::new(PiPoly::monomial(inv, self.den_power), m))
    }

    /// `Some` when the denominator cleared.
    pub fn to_pipoly(&self) -> Option<PiPoly> {
        (self.den_power == 0).then(|| self.numer.clone())
    }

    pub fn to_f64(&self) -> f64 {
        self.numer.to_f64() / std::f64::consts::PI.powi(self.den_power as i32)
    }

    fn shifted_numer(&self, to_den: usize) -> PiPoly {
        let shift = to_den - self.den_power;
        let mut coeffs = vec![Rational::zero(); shift];
        coeffs.extend(self.numer.coeffs.iter().cloned());
        PiPoly::from_coeffs(coeffs)
    }
}

impl From<PiPoly> for PiFraction {
    fn from(p: PiPoly) -> Self {
        PiFraction::new(p, 0)
    }
}

impl fmt::Debug for PiFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PiFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den_power {
            0 => write!(f, "{}", self.numer),
            1 => write!(f, "[{}]/π", self.numer),
            e => write!(f, "[{}]/π^{e}", self.numer),
        }
    }
}

impl Serialize for PiFraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            numer: &'a PiPoly,
            pi_denominator_power: usize,
        }
        Repr { numer: &self.numer, pi_denominator_power: self.den_power }.serialize(serializer)
    }
}

impl Ring for PiFraction {
    fn zero() -> Self {
        PiFraction::default()
    }
    fn one() -> Self {
        PiPoly::one().into()
    }
    fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        let den = self.den_power.max(other.den_power);
        PiFraction::new(self.shifted_numer(den).add(&other.shifted_numer(den)), den)
    }
    fn mul(&self, other: &Self) -> Self {
        PiFraction::new(self.numer.mul(&other.numer), self.den_power + other.den_power)
    }
    fn neg(&self) -> Self {
        PiFraction { numer: self.numer.neg(), den_power: self.den_power }
    }
    fn scale(&self, q: &Rational) -> Self {
        PiFraction::new(self.numer.scale(q), self.den_power)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    Nearest,
    Up,
}

/// Fixed-scale decimal `mantissa · 10^-scale`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Decimal {
    mantissa: BigInt,
    scale: u32,
}

impl Decimal {
    pub fn zero(scale: u32) -> Self {
        Decimal { mantissa: BigInt::zero(), scale }
    }

    pub fn from_rational(x: &BigRational, scale: u32, rounding: Rounding) -> Self {
        let scaled = x * BigRational::from_integer(pow10(scale));
        let mantissa = match rounding {
            Rounding::Nearest => scaled.round().to_integer(),
            Rounding::Up => scaled.ceil().to_integer(),
        };
        Decimal { mantissa, scale }
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mantissa.clone(), pow10(self.scale))
    }

    pub fn to_f64(&self) -> f64 {
        self.to_string().parse().unwrap_or(f64::NAN)
    }

    pub fn abs(&self) -> Self {
        Decimal { mantissa: self.mantissa.abs(), scale: self.scale }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    fn rescaled(&self, scale: u32) -> BigInt {
        &self.mantissa * pow10(scale - self.scale)
    }
}

impl Add for &Decimal {
    type Output = Decimal;
    fn add(self, rhs: &Decimal) -> Decimal {
        let scale = self.scale.max(rhs.scale);
        Decimal { mantissa: self.rescaled(scale) + rhs.rescaled(scale), scale }
    }
}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Decimal {
    fn cmp(&self, other: &Self) -> Ordering {
        let scale = self.scale.max(other.scale);
        self.rescaled(scale).cmp(&other.rescaled(scale))
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.mantissa.abs().to_string();
        let sign = if self.mantissa.sign() == Sign::Minus { "-" } else { "" };
        let scale = self.scale as usize;
        if scale == 0 {
            return write!(f, "{sign}{digits}");
        }
        let padded = format!("{digits:0>width$}", width = scale + 1);
        let (int, frac) = padded.split_at(padded.len() - scale);
        write!(f, "{sign}{int}.{frac}")
    }
}

impl fmt::Debug for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Decimal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Exact `a / b` with `b` a positive integer, as a convenience for tests and tables.
pub fn ratio(a: i64, b: i64) -> Rational {
    Rational::new(a, b).expect("nonzero denominator")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_canonical() {
        assert_eq!(ratio(1, 2) + ratio(1, 3), ratio(5, 6));
        assert_eq!(ratio(2, 4) * Rational::one(), ratio(1, 2));
        assert_eq!(ratio(2, 4).to_string(), "1/2");
        assert_eq!(Rational::zero().to_string(), "0/1");
        assert_eq!(ratio(-3, -6), ratio(1, 2));
        assert_eq!(ratio(3, -6).to_string(), "-1/2");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(ratio(1, 3).checked_div(&Rational::zero()), Err(Error::DivisionByZero));
        assert_eq!(Rational::new(1, 0), Err(Error::DivisionByZero));
        assert!(Rational::zero().recip().is_err());
    }

    #[test]
    fn rational_parse_round_trip() {
        for s in ["5/6", "-7/3", "0/1", "12/1"] {
            assert_eq!(s.parse::<Rational>().unwrap().to_string(), s);
        }
        assert_eq!("4".parse::<Rational>().unwrap(), Rational::integer(4));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x/2".parse::<Rational>().is_err());
        assert_eq!("0.1".parse::<Rational>().unwrap(), ratio(1, 10));
        assert_eq!("-0.05".parse::<Rational>().unwrap(), ratio(-1, 20));
        assert_eq!("2.5e-3".parse::<Rational>().unwrap(), ratio(1, 400));
        assert_eq!("1e2".parse::<Rational>().unwrap(), Rational::integer(100));
        assert_eq!(".5".parse::<Rational>().unwrap(), ratio(1, 2));
        for bad in [".", "1.-2", "e3", "1.5e"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad}");
        }
    }

    #[test]
    fn machin_pi_digits() {
        // first 50 digits of π
        // π = 3.14159265358979323846264338327950288419716939937510 5820..., rounded
        let reference = "3.14159265358979323846264338327950288419716939937511";
        let pi = Decimal::from_rational(&pi_rational(55), 50, Rounding::Nearest);
        assert_eq!(pi.to_string(), reference);
    }

    #[test]
    fn pipoly_eval_examples() {
        let quarter_pi = PiPoly::monomial(ratio(1, 4), 1);
        assert_eq!(quarter_pi.eval(12).to_string(), "0.785398163397");
        assert_eq!(PiPoly::constant(ratio(3, 2)).eval(3).to_string(), "1.500");
        assert!(PiPoly::zero().eval(5).is_zero());
        assert!((quarter_pi.to_f64() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn pipoly_is_canonical() {
        let p = PiPoly::from_coeffs(vec![ratio(1, 2), Rational::zero(), Rational::zero()]);
        assert_eq!(p.coeffs().len(), 1);
        assert_eq!(p.add(&p.neg()), PiPoly::zero());
        assert_eq!(serde_json::to_string(&PiPoly::monomial(ratio(1, 4), 1)).unwrap(), r#"["0/1","1/4"]"#);
    }

    #[test]
    fn pi_fraction_inverse() {
        let c = PiFraction::from(PiPoly::monomial(ratio(1, 4), 1));
        let inv = c.inverse().unwrap();
        assert_eq!(inv.numer(), &PiPoly::constant(Rational::integer(4)));
        assert_eq!(inv.den_power(), 1);
        assert_eq!(c.mul(&inv), PiFraction::one());
        assert!(PiFraction::from(PiPoly::from_coeffs(vec![Rational::one(), Rational::one()]))
            .inverse()
            .is_none());
    }

    #[test]
    fn pi_fraction_normalizes() {
        let x = PiFraction::new(PiPoly::monomial(ratio(2, 1), 2), 1);
        assert_eq!(x.den_power(), 0);
        assert_eq!(x.to_pipoly().unwrap(), PiPoly::monomial(ratio(2, 1), 1));
        let y = PiFraction::new(PiPoly::constant(ratio(1, 1)), 2);
        assert_eq!(x.mul(&y).add(&y.neg().mul(&x)), PiFraction::zero());
    }

    #[test]
    fn decimal_display_and_order() {
        let d = Decimal::from_rational(&BigRational::new((-1).into(), 8.into()), 4, Rounding::Nearest);
        assert_eq!(d.to_string(), "-0.1250");
        let up = Decimal::from_rational(&BigRational::new(1.into(), 3.into()), 2, Rounding::Up);
        assert_eq!(up.to_string(), "0.34");
        assert!(Decimal::zero(3) < up);
        assert_eq!((&up + &d).to_string(), "0.2150");
    }
}
