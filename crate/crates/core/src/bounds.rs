//! Growth envelopes, majorants and convergence radii of the return series.
//!
//! The A₀ envelope says `deg v_k ≤ K1·k + K2` and `|v_k| ≤ K3·K4^k`; for the
//! Liénard family the constants are `K1 = 1, K2 = −1, K3 = π/2, K4 = 2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Decimal, PiPoly, Rational};
use crate::param::{lambda_abs, lambda_abs_rational, ParamPoly};
use crate::recurrence::{wallis_c, CoefficientTable};
use crate::ring::Ring;
use crate::trig::TrigPoly;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct A0Constants {
    #[serde(rename = "K1")]
    pub k1: Rational,
    #[serde(rename = "K2")]
    pub k2: Rational,
    #[serde(rename = "K3")]
    pub k3: PiPoly,
    #[serde(rename = "K4")]
    pub k4: PiPoly,
}

impl A0Constants {
    pub fn lienard() -> Self {
        A0Constants {
            k1: Rational::one(),
            k2: Rational::integer(-1),
            k3: PiPoly::monomial(Rational::new(1, 2).unwrap(), 1),
            k4: PiPoly::constant(Rational::integer(2)),
        }
    }

    /// `K3·K4^k`, exact.
    pub fn norm_envelope(&self, k: usize) -> PiPoly {
        let mut out = self.k3.clone();
        for _ in 0..k {
            out = out.mul(&self.k4);
        }
        out
    }

    /// `K1·k + K2`
    pub fn degree_envelope(&self, k: usize) -> Rational {
        &(&self.k1 * &Rational::integer(k as i64)) + &self.k2
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct A0Order {
    pub k: usize,
    pub degree: Option<u32>,
    pub degree_bound: Rational,
    pub norm: Decimal,
    pub norm_bound: Decimal,
    pub degree_ok: bool,
    pub norm_ok: bool,
    /// Sup-norm bound of `v_k(θ)` over `[0, 2π]`, summed over monomials.
    pub theta_norm: Decimal,
    pub theta_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct A0Report {
    pub d: usize,
    #[serde(rename = "K")]
    pub order: usize,
    pub constants: A0Constants,
    pub precision: u32,
    pub orders: Vec<A0Order>,
    /// Degree and norm envelopes hold for every `v_k(2π)`.
    pub holds: bool,
    /// The same envelope also holds along the whole revolution.
    pub theta_holds: bool,
}

/// Checks the A₀ envelope on every `v_k(2π)` (and, separately, on `v_k(θ)`).
pub fn a0_verify(table: &CoefficientTable, consts: &A0Constants, precision: u32) -> A0Report {
    let mut orders = Vec::with_capacity(table.order());
    for k in 1..=table.order() {
        let v = table.v_2pi(k);
        let degree = v.degree();
        let degree_bound = consts.degree_envelope(k);
        let degree_ok = match degree {
            None => true,
            Some(g) => Rational::integer(g as i64) <= degree_bound || k == 1,
        };
        let bound = consts.norm_envelope(k).eval(precision);
        let norm = v.norm(precision);
        let theta_norm = table.v_theta(k).norm_bound(precision);
        orders.push(A0Order {
            k,
            degree,
            degree_bound,
            norm_ok: norm <= bound,
            theta_ok: theta_norm <= bound,
            norm,
            norm_bound: bound,
            degree_ok,
            theta_norm,
        });
    }
    // order 1 is the identity term; it sits outside the envelope by convention
    let holds = orders.iter().skip(1).all(|o| o.degree_ok && o.norm_ok);
    let theta_holds = orders.iter().skip(1).all(|o| o.theta_ok);
    A0Report {
        d: table.d(),
        order: table.order(),
        constants: consts.clone(),
        precision,
        orders,
        holds,
        theta_holds,
    }
}

/// `W_1 ... W_K` of `(W − r0)(1 − b W) = c W²` with `b = 1 + a`, `c = 2πa`.
fn majorant_recurrence<R: Ring>(b: &R, c: &R, order: usize) -> Vec<R> {
    let mut w: Vec<R> = Vec::with_capacity(order);
    if order == 0 {
        return w;
    }
    w.push(R::one());
    let factor = b.add(c);
    for k in 2..=order {
        // [W²]_k only involves W_1 ... W_{k-1}
        let mut square = R::zero();
        for i in 1..k {
            square.add_assign(&w[i - 1].mul(&w[k - i - 1]));
        }
        w.push(factor.mul(&square).sub(&b.mul(&w[k - 2])));
    }
    w
}

/// Majorant coefficients `W_1 = 1, W_2, ..., W_K` at `|λ| = a`.
pub fn majorant_coefficients(abs_lambda: f64, order: usize) -> Vec<f64> {
    #[derive(Clone, Copy, PartialEq, Debug)]
    struct F(f64);
    impl Ring for F {
        fn zero() -> Self {
            F(0.0)
        }
        fn one() -> Self {
            F(1.0)
        }
        fn is_zero(&self) -> bool {
            self.0 == 0.0
        }
        fn add(&self, o: &Self) -> Self {
            F(self.0 + o.0)
        }
        fn mul(&self, o: &Self) -> Self {
            F(self.0 * o.0)
        }
        fn neg(&self) -> Self {
            F(-self.0)
        }
        fn scale(&self, q: &Rational) -> Self {
            F(self.0 * q.to_f64())
        }
    }
    let b = F(1.0 + abs_lambda);
    let c = F(2.0 * std::f64::consts::PI * abs_lambda);
    majorant_recurrence(&b, &c, order).into_iter().map(|x| x.0).collect()
}

/// Exact majorant coefficients at a rational `|λ|`, as polynomials in π.
pub fn majorant_coefficients_exact(abs_lambda: &Rational, order: usize) -> Vec<PiPoly> {
    let b = PiPoly::constant(&Rational::one() + abs_lambda);
    let c = PiPoly::monomial(abs_lambda * &Rational::integer(2), 1);
    majorant_recurrence(&b, &c, order)
}

/// Compositional inverse of `x + Σ_{k≥2} a_k x^k` through order `K`.
///
/// `coeffs[i]` is the coefficient of `x^(i+1)`; `coeffs[0]` must be one.
pub fn series_invert<R: Ring>(coeffs: &[R]) -> Result<Vec<R>> {
    let order = coeffs.len();
    if order == 0 {
        return Ok(Vec::new());
    }
    if !coeffs[0].sub(&R::one()).is_zero() {
        return Err(Error::InvalidArgument("series must start with x".into()));
    }
    // powers[j][m] = coefficient of y^m in g(y)^j, filled column by column
    let mut g: Vec<R> = vec![R::zero(); order + 1];
    g[1] = R::one();
    let mut powers: Vec<Vec<R>> = vec![vec![R::zero(); order + 1]; order + 1];
    powers[1][1] = R::one();
    for m in 2..=order {
        let mut acc = R::zero();
        for j in 2..=m {
            let mut entry = R::zero();
            for i in 1..=(m - j + 1) {
                if !g[i].is_zero() && !powers[j - 1][m - i].is_zero() {
                    entry.add_assign(&g[i].mul(&powers[j - 1][m - i]));
                }
            }
            if !entry.is_zero() && !coeffs[j - 1].is_zero() {
                acc.add_assign(&coeffs[j - 1].mul(&entry));
            }
            powers[j][m] = entry;
        }
        g[m] = acc.neg();
        powers[1][m] = g[m].clone();
    }
    Ok(g.into_iter().skip(1).collect())
}

/// `f(g(y))` truncated at the common order; both start with the linear term.
pub fn compose<R: Ring>(f: &[R], g: &[R]) -> Vec<R> {
    let order = f.len().min(g.len());
    let mut out = vec![R::zero(); order];
    let mut power: Vec<R> = g[..order].to_vec();
    for (j, a) in f.iter().take(order).enumerate() {
        if j > 0 {
            let mut next = vec![R::zero(); order];
            for (p, x) in power.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (q, y) in g.iter().take(order - p - 1).enumerate() {
                    next[p + q + 1].add_assign(&x.mul(y));
                }
            }
            power = next;
        }
        if a.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(&power) {
            o.add_assign(&a.mul(x));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct DominationOrder {
    pub k: usize,
    pub sup_bound: Decimal,
    pub majorant: Decimal,
    pub dominated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DominationReport {
    pub lambda: Vec<Rational>,
    pub abs_lambda: Rational,
    pub orders: Vec<DominationOrder>,
    pub holds: bool,
}

/// Inverts `r0 = r + Σ v_k(θ) r^k` at a rational parameter point and compares
/// the sup-norm of each inverse coefficient `w_k(θ)` with `W_k(|λ|)`.
pub fn domination_check(
    table: &CoefficientTable,
    lambda: &[Rational],
    order: usize,
    precision: u32,
    slack: &Rational,
) -> Result<DominationReport> {
    if order > table.order() {
        return Err(Error::InvalidArgument(format!("table has order {} < {order}", table.order())));
    }
    let series: Vec<TrigPoly> =
        (1..=order).map(|k| table.v_theta(k).specialize(lambda)).collect::<Result<_>>()?;
    let w = series_invert(&series)?;
    let abs = lambda_abs_rational(lambda);
    let majorant = majorant_coefficients_exact(&abs, order);
    let slack = Decimal::from_rational(slack.as_big(), precision, crate::exact::Rounding::Up);
    let orders: Vec<DominationOrder> = w
        .iter()
        .zip(&majorant)
        .enumerate()
        .map(|(i, (wk, big))| {
            let sup_bound = wk.sup_norm_bound(precision);
            let majorant = big.eval(precision);
            DominationOrder { k: i + 1, dominated: sup_bound <= &majorant + &slack, sup_bound, majorant }
        })
        .collect();
    Ok(DominationReport { lambda: lambda.to_vec(), abs_lambda: abs, holds: orders.iter().all(|o| o.dominated), orders })
}

/// `1 / (1 + |λ|)`
pub fn radius_basic(lambda: &[f64]) -> f64 {
    1.0 / (1.0 + lambda_abs(lambda))
}

pub const RHO_TOLERANCE: f64 = 1e-12;

/// The positive root of `Σ ρ^i |λ_i| = 1`, by bisection; `None` at `λ = 0`.
pub fn rho_solve(lambda: &[f64]) -> Option<f64> {
    let smallest = lambda.iter().map(|x| x.abs()).filter(|x| *x > 0.0).fold(f64::INFINITY, f64::min);
    if !smallest.is_finite() {
        return None;
    }
    let f = |rho: f64| -> f64 {
        let mut power = 1.0;
        let mut total = 0.0;
        for l in lambda {
            power *= rho;
            total += power * l.abs();
        }
        total - 1.0
    };
    // the bracket top exceeds 1 / |λ_i|^(1/i) for the smallest nonzero entry
    let (mut lo, mut hi) = (0.0_f64, 1.0 / smallest + 1.0);
    while hi - lo > RHO_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// `|Σ ρ^i |λ_i| − 1|`
pub fn rho_residual(lambda: &[f64], rho: f64) -> f64 {
    let total: f64 = lambda.iter().enumerate().map(|(i, l)| rho.powi(i as i32 + 1) * l.abs()).sum();
    (total - 1.0).abs()
}

/// `ρ / 2`, the disc on which the return series is known to converge.
pub fn radius_scaled(lambda: &[f64]) -> Option<f64> {
    rho_solve(lambda).map(|rho| rho / 2.0)
}

/// Bernstein-class data of the return series and the zero-free discs it yields.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadiusReport {
    pub n: usize,
    pub abs_lambda: f64,
    pub r_basic: f64,
    pub rho: Option<f64>,
    pub r_scaled: Option<f64>,
    /// Conservative zero-count radius: the smaller of the two printed forms.
    pub r_bernstein: f64,
    pub r_bernstein_scaled: Option<f64>,
    pub zero_bound: usize,
    pub variants: BernsteinVariants,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BernsteinVariants {
    /// `c_{2n+1}` as a number.
    pub wallis: f64,
    /// Class radius `K4 (1 + |λ|)`.
    pub class_radius: f64,
    /// Class constant as stated with the proposition: `n K3² K4^(2n−1) / c^n`.
    pub class_constant_stated: f64,
    /// Class constant closing its proof: `n K3² [K4(1+|λ|)]^(4n) / c^n`.
    pub class_constant_final: f64,
    /// Chain constant without radius weights: `n K3² [K4(1+|λ|)]^(2n−1) / c^n`.
    pub chain_constant_unweighted: f64,
    /// Chain constant with radius weights; equals the final class constant.
    pub chain_constant_weighted: f64,
    /// `c^n / [2^(6n) n K3² (K4(1+|λ|))^(4n+1)]`
    pub zero_radius_symbolic: f64,
    /// `c^n / [2^(10n−1) n π² (1+|λ|)^(4n+1)]`
    pub zero_radius_substituted: f64,
    /// symbolic / substituted
    pub zero_radius_ratio: f64,
    /// `ρ c^n / (π² n 2^(14n))`
    pub zero_radius_rho: Option<f64>,
}

/// Bernstein radii and zero bound for `n = ⌊d/2⌋` at real `λ`.
pub fn bernstein_radii(n: usize, lambda: &[f64]) -> Result<RadiusReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let pi = std::f64::consts::PI;
    let (k3, k4) = (pi / 2.0, 2.0);
    let abs = lambda_abs(lambda);
    let nf = n as f64;
    let wallis = wallis_c(n as u32).to_f64();
    let cn = wallis.powi(n as i32);
    let grown = k4 * (1.0 + abs);
    let exp = |base: f64, e: i64| base.powi(e as i32);
    let n_i = n as i64;
    let class_constant_final = nf * k3 * k3 * exp(grown, 4 * n_i) / cn;
    let symbolic = cn / (exp(2.0, 6 * n_i) * nf * k3 * k3 * exp(grown, 4 * n_i + 1));
    let substituted = cn / (exp(2.0, 10 * n_i - 1) * nf * pi * pi * exp(1.0 + abs, 4 * n_i + 1));
    let rho = rho_solve(lambda);
    let zero_radius_rho = rho.map(|r| r * cn / (pi * pi * nf * exp(2.0, 14 * n_i)));
    let variants = BernsteinVariants {
        wallis,
        class_radius: grown,
        class_constant_stated: nf * k3 * k3 * exp(k4, 2 * n_i - 1) / cn,
        class_constant_final,
        chain_constant_unweighted: nf * k3 * k3 * exp(grown, 2 * n_i - 1) / cn,
        chain_constant_weighted: class_constant_final,
        zero_radius_symbolic: symbolic,
        zero_radius_substituted: substituted,
        zero_radius_ratio: symbolic / substituted,
        zero_radius_rho,
    };
    Ok(RadiusReport {
        n,
        abs_lambda: abs,
        r_basic: radius_basic(lambda),
        rho,
        r_scaled: rho.map(|r| r / 2.0),
        r_bernstein: symbolic.min(substituted),
        r_bernstein_scaled: zero_radius_rho,
        zero_bound: 2 * n,
        variants,
    })
}

/// `deg φ_i ≤ deg f − 1` and `|φ_i| ≤ |f|` for a decomposition of `f`.
pub fn decomposition_bounds_hold(f: &ParamPoly, phis: &[ParamPoly], precision: u32) -> bool {
    let deg = f.degree();
    let norm = f.norm(precision);
    phis.iter().all(|p| {
        let degree_ok = match (p.degree(), deg) {
            (None, _) => true,
            (Some(a), Some(b)) => a < b,
            (Some(_), None) => false,
        };
        degree_ok && p.norm(precision) <= norm
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::param::LambdaPoly;

    #[test]
    fn majorant_low_orders() {
        assert!(majorant_coefficients(0.0, 6).iter().skip(1).all(|w| *w == 0.0));
        let w = majorant_coefficients(1.0, 3);
        assert!((w[1] - 2.0 * std::f64::consts::PI).abs() < 1e-12);
        assert!(w[2] >= majorant_coefficients(0.5, 3)[2]);
        let exact = majorant_coefficients_exact(&Rational::one(), 2);
        assert_eq!(exact[1], PiPoly::monomial(Rational::integer(2), 1));
    }

    #[test]
    fn invert_low_order() {
        let a = Rational::integer(3);
        let inv = series_invert(&[Rational::one(), a.clone(), Rational::zero()]).unwrap();
        assert_eq!(inv, vec![Rational::one(), a.neg(), Rational::integer(18)]);
        let id = vec![Rational::one(), Rational::zero(), Rational::zero()];
        assert_eq!(series_invert(&id).unwrap(), id);
        assert!(series_invert(&[Rational::integer(2)]).is_err());
    }

    #[test]
    fn table_round_trip() {
        let table = CoefficientTable::compute(2, 5).unwrap();
        let f: Vec<ParamPoly> = table.v_2pi_all().to_vec();
        let g = series_invert(&f).unwrap();
        let id = compose(&f, &g);
        assert!(id[0].sub(&ParamPoly::one()).is_zero());
        assert!(id[1..].iter().all(LambdaPoly::is_zero));
        let back = compose(&g, &f);
        assert!(back[1..].iter().all(LambdaPoly::is_zero));
    }

    #[test]
    fn radii() {
        assert_eq!(radius_basic(&[0.0, 0.0]), 1.0);
        assert_eq!(radius_basic(&[1.0]), 0.5);
        assert_eq!(radius_basic(&[1.0, -2.0]), 0.25);
        assert!((rho_solve(&[2.0]).unwrap() - 0.5).abs() < 1e-12);
        assert!((rho_solve(&[0.0, 1.0]).unwrap() - 1.0).abs() < 1e-12);
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        assert!((rho_solve(&[1.0, 1.0]).unwrap() - golden).abs() < 1e-12);
        assert_eq!(rho_solve(&[0.0, 0.0]), None);
        assert!((radius_scaled(&[2.0]).unwrap() - 0.25).abs() < 1e-12);
        assert!((radius_scaled(&[1.0, 1.0]).unwrap() - golden / 2.0).abs() < 1e-12);
    }

    #[test]
    fn bernstein_printed_forms() {
        let pi = std::f64::consts::PI;
        let r = bernstein_radii(1, &[0.0, 0.0]).unwrap();
        let direct = (pi / 4.0) / (512.0 * pi * pi);
        assert!((r.variants.zero_radius_substituted - direct).abs() < 1e-18);
        assert!((r.variants.zero_radius_ratio - 1.0).abs() < 1e-12);
        assert_eq!(r.zero_bound, 2);
        assert_eq!(r.rho, None);
        let r = bernstein_radii(1, &[0.0, 1.0]).unwrap();
        let scaled = (pi / 4.0) / (pi * pi * 16384.0);
        assert!((r.r_bernstein_scaled.unwrap() / scaled - 1.0).abs() < 1e-10);
        assert_eq!(bernstein_radii(3, &[0.1]).unwrap().zero_bound, 6);
        assert!(bernstein_radii(0, &[]).is_err());
    }

    #[test]
    fn envelope_small_table() {
        let table = CoefficientTable::compute(3, 8).unwrap();
        let report = a0_verify(&table, &A0Constants::lienard(), 30);
        assert!(report.holds);
        assert_eq!(report.orders[2].degree, Some(1));
    }

    #[test]
    fn domination_examples() {
        let table = CoefficientTable::compute(2, 8).unwrap();
        let slack = Rational::new(1, 1_000_000_000).unwrap();
        let half = ratio(1, 2);
        assert!(domination_check(&table, &[half.clone(), half], 8, 30, &slack).unwrap().holds);
        let zero = domination_check(&table, &[Rational::zero(), Rational::zero()], 8, 30, &slack).unwrap();
        assert!(zero.holds && zero.orders[1..].iter().all(|o| o.sup_bound.is_zero()));
        let table = CoefficientTable::compute(1, 8).unwrap();
        assert!(domination_check(&table, &[Rational::one()], 8, 30, &slack).unwrap().holds);
    }
}
