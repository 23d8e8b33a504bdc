//! Ideal membership, generator decompositions and the triangular matrix
//! relation that certifies the ideal generated by the `v_k(2π)`.
//!
//! Every ideal met here is generated by a set of parameters, so membership
//! is a monomial-by-monomial divisibility test and decompositions are a
//! matter of assigning each monomial to one generator that divides it.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{PiFraction, PiPoly};
use crate::param::{LambdaPoly, Monomial, ParamPoly};
use crate::recurrence::{wallis_c, CoefficientTable};
use crate::ring::Ring;

/// Ideal of `ℚ[π][λ1..λd]` generated by parameters, listed by 1-based index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSpec {
    d: usize,
    generators: Vec<usize>,
}

impl IdealSpec {
    /// `(λ2, λ4, ..., λ_{2n})` with `n = ⌊d/2⌋`.
    pub fn bautin(d: usize) -> Self {
        IdealSpec::even_prefix(d, d / 2)
    }

    /// `(λ2, ..., λ_{2m})`; `m = 0` is the zero ideal.
    pub fn even_prefix(d: usize, m: usize) -> Self {
        assert!(2 * m <= d, "λ{} does not exist for d = {d}", 2 * m);
        IdealSpec { d, generators: (1..=m).map(|i| 2 * i).collect() }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of generators.
    pub fn n(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn divides(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|&g| m.exponent(g) > 0)
    }

    /// First monomial of `f` outside the ideal, if any.
    pub fn first_non_member<'a, C: Ring>(&self, f: &'a LambdaPoly<C>) -> Option<&'a Monomial> {
        f.terms().map(|(m, _)| m).find(|m| !self.divides(m))
    }

    pub fn contains<C: Ring>(&self, f: &LambdaPoly<C>) -> bool {
        self.first_non_member(f).is_none()
    }
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "(0)");
        }
        let names: Vec<String> = self.generators.iter().map(|g| format!("λ{g}")).collect();
        write!(f, "({})", names.join(", "))
    }
}

/// Membership of `f` in `spec`; parameter counts must agree.
pub fn ideal_member(f: &ParamPoly, spec: &IdealSpec) -> Result<bool> {
    if f.d() != spec.d && !f.is_empty() {
        return Err(Error::Dimension { expected: spec.d, got: f.d() });
    }
    Ok(spec.contains(f))
}

/// Which generator claims a monomial divisible by several of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Priority {
    /// `λ2` first, then `λ4`, ...
    LowestFirst,
    /// `λ_{2n}` first, then downward; puts `c λ_{2j}` of `f_{2j+1}` on the diagonal.
    HighestFirst,
}

/// `f = Σ φ_i λ_{g_i}` over the generators of `spec`, each monomial assigned
/// to one dividing generator according to `priority`.
pub fn hironaka_decompose<C: Ring>(
    f: &LambdaPoly<C>,
    spec: &IdealSpec,
    priority: Priority,
) -> Result<Vec<LambdaPoly<C>>> {
    if f.d() != spec.d && !f.is_empty() {
        return Err(Error::Dimension { expected: spec.d, got: f.d() });
    }
    let mut phis: Vec<LambdaPoly<C>> = vec![LambdaPoly::zero(spec.d); spec.n()];
    for (m, c) in f.terms() {
        let mut order: Vec<(usize, usize)> = spec.generators.iter().copied().enumerate().collect();
        if priority == Priority::HighestFirst {
            order.reverse();
        }
        let (slot, g) = order
            .into_iter()
            .find(|&(_, g)| m.exponent(g) > 0)
            .ok_or_else(|| Error::NotInIdeal(format!("monomial {m} is not divisible by any generator of {spec}")))?;
        phis[slot].add_term(m.lowered(g).expect("generator divides monomial"), c.clone());
    }
    Ok(phis)
}

/// `Σ φ_i λ_{g_i}`
pub fn recompose<C: Ring>(phis: &[LambdaPoly<C>], spec: &IdealSpec) -> LambdaPoly<C> {
    phis.iter()
        .zip(&spec.generators)
        .fold(LambdaPoly::zero(spec.d), |acc, (phi, &g)| acc.add(&phi.times_variable(g, 1)))
}

/// Square matrix of λ-polynomials.
#[derive(Clone, PartialEq)]
pub struct ParamMatrix<C> {
    d: usize,
    rows: Vec<Vec<LambdaPoly<C>>>,
}

impl<C: Ring> ParamMatrix<C> {
    pub fn zero(n: usize, d: usize) -> Self {
        ParamMatrix { d, rows: vec![vec![LambdaPoly::zero(d); n]; n] }
    }

    pub fn identity(n: usize, d: usize) -> Self {
        let mut m = ParamMatrix::zero(n, d);
        for i in 0..n {
            m.rows[i][i] = LambdaPoly::constant(d, C::one());
        }
        m
    }

    pub fn from_rows(d: usize, rows: Vec<Vec<LambdaPoly<C>>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("matrix is not square".into()));
        }
        Ok(ParamMatrix { d, rows })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &LambdaPoly<C> {
        &self.rows[row][col]
    }

    pub fn rows(&self) -> &[Vec<LambdaPoly<C>>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(LambdaPoly::is_empty)
    }

    pub fn add(&self, other: &Self) -> Self {
        ParamMatrix {
            d: self.d,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        ParamMatrix { d: self.d, rows: self.rows.iter().map(|r| r.iter().map(Ring::neg).collect()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n();
        let mut out = ParamMatrix::zero(n, self.d);
        for i in 0..n {
            for j in 0..n {
                let mut acc = LambdaPoly::zero(self.d);
                for k in 0..n {
                    if self.rows[i][k].is_empty() || other.rows[k][j].is_empty() {
                        continue;
                    }
                    acc = acc.add(&self.rows[i][k].mul(&other.rows[k][j]));
                }
                out.rows[i][j] = acc;
            }
        }
        out
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&LambdaPoly<C>) -> LambdaPoly<D>) -> ParamMatrix<D> {
        ParamMatrix { d: self.d, rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }
}

impl<C: Ring + Serialize> Serialize for ParamMatrix<C> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(serializer)
    }
}

impl<C: Ring> fmt::Debug for ParamMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.rows).finish()
    }
}

/// `f_{2j+1} = Σ_i (C + Δ)_{ji} λ_{2i}` with `C` the constant diagonal and
/// `Δ` strictly lower triangular (rows `j`, columns `i`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixRelation {
    pub c: ParamMatrix<PiPoly>,
    pub delta: ParamMatrix<PiPoly>,
}

impl MatrixRelation {
    pub fn full(&self) -> ParamMatrix<PiPoly> {
        self.c.add(&self.delta)
    }
}

/// Decomposes `f_3, f_5, ..., f_{2n+1}` over `λ2, ..., λ_{2n}` (highest
/// generator first) and checks the claimed shape: diagonal `c_{2j+1}`, nothing
/// above it.
pub fn build_matrix_relation(table: &CoefficientTable, n: usize) -> Result<MatrixRelation> {
    let d = table.d();
    if n == 0 || table.order() < 2 * n + 1 || d < 2 * n {
        return Err(Error::InvalidArgument(format!(
            "need n ≥ 1, K ≥ {} and d ≥ {} (have K = {}, d = {d})",
            2 * n + 1,
            2 * n,
            table.order()
        )));
    }
    let spec = IdealSpec::even_prefix(d, n);
    let mut c = ParamMatrix::zero(n, d);
    let mut delta = ParamMatrix::zero(n, d);
    for j in 1..=n {
        let f = table.v_2pi(2 * j + 1);
        let row = hironaka_decompose(f, &spec, Priority::HighestFirst)
            .map_err(|e| Error::Structure(format!("f_{} is not in {spec}: {e}", 2 * j + 1)))?;
        for (i0, entry) in row.into_iter().enumerate() {
            let i = i0 + 1;
            if i > j && !entry.is_empty() {
                return Err(Error::Structure(format!(
                    "entry ({j},{i}) = {entry} lies above the diagonal: λ{} appears in f_{}",
                    2 * i,
                    2 * j + 1
                )));
            }
            if i == j {
                let expected = ParamPoly::constant(d, wallis_c(j as u32));
                if entry != expected {
                    return Err(Error::Structure(format!(
                        "diagonal entry ({j},{j}) is {entry}, expected {}",
                        wallis_c(j as u32)
                    )));
                }
                c.rows[j - 1][j - 1] = entry;
            } else {
                delta.rows[j - 1][i0] = entry;
            }
        }
    }
    Ok(MatrixRelation { c, delta })
}

/// `(C + Δ)^{-1} = [Σ_{m<n} (−C^{-1}Δ)^m] C^{-1}`, exactly, over ℚ[π, 1/π].
pub fn invert_matrix_relation(
    c: &ParamMatrix<PiPoly>,
    delta: &ParamMatrix<PiPoly>,
) -> Result<ParamMatrix<PiFraction>> {
    let n = c.n();
    let d = c.d;
    if delta.n() != n {
        return Err(Error::InvalidArgument("C and Δ differ in size".into()));
    }
    let mut c_inv = ParamMatrix::<PiFraction>::zero(n, d);
    for i in 0..n {
        for j in 0..n {
            let entry = c.get(i, j);
            if i != j {
                if !entry.is_empty() {
                    return Err(Error::Structure(format!("C has off-diagonal entry ({},{})", i + 1, j + 1)));
                }
                continue;
            }
            let constant = (entry.len() == 1 && entry.degree() == Some(0))
                .then(|| entry.coeff(&Monomial::one(d)))
                .ok_or_else(|| Error::Structure(format!("C({0},{0}) is not a constant", i + 1)))?;
            let inv = PiFraction::from(constant)
                .inverse()
                .ok_or_else(|| Error::Structure(format!("C({0},{0}) is not a monomial in π", i + 1)))?;
            c_inv.rows[i][i] = LambdaPoly::constant(d, inv);
        }
    }
    let step = c_inv.mul(&delta.map(|p| LambdaPoly::<PiFraction>::from(p))).neg();
    let mut power = ParamMatrix::identity(n, d);
    let mut series = ParamMatrix::zero(n, d);
    for _ in 0..n {
        series = series.add(&power);
        power = power.mul(&step);
    }
    if !power.is_zero() {
        return Err(Error::NotNilpotent(format!("(C^-1 Δ)^{n} ≠ 0")));
    }
    Ok(series.mul(&c_inv))
}

/// Result of the ideal certification for one parameter count.
#[derive(Debug, Clone, Serialize)]
pub struct BautinCertificate {
    pub d: usize,
    pub n: usize,
    #[serde(rename = "K")]
    pub order: usize,
    #[serde(rename = "B")]
    pub bautin_index: usize,
    pub ideal: String,
    pub diagonal_constants: Vec<PiPoly>,
    pub matrix: Option<ParamMatrix<PiPoly>>,
    pub inverse: Option<ParamMatrix<PiFraction>>,
    pub inverse_verified: bool,
    pub generators_recovered: bool,
    pub stationary: bool,
    pub orders: Vec<OrderVerdict>,
    pub holds: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderVerdict {
    pub k: usize,
    /// `v_k(2π) ∈ (λ2, ..., λ_{2n})`
    pub member: bool,
    /// Ideal generated by `v_2(2π), ..., v_k(2π)`.
    pub generated_ideal: String,
    pub in_generated_ideal: bool,
    pub new_generator: bool,
}

/// Certifies that `v_2(2π), ..., v_K(2π)` generate `(λ2, ..., λ_{2n})` and
/// that the ascending chain of ideals stops growing at order `2n + 1`.
pub fn bautin_certificate(table: &CoefficientTable) -> Result<BautinCertificate> {
    let d = table.d();
    let n = d / 2;
    let order = table.order();
    if order < 2 * n + 2 {
        return Err(Error::InvalidArgument(format!("need K ≥ {} for d = {d}, have {order}", 2 * n + 2)));
    }
    let full_ideal = IdealSpec::bautin(d);
    let mut failures = Vec::new();

    let mut orders = Vec::new();
    let mut bautin_index = 1;
    for k in 1..=order {
        let f = table.v_2pi(k);
        // number of odd orders 2j+1 ≤ k with j ≤ n
        let m = ((k.saturating_sub(1)) / 2).min(n);
        let generated = IdealSpec::even_prefix(d, m);
        let member = full_ideal.contains(f);
        let in_generated = generated.contains(f);
        let new_generator = k % 2 == 1 && k >= 3 && (k - 1) / 2 <= n;
        if new_generator {
            let previous = IdealSpec::even_prefix(d, m - 1);
            if previous.contains(f) {
                failures.push(format!("v_{k}(2π) adds nothing to {previous}"));
            }
            bautin_index = k;
        }
        if k >= 2 && !member {
            failures.push(format!("v_{k}(2π) ∉ {full_ideal}"));
        }
        if k >= 2 && !in_generated {
            failures.push(format!("v_{k}(2π) ∉ {generated}"));
        }
        orders.push(OrderVerdict {
            k,
            member,
            generated_ideal: generated.to_string(),
            in_generated_ideal: in_generated,
            new_generator,
        });
    }
    let stationary = orders.iter().filter(|o| o.k > 2 * n + 1).all(|o| o.member);

    let (mut matrix, mut inverse) = (None, None);
    let (mut inverse_verified, mut generators_recovered) = (n == 0, n == 0);
    let mut diagonal_constants = Vec::new();
    if n > 0 {
        match build_matrix_relation(table, n) {
            Ok(rel) => {
                diagonal_constants = (0..n).map(|i| rel.c.get(i, i).coeff(&Monomial::one(d))).collect();
                match invert_matrix_relation(&rel.c, &rel.delta) {
                    Ok(m) => {
                        let full = rel.full().map(|p| LambdaPoly::<PiFraction>::from(p));
                        inverse_verified = m.mul(&full) == ParamMatrix::identity(n, d);
                        generators_recovered = recovers_generators(&m, table, n);
                        if !inverse_verified {
                            failures.push("M·(C+Δ) ≠ I".into());
                        }
                        if !generators_recovered {
                            failures.push("Σ_j M_ij f_{2j+1} ≠ λ_{2i}".into());
                        }
                        inverse = Some(m);
                    }
                    Err(e) => failures.push(e.to_string()),
                }
                matrix = Some(rel.full());
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    if bautin_index != 2 * n + 1 {
        failures.push(format!("chain stops at {bautin_index}, expected {}", 2 * n + 1));
    }
    if !stationary {
        failures.push("orders beyond 2n+1 leave the ideal".into());
    }

    Ok(BautinCertificate {
        d,
        n,
        order,
        bautin_index,
        ideal: full_ideal.to_string(),
        diagonal_constants,
        matrix,
        inverse,
        inverse_verified,
        generators_recovered,
        stationary,
        orders,
        holds: failures.is_empty(),
        failures,
    })
}

/// `Σ_j M_ij f_{2j+1} = λ_{2i}` for every `i`.
fn recovers_generators(m: &ParamMatrix<PiFraction>, table: &CoefficientTable, n: usize) -> bool {
    let d = table.d();
    (0..n).all(|i| {
        let combo = (0..n).fold(LambdaPoly::<PiFraction>::zero(d), |acc, j| {
            acc.add(&m.get(i, j).mul(&LambdaPoly::<PiFraction>::from(table.v_2pi(2 * j + 3))))
        });
        combo == LambdaPoly::variable(d, 2 * (i + 1))
    })
}

/// Computes the table to order `K` and certifies it.
pub fn bautin_report(d: usize, order: usize) -> Result<BautinCertificate> {
    let table = CoefficientTable::compute(d, order)?;
    bautin_certificate(&table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ratio, Rational};

    fn mono(e: &[u32]) -> ParamPoly {
        ParamPoly::from_terms(e.len(), [(Monomial::new(e.to_vec()), PiPoly::one())])
    }

    #[test]
    fn membership() {
        let spec = IdealSpec::bautin(4);
        let f = mono(&[0, 1, 0, 0]).add(&mono(&[1, 0, 0, 1]));
        assert!(ideal_member(&f, &spec).unwrap());
        assert!(!ideal_member(&mono(&[3, 0, 0, 0]), &spec).unwrap());
        assert!(ideal_member(&ParamPoly::zero(4), &spec).unwrap());
        assert!(ideal_member(&mono(&[0, 1]), &spec).is_err());
        assert_eq!(spec.to_string(), "(λ2, λ4)");
        assert_eq!(IdealSpec::even_prefix(4, 0).to_string(), "(0)");
    }

    #[test]
    fn decomposition_priorities() {
        let spec = IdealSpec::bautin(4);
        let f = mono(&[0, 1, 0, 1]);
        let low = hironaka_decompose(&f, &spec, Priority::LowestFirst).unwrap();
        assert_eq!(low[0], mono(&[0, 0, 0, 1]));
        assert!(low[1].is_empty());
        let high = hironaka_decompose(&f, &spec, Priority::HighestFirst).unwrap();
        assert!(high[0].is_empty());
        assert_eq!(high[1], mono(&[0, 1, 0, 0]));
        let one = hironaka_decompose(&mono(&[0, 1, 0, 0]), &spec, Priority::LowestFirst).unwrap();
        assert_eq!(one[0], ParamPoly::constant(4, PiPoly::one()));
        assert_eq!(recompose(&low, &spec), f);
        assert!(matches!(
            hironaka_decompose(&mono(&[2, 0, 0, 0]), &spec, Priority::LowestFirst),
            Err(Error::NotInIdeal(_))
        ));
    }

    #[test]
    fn scalar_relation() {
        let t = CoefficientTable::compute(2, 3).unwrap();
        let rel = build_matrix_relation(&t, 1).unwrap();
        assert_eq!(rel.c.get(0, 0), &ParamPoly::constant(2, PiPoly::monomial(ratio(1, 4), 1)));
        assert!(rel.delta.is_zero());
        let m = invert_matrix_relation(&rel.c, &rel.delta).unwrap();
        let four_over_pi = PiFraction::new(PiPoly::constant(Rational::integer(4)), 1);
        assert_eq!(m.get(0, 0), &LambdaPoly::constant(2, four_over_pi));
    }

    #[test]
    fn zero_delta_inverts_to_c_inverse() {
        let d = 6;
        let mut c = ParamMatrix::<PiPoly>::zero(3, d);
        for j in 0..3 {
            c.rows[j][j] = ParamPoly::constant(d, wallis_c(j as u32 + 1));
        }
        let m = invert_matrix_relation(&c, &ParamMatrix::zero(3, d)).unwrap();
        for j in 0..3 {
            let inv = PiFraction::from(wallis_c(j as u32 + 1)).inverse().unwrap();
            assert_eq!(m.get(j, j), &LambdaPoly::constant(d, inv));
        }
    }

    #[test]
    fn non_nilpotent_delta_is_rejected() {
        let d = 4;
        let c = ParamMatrix::<PiPoly>::identity(2, d);
        let mut delta = ParamMatrix::<PiPoly>::zero(2, d);
        delta.rows[0][1] = ParamPoly::constant(d, PiPoly::one());
        delta.rows[1][0] = ParamPoly::constant(d, PiPoly::one());
        assert!(matches!(invert_matrix_relation(&c, &delta), Err(Error::NotNilpotent(_))));
    }

    #[test]
    fn certificates_small() {
        let cert = bautin_report(2, 4).unwrap();
        assert!(cert.holds, "{:?}", cert.failures);
        assert_eq!(cert.bautin_index, 3);
        let one = bautin_report(1, 4).unwrap();
        assert!(one.holds, "{:?}", one.failures);
        assert_eq!(one.bautin_index, 1);
        assert!(bautin_report(4, 5).is_err());
    }
}
