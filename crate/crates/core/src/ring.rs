use std::fmt::Debug;

use crate::exact::Rational;

/// Commutative ring with unit and an action of ℚ.
///
/// Every coefficient type in the crate implements this so that λ-polynomials,
/// matrices and formal power series can be written once.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, q: &Rational) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn add_assign(&mut self, other: &Self) {
        *self = Ring::add(self, other);
    }
}
